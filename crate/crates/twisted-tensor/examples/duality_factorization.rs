//! The finite-level factorization theorem in action: the dual coalgebra of
//! a twisted quotient equals the cotwisted tensor product of the leg duals
//! along the dual of the induced twist — exactly, entrywise — whenever the
//! leg ideals are stable. The Weyl algebra over Q shows the hypothesis
//! failing.
//!
//! ```bash
//! cargo run -p twisted-tensor --example duality_factorization
//! ```

use twisted_tensor::cotwist::verify_dual_factorization;
use twisted_tensor::elements::Var;
use twisted_tensor::findim::QuotientSpec;
use twisted_tensor::scalars::{primitive_root, FieldSpec};
use twisted_tensor::{Error, TwistFamily, UniPoly};

fn main() {
    let q = FieldSpec::Rationals;
    let z3 = FieldSpec::cyclotomic(3).unwrap();
    let f3 = FieldSpec::prime(3).unwrap();

    let fixtures: Vec<(&str, QuotientSpec)> = vec![
        (
            "quantum plane at q = -1, ideals (x^2, y^2)",
            QuotientSpec::new(
                q,
                TwistFamily::Quantum { q: q.from_int(-1) },
                UniPoly::monomial(q, Var::X, 2),
                UniPoly::monomial(q, Var::Y, 2),
            ),
        ),
        (
            "quantum plane at a primitive cube root, ideals (x^3, y^3)",
            QuotientSpec::new(
                z3,
                TwistFamily::Quantum { q: primitive_root(&z3, 3).unwrap() },
                UniPoly::monomial(z3, Var::X, 3),
                UniPoly::monomial(z3, Var::Y, 3),
            ),
        ),
        (
            "quantized Weyl algebra at q = -1, ideals (x^2, y^2)",
            QuotientSpec::new(
                q,
                TwistFamily::QWeyl { q: q.from_int(-1) },
                UniPoly::monomial(q, Var::X, 2),
                UniPoly::monomial(q, Var::Y, 2),
            ),
        ),
        (
            "Jordan plane over F_3, ideals (x^3, y^3)",
            QuotientSpec::new(
                f3,
                TwistFamily::Jordan,
                UniPoly::monomial(f3, Var::X, 3),
                UniPoly::monomial(f3, Var::Y, 3),
            ),
        ),
        (
            "Weyl algebra over F_3, ideals (x^3, y^3)",
            QuotientSpec::new(
                f3,
                TwistFamily::Weyl,
                UniPoly::monomial(f3, Var::X, 3),
                UniPoly::monomial(f3, Var::Y, 3),
            ),
        ),
        (
            "tensor swap over F_3, split ideals (x^2-1, y^2-1)",
            QuotientSpec::new(
                f3,
                TwistFamily::Swap,
                UniPoly::from_ints(f3, Var::X, &[-1, 0, 1]),
                UniPoly::from_ints(f3, Var::Y, &[-1, 0, 1]),
            ),
        ),
    ];

    for (name, spec) in fixtures {
        match verify_dual_factorization(&spec) {
            Ok(report) => println!(
                "{name}\n  dual factors as a cotwisted tensor product: {} (dim {})\n",
                report.passed, report.dim
            ),
            Err(e) => println!("{name}\n  error: {e}\n"),
        }
    }

    // The negative example: no ideal of the requested shape is stable for
    // the Weyl twist in characteristic zero.
    let weyl = QuotientSpec::new(
        q,
        TwistFamily::Weyl,
        UniPoly::monomial(q, Var::X, 2),
        UniPoly::monomial(q, Var::Y, 2),
    );
    match verify_dual_factorization(&weyl) {
        Err(Error::TwistNotContinuous(ce)) => {
            println!("Weyl algebra over Q, ideals (x^2, y^2)");
            println!("  hypothesis violated: {ce}");
        }
        other => println!("unexpected outcome: {other:?}"),
    }
}
