//! The checkable criteria that let a twist descend to finite quotients:
//! central powers x^ℓ, y^ℓ, stability of the leg ideals (P), (Q), and the
//! centralizing-subalgebra hypothesis — together with the classical
//! negative example, the Weyl algebra in characteristic zero.
//!
//! ```bash
//! cargo run -p twisted-tensor --example continuity_criteria
//! ```

use twisted_tensor::axioms::{
    check_central_power, check_centralize_hypothesis, check_ideal_stability,
};
use twisted_tensor::elements::Var;
use twisted_tensor::scalars::{primitive_root, FieldSpec};
use twisted_tensor::{TwistFamily, TwistTable, UniPoly};

fn main() {
    let q = FieldSpec::Rationals;
    let f5 = FieldSpec::prime(5).unwrap();
    let z3 = FieldSpec::cyclotomic(3).unwrap();

    println!("central powers:");
    let cases: Vec<(FieldSpec, TwistFamily, usize)> = vec![
        (z3, TwistFamily::Quantum { q: primitive_root(&z3, 3).unwrap() }, 3),
        (z3, TwistFamily::QWeyl { q: primitive_root(&z3, 3).unwrap() }, 3),
        (f5, TwistFamily::Jordan, 5),
        (f5, TwistFamily::Weyl, 5),
    ];
    for (field, family, d) in cases {
        let t = TwistTable::new(field, family).unwrap();
        let report = check_central_power(&t, d, 10);
        println!(
            "  x^{d}, y^{d} central for {} over {}: {}",
            t.family(),
            field,
            report.passed
        );
    }

    println!();
    println!("the Weyl algebra over Q has no central powers at all:");
    let weyl = TwistTable::new(q, TwistFamily::Weyl).unwrap();
    for d in [1usize, 4, 12] {
        let report = check_central_power(&weyl, d, 12);
        let ce = report.counterexample.unwrap();
        println!("  d = {d:>2}: FAIL, witness {} ≠ {}", ce.rhs, ce.lhs);
    }

    println!();
    println!("ideal stability τ(B ⊗ (P)) ⊆ (P) ⊗ B and symmetrically:");
    let quantum = TwistTable::new(q, TwistFamily::Quantum { q: q.from_int(-1) }).unwrap();
    let px = UniPoly::from_ints(q, Var::X, &[-1, 0, 1]);
    let qy = UniPoly::from_ints(q, Var::Y, &[-1, 0, 1]);
    let report = check_ideal_stability(&quantum, &px, &qy, 8).unwrap();
    println!("  quantum(-1), P = x^2-1, Q = y^2-1: {}", report.passed);

    let px2 = UniPoly::monomial(q, Var::X, 2);
    let qy2 = UniPoly::monomial(q, Var::Y, 2);
    let report = check_ideal_stability(&weyl, &px2, &qy2, 6).unwrap();
    let ce = report.counterexample.unwrap();
    println!("  weyl, P = x^2, Q = y^2: FAIL — {}", ce.description);
    println!("    escaping profile: {}", ce.lhs);

    println!();
    println!("centralizing subalgebras k[x^ℓ], k[y^ℓ] (sufficient for continuity):");
    let z4 = FieldSpec::cyclotomic(4).unwrap();
    let qweyl = TwistTable::new(z4, TwistFamily::QWeyl { q: primitive_root(&z4, 4).unwrap() }).unwrap();
    println!(
        "  qweyl at a primitive 4th root, ℓ = 4: {}",
        check_centralize_hypothesis(&qweyl, 4, 12).passed
    );
    let jordan = TwistTable::new(q, TwistFamily::Jordan).unwrap();
    for ell in [2usize, 3] {
        println!(
            "  jordan over Q, ℓ = {ell}: {}",
            check_centralize_hypothesis(&jordan, ell, 12).passed
        );
    }
}
