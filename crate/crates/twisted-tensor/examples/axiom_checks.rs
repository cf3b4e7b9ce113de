//! Checking that a linear map B⊗A → A⊗B really is a twisting map: it must
//! be normal and multiplicative, which happens exactly when the twisted
//! product is associative and unital. Includes a deliberately corrupted
//! table to show counterexample reporting.
//!
//! ```bash
//! cargo run -p twisted-tensor --example axiom_checks
//! ```

use twisted_tensor::axioms::{check_associative, check_multiplicative, check_normal};
use twisted_tensor::scalars::{primitive_root, FieldSpec};
use twisted_tensor::{Element, TwistFamily, TwistTable};

fn main() {
    let q = FieldSpec::Rationals;
    let z4 = FieldSpec::cyclotomic(4).unwrap();
    let n = 8;

    let families: Vec<(FieldSpec, TwistFamily)> = vec![
        (q, TwistFamily::Swap),
        (z4, TwistFamily::QWeyl { q: primitive_root(&z4, 4).unwrap() }),
        (q, TwistFamily::Jordan),
        (q, TwistFamily::Weyl),
    ];
    for (field, family) in families {
        let t = TwistTable::new(field, family).unwrap();
        let reports = [
            ("normal        ", check_normal(&t, n)),
            ("multiplicative", check_multiplicative(&t, n)),
            ("associative   ", check_associative(&t, n)),
        ];
        println!("family {} over {} at N = {n}:", t.family(), field);
        for (name, report) in reports {
            println!("  {name}  {}", if report.passed { "pass" } else { "FAIL" });
        }
        println!();
    }

    // A map that is the tensor swap except for a doubled generator value is
    // not multiplicative, and the checker pinpoints where it breaks.
    println!("corrupted table: swap with τ(y ⊗ x) overridden to 2·x⊗y");
    let bad = TwistTable::new(q, TwistFamily::Swap).unwrap();
    bad.override_value(1, 1, Element::term(q, 1, 1, q.from_int(2)));
    let report = check_multiplicative(&bad, 3);
    match report.counterexample {
        Some(ce) => println!("  multiplicativity fails {}", ce),
        None => println!("  unexpectedly passed"),
    }
    let report = check_associative(&bad, 3);
    println!("  associativity passed: {}", report.passed);
    assert!(!report.passed);
}
