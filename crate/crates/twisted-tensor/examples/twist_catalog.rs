//! The built-in twisting maps evaluated three ways: closed form, extension
//! of the generator relation, and (where available) brute-force word
//! expansion.
//!
//! ```bash
//! cargo run -p twisted-tensor --example twist_catalog
//! ```

use twisted_tensor::scalars::{primitive_root, FieldSpec};
use twisted_tensor::{TwistFamily, TwistTable};

fn main() {
    let q = FieldSpec::Rationals;
    let z3 = FieldSpec::cyclotomic(3).unwrap();
    let f5 = FieldSpec::prime(5).unwrap();

    let catalog: Vec<(FieldSpec, TwistFamily)> = vec![
        (q, TwistFamily::Swap),
        (z3, TwistFamily::Quantum { q: primitive_root(&z3, 3).unwrap() }),
        (q, TwistFamily::QWeyl { q: q.from_int(-1) }),
        (q, TwistFamily::Jordan),
        (q, TwistFamily::Weyl),
        (f5, TwistFamily::Jordan),
    ];

    for (field, family) in catalog {
        let table = TwistTable::new(field, family).unwrap();
        println!("family {} over {}:", table.family(), field);
        println!("  generator   τ(y ⊗ x)     = {}", table.twist_eval(1, 1));
        println!("  closed form τ(y^2 ⊗ x^3) = {}", table.twist_eval(2, 3));
        let rel = table.twist_eval_relation(2, 3).unwrap();
        println!("  relation    τ(y^2 ⊗ x^3) = {rel}");
        assert_eq!(rel, table.twist_eval(2, 3));
        if let Some(words) = table.ore_word_expansion(2, 3) {
            println!("  word sum    τ(y^2 ⊗ x^3) = {words}");
            assert_eq!(words, table.twist_eval(2, 3));
        }
        println!();
    }

    // Twisted multiplication routes middle legs through τ:
    let jordan = TwistTable::new(q, TwistFamily::Jordan).unwrap();
    let y = twisted_tensor::Element::monomial(q, 0, 1);
    let x = twisted_tensor::Element::monomial(q, 1, 0);
    println!("in the Jordan plane: y·x = {}", jordan.multiply(&y, &x).unwrap());

    // Reduced evaluation uses only the residues of the exponents once the
    // corresponding powers are central.
    let jordan5 = TwistTable::new(f5, TwistFamily::Jordan).unwrap();
    println!(
        "jordan over F_5, τ(y^7 ⊗ x^6) via residues (7,6) ≡ (2,1) mod 5: {}",
        jordan5.reduced_twist_eval(5, 7, 6)
    );
    assert_eq!(jordan5.reduced_twist_eval(5, 7, 6), jordan5.twist_eval(7, 6));
}
