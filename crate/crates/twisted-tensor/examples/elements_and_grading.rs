//! The underlying exact data types: scalars in three field backends,
//! sparse tensor elements, and the Z/ℓZ-grading of a polynomial into
//! components supported on residue classes of exponents.
//!
//! ```bash
//! cargo run -p twisted-tensor --example elements_and_grading
//! ```

use twisted_tensor::elements::{graded_components, Var};
use twisted_tensor::scalars::{FieldSpec, Scalar};
use twisted_tensor::{Element, UniPoly};

fn main() {
    // Three exact backends behind one scalar type.
    let q = FieldSpec::Rationals;
    let z5 = FieldSpec::cyclotomic(5).unwrap();
    let f7 = FieldSpec::prime(7).unwrap();
    let half = Scalar::parse(&q, "-1/2").unwrap();
    let zeta = Scalar::parse(&z5, "1+z^2").unwrap();
    let seven = Scalar::parse(&f7, "12").unwrap();
    println!("scalars: {half} over {q}, {zeta} over {z5}, {seven} over {f7}");
    println!("JSON:    {} | {} | {}",
        serde_json::to_string(&half).unwrap(),
        serde_json::to_string(&zeta).unwrap(),
        serde_json::to_string(&seven).unwrap(),
    );
    println!();

    // Sparse elements of k[x] ⊗ k[y] with canonical term handling.
    let f = UniPoly::from_ints(q, Var::X, &[-1, 0, 1]); // x^2 - 1
    let g = UniPoly::from_ints(q, Var::Y, &[0, 1]); // y
    let e = Element::tensor(&f, &g).unwrap();
    println!("(x^2 - 1) ⊗ y = {e}");
    let cancelled = e.add(&e.neg()).unwrap();
    println!("e + (-e) has {} stored terms", cancelled.num_terms());
    println!("JSON: {}", serde_json::to_string(&e).unwrap());
    println!();

    // Z/ℓZ-graded components: exponents bucketed by residue, summing back.
    let poly = UniPoly::from_ints(q, Var::X, &[1, 1, 0, 1, 0, 0, 2]); // 2x^6 + x^3 + x + 1
    for ell in [2usize, 3] {
        let parts = graded_components(&poly, ell);
        println!("components of {poly} mod {ell}:");
        let mut sum = UniPoly::zero(q, Var::X);
        for (i, part) in parts.iter().enumerate() {
            println!("  residue {i}: {part}");
            sum = sum.add(part);
        }
        assert_eq!(sum, poly);
    }
}
