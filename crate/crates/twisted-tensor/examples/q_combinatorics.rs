//! q-numbers, q-factorials and Gaussian binomials, evaluated exactly at
//! roots of unity by reducing to an integer polynomial first.
//!
//! ```bash
//! cargo run -p twisted-tensor --example q_combinatorics
//! ```

use twisted_tensor::scalars::{
    primitive_root, q_binomial, q_binomial_poly, q_factorial, q_number, FieldSpec,
};

fn main() {
    let q4 = FieldSpec::cyclotomic(4).unwrap();
    let z = primitive_root(&q4, 4).unwrap();

    println!("Gaussian binomial [4 2]_t as a polynomial: {}", q_binomial_poly(4, 2));
    println!("  evaluated at t = 1:   {}", q_binomial(4, 2, &FieldSpec::Rationals.one()));
    println!("  evaluated at t = z_4: {}", q_binomial(4, 2, &z));
    println!();

    println!("q-numbers at a primitive 4th root of unity z (z^2 = -1):");
    for m in 0..=6 {
        println!("  [{m}]_z = {}", q_number(m, &z));
    }
    println!();

    // The naive factorial quotient would divide by [4]_z = 0 here; the
    // polynomial route still produces the right value.
    let den = q_factorial(2, &z).mul(&q_factorial(2, &z));
    println!("denominator [2]_z! · [2]_z! = {} (nonzero, quotient route fine)", den);
    let den8 = q_factorial(4, &z);
    println!("but [4]_z! = {} — at (m,i) = (8,4) the quotient route breaks down", den8);
    println!("reduce-then-evaluate still gives [8 4]_z = {}", q_binomial(8, 4, &z));
    println!();

    let f7 = FieldSpec::prime(7).unwrap();
    let r = primitive_root(&f7, 3).unwrap();
    println!("smallest element of order 3 in F_7: {r}");
    println!("[3]_r over F_7: {}", q_number(3, &r));
    println!("[6 3]_r over F_7: {}", q_binomial(6, 3, &r));
}
