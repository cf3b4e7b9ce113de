//! User-defined Ore twists y·f = θ(f)·y + δ(f): the single-step evaluator,
//! the exponential word expansion it is checked against, and the
//! central-power condition that makes t^d commute with everything.
//!
//! ```bash
//! cargo run -p twisted-tensor --example ore_twists
//! ```

use twisted_tensor::axioms::check_central_power;
use twisted_tensor::elements::Var;
use twisted_tensor::scalars::FieldSpec;
use twisted_tensor::twists::{apply_delta, apply_theta, word_sum};
use twisted_tensor::{TwistFamily, TwistTable, UniPoly};

fn main() {
    let q = FieldSpec::Rationals;
    let x = UniPoly::monomial(q, Var::X, 1);

    // θ(x) = -x, δ(x) = 1: the quantized Weyl twist at q = -1.
    let family = TwistFamily::Ore {
        theta: x.scale(&q.from_int(-1)),
        delta: UniPoly::one(q, Var::X),
    };
    let table = TwistTable::new(q, family).unwrap();
    println!("ore twist θ(x) = -x, δ(x) = 1:");
    for (m, n) in [(1usize, 1usize), (2, 2), (3, 4)] {
        let value = table.twist_eval(m, n);
        println!("  τ(y^{m} ⊗ x^{n}) = {value}");
        assert_eq!(value, table.ore_word_expansion(m, n).unwrap());
        assert_eq!(value, table.twist_eval_relation(m, n).unwrap());
    }
    println!("  (closed recursion ≡ 2^m word expansion ≡ relation extension)");
    println!();

    // The operators behind the words.
    let theta = x.scale(&q.from_int(-1));
    let delta = UniPoly::one(q, Var::X);
    let f = UniPoly::from_ints(q, Var::X, &[1, 0, 0, 3]); // 3x^3 + 1
    println!("θ(3x^3+1) = {}", apply_theta(&theta, &f));
    println!("δ(3x^3+1) = {}  (left θ-derivation, δ(x^3) = [3]_{{-1}} x^2)", apply_delta(&theta, &delta, &f));
    for i in 0..=2 {
        println!(
            "Σ over words of length 2 with {i} θ-letters, applied to x^3: {}",
            word_sum(&theta, &delta, 2, i, &UniPoly::monomial(q, Var::X, 3))
        );
    }
    println!();

    // Central powers: y^2 is central here (θ^2 = id and the mixed word
    // sums vanish), so quotients by (x^2-like, y^2-like) ideals exist.
    let report = check_central_power(&table, 2, 8);
    println!("x^2 and y^2 central: {}", report.passed);

    // A derivation-only twist: θ = id, δ(x) = x^2 (degree-raising).
    let family = TwistFamily::Ore {
        theta: x.clone(),
        delta: UniPoly::monomial(q, Var::X, 2),
    };
    let table = TwistTable::new(q, family).unwrap();
    println!();
    println!("ore twist θ = id, δ(x) = x^2:");
    println!("  τ(y ⊗ x)   = {}", table.twist_eval(1, 1));
    println!("  τ(y ⊗ x^2) = {}", table.twist_eval(1, 2));
    println!("  τ(y^2 ⊗ x) = {}", table.twist_eval(2, 1));
    let report = check_central_power(&table, 2, 6);
    println!("  y^2 central: {} (δ is not nilpotent)", report.passed);
}
