//! Cutting a twisted tensor product down to a finite-dimensional quotient,
//! dualizing it into a coalgebra, and reading off its grouplikes (the
//! classical points of the underlying quantum plane).
//!
//! ```bash
//! cargo run -p twisted-tensor --example quotient_and_dual
//! ```

use twisted_tensor::elements::Var;
use twisted_tensor::findim::{
    build_quotient, character_vector, check_coalgebra, dual_coalgebra, enumerate_characters,
    is_grouplike,
};
use twisted_tensor::scalars::FieldSpec;
use twisted_tensor::{TwistFamily, TwistTable, UniPoly};

fn main() {
    let q = FieldSpec::Rationals;
    let quantum = TwistTable::new(q, TwistFamily::Quantum { q: q.from_int(-1) }).unwrap();
    let px = UniPoly::monomial(q, Var::X, 2);
    let qy = UniPoly::monomial(q, Var::Y, 2);

    let alg = build_quotient(&quantum, &px, &qy).unwrap();
    println!("quantum(-1) quotient by (x^2, y^2): dimension {}", alg.dim());
    println!("  basis: {:?}", alg.labels());
    println!("  associative and unital: {}", alg.check_associative_unital());
    let idx = |i: usize, j: usize| alg.basis.iter().position(|&b| b == (i, j)).unwrap();
    let (x, y) = (idx(1, 0), idx(0, 1));
    let yx: Vec<String> = alg.products[y][x].iter().map(|c| c.to_string()).collect();
    println!("  y·x in coordinates (yx = -xy): [{}]", yx.join(", "));
    println!();

    let dual = dual_coalgebra(&alg);
    println!("its dual coalgebra:");
    println!("  coalgebra axioms: {}", check_coalgebra(&dual).passed);
    for (k, label) in dual.labels.iter().enumerate() {
        let terms: Vec<String> = dual.delta[k]
            .iter()
            .map(|(i, j, c)| format!("{c}·{}⊗{}", dual.labels[*i], dual.labels[*j]))
            .collect();
        println!("  Δ({label}) = {}", terms.join(" + "));
    }
    println!();

    // Characters over a prime field: exhaustive point search.
    let f3 = FieldSpec::prime(3).unwrap();
    let quantum3 = TwistTable::new(f3, TwistFamily::Quantum { q: f3.from_int(2) }).unwrap();
    let swap3 = TwistTable::new(f3, TwistFamily::Swap).unwrap();
    let px3 = UniPoly::from_ints(f3, Var::X, &[-1, 0, 1]);
    let qy3 = UniPoly::from_ints(f3, Var::Y, &[-1, 0, 1]);
    let classical = enumerate_characters(&swap3, &px3, &qy3).unwrap();
    let quantum_pts = enumerate_characters(&quantum3, &px3, &qy3).unwrap();
    println!("points of the split quotient (x^2-1, y^2-1) over F_3:");
    println!("  commutative plane: {classical:?}");
    println!("  quantum plane at q = -1: {quantum_pts:?} (the deformation removes them)");
    println!();

    // Each character is a grouplike of the dual coalgebra.
    let alg3 = build_quotient(&swap3, &px3, &qy3).unwrap();
    let dual3 = dual_coalgebra(&alg3);
    for (a, b) in classical {
        let v = character_vector(&alg3, &f3.from_int(a as i64), &f3.from_int(b as i64));
        println!(
            "  character (x,y) -> ({a},{b}) is grouplike: {}",
            is_grouplike(&dual3, &v)
        );
    }
}
