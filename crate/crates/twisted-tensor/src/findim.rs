//! Finite-dimensional quotients of a twisted tensor product by leg-wise
//! ideals `(P(x), Q(y))`, their dual coalgebras, and character/grouplike
//! machinery.
//!
//! A quotient is materialized as a basis `x^i y^j` (`i < deg P`,
//! `j < deg Q`) with exact structure constants; the dual coalgebra is the
//! transpose of those constants. Only quotients whose ideals are stable
//! under the twist are algebras on this basis, and `build_quotient` aborts
//! with the stability counterexample otherwise.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::axioms::{check_centralize_hypothesis, check_ideal_stability, CheckReport, Counterexample};
use crate::elements::{Element, UniPoly, Var};
use crate::scalars::{FieldSpec, Scalar};
use crate::twists::{TwistFamily, TwistTable};
use crate::{Error, Result};

/// Configuration for one finite quotient stage of `k[x] ⊗_τ k[y]`.
#[derive(Clone, Debug)]
pub struct QuotientSpec {
    pub field: FieldSpec,
    pub family: TwistFamily,
    /// Monic generator of the x-leg ideal.
    pub px: UniPoly,
    /// Monic generator of the y-leg ideal.
    pub qy: UniPoly,
    /// Centrality order justifying stability, when one is known.
    pub ell: Option<usize>,
}

impl QuotientSpec {
    pub fn new(field: FieldSpec, family: TwistFamily, px: UniPoly, qy: UniPoly) -> Self {
        let ell = family.central_order(&field, 64);
        QuotientSpec { field, family, px, qy, ell }
    }

    pub fn table(&self) -> Result<TwistTable> {
        TwistTable::new(self.field, self.family.clone())
    }

    /// Depth used for the stability gate: twice the combined degree.
    pub fn stability_depth(&self) -> usize {
        let dp = self.px.degree().unwrap_or(0);
        let dq = self.qy.degree().unwrap_or(0);
        2 * (dp + dq)
    }

    /// Structural validation: both generators monic and supported on the
    /// centralizing subalgebras `k[x^ℓ]`, `k[y^ℓ]`, and the centralize
    /// hypothesis holding at the given depth. This is the sufficient
    /// condition route; `build_quotient` itself gates on the ideal
    /// stability check, which is what the construction actually needs.
    pub fn validate_centrality(&self, depth: usize) -> Result<()> {
        let ell = self.ell.ok_or_else(|| {
            Error::InvalidConfig(format!(
                "family {} has no known centrality order over {}",
                self.family, self.field
            ))
        })?;
        for (poly, name) in [(&self.px, "P"), (&self.qy, "Q")] {
            if !poly.is_monic() {
                return Err(Error::InvalidConfig(format!("{name} must be monic")));
            }
            if !poly.supported_on_multiples_of(ell) {
                return Err(Error::InvalidConfig(format!(
                    "{name} = {poly} is not a polynomial in {}^{ell}",
                    poly.var()
                )));
            }
        }
        let table = self.table()?;
        let report = check_centralize_hypothesis(&table, ell, depth);
        if !report.passed {
            return Err(Error::TwistNotContinuous(Box::new(
                report.counterexample.expect("failed checks carry a counterexample"),
            )));
        }
        Ok(())
    }
}

/// A finite-dimensional associative unital algebra on a monomial basis,
/// with dense structure constants.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub field: FieldSpec,
    /// Basis labels as `(x-degree, y-degree)` pairs, ordered with the
    /// x-degree major; purely univariate quotients use y-degree 0.
    pub basis: Vec<(usize, usize)>,
    /// `products[i][j]` = coordinates of `e_i · e_j` in the basis.
    pub products: Vec<Vec<Vec<Scalar>>>,
    /// Coordinates of the multiplicative identity.
    pub unit: Vec<Scalar>,
    labels: Vec<String>,
}

impl QuotientAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Exhaustive associativity and unit-law verification of the structure
    /// constants.
    pub fn check_associative_unital(&self) -> bool {
        let dim = self.dim();
        let mul_vec = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
            let mut out = vec![self.field.zero(); dim];
            for (i, cu) in u.iter().enumerate() {
                if cu.is_zero() {
                    continue;
                }
                for (j, cv) in v.iter().enumerate() {
                    if cv.is_zero() {
                        continue;
                    }
                    let c = cu.mul(cv);
                    for (k, w) in self.products[i][j].iter().enumerate() {
                        if !w.is_zero() {
                            out[k] = out[k].add(&w.mul(&c));
                        }
                    }
                }
            }
            out
        };
        let basis_vec = |i: usize| -> Vec<Scalar> {
            let mut v = vec![self.field.zero(); dim];
            v[i] = self.field.one();
            v
        };
        for i in 0..dim {
            let ei = basis_vec(i);
            if mul_vec(&self.unit, &ei) != ei || mul_vec(&ei, &self.unit) != ei {
                return false;
            }
            for j in 0..dim {
                for k in 0..dim {
                    let lhs = mul_vec(&self.products[i][j], &basis_vec(k));
                    let rhs = mul_vec(&basis_vec(i), &self.products[j][k]);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// JSON value with the structure constants in indexed style.
    pub fn to_json(&self) -> serde_json::Value {
        let basis: Vec<serde_json::Value> = self
            .basis
            .iter()
            .map(|(i, j)| serde_json::json!({"x": i, "y": j}))
            .collect();
        let mut mul = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let entries: Vec<serde_json::Value> = self.products[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| serde_json::json!([k, c.to_string()]))
                    .collect();
                mul.push(serde_json::Value::Array(entries));
            }
        }
        serde_json::json!({
            "dim": self.dim(),
            "basis": basis,
            "mul": mul,
        })
    }
}

/// A finite-dimensional coalgebra: comultiplication structure constants and
/// a counit vector on a labelled basis.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteCoalgebra {
    pub field: FieldSpec,
    pub labels: Vec<String>,
    /// `delta[k]` = list of `(left, right, coefficient)` with
    /// `Δ(e_k) = Σ c · e_left ⊗ e_right`; entries sorted, coefficients
    /// nonzero.
    pub delta: Vec<Vec<(usize, usize, Scalar)>>,
    pub counit: Vec<Scalar>,
}

impl FiniteCoalgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn delta_map(&self, k: usize) -> BTreeMap<(usize, usize), Scalar> {
        self.delta[k]
            .iter()
            .map(|(i, j, c)| ((*i, *j), c.clone()))
            .collect()
    }

    /// Δ applied to a coordinate vector, as a dense matrix indexed by
    /// (left, right).
    pub fn delta_of_vector(&self, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let dim = self.dim();
        let mut out = vec![vec![self.field.zero(); dim]; dim];
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, j, w) in &self.delta[k] {
                out[*i][*j] = out[*i][*j].add(&w.mul(c));
            }
        }
        out
    }

    pub fn counit_of_vector(&self, v: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (k, c) in v.iter().enumerate() {
            acc = acc.add(&c.mul(&self.counit[k]));
        }
        acc
    }

    /// JSON value for the Δ table in indexed style.
    pub fn to_json(&self) -> serde_json::Value {
        let delta: Vec<serde_json::Value> = self
            .delta
            .iter()
            .map(|row| {
                serde_json::Value::Array(
                    row.iter()
                        .map(|(i, j, c)| serde_json::json!([i, j, c.to_string()]))
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "dim": self.dim(),
            "basis": self.labels,
            "delta": delta,
            "counit": self.counit.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }

    /// CSV rows for the Δ table: `target,left,right,coeff`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("target,left,right,coeff\n");
        for (k, row) in self.delta.iter().enumerate() {
            for (i, j, c) in row {
                out.push_str(&format!("{k},{i},{j},{c}\n"));
            }
        }
        out
    }
}

/// An exact matrix with explicit domain/codomain basis labels, stored
/// row-major with `entries[row][col]`.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub field: FieldSpec,
    pub domain_labels: Vec<String>,
    pub codomain_labels: Vec<String>,
    pub entries: Vec<Vec<Scalar>>,
}

impl LinearMap {
    pub fn zero(field: FieldSpec, domain_labels: Vec<String>, codomain_labels: Vec<String>) -> Self {
        let rows = codomain_labels.len();
        let cols = domain_labels.len();
        LinearMap {
            field,
            domain_labels,
            codomain_labels,
            entries: vec![vec![field.zero(); cols]; rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.codomain_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.domain_labels.len()
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row][col]
    }
}

fn monomial_labels(var: Var, deg: usize) -> Vec<String> {
    (0..deg).map(|k| format!("{var}^{k}")).collect()
}

pub(crate) fn tensor_pair_labels(first: &[String], second: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(first.len() * second.len());
    for a in first {
        for b in second {
            out.push(format!("{a}⊗{b}"));
        }
    }
    out
}

/// Reduces an element of `k[x] ⊗ k[y]` leg-wise modulo `P(x)` and `Q(y)`,
/// returning coordinates in the basis `x^i y^j`, x-degree major.
fn reduce_to_coordinates(
    value: &Element,
    px: &UniPoly,
    qy: &UniPoly,
) -> Vec<Scalar> {
    let field = value.field();
    let dp = px.degree().unwrap();
    let dq = qy.degree().unwrap();
    let mut coords = vec![field.zero(); dp * dq];
    // x-legs mod P first, then y-legs mod Q; the two act on different legs
    // so the order is immaterial.
    for (b, xpoly) in value.x_profiles() {
        let xred = xpoly.rem(px);
        if xred.is_zero() {
            continue;
        }
        let ymono = UniPoly::monomial(field, Var::Y, b).rem(qy);
        for (i, cx) in xred.coeffs().iter().enumerate() {
            if cx.is_zero() {
                continue;
            }
            for (j, cy) in ymono.coeffs().iter().enumerate() {
                if cy.is_zero() {
                    continue;
                }
                coords[i * dq + j] = coords[i * dq + j].add(&cx.mul(cy));
            }
        }
    }
    coords
}

/// Builds the finite quotient `k[x] ⊗_τ k[y] / (P, Q)` on the monomial
/// basis. Gated by the ideal-stability check at depth
/// `2(deg P + deg Q)`; on failure the counterexample explains why the
/// quotient is not an algebra on this basis.
pub fn build_quotient(table: &TwistTable, px: &UniPoly, qy: &UniPoly) -> Result<QuotientAlgebra> {
    let field = table.field();
    let depth = 2 * (px.degree().unwrap_or(0) + qy.degree().unwrap_or(0));
    let stability = check_ideal_stability(table, px, qy, depth)?;
    if !stability.passed {
        return Err(Error::TwistNotContinuous(Box::new(
            stability.counterexample.expect("failed checks carry a counterexample"),
        )));
    }
    let dp = px.degree().unwrap();
    let dq = qy.degree().unwrap();
    let dim = dp * dq;
    let mut basis = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    for i in 0..dp {
        for j in 0..dq {
            basis.push((i, j));
            labels.push(format!("x^{i}y^{j}"));
        }
    }
    let mut products = vec![vec![Vec::new(); dim]; dim];
    for (a, &(i1, j1)) in basis.iter().enumerate() {
        for (b, &(i2, j2)) in basis.iter().enumerate() {
            // (x^{i1} ⊗ y^{j1})(x^{i2} ⊗ y^{j2}) = x^{i1}·τ(y^{j1} ⊗ x^{i2})·y^{j2}
            let product = table.twist_eval(j1, i2).shift(i1, j2);
            products[a][b] = reduce_to_coordinates(&product, px, qy);
        }
    }
    let mut unit = vec![field.zero(); dim];
    unit[0] = field.one();
    Ok(QuotientAlgebra { field, basis, products, unit, labels })
}

/// The commutative quotient `k[var]/(modulus)` as a `QuotientAlgebra` with
/// basis `var^k`.
pub fn polynomial_quotient(field: FieldSpec, modulus: &UniPoly) -> Result<QuotientAlgebra> {
    if !modulus.is_monic() || modulus.degree() == Some(0) {
        return Err(Error::InvalidConfig(format!(
            "quotient modulus {modulus} must be monic and nonconstant"
        )));
    }
    let d = modulus.degree().unwrap();
    let var = modulus.var();
    let basis: Vec<(usize, usize)> = match var {
        Var::X => (0..d).map(|k| (k, 0)).collect(),
        Var::Y => (0..d).map(|k| (0, k)).collect(),
    };
    let labels = monomial_labels(var, d);
    let mut products = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let red = UniPoly::monomial(field, var, i + j).rem(modulus);
            let mut coords = vec![field.zero(); d];
            for (k, c) in red.coeffs().iter().enumerate() {
                coords[k] = c.clone();
            }
            products[i][j] = coords;
        }
    }
    let mut unit = vec![field.zero(); d];
    unit[0] = field.one();
    Ok(QuotientAlgebra { field, basis, products, unit, labels })
}

/// Dual coalgebra of a finite-dimensional algebra: the comultiplication is
/// the transpose of the structure constants and the counit is evaluation
/// at the unit.
pub fn dual_coalgebra(alg: &QuotientAlgebra) -> FiniteCoalgebra {
    let dim = alg.dim();
    let mut delta: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); dim];
    for i in 0..dim {
        for j in 0..dim {
            for (k, c) in alg.products[i][j].iter().enumerate() {
                if !c.is_zero() {
                    delta[k].push((i, j, c.clone()));
                }
            }
        }
    }
    for row in &mut delta {
        row.sort_by_key(|(i, j, _)| (*i, *j));
    }
    FiniteCoalgebra {
        field: alg.field,
        labels: alg.labels.iter().map(|l| format!("({l})*")).collect(),
        delta,
        counit: alg.unit.clone(),
    }
}

/// Exhaustive coassociativity and counit verification.
pub fn check_coalgebra(c: &FiniteCoalgebra) -> CheckReport {
    let dim = c.dim();
    let n = dim;
    for k in 0..dim {
        // (Δ ⊗ id)Δ vs (id ⊗ Δ)Δ on e_k, as maps into three tensor legs.
        let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (i, j, cij) in &c.delta[k] {
            for (a, b, w) in &c.delta[*i] {
                accumulate(&mut lhs, (*a, *b, *j), w.mul(cij));
            }
            for (a, b, w) in &c.delta[*j] {
                accumulate(&mut rhs, (*i, *a, *b), w.mul(cij));
            }
        }
        if lhs != rhs {
            return CheckReport::fail(
                n,
                Counterexample {
                    description: format!("coassociativity fails on basis element {}", c.labels[k]),
                    inputs: format!("k={k}"),
                    lhs: triple_to_element(c.field, &lhs),
                    rhs: triple_to_element(c.field, &rhs),
                },
            );
        }
        // (ε ⊗ id)Δ = id = (id ⊗ ε)Δ on e_k.
        let mut left = vec![c.field.zero(); dim];
        let mut right = vec![c.field.zero(); dim];
        for (i, j, cij) in &c.delta[k] {
            left[*j] = left[*j].add(&cij.mul(&c.counit[*i]));
            right[*i] = right[*i].add(&cij.mul(&c.counit[*j]));
        }
        let mut expected = vec![c.field.zero(); dim];
        expected[k] = c.field.one();
        if left != expected || right != expected {
            let bad = if left != expected { left } else { right };
            return CheckReport::fail(
                n,
                Counterexample {
                    description: format!("counit law fails on basis element {}", c.labels[k]),
                    inputs: format!("k={k}"),
                    lhs: vector_to_element(c.field, &bad),
                    rhs: vector_to_element(c.field, &expected),
                },
            );
        }
    }
    CheckReport::pass(n)
}

fn accumulate(map: &mut BTreeMap<(usize, usize, usize), Scalar>, key: (usize, usize, usize), c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.remove(&key) {
        None => {
            map.insert(key, c);
        }
        Some(prev) => {
            let sum = prev.add(&c);
            if !sum.is_zero() {
                map.insert(key, sum);
            }
        }
    }
}

// Counterexample payloads are Elements; encode index tuples as monomial
// exponents so mismatching tensors stay diffable.
fn triple_to_element(field: FieldSpec, map: &BTreeMap<(usize, usize, usize), Scalar>) -> Element {
    let mut e = Element::zero(field);
    for ((a, b, c), w) in map {
        e.add_term(
            crate::elements::TensorMonomial::new(a * 10000 + b * 100 + c, 0),
            w.clone(),
        );
    }
    e
}

fn vector_to_element(field: FieldSpec, v: &[Scalar]) -> Element {
    let mut e = Element::zero(field);
    for (k, c) in v.iter().enumerate() {
        e.add_term(crate::elements::TensorMonomial::new(k, 0), c.clone());
    }
    e
}

/// True exactly when `Δ(c) = c ⊗ c` and `ε(c) = 1`.
pub fn is_grouplike(coalgebra: &FiniteCoalgebra, vector: &[Scalar]) -> bool {
    assert_eq!(vector.len(), coalgebra.dim(), "vector length must match the basis");
    if !coalgebra.counit_of_vector(vector).is_one() {
        return false;
    }
    let dv = coalgebra.delta_of_vector(vector);
    for (i, row) in dv.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if *c != vector[i].mul(&vector[j]) {
                return false;
            }
        }
    }
    true
}

/// Exhaustive search for prime-field characters of the quotient: pairs
/// `(α, β) ∈ F_p²` with `P(α) = 0`, `Q(β) = 0`, and the generator relation
/// consistent, i.e. `τ(y ⊗ x)` evaluated at `(α, β)` equals `β·α`. Each
/// accepted pair is the grouplike `x^i y^j ↦ α^i β^j` of the dual.
pub fn enumerate_characters(
    table: &TwistTable,
    px: &UniPoly,
    qy: &UniPoly,
) -> Result<Vec<(u64, u64)>> {
    let field = table.field();
    let p = match field {
        FieldSpec::Prime { p } => p,
        _ => {
            return Err(Error::InvalidConfig(
                "character enumeration requires a prime-field backend; use verify_character over infinite fields"
                    .into(),
            ))
        }
    };
    let mut out = Vec::new();
    for a in 0..p {
        let alpha = Scalar::Fp { p, val: a };
        if !px.eval(&alpha).is_zero() {
            continue;
        }
        for b in 0..p {
            let beta = Scalar::Fp { p, val: b };
            if !qy.eval(&beta).is_zero() {
                continue;
            }
            if verify_character(table, px, qy, &alpha, &beta) {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// Verify-only character test, usable over any field: the candidate point
/// must kill both ideal generators and satisfy the generator relation.
pub fn verify_character(
    table: &TwistTable,
    px: &UniPoly,
    qy: &UniPoly,
    alpha: &Scalar,
    beta: &Scalar,
) -> bool {
    if !px.eval(alpha).is_zero() || !qy.eval(beta).is_zero() {
        return false;
    }
    let relation = table.twist_eval(1, 1).eval_at(alpha, beta);
    relation == beta.mul(alpha)
}

/// The coordinate vector of the character `x^i y^j ↦ α^i β^j` in the dual
/// basis of a quotient algebra.
pub fn character_vector(alg: &QuotientAlgebra, alpha: &Scalar, beta: &Scalar) -> Vec<Scalar> {
    alg.basis
        .iter()
        .map(|(i, j)| alpha.pow(*i as u64).mul(&beta.pow(*j as u64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn quantum_minus_one() -> TwistTable {
        TwistTable::new(q(), TwistFamily::Quantum { q: q().from_int(-1) }).unwrap()
    }

    #[test]
    fn quantum_quotient_has_expected_relations() {
        let t = quantum_minus_one();
        let px = UniPoly::monomial(q(), Var::X, 2);
        let qy = UniPoly::monomial(q(), Var::Y, 2);
        let alg = build_quotient(&t, &px, &qy).unwrap();
        assert_eq!(alg.dim(), 4);
        assert!(alg.check_associative_unital());
        // Basis order: 1, y, x, xy. x·x = 0, y·y = 0, y·x = -xy.
        let idx = |i: usize, j: usize| alg.basis.iter().position(|&b| b == (i, j)).unwrap();
        let x = idx(1, 0);
        let y = idx(0, 1);
        let xy = idx(1, 1);
        assert!(alg.products[x][x].iter().all(Scalar::is_zero));
        assert!(alg.products[y][y].iter().all(Scalar::is_zero));
        let mut expected = vec![q().zero(); 4];
        expected[xy] = q().from_int(-1);
        assert_eq!(alg.products[y][x], expected);
    }

    #[test]
    fn swap_quotient_is_the_commutative_coordinate_ring() {
        let t = TwistTable::new(q(), TwistFamily::Swap).unwrap();
        let px = UniPoly::from_ints(q(), Var::X, &[-1, 0, 1]);
        let qy = UniPoly::from_ints(q(), Var::Y, &[-1, 0, 1]);
        let alg = build_quotient(&t, &px, &qy).unwrap();
        assert_eq!(alg.dim(), 4);
        assert!(alg.check_associative_unital());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(alg.products[i][j], alg.products[j][i]);
            }
        }
    }

    #[test]
    fn weyl_quotient_aborts_with_stability_witness() {
        let t = TwistTable::new(q(), TwistFamily::Weyl).unwrap();
        let px = UniPoly::monomial(q(), Var::X, 2);
        let qy = UniPoly::monomial(q(), Var::Y, 2);
        match build_quotient(&t, &px, &qy) {
            Err(Error::TwistNotContinuous(ce)) => {
                assert!(ce.description.contains("not divisible"));
            }
            other => panic!("expected a stability failure, got {other:?}"),
        }
    }

    #[test]
    fn dual_of_truncated_polynomials() {
        let px = UniPoly::monomial(q(), Var::X, 2);
        let alg = polynomial_quotient(q(), &px).unwrap();
        let dual = dual_coalgebra(&alg);
        // Δ(1*) = 1*⊗1*, Δ(x*) = x*⊗1* + 1*⊗x*, ε = (1, 0).
        assert_eq!(dual.delta[0], vec![(0, 0, q().one())]);
        assert_eq!(dual.delta[1], vec![(0, 1, q().one()), (1, 0, q().one())]);
        assert_eq!(dual.counit, vec![q().one(), q().zero()]);
        assert!(check_coalgebra(&dual).passed);
    }

    #[test]
    fn dual_of_quantum_quotient_has_signed_cross_terms() {
        let t = quantum_minus_one();
        let px = UniPoly::monomial(q(), Var::X, 2);
        let qy = UniPoly::monomial(q(), Var::Y, 2);
        let alg = build_quotient(&t, &px, &qy).unwrap();
        let dual = dual_coalgebra(&alg);
        let idx = |i: usize, j: usize| alg.basis.iter().position(|&b| b == (i, j)).unwrap();
        let one = idx(0, 0);
        let x = idx(1, 0);
        let y = idx(0, 1);
        let xy = idx(1, 1);
        let map = dual.delta_map(xy);
        assert_eq!(map[&(one, xy)], q().one());
        assert_eq!(map[&(xy, one)], q().one());
        assert_eq!(map[&(x, y)], q().one());
        assert_eq!(map[&(y, x)], q().from_int(-1));
        assert_eq!(map.len(), 4);
        assert!(check_coalgebra(&dual).passed);
    }

    #[test]
    fn dual_of_the_base_field_is_trivial() {
        let px = UniPoly::monomial(q(), Var::X, 1);
        let alg = polynomial_quotient(q(), &px).unwrap();
        let dual = dual_coalgebra(&alg);
        assert_eq!(dual.dim(), 1);
        assert_eq!(dual.delta[0], vec![(0, 0, q().one())]);
        assert!(check_coalgebra(&dual).passed);
    }

    #[test]
    fn hand_built_grouplike_coalgebra_passes() {
        let c = FiniteCoalgebra {
            field: q(),
            labels: vec!["g".into()],
            delta: vec![vec![(0, 0, q().one())]],
            counit: vec![q().one()],
        };
        assert!(check_coalgebra(&c).passed);
        assert!(is_grouplike(&c, &[q().one()]));
    }

    #[test]
    fn sign_flip_breaks_coassociativity_or_counit() {
        let t = quantum_minus_one();
        let px = UniPoly::monomial(q(), Var::X, 2);
        let qy = UniPoly::monomial(q(), Var::Y, 2);
        let alg = build_quotient(&t, &px, &qy).unwrap();
        let mut dual = dual_coalgebra(&alg);
        // Flip the sign of the 1*⊗(xy)* leg inside Δ((xy)*); the counit
        // law (ε⊗id)Δ = id then fails on (xy)*.
        let xy = alg.basis.iter().position(|&b| b == (1, 1)).unwrap();
        for entry in dual.delta[xy].iter_mut() {
            if entry.0 == 0 && entry.1 == xy {
                entry.2 = entry.2.neg();
            }
        }
        assert!(!check_coalgebra(&dual).passed);
    }

    #[test]
    fn grouplike_examples_for_split_quotient() {
        // Dual of k[x]/(x^2-1): the character x ↦ 1 is 1* + x*; the halved
        // vector fails the counit normalization.
        let px = UniPoly::from_ints(q(), Var::X, &[-1, 0, 1]);
        let alg = polynomial_quotient(q(), &px).unwrap();
        let dual = dual_coalgebra(&alg);
        let chi = vec![q().one(), q().one()];
        assert!(is_grouplike(&dual, &chi));
        let half = Scalar::parse(&q(), "1/2").unwrap();
        let halved: Vec<Scalar> = chi.iter().map(|c| c.mul(&half)).collect();
        assert!(!is_grouplike(&dual, &halved));
        // c = 0 fails because ε(0) = 0 ≠ 1.
        assert!(!is_grouplike(&dual, &[q().zero(), q().zero()]));

        // Dual of k[x]/(x^2): 1* + x* is not grouplike (x ↦ 1 is no longer
        // an algebra character).
        let px = UniPoly::monomial(q(), Var::X, 2);
        let alg = polynomial_quotient(q(), &px).unwrap();
        let dual = dual_coalgebra(&alg);
        assert!(!is_grouplike(&dual, &[q().one(), q().one()]));
    }

    #[test]
    fn character_enumeration_over_f3() {
        let f3 = FieldSpec::prime(3).unwrap();
        let two = f3.from_int(2);
        let t = TwistTable::new(f3, TwistFamily::Quantum { q: two }).unwrap();
        let px = UniPoly::from_ints(f3, Var::X, &[-1, 0, 1]);
        let qy = UniPoly::from_ints(f3, Var::Y, &[-1, 0, 1]);
        assert_eq!(enumerate_characters(&t, &px, &qy).unwrap(), vec![]);

        let px0 = UniPoly::monomial(f3, Var::X, 2);
        assert_eq!(
            enumerate_characters(&t, &px0, &qy).unwrap(),
            vec![(0, 1), (0, 2)]
        );

        let swap = TwistTable::new(f3, TwistFamily::Swap).unwrap();
        assert_eq!(
            enumerate_characters(&swap, &px, &qy).unwrap(),
            vec![(1, 1), (1, 2), (2, 1), (2, 2)]
        );
    }

    #[test]
    fn characters_are_exactly_the_grouplikes() {
        let f3 = FieldSpec::prime(3).unwrap();
        let two = f3.from_int(2);
        let t = TwistTable::new(f3, TwistFamily::Quantum { q: two }).unwrap();
        let px = UniPoly::monomial(f3, Var::X, 2);
        let qy = UniPoly::from_ints(f3, Var::Y, &[-1, 0, 1]);
        let alg = build_quotient(&t, &px, &qy).unwrap();
        let dual = dual_coalgebra(&alg);
        let listed = enumerate_characters(&t, &px, &qy).unwrap();
        for &(a, b) in &listed {
            let v = character_vector(&alg, &f3.from_int(a as i64), &f3.from_int(b as i64));
            assert!(is_grouplike(&dual, &v), "({a},{b})");
        }
        // Brute force over all of F_3^4 finds exactly the listed characters.
        let dim = alg.dim();
        let mut found = Vec::new();
        let mut counter = vec![0u64; dim];
        loop {
            let v: Vec<Scalar> = counter.iter().map(|&c| f3.from_int(c as i64)).collect();
            if is_grouplike(&dual, &v) {
                found.push(v.clone());
            }
            let mut k = 0;
            loop {
                if k == dim {
                    break;
                }
                counter[k] += 1;
                if counter[k] < 3 {
                    break;
                }
                counter[k] = 0;
                k += 1;
            }
            if k == dim {
                break;
            }
        }
        assert_eq!(found.len(), listed.len());
        for &(a, b) in &listed {
            let v = character_vector(&alg, &f3.from_int(a as i64), &f3.from_int(b as i64));
            assert!(found.contains(&v));
        }
    }

    #[test]
    fn character_verification_over_char_zero() {
        let t = TwistTable::new(q(), TwistFamily::Swap).unwrap();
        let px = UniPoly::from_ints(q(), Var::X, &[-1, 0, 1]);
        let qy = UniPoly::from_ints(q(), Var::Y, &[-1, 0, 1]);
        assert!(verify_character(&t, &px, &qy, &q().one(), &q().from_int(-1)));
        assert!(!verify_character(&t, &px, &qy, &q().from_int(2), &q().one()));
        let quantum = quantum_minus_one();
        assert!(!verify_character(&quantum, &px, &qy, &q().one(), &q().one()));
    }

    #[test]
    fn centrality_validation_of_quotient_specs() {
        let spec = QuotientSpec::new(
            q(),
            TwistFamily::Quantum { q: q().from_int(-1) },
            UniPoly::monomial(q(), Var::X, 2),
            UniPoly::monomial(q(), Var::Y, 2),
        );
        assert_eq!(spec.ell, Some(2));
        assert!(spec.validate_centrality(8).is_ok());

        // No centrality order exists for the Weyl twist over Q.
        let spec = QuotientSpec::new(
            q(),
            TwistFamily::Weyl,
            UniPoly::monomial(q(), Var::X, 2),
            UniPoly::monomial(q(), Var::Y, 2),
        );
        assert_eq!(spec.ell, None);
        assert!(spec.validate_centrality(8).is_err());

        // x^3 - x is not a polynomial in x^3, so the structural rule rejects it.
        let f3 = FieldSpec::prime(3).unwrap();
        let spec = QuotientSpec::new(
            f3,
            TwistFamily::Jordan,
            UniPoly::from_ints(f3, Var::X, &[0, -1, 0, 1]),
            UniPoly::monomial(f3, Var::Y, 3),
        );
        assert_eq!(spec.ell, Some(3));
        match spec.validate_centrality(8) {
            Err(Error::InvalidConfig(msg)) => assert!(msg.contains("x^3"), "{msg}"),
            other => panic!("expected a structural rejection, got {other:?}"),
        }
    }

    #[test]
    fn duality_pairing_matches_multiplication() {
        // Δ(φ) evaluated at u ⊗ v equals φ(u·v), entrywise over the bases.
        let t = quantum_minus_one();
        let px = UniPoly::monomial(q(), Var::X, 2);
        let qy = UniPoly::monomial(q(), Var::Y, 2);
        let alg = build_quotient(&t, &px, &qy).unwrap();
        let dual = dual_coalgebra(&alg);
        let dim = alg.dim();
        for phi in 0..dim {
            let map = dual.delta_map(phi);
            for u in 0..dim {
                for v in 0..dim {
                    let paired = map.get(&(u, v)).cloned().unwrap_or_else(|| q().zero());
                    assert_eq!(paired, alg.products[u][v][phi], "phi={phi} u={u} v={v}");
                }
            }
        }
    }
}
