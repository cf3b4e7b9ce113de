//! Cotwisting maps as duals of induced twists, cotwisted tensor product
//! coalgebras, and the exact finite-level verification that the dual of a
//! twisted quotient factors as a cotwisted product of dual coalgebras.
//!
//! All tensor-leg bookkeeping is row-major with the first factor's index
//! major, and every matrix carries its basis labels, so transposes cannot
//! silently swap legs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::axioms::{check_ideal_stability, CheckReport, Counterexample};
use crate::elements::{Element, Var};
use crate::findim::{
    build_quotient, check_coalgebra, dual_coalgebra, polynomial_quotient, tensor_pair_labels,
    FiniteCoalgebra, LinearMap, QuotientSpec,
};
use crate::scalars::{FieldSpec, Scalar};
use crate::twists::TwistTable;
use crate::{Error, Result};

/// Two coalgebras and a candidate cotwisting map `φ: C ⊗ D → D ⊗ C`.
#[derive(Clone, Debug)]
pub struct CotwistData {
    pub c: FiniteCoalgebra,
    pub d: FiniteCoalgebra,
    pub phi: LinearMap,
}

impl CotwistData {
    pub fn new(c: FiniteCoalgebra, d: FiniteCoalgebra, phi: LinearMap) -> Result<Self> {
        let expected = c.dim() * d.dim();
        if phi.rows() != expected || phi.cols() != expected {
            return Err(Error::InvalidConfig(format!(
                "cotwisting map must be {expected}×{expected}, got {}×{}",
                phi.rows(),
                phi.cols()
            )));
        }
        Ok(CotwistData { c, d, phi })
    }

    /// Entries of `φ(e_c ⊗ f_d)` as `(d-index, c-index, coefficient)`.
    fn phi_entries(&self, c_idx: usize, d_idx: usize) -> Vec<(usize, usize, Scalar)> {
        let dim_c = self.c.dim();
        let dim_d = self.d.dim();
        let col = c_idx * dim_d + d_idx;
        let mut out = Vec::new();
        for dp in 0..dim_d {
            for cp in 0..dim_c {
                let row = dp * dim_c + cp;
                let entry = self.phi.get(row, col);
                if !entry.is_zero() {
                    out.push((dp, cp, entry.clone()));
                }
            }
        }
        out
    }
}

/// The matrix of the induced twist `τ̄: B/(Q) ⊗ A/(P) → A/(P) ⊗ B/(Q)` on
/// monomial bases: column `(j, i)` holds the reduced coordinates of
/// `τ(y^j ⊗ x^i)`. Aborts when the ideals are not τ-stable, since the
/// reduction would not be well defined.
pub fn induced_twist_matrix(
    table: &TwistTable,
    px: &crate::elements::UniPoly,
    qy: &crate::elements::UniPoly,
) -> Result<LinearMap> {
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
    let x_labels: Vec<String> = (0..dp).map(|i| format!("x^{i}")).collect();
    let y_labels: Vec<String> = (0..dq).map(|j| format!("y^{j}")).collect();
    let mut map = LinearMap::zero(
        field,
        tensor_pair_labels(&y_labels, &x_labels),
        tensor_pair_labels(&x_labels, &y_labels),
    );
    for j in 0..dq {
        for i in 0..dp {
            let col = j * dp + i;
            let value = table.twist_eval(j, i);
            for (b, xpoly) in value.x_profiles() {
                let xred = xpoly.rem(px);
                let yred = crate::elements::UniPoly::monomial(field, Var::Y, b).rem(qy);
                for (a, cx) in xred.coeffs().iter().enumerate() {
                    if cx.is_zero() {
                        continue;
                    }
                    for (bb, cy) in yred.coeffs().iter().enumerate() {
                        if cy.is_zero() {
                            continue;
                        }
                        let row = a * dq + bb;
                        map.entries[row][col] = map.entries[row][col].add(&cx.mul(cy));
                    }
                }
            }
        }
    }
    Ok(map)
}

/// The dual cotwisting map `φ: C ⊗ D → D ⊗ C` of an induced twist matrix,
/// defined by `⟨φ(c ⊗ d), b ⊗ a⟩ = ⟨c ⊗ d, τ̄(b ⊗ a)⟩`: the transpose read
/// against dual bases, with labels relabelled accordingly.
pub fn dual_cotwist(tbar: &LinearMap) -> LinearMap {
    let dualize = |labels: &[String]| -> Vec<String> {
        labels
            .iter()
            .map(|l| {
                l.split('⊗')
                    .map(|part| format!("({part})*"))
                    .collect::<Vec<_>>()
                    .join("⊗")
            })
            .collect()
    };
    let mut out = LinearMap::zero(
        tbar.field,
        dualize(&tbar.codomain_labels),
        dualize(&tbar.domain_labels),
    );
    for r in 0..tbar.rows() {
        for c in 0..tbar.cols() {
            out.entries[c][r] = tbar.entries[r][c].clone();
        }
    }
    out
}

/// The cotwisted tensor product coalgebra `C ⊗^φ D`: the comultiplication
/// routes middle factors through φ,
/// `Δ_φ = (id_C ⊗ φ ⊗ id_D) ∘ (Δ_C ⊗ Δ_D)`, and the counit is
/// `ε_C ⊗ ε_D`. The construction is always defined; the coalgebra axioms
/// hold exactly when φ is a cotwisting map.
pub fn cotwisted_coalgebra(data: &CotwistData) -> FiniteCoalgebra {
    let field = data.c.field;
    let dim_c = data.c.dim();
    let dim_d = data.d.dim();
    let dim = dim_c * dim_d;
    let mut delta: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); dim];
    let mut counit = Vec::with_capacity(dim);
    for c_idx in 0..dim_c {
        for d_idx in 0..dim_d {
            let k = c_idx * dim_d + d_idx;
            counit.push(data.c.counit[c_idx].mul(&data.d.counit[d_idx]));
            let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (c1, c2, sc) in &data.c.delta[c_idx] {
                for (d1, d2, sd) in &data.d.delta[d_idx] {
                    let weight = sc.mul(sd);
                    for (dp, cp, w) in data.phi_entries(*c2, *d1) {
                        let left = c1 * dim_d + dp;
                        let right = cp * dim_d + d2;
                        let coeff = weight.mul(&w);
                        match acc.remove(&(left, right)) {
                            None => {
                                acc.insert((left, right), coeff);
                            }
                            Some(prev) => {
                                let sum = prev.add(&coeff);
                                if !sum.is_zero() {
                                    acc.insert((left, right), sum);
                                }
                            }
                        }
                    }
                }
            }
            delta[k] = acc.into_iter().map(|((i, j), w)| (i, j, w)).collect();
        }
    }
    FiniteCoalgebra {
        field,
        labels: tensor_pair_labels(&data.c.labels, &data.d.labels),
        delta,
        counit,
    }
}

/// Conormality of φ: applying `ε_D` to the D-leg (resp. `ε_C` to the C-leg)
/// of `φ(c ⊗ d)` recovers `ε_D(d)·c` (resp. `ε_C(c)·d`).
pub fn check_conormal(data: &CotwistData) -> CheckReport {
    let field = data.c.field;
    let dim_c = data.c.dim();
    let dim_d = data.d.dim();
    let n = dim_c * dim_d;
    for c_idx in 0..dim_c {
        for d_idx in 0..dim_d {
            let entries = data.phi_entries(c_idx, d_idx);
            let mut c_out = vec![field.zero(); dim_c];
            let mut d_out = vec![field.zero(); dim_d];
            for (dp, cp, w) in &entries {
                c_out[*cp] = c_out[*cp].add(&w.mul(&data.d.counit[*dp]));
                d_out[*dp] = d_out[*dp].add(&w.mul(&data.c.counit[*cp]));
            }
            let mut c_expected = vec![field.zero(); dim_c];
            c_expected[c_idx] = data.d.counit[d_idx].clone();
            let mut d_expected = vec![field.zero(); dim_d];
            d_expected[d_idx] = data.c.counit[c_idx].clone();
            if c_out != c_expected || d_out != d_expected {
                let (bad, expected) = if c_out != c_expected {
                    (c_out, c_expected)
                } else {
                    (d_out, d_expected)
                };
                return CheckReport::fail(
                    n,
                    Counterexample {
                        description: "conormality fails".into(),
                        inputs: format!(
                            "input {}⊗{}",
                            data.c.labels[c_idx], data.d.labels[d_idx]
                        ),
                        lhs: coords_element(field, &bad),
                        rhs: coords_element(field, &expected),
                    },
                );
            }
        }
    }
    CheckReport::pass(n)
}

/// Comultiplicativity of φ: both coherence identities between φ and the
/// comultiplications of `C` and `D`, verified entrywise on basis inputs.
pub fn check_comultiplicative(data: &CotwistData) -> CheckReport {
    let field = data.c.field;
    let dim_c = data.c.dim();
    let dim_d = data.d.dim();
    let n = dim_c * dim_d;
    for c_idx in 0..dim_c {
        for d_idx in 0..dim_d {
            // Identity in C: (id_D ⊗ Δ_C) ∘ φ = (φ ⊗ id_C)(id_C ⊗ φ)(Δ_C ⊗ id_D),
            // both sides landing in D ⊗ C ⊗ C.
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (dp, cp, w) in data.phi_entries(c_idx, d_idx) {
                for (c1, c2, sc) in &data.c.delta[cp] {
                    acc3(&mut lhs, (dp, *c1, *c2), w.mul(sc));
                }
            }
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (c1, c2, sc) in &data.c.delta[c_idx] {
                for (dp, cp, w1) in data.phi_entries(*c2, d_idx) {
                    for (dpp, cpp, w2) in data.phi_entries(*c1, dp) {
                        acc3(&mut rhs, (dpp, cpp, cp), sc.mul(&w1).mul(&w2));
                    }
                }
            }
            if lhs != rhs {
                return CheckReport::fail(
                    n,
                    Counterexample {
                        description: "comultiplicativity fails in the C factor".into(),
                        inputs: format!("input {}⊗{}", data.c.labels[c_idx], data.d.labels[d_idx]),
                        lhs: triple_element(field, &lhs),
                        rhs: triple_element(field, &rhs),
                    },
                );
            }
            // Identity in D: (Δ_D ⊗ id_C) ∘ φ = (id_D ⊗ φ)(φ ⊗ id_D)(id_C ⊗ Δ_D),
            // both sides landing in D ⊗ D ⊗ C.
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (dp, cp, w) in data.phi_entries(c_idx, d_idx) {
                for (d1, d2, sd) in &data.d.delta[dp] {
                    acc3(&mut lhs, (*d1, *d2, cp), w.mul(sd));
                }
            }
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (d1, d2, sd) in &data.d.delta[d_idx] {
                for (dp, cp, w1) in data.phi_entries(c_idx, *d1) {
                    for (dpp, cpp, w2) in data.phi_entries(cp, *d2) {
                        acc3(&mut rhs, (dp, dpp, cpp), sd.mul(&w1).mul(&w2));
                    }
                }
            }
            if lhs != rhs {
                return CheckReport::fail(
                    n,
                    Counterexample {
                        description: "comultiplicativity fails in the D factor".into(),
                        inputs: format!("input {}⊗{}", data.c.labels[c_idx], data.d.labels[d_idx]),
                        lhs: triple_element(field, &lhs),
                        rhs: triple_element(field, &rhs),
                    },
                );
            }
        }
    }
    CheckReport::pass(n)
}

fn acc3(map: &mut BTreeMap<(usize, usize, usize), Scalar>, key: (usize, usize, usize), c: Scalar) {
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

fn coords_element(field: FieldSpec, v: &[Scalar]) -> Element {
    let mut e = Element::zero(field);
    for (k, c) in v.iter().enumerate() {
        e.add_term(crate::elements::TensorMonomial::new(k, 0), c.clone());
    }
    e
}

fn triple_element(field: FieldSpec, map: &BTreeMap<(usize, usize, usize), Scalar>) -> Element {
    let mut e = Element::zero(field);
    for ((a, b, c), w) in map {
        e.add_term(
            crate::elements::TensorMonomial::new(a * 10000 + b * 100 + c, 0),
            w.clone(),
        );
    }
    e
}

/// Outcome of the finite-level duality verification.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub passed: bool,
    pub dim: usize,
    pub mismatches: Vec<String>,
}

/// Verifies, exactly and entrywise, that the dual coalgebra of the quotient
/// `k[x] ⊗_τ k[y] / (P, Q)` equals the cotwisted tensor product of the
/// duals of `k[x]/(P)` and `k[y]/(Q)` along the dual of the induced twist,
/// under the basis identification `(x^i y^j)* ↔ (x^i)* ⊗ (y^j)*`.
///
/// Also asserts that both coalgebras satisfy the coalgebra axioms and that
/// the cotwisting map is conormal and comultiplicative. A stability failure
/// propagates as `Error::TwistNotContinuous`: the hypothesis of the
/// factorization is violated at this ideal.
pub fn verify_dual_factorization(spec: &QuotientSpec) -> Result<DualityReport> {
    let table = spec.table()?;
    let quotient = build_quotient(&table, &spec.px, &spec.qy)?;
    let dim = quotient.dim();
    let whole_dual = dual_coalgebra(&quotient);

    let a_side = polynomial_quotient(spec.field, &spec.px)?;
    let b_side = polynomial_quotient(spec.field, &spec.qy)?;
    let c = dual_coalgebra(&a_side);
    let d = dual_coalgebra(&b_side);
    let tbar = induced_twist_matrix(&table, &spec.px, &spec.qy)?;
    let phi = dual_cotwist(&tbar);
    let data = CotwistData::new(c, d, phi)?;
    let assembled = cotwisted_coalgebra(&data);

    let mut mismatches = Vec::new();
    for (name, report) in [
        ("dual of the quotient fails the coalgebra axioms", check_coalgebra(&whole_dual)),
        ("assembled cotwisted coalgebra fails the coalgebra axioms", check_coalgebra(&assembled)),
        ("dual cotwist is not conormal", check_conormal(&data)),
        ("dual cotwist is not comultiplicative", check_comultiplicative(&data)),
    ] {
        if !report.passed {
            mismatches.push(format!(
                "{name}: {}",
                report.counterexample.expect("failed checks carry a counterexample")
            ));
        }
    }
    mismatches.extend(coalgebra_mismatches(&whole_dual, &assembled));
    Ok(DualityReport { passed: mismatches.is_empty(), dim, mismatches })
}

/// Entrywise comparison of Δ tables and counits under the index
/// identification; returns human-readable mismatch descriptions.
pub fn coalgebra_mismatches(lhs: &FiniteCoalgebra, rhs: &FiniteCoalgebra) -> Vec<String> {
    let mut out = Vec::new();
    if lhs.dim() != rhs.dim() {
        out.push(format!("dimension mismatch: {} vs {}", lhs.dim(), rhs.dim()));
        return out;
    }
    for k in 0..lhs.dim() {
        if lhs.delta_map(k) != rhs.delta_map(k) {
            out.push(format!(
                "Δ differs at basis element {} / {}",
                lhs.labels[k], rhs.labels[k]
            ));
        }
    }
    if lhs.counit != rhs.counit {
        out.push("counit vectors differ".into());
    }
    out
}
