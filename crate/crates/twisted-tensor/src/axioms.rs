//! Bounded-degree property checks for the axioms a twisting map must
//! satisfy, the centrality criteria behind quotient stability, and the
//! continuity evidence those criteria provide.
//!
//! Every check sweeps monomial inputs up to a degree bound `N` and reports
//! the first counterexample in lexicographic order, carrying both sides of
//! the failed identity for diffing.

use serde::Serialize;

use crate::elements::{Element, UniPoly, Var};
use crate::twists::{apply_theta, word_sum, TwistFamily, TwistTable};
use crate::{Error, Result};

/// A failed identity: what was checked, at which inputs, and both sides.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub description: String,
    pub inputs: String,
    pub lhs: Element,
    pub rhs: Element,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} at {}: lhs = {}, rhs = {}",
            self.description, self.inputs, self.lhs, self.rhs
        )
    }
}

/// Outcome of a bounded-degree check up to degree `N`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    #[serde(rename = "N")]
    pub tested_range: usize,
}

impl CheckReport {
    pub fn pass(n: usize) -> Self {
        CheckReport { passed: true, counterexample: None, tested_range: n }
    }

    pub fn fail(n: usize, ce: Counterexample) -> Self {
        debug_assert!(ce.lhs != ce.rhs);
        CheckReport { passed: false, counterexample: Some(ce), tested_range: n }
    }
}

/// τ fixes tensors with 1: `τ(1 ⊗ x^n) = x^n ⊗ 1` and `τ(y^m ⊗ 1) = 1 ⊗ y^m`
/// for all `m, n ≤ N`.
pub fn check_normal(t: &TwistTable, n_max: usize) -> CheckReport {
    let field = t.field();
    for n in 0..=n_max {
        let lhs = t.twist_eval(0, n);
        let rhs = Element::monomial(field, n, 0);
        if lhs != rhs {
            return CheckReport::fail(
                n_max,
                Counterexample {
                    description: "normality on the x side".into(),
                    inputs: format!("m=0, n={n}"),
                    lhs,
                    rhs,
                },
            );
        }
    }
    for m in 0..=n_max {
        let lhs = t.twist_eval(m, 0);
        let rhs = Element::monomial(field, 0, m);
        if lhs != rhs {
            return CheckReport::fail(
                n_max,
                Counterexample {
                    description: "normality on the y side".into(),
                    inputs: format!("m={m}, n=0"),
                    lhs,
                    rhs,
                },
            );
        }
    }
    CheckReport::pass(n_max)
}

/// The two multiplicativity identities on monomial triples of total degree
/// at most `N`, with every occurrence of τ evaluated through the table:
///
/// * `τ(y^m ⊗ x^{n₁}x^{n₂})` against routing `x^{n₁}` then `x^{n₂}`;
/// * `τ(y^{m₁}y^{m₂} ⊗ x^n)` against routing `y^{m₂}` then `y^{m₁}`.
pub fn check_multiplicative(t: &TwistTable, n_max: usize) -> CheckReport {
    let field = t.field();
    for m in 0..=n_max {
        for n1 in 0..=(n_max - m) {
            for n2 in 0..=(n_max - m - n1) {
                let lhs = t.twist_eval(m, n1 + n2);
                let mut rhs = Element::zero(field);
                for (mono, c) in t.twist_eval(m, n1).iter() {
                    let inner = t.twist_eval(mono.ydeg, n2).shift(mono.xdeg, 0);
                    rhs = rhs.add(&inner.scale(c)).expect("same field");
                }
                if lhs != rhs {
                    return CheckReport::fail(
                        n_max,
                        Counterexample {
                            description: "multiplicativity in the x factor".into(),
                            inputs: format!("m={m}, split x^{n1}·x^{n2}"),
                            lhs,
                            rhs,
                        },
                    );
                }
            }
        }
    }
    for m1 in 0..=n_max {
        for m2 in 0..=(n_max - m1) {
            for n in 0..=(n_max - m1 - m2) {
                let lhs = t.twist_eval(m1 + m2, n);
                let mut rhs = Element::zero(field);
                for (mono, c) in t.twist_eval(m2, n).iter() {
                    let outer = t.twist_eval(m1, mono.xdeg).shift(0, mono.ydeg);
                    rhs = rhs.add(&outer.scale(c)).expect("same field");
                }
                if lhs != rhs {
                    return CheckReport::fail(
                        n_max,
                        Counterexample {
                            description: "multiplicativity in the y factor".into(),
                            inputs: format!("split y^{m1}·y^{m2}, n={n}"),
                            lhs,
                            rhs,
                        },
                    );
                }
            }
        }
    }
    CheckReport::pass(n_max)
}

/// Associativity `(uv)w = u(vw)` and the unit laws for the twisted product,
/// on monomials of total degree at most `N`.
pub fn check_associative(t: &TwistTable, n_max: usize) -> CheckReport {
    let field = t.field();
    let one = Element::one(field);
    let monomials = monomials_up_to(n_max);
    for &(a, b) in &monomials {
        let u = Element::monomial(field, a, b);
        let left = t.multiply(&one, &u).expect("same field");
        let right = t.multiply(&u, &one).expect("same field");
        if left != u || right != u {
            let bad = if left != u { left } else { right };
            return CheckReport::fail(
                n_max,
                Counterexample {
                    description: "unit law".into(),
                    inputs: format!("u = x^{a}y^{b}"),
                    lhs: bad,
                    rhs: u,
                },
            );
        }
    }
    for &(a1, b1) in &monomials {
        for &(a2, b2) in &monomials {
            let d12 = a1 + b1 + a2 + b2;
            if d12 > n_max {
                continue;
            }
            let u = Element::monomial(field, a1, b1);
            let v = Element::monomial(field, a2, b2);
            let uv = t.multiply(&u, &v).expect("same field");
            for &(a3, b3) in &monomials {
                if d12 + a3 + b3 > n_max {
                    continue;
                }
                let w = Element::monomial(field, a3, b3);
                let lhs = t.multiply(&uv, &w).expect("same field");
                let vw = t.multiply(&v, &w).expect("same field");
                let rhs = t.multiply(&u, &vw).expect("same field");
                if lhs != rhs {
                    return CheckReport::fail(
                        n_max,
                        Counterexample {
                            description: "associativity".into(),
                            inputs: format!(
                                "u = x^{a1}y^{b1}, v = x^{a2}y^{b2}, w = x^{a3}y^{b3}"
                            ),
                            lhs,
                            rhs,
                        },
                    );
                }
            }
        }
    }
    CheckReport::pass(n_max)
}

/// Centrality of `x^d ⊗ 1` and `1 ⊗ y^d`: both must commute with every
/// monomial of degree at most `N`. For explicit Ore families the operator
/// form is also verified: `θ^d = id` on `x^n`, and every word sum of length
/// `d` with fewer than `d` occurrences of `θ` vanishes on `x^n`, `n ≤ N`.
pub fn check_central_power(t: &TwistTable, d: usize, n_max: usize) -> CheckReport {
    let field = t.field();
    let centers = [(d, 0usize), (0usize, d)];
    for (zx, zy) in centers {
        let z = Element::monomial(field, zx, zy);
        for (a, b) in monomials_up_to(n_max) {
            let u = Element::monomial(field, a, b);
            let lhs = t.multiply(&z, &u).expect("same field");
            let rhs = t.multiply(&u, &z).expect("same field");
            if lhs != rhs {
                return CheckReport::fail(
                    n_max,
                    Counterexample {
                        description: format!("x^{zx}y^{zy} fails to be central"),
                        inputs: format!("z = x^{zx}y^{zy}, u = x^{a}y^{b}"),
                        lhs,
                        rhs,
                    },
                );
            }
        }
    }
    if let TwistFamily::Ore { theta, delta } = t.family() {
        for n in 0..=n_max {
            let xn = UniPoly::monomial(field, Var::X, n);
            let mut pow = xn.clone();
            for _ in 0..d {
                pow = apply_theta(theta, &pow);
            }
            if pow != xn {
                return CheckReport::fail(
                    n_max,
                    Counterexample {
                        description: format!("θ^{d} is not the identity"),
                        inputs: format!("input x^{n}"),
                        lhs: Element::tensor(&pow, &UniPoly::one(field, Var::Y)).expect("same field"),
                        rhs: Element::monomial(field, n, 0),
                    },
                );
            }
            for i in 0..d {
                let s = word_sum(theta, delta, d, i, &xn);
                if !s.is_zero() {
                    return CheckReport::fail(
                        n_max,
                        Counterexample {
                            description: format!(
                                "word sum of length {d} with {i} automorphism letters is nonzero"
                            ),
                            inputs: format!("input x^{n}"),
                            lhs: Element::tensor(&s, &UniPoly::one(field, Var::Y)).expect("same field"),
                            rhs: Element::zero(field),
                        },
                    );
                }
            }
        }
    }
    CheckReport::pass(n_max)
}

/// Stability of the leg-wise ideals `(P) ⊆ k[x]` and `(Q) ⊆ k[y]` under τ:
/// every x-profile of `τ(y^m ⊗ x^a P)` must be divisible by `P`, and every
/// y-profile of `τ(y^b Q ⊗ x^n)` by `Q`, for `m + a + deg P ≤ N`
/// (symmetrically for `Q`). This is the bounded-degree form of the
/// ideal-stability hypothesis under which a twist descends to the quotient.
pub fn check_ideal_stability(
    t: &TwistTable,
    px: &UniPoly,
    qy: &UniPoly,
    n_max: usize,
) -> Result<CheckReport> {
    for (poly, var) in [(px, Var::X), (qy, Var::Y)] {
        if poly.var() != var {
            return Err(Error::InvalidConfig(format!(
                "expected a polynomial in {var}, got one in {}",
                poly.var()
            )));
        }
        if !poly.is_monic() || poly.degree() == Some(0) {
            return Err(Error::InvalidConfig(format!(
                "ideal generator {poly} must be monic and nonconstant"
            )));
        }
    }
    let field = t.field();
    let dp = px.degree().unwrap();
    for m in 0..=n_max {
        for a in 0..=n_max.saturating_sub(m + dp) {
            // τ(y^m ⊗ x^a·P), by linearity in the x argument.
            let mut image = Element::zero(field);
            for (c_deg, c) in px.shift(a).coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                image = image.add(&t.twist_eval(m, c_deg).scale(c)).expect("same field");
            }
            for (b, profile) in image.x_profiles() {
                let rem = profile.rem(px);
                if !rem.is_zero() {
                    let lhs = Element::tensor(&profile, &UniPoly::monomial(field, Var::Y, b))
                        .expect("same field");
                    let rhs = Element::tensor(&profile.sub(&rem), &UniPoly::monomial(field, Var::Y, b))
                        .expect("same field");
                    return Ok(CheckReport::fail(
                        n_max,
                        Counterexample {
                            description: format!(
                                "x-profile of τ(y^{m} ⊗ x^{a}·({px})) at y^{b} is not divisible by {px}"
                            ),
                            inputs: format!("m={m}, a={a}"),
                            lhs,
                            rhs,
                        },
                    ));
                }
            }
        }
    }
    let dq = qy.degree().unwrap();
    for n in 0..=n_max {
        for b in 0..=n_max.saturating_sub(n + dq) {
            let mut image = Element::zero(field);
            for (c_deg, c) in qy.shift(b).coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                image = image.add(&t.twist_eval(c_deg, n).scale(c)).expect("same field");
            }
            for (a, profile) in image.y_profiles() {
                let rem = profile.rem(qy);
                if !rem.is_zero() {
                    let lhs = Element::tensor(&UniPoly::monomial(field, Var::X, a), &profile)
                        .expect("same field");
                    let rhs = Element::tensor(
                        &UniPoly::monomial(field, Var::X, a),
                        &profile.sub(&rem),
                    )
                    .expect("same field");
                    return Ok(CheckReport::fail(
                        n_max,
                        Counterexample {
                            description: format!(
                                "y-profile of τ(y^{b}·({qy}) ⊗ x^{n}) at x^{a} is not divisible by {qy}"
                            ),
                            inputs: format!("b={b}, n={n}"),
                            lhs,
                            rhs,
                        },
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass(n_max))
}

/// The centralizing-subalgebra hypothesis at order `ℓ`: τ agrees with the
/// tensor swap whenever either argument lies in `k[x^ℓ]` resp. `k[y^ℓ]`,
/// checked on monomials with each degree at most `N`. A pass certifies, at
/// test depth, the sufficient condition for the twist to descend to every
/// quotient by ideals generated inside those subalgebras.
pub fn check_centralize_hypothesis(t: &TwistTable, ell: usize, n_max: usize) -> CheckReport {
    assert!(ell >= 1, "centrality order must be positive");
    let field = t.field();
    for m in 0..=n_max {
        for a in 0..=(n_max / ell) {
            let lhs = t.twist_eval(m, ell * a);
            let rhs = Element::monomial(field, ell * a, m);
            if lhs != rhs {
                return CheckReport::fail(
                    n_max,
                    Counterexample {
                        description: format!("τ does not swap k[x^{ell}] past y-monomials"),
                        inputs: format!("m={m}, n={}", ell * a),
                        lhs,
                        rhs,
                    },
                );
            }
        }
    }
    for b in 0..=(n_max / ell) {
        for n in 0..=n_max {
            let lhs = t.twist_eval(ell * b, n);
            let rhs = Element::monomial(field, n, ell * b);
            if lhs != rhs {
                return CheckReport::fail(
                    n_max,
                    Counterexample {
                        description: format!("τ does not swap k[y^{ell}] past x-monomials"),
                        inputs: format!("m={}, n={n}", ell * b),
                        lhs,
                        rhs,
                    },
                );
            }
        }
    }
    CheckReport::pass(n_max)
}

/// Monomial exponent pairs `(a, b)` with `a + b ≤ n_max`, in lexicographic
/// order.
fn monomials_up_to(n_max: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=n_max {
        for b in 0..=(n_max - a) {
            out.push((a, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::TensorMonomial;
    use crate::scalars::{primitive_root, FieldSpec};
    use crate::twists::TwistFamily;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn table(family: TwistFamily) -> TwistTable {
        TwistTable::new(q(), family).unwrap()
    }

    #[test]
    fn normality_passes_for_builtins() {
        let field = FieldSpec::cyclotomic(3).unwrap();
        let root = primitive_root(&field, 3).unwrap();
        assert!(check_normal(&TwistTable::new(field, TwistFamily::Quantum { q: root }).unwrap(), 10).passed);
        assert!(check_normal(&table(TwistFamily::Jordan), 10).passed);
    }

    #[test]
    fn corrupted_table_fails_normality_with_witness() {
        let t = table(TwistFamily::Swap);
        let mut bad = Element::monomial(q(), 0, 1);
        bad.add_term(TensorMonomial::new(0, 0), q().one());
        t.override_value(1, 0, bad);
        let report = check_normal(&t, 2);
        assert!(!report.passed);
        let ce = report.counterexample.unwrap();
        assert_eq!(ce.inputs, "m=1, n=0");
        assert_ne!(ce.lhs, ce.rhs);
    }

    #[test]
    fn multiplicativity_passes_even_without_continuity() {
        // The Weyl twist in characteristic zero has no central powers, but
        // it is still a perfectly good twisting map.
        assert!(check_multiplicative(&table(TwistFamily::Weyl), 8).passed);
        let field = FieldSpec::cyclotomic(3).unwrap();
        let root = primitive_root(&field, 3).unwrap();
        let t = TwistTable::new(field, TwistFamily::QWeyl { q: root }).unwrap();
        assert!(check_multiplicative(&t, 8).passed);
    }

    #[test]
    fn scaled_generator_breaks_multiplicativity() {
        // Swap values everywhere except τ(y ⊗ x) = 2·x⊗y.
        let t = table(TwistFamily::Swap);
        t.override_value(1, 1, Element::term(q(), 1, 1, q().from_int(2)));
        let report = check_multiplicative(&t, 3);
        assert!(!report.passed);
        let ce = report.counterexample.unwrap();
        assert_eq!(ce.inputs, "m=1, split x^1·x^1");
    }

    #[test]
    fn associativity_matches_normal_plus_multiplicative() {
        let fams = vec![
            table(TwistFamily::Swap),
            table(TwistFamily::Quantum { q: q().from_int(-1) }),
            table(TwistFamily::Jordan),
        ];
        for t in &fams {
            assert!(check_associative(t, 6).passed);
        }
        let t = table(TwistFamily::Swap);
        t.override_value(1, 1, Element::term(q(), 1, 1, q().from_int(2)));
        assert!(!check_associative(&t, 3).passed);
        assert!(!check_multiplicative(&t, 3).passed);
        assert!(check_normal(&t, 3).passed);
    }

    #[test]
    fn central_powers_of_quantum_and_jordan() {
        let field = FieldSpec::cyclotomic(3).unwrap();
        let root = primitive_root(&field, 3).unwrap();
        let t = TwistTable::new(field, TwistFamily::Quantum { q: root }).unwrap();
        assert!(check_central_power(&t, 3, 10).passed);

        let f5 = FieldSpec::prime(5).unwrap();
        let t = TwistTable::new(f5, TwistFamily::Jordan).unwrap();
        assert!(check_central_power(&t, 5, 10).passed);
    }

    #[test]
    fn weyl_char_zero_has_no_central_powers() {
        let t = table(TwistFamily::Weyl);
        for d in 1..=12 {
            let report = check_central_power(&t, d, 12);
            assert!(!report.passed, "d={d}");
            let ce = report.counterexample.unwrap();
            // Witness: (1⊗y)(x^d⊗1) = τ(y ⊗ x^d) = x^d⊗y + d·x^{d-1}⊗1.
            let mut expected = Element::monomial(q(), d, 1);
            expected.add_term(TensorMonomial::new(d - 1, 0), q().from_int(d as i64));
            assert_eq!(ce.rhs, expected, "d={d}");
        }
    }

    #[test]
    fn ore_word_conditions_checked_for_explicit_ore() {
        let x = UniPoly::monomial(q(), Var::X, 1);
        let minus_one = q().from_int(-1);
        let ok = table(TwistFamily::Ore {
            theta: x.scale(&minus_one),
            delta: UniPoly::zero(q(), Var::X),
        });
        assert!(check_central_power(&ok, 2, 8).passed);
        // θ = id with δ = ∂ never satisfies the word condition in char 0.
        let bad = table(TwistFamily::Ore {
            theta: x,
            delta: UniPoly::one(q(), Var::X),
        });
        let report = check_central_power(&bad, 2, 8);
        assert!(!report.passed);
    }

    #[test]
    fn stability_examples() {
        let px = UniPoly::from_ints(q(), Var::X, &[-1, 0, 1]);
        let qy = UniPoly::from_ints(q(), Var::Y, &[-1, 0, 1]);
        let t = table(TwistFamily::Swap);
        assert!(check_ideal_stability(&t, &px, &qy, 8).unwrap().passed);

        let t = table(TwistFamily::Quantum { q: q().from_int(-1) });
        assert!(check_ideal_stability(&t, &px, &qy, 8).unwrap().passed);

        let t = table(TwistFamily::Weyl);
        let px = UniPoly::monomial(q(), Var::X, 2);
        let qy = UniPoly::monomial(q(), Var::Y, 2);
        let report = check_ideal_stability(&t, &px, &qy, 6).unwrap();
        assert!(!report.passed);
        let ce = report.counterexample.unwrap();
        assert_eq!(ce.inputs, "m=1, a=0");
        // The escaping profile is 2x ⊗ 1.
        assert_eq!(ce.lhs, Element::term(q(), 1, 0, q().from_int(2)));
    }

    #[test]
    fn stability_rejects_nonmonic_generators() {
        let t = table(TwistFamily::Swap);
        let px = UniPoly::from_ints(q(), Var::X, &[1, 2]);
        let qy = UniPoly::monomial(q(), Var::Y, 2);
        assert!(check_ideal_stability(&t, &px, &qy, 4).is_err());
        let constant = UniPoly::one(q(), Var::X);
        assert!(check_ideal_stability(&t, &constant, &qy, 4).is_err());
    }

    #[test]
    fn centralize_hypothesis_examples() {
        let field = FieldSpec::cyclotomic(4).unwrap();
        let root = primitive_root(&field, 4).unwrap();
        let t = TwistTable::new(field, TwistFamily::QWeyl { q: root }).unwrap();
        assert!(check_centralize_hypothesis(&t, 4, 12).passed);

        let t = table(TwistFamily::Jordan);
        for ell in 1..=6 {
            assert!(!check_centralize_hypothesis(&t, ell, 12).passed, "ell={ell}");
        }

        assert!(check_centralize_hypothesis(&table(TwistFamily::Swap), 1, 6).passed);
    }

    #[test]
    fn centralize_implies_stability_for_subalgebra_ideals() {
        let field = FieldSpec::cyclotomic(2).unwrap();
        let root = primitive_root(&field, 2).unwrap();
        let t = TwistTable::new(field, TwistFamily::Quantum { q: root }).unwrap();
        assert!(check_centralize_hypothesis(&t, 2, 10).passed);
        for (pc, qc) in [
            (vec![0i64, 0, 1], vec![0i64, 0, 1]),
            (vec![-1, 0, 1], vec![-1, 0, 1]),
            (vec![0, 0, 0, 0, 1], vec![-1, 0, 1]),
            (vec![1, 0, -1, 0, 1], vec![0, 0, 0, 0, 1]),
        ] {
            let px = UniPoly::new(field, Var::X, pc.iter().map(|&c| field.from_int(c)).collect());
            let qy = UniPoly::new(field, Var::Y, qc.iter().map(|&c| field.from_int(c)).collect());
            assert!(px.supported_on_multiples_of(2) && qy.supported_on_multiples_of(2));
            assert!(check_ideal_stability(&t, &px, &qy, 10).unwrap().passed);
        }
    }
}
