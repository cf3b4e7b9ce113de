//! Twisting maps `τ: k[y] ⊗ k[x] → k[x] ⊗ k[y]` for the built-in families,
//! with three independent evaluation routes:
//!
//! * `twist_eval` — per-family closed forms on monomials;
//! * `twist_eval_relation` — generic extension of the generator value
//!   `τ(y ⊗ x)` using only normality and the two multiplicativity
//!   identities, by memoized mutual recursion;
//! * `ore_word_expansion` — brute-force expansion over all words in the
//!   automorphism and the derivation, for families with Ore structure.
//!
//! The twisted multiplication `m_τ` routes middle tensor factors through
//! the table: `(x^a ⊗ y^b)(x^c ⊗ y^d) = x^a · τ(y^b ⊗ x^c) · y^d`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::elements::{Element, TensorMonomial, UniPoly, Var};
use crate::scalars::{
    binomial, factorial, q_binomial, q_factorial, rising_product, FieldSpec, Scalar,
};
use crate::{Error, Result};

/// A built-in or user-supplied twisting map family.
///
/// `Ore { theta, delta }` is the twist of the skew polynomial ring
/// `k[x][y; θ, δ]` with `y·f = θ(f)·y + δ(f)`: `theta` is the image `θ(x)`
/// (an affine polynomial `u·x + v` with `u` invertible, so that `θ` is an
/// algebra automorphism of `k[x]`) and `delta` is the image `δ(x)` of the
/// left θ-derivation, extended by `δ(fg) = θ(f)δ(g) + δ(f)g`.
#[derive(Clone, Debug, PartialEq)]
pub enum TwistFamily {
    /// The tensor swap; recovers the commutative product `k[x,y]`.
    Swap,
    /// `yx = q·xy` (the quantum plane).
    Quantum { q: Scalar },
    /// `yx - q·xy = 1` with `q ≠ 1` (the quantized Weyl algebra).
    QWeyl { q: Scalar },
    /// `yx - xy = y²` (the Jordan plane).
    Jordan,
    /// `yx - xy = 1` (the Weyl algebra).
    Weyl,
    /// A general Ore twist determined by `θ(x)` and `δ(x)`.
    Ore { theta: UniPoly, delta: UniPoly },
}

impl TwistFamily {
    pub(crate) fn validate(&self, field: &FieldSpec) -> Result<()> {
        match self {
            TwistFamily::Swap | TwistFamily::Jordan | TwistFamily::Weyl => Ok(()),
            TwistFamily::Quantum { q } => {
                if q.field() != *field {
                    return Err(Error::FieldMismatch(q.field().to_string(), field.to_string()));
                }
                if q.is_zero() {
                    return Err(Error::InvalidConfig("quantum parameter q must be nonzero".into()));
                }
                Ok(())
            }
            TwistFamily::QWeyl { q } => {
                if q.field() != *field {
                    return Err(Error::FieldMismatch(q.field().to_string(), field.to_string()));
                }
                if q.is_zero() || q.is_one() {
                    return Err(Error::InvalidConfig(
                        "quantized Weyl parameter q must be neither 0 nor 1".into(),
                    ));
                }
                Ok(())
            }
            TwistFamily::Ore { theta, delta } => {
                if theta.field() != *field || delta.field() != *field {
                    return Err(Error::FieldMismatch(theta.field().to_string(), field.to_string()));
                }
                if theta.var() != Var::X || delta.var() != Var::X {
                    return Err(Error::InvalidConfig(
                        "Ore data must be polynomials in x".into(),
                    ));
                }
                if theta.degree() != Some(1) {
                    return Err(Error::InvalidConfig(
                        "θ(x) must have degree exactly 1".into(),
                    ));
                }
                if theta.leading().map(Scalar::is_zero).unwrap_or(true) {
                    return Err(Error::InvalidConfig(
                        "θ(x) must have an invertible leading coefficient".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// The generator value `τ(y ⊗ x)`.
    pub fn generator_value(&self, field: &FieldSpec) -> Element {
        match self {
            TwistFamily::Swap => Element::monomial(*field, 1, 1),
            TwistFamily::Quantum { q } => Element::term(*field, 1, 1, q.clone()),
            TwistFamily::QWeyl { q } => {
                let mut e = Element::term(*field, 1, 1, q.clone());
                e.add_term(TensorMonomial::new(0, 0), field.one());
                e
            }
            TwistFamily::Jordan => {
                let mut e = Element::monomial(*field, 1, 1);
                e.add_term(TensorMonomial::new(0, 2), field.one());
                e
            }
            TwistFamily::Weyl => {
                let mut e = Element::monomial(*field, 1, 1);
                e.add_term(TensorMonomial::new(0, 0), field.one());
                e
            }
            TwistFamily::Ore { theta, delta } => {
                let mut e = Element::zero(*field);
                for (a, c) in theta.coeffs().iter().enumerate() {
                    e.add_term(TensorMonomial::new(a, 1), c.clone());
                }
                for (a, c) in delta.coeffs().iter().enumerate() {
                    e.add_term(TensorMonomial::new(a, 0), c.clone());
                }
                e
            }
        }
    }

    /// `(θ(x), δ(x))` for families that arise as Ore twists of `k[x]`.
    /// The Jordan twist is not of this form in the `k[x]`-first orientation.
    pub fn ore_structure(&self, field: &FieldSpec) -> Option<(UniPoly, UniPoly)> {
        let x = UniPoly::monomial(*field, Var::X, 1);
        let one = UniPoly::one(*field, Var::X);
        let zero = UniPoly::zero(*field, Var::X);
        match self {
            TwistFamily::Swap => Some((x, zero)),
            TwistFamily::Quantum { q } => Some((x.scale(q), zero)),
            TwistFamily::QWeyl { q } => Some((x.scale(q), one)),
            TwistFamily::Weyl => Some((x, one)),
            TwistFamily::Jordan => None,
            TwistFamily::Ore { theta, delta } => Some((theta.clone(), delta.clone())),
        }
    }

    /// The natural order `d` for which `x^d` and `y^d` are expected to be
    /// central: the multiplicative order of `q` for the quantum families,
    /// the characteristic for Jordan/Weyl, `1` for the swap, and for Ore
    /// twists the smallest `d ≤ bound` satisfying the central-power
    /// condition (`θ^d = id` and all word sums of length `d` with fewer
    /// than `d` occurrences of `θ` vanishing).
    pub fn central_order(&self, field: &FieldSpec, bound: usize) -> Option<usize> {
        match self {
            TwistFamily::Swap => Some(1),
            TwistFamily::Quantum { q } => q.multiplicative_order(bound),
            TwistFamily::QWeyl { q } => q.multiplicative_order(bound),
            TwistFamily::Jordan | TwistFamily::Weyl => {
                let p = field.characteristic();
                (p > 0).then_some(p as usize)
            }
            TwistFamily::Ore { theta, delta } => (1..=bound).find(|&d| {
                central_power_condition_holds(theta, delta, d, 8)
            }),
        }
    }

    /// The family spec string understood by the parser in `cli`.
    pub fn spec_string(&self, field: &FieldSpec) -> String {
        let field_part = match field {
            FieldSpec::Rationals => "char0".to_string(),
            FieldSpec::Cyclotomic { ell } => format!("ell={ell}"),
            FieldSpec::Prime { p } => format!("p={p}"),
        };
        match self {
            TwistFamily::Swap => format!("swap:{field_part}"),
            TwistFamily::Quantum { q } => format!("quantum:{field_part},q={q}"),
            TwistFamily::QWeyl { q } => format!("qweyl:{field_part},q={q}"),
            TwistFamily::Jordan => format!("jordan:{field_part}"),
            TwistFamily::Weyl => format!("weyl:{field_part}"),
            TwistFamily::Ore { theta, delta } => {
                let u = theta.coeff(1);
                let v = theta.coeff(0);
                let ds: Vec<String> = delta.coeffs().iter().map(|c| c.to_string()).collect();
                format!("ore:{field_part},u={u},v={v},delta={}", ds.join(";"))
            }
        }
    }
}

impl fmt::Display for TwistFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistFamily::Swap => write!(f, "swap"),
            TwistFamily::Quantum { q } => write!(f, "quantum(q={q})"),
            TwistFamily::QWeyl { q } => write!(f, "qweyl(q={q})"),
            TwistFamily::Jordan => write!(f, "jordan"),
            TwistFamily::Weyl => write!(f, "weyl"),
            TwistFamily::Ore { theta, delta } => write!(f, "ore(theta={theta}, delta={delta})"),
        }
    }
}

/// Applies the algebra automorphism `θ` (determined by `θ(x) = theta`) to a
/// polynomial, by Horner substitution.
pub fn apply_theta(theta: &UniPoly, f: &UniPoly) -> UniPoly {
    let field = f.field();
    let mut acc = UniPoly::zero(field, Var::X);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(theta);
        acc = acc.add(&UniPoly::constant(field, Var::X, c.clone()));
    }
    acc
}

/// Applies the left θ-derivation `δ` (determined by `δ(x) = delta_x`):
/// `δ(x^n) = Σ_k θ(x)^k · δ(x) · x^{n-1-k}`, extended linearly. `δ(1) = 0`.
pub fn apply_delta(theta: &UniPoly, delta_x: &UniPoly, f: &UniPoly) -> UniPoly {
    let field = f.field();
    let mut out = UniPoly::zero(field, Var::X);
    if f.is_zero() {
        return out;
    }
    let n_max = f.degree().unwrap();
    // delta_powers[n] = δ(x^n), built from δ(x^n) = θ(x)·δ(x^{n-1}) + δ(x)·x^{n-1}.
    let mut delta_powers: Vec<UniPoly> = Vec::with_capacity(n_max + 1);
    delta_powers.push(UniPoly::zero(field, Var::X));
    for n in 1..=n_max {
        let prev = &delta_powers[n - 1];
        let next = theta.mul(prev).add(&delta_x.shift(n - 1));
        delta_powers.push(next);
    }
    for (n, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&delta_powers[n].scale(c));
        }
    }
    out
}

/// Applies the word encoded by `mask` (bit `k` set means the letter at
/// position `k` from the right is `θ`, clear means `δ`) of length `len`.
/// Letters act by composition with the leftmost letter applied last.
pub fn apply_word(theta: &UniPoly, delta_x: &UniPoly, mask: u64, len: usize, f: &UniPoly) -> UniPoly {
    let mut acc = f.clone();
    for k in 0..len {
        if mask >> k & 1 == 1 {
            acc = apply_theta(theta, &acc);
        } else {
            acc = apply_delta(theta, delta_x, &acc);
        }
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `Σ_{w ∈ W_i^d} w_{θ,δ}(f)`: the sum over all words of length `d` with
/// exactly `i` occurrences of `θ`, applied to `f`.
pub fn word_sum(theta: &UniPoly, delta_x: &UniPoly, d: usize, i: usize, f: &UniPoly) -> UniPoly {
    let field = f.field();
    let mut acc = UniPoly::zero(field, Var::X);
    for mask in 0u64..(1 << d) {
        if mask.count_ones() as usize != i {
            continue;
        }
        acc = acc.add(&apply_word(theta, delta_x, mask, d, f));
    }
    acc
}

/// Checks `θ^d = id` and the vanishing of all length-`d` word sums with
/// fewer than `d` occurrences of `θ`, on `x^n` for `n ≤ depth`.
pub fn central_power_condition_holds(
    theta: &UniPoly,
    delta_x: &UniPoly,
    d: usize,
    depth: usize,
) -> bool {
    let field = theta.field();
    for n in 0..=depth {
        let xn = UniPoly::monomial(field, Var::X, n);
        let mut pow = xn.clone();
        for _ in 0..d {
            pow = apply_theta(theta, &pow);
        }
        if pow != xn {
            return false;
        }
        for i in 0..d {
            if !word_sum(theta, delta_x, d, i, &xn).is_zero() {
                return false;
            }
        }
    }
    true
}

/// A twisting map together with memo tables for its monomial values.
///
/// The closed-form and relation-driven evaluators keep separate memo maps
/// so that they stay independent oracles for one another. Entries are
/// computed at most once and never mutated afterwards; the interior
/// mutexes make a shared table safe to use from several threads.
pub struct TwistTable {
    field: FieldSpec,
    family: TwistFamily,
    memo: Mutex<HashMap<(usize, usize), Element>>,
    rel_memo: Mutex<HashMap<(usize, usize), Element>>,
}

const RELATION_DEPTH_SLACK: usize = 64;

impl TwistTable {
    pub fn new(field: FieldSpec, family: TwistFamily) -> Result<Self> {
        family.validate(&field)?;
        Ok(TwistTable {
            field,
            family,
            memo: Mutex::new(HashMap::new()),
            rel_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn family(&self) -> &TwistFamily {
        &self.family
    }

    /// Overrides the stored value of `τ(y^m ⊗ x^n)`. Intended for injecting
    /// defects when exercising the axiom checkers on bad tables.
    pub fn override_value(&self, m: usize, n: usize, value: Element) {
        self.memo.lock().unwrap().insert((m, n), value);
    }

    /// `τ(y^m ⊗ x^n)` by the family's closed form, memoized.
    pub fn twist_eval(&self, m: usize, n: usize) -> Element {
        if let Some(hit) = self.memo.lock().unwrap().get(&(m, n)) {
            return hit.clone();
        }
        let value = self.closed_eval(m, n);
        self.memo
            .lock()
            .unwrap()
            .entry((m, n))
            .or_insert(value)
            .clone()
    }

    fn closed_eval(&self, m: usize, n: usize) -> Element {
        let field = self.field;
        if m == 0 {
            return Element::monomial(field, n, 0);
        }
        if n == 0 {
            return Element::monomial(field, 0, m);
        }
        match &self.family {
            TwistFamily::Swap => Element::monomial(field, n, m),
            TwistFamily::Quantum { q } => {
                Element::term(field, n, m, q.pow((m * n) as u64))
            }
            TwistFamily::QWeyl { q } => {
                // τ(y^m ⊗ x^n) = Σ_i [m i]_q [n m-i]_q [m-i]_q! q^{i(n-m+i)} x^{n-m+i} ⊗ y^i,
                // the coefficient vanishing (and the sum skipping) whenever m-i > n.
                let mut out = Element::zero(field);
                let lo = m.saturating_sub(n);
                for i in lo..=m {
                    let c = q_binomial(m, i, q)
                        .mul(&q_binomial(n, m - i, q))
                        .mul(&q_factorial(m - i, q))
                        .mul(&q.pow((i * (n + i - m)) as u64));
                    out.add_term(TensorMonomial::new(n + i - m, i), c);
                }
                out
            }
            TwistFamily::Jordan => {
                // τ(y^m ⊗ x^n) = Σ_i C(n,i) · m(m+1)⋯(m+n-i-1) · x^i ⊗ y^{m+n-i}.
                let mut out = Element::zero(field);
                for i in 0..=n {
                    let c = binomial(n, i) * rising_product(m, n - i);
                    out.add_term(TensorMonomial::new(i, m + n - i), field.from_bigint(&c));
                }
                out
            }
            TwistFamily::Weyl => {
                // τ(y^m ⊗ x^n) = Σ_i C(m,i) C(n,m-i) (m-i)! · x^{n-m+i} ⊗ y^i.
                let mut out = Element::zero(field);
                let lo = m.saturating_sub(n);
                for i in lo..=m {
                    let c = binomial(m, i) * binomial(n, m - i) * factorial(m - i);
                    out.add_term(TensorMonomial::new(n + i - m, i), field.from_bigint(&c));
                }
                out
            }
            TwistFamily::Ore { theta, delta } => {
                // Single Ore step: if τ(y^{k-1} ⊗ x^n) = Σ_b f_b ⊗ y^b then
                // τ(y^k ⊗ x^n) = Σ_b θ(f_b) ⊗ y^{b+1} + δ(f_b) ⊗ y^b.
                let mut start = m;
                let mut current = loop {
                    if start == 1 {
                        break Element::monomial(field, n, 0);
                    }
                    if let Some(hit) = self.memo.lock().unwrap().get(&(start - 1, n)) {
                        break hit.clone();
                    }
                    start -= 1;
                };
                for k in start..=m {
                    let mut next = Element::zero(field);
                    for (b, f_b) in current.x_profiles() {
                        let th = apply_theta(theta, &f_b);
                        for (a, c) in th.coeffs().iter().enumerate() {
                            next.add_term(TensorMonomial::new(a, b + 1), c.clone());
                        }
                        let de = apply_delta(theta, delta, &f_b);
                        for (a, c) in de.coeffs().iter().enumerate() {
                            next.add_term(TensorMonomial::new(a, b), c.clone());
                        }
                    }
                    self.memo.lock().unwrap().entry((k, n)).or_insert_with(|| next.clone());
                    current = next;
                }
                current
            }
        }
    }

    /// `τ(y^m ⊗ x^n)` computed from the generator value `τ(y ⊗ x)` alone,
    /// extended by normality and the two multiplicativity identities.
    /// Errors when the recursion exceeds its depth bound, which signals an
    /// inconsistent generator relation.
    pub fn twist_eval_relation(&self, m: usize, n: usize) -> Result<Element> {
        let budget = RELATION_DEPTH_SLACK + 4 * (m + n);
        self.relation_eval(m, n, budget)
    }

    fn relation_eval(&self, m: usize, n: usize, budget: usize) -> Result<Element> {
        if budget == 0 {
            return Err(Error::RecursionDepth);
        }
        if m == 0 {
            return Ok(Element::monomial(self.field, n, 0));
        }
        if n == 0 {
            return Ok(Element::monomial(self.field, 0, m));
        }
        if let Some(hit) = self.rel_memo.lock().unwrap().get(&(m, n)) {
            return Ok(hit.clone());
        }
        let value = if m == 1 && n == 1 {
            self.family.generator_value(&self.field)
        } else if m == 1 {
            // Split the x-leg: τ(y ⊗ x·x^{n-1}) routes the generator value
            // through the first multiplicativity identity.
            let gen = self.family.generator_value(&self.field);
            let mut acc = Element::zero(self.field);
            for (mono, c) in gen.iter() {
                let inner = self.relation_eval(mono.ydeg, n - 1, budget - 1)?;
                acc = acc.add(&inner.shift(mono.xdeg, 0).scale(c))?;
            }
            acc
        } else {
            // Split the y-leg: τ(y·y^{m-1} ⊗ x^n) via the second identity.
            let inner = self.relation_eval(m - 1, n, budget - 1)?;
            let mut acc = Element::zero(self.field);
            for (mono, c) in inner.iter() {
                let outer = self.relation_eval(1, mono.xdeg, budget - 1)?;
                acc = acc.add(&outer.shift(0, mono.ydeg).scale(c))?;
            }
            acc
        };
        self.rel_memo
            .lock()
            .unwrap()
            .entry((m, n))
            .or_insert_with(|| value.clone());
        Ok(value)
    }

    /// Twisted multiplication, extended bilinearly from
    /// `(x^a ⊗ y^b)(x^c ⊗ y^d) = x^a · τ(y^b ⊗ x^c) · y^d`.
    pub fn multiply(&self, u: &Element, v: &Element) -> Result<Element> {
        if u.field() != self.field || v.field() != self.field {
            return Err(Error::FieldMismatch(u.field().to_string(), v.field().to_string()));
        }
        let mut out = Element::zero(self.field);
        for (mu, cu) in u.iter() {
            for (mv, cv) in v.iter() {
                let mid = self.twist_eval(mu.ydeg, mv.xdeg);
                let coeff = cu.mul(cv);
                for (mono, c) in mid.iter() {
                    out.add_term(
                        TensorMonomial::new(mono.xdeg + mu.xdeg, mono.ydeg + mv.ydeg),
                        c.mul(&coeff),
                    );
                }
            }
        }
        Ok(out)
    }

    /// `τ(y^m ⊗ x^n)` through the residue reduction: with `m = m₁ℓ + m₀`
    /// and `n = n₁ℓ + n₀`, the value is `x^{n₁ℓ} · τ(y^{m₀} ⊗ x^{n₀}) ·
    /// y^{m₁ℓ}`, a sum of at most `ℓ` terms. Correct whenever `x^ℓ` and
    /// `y^ℓ` are central, which is the caller's responsibility and is
    /// checkable through the axioms module.
    pub fn reduced_twist_eval(&self, ell: usize, m: usize, n: usize) -> Element {
        assert!(ell >= 1, "centrality order must be positive");
        let m0 = m % ell;
        let n0 = n % ell;
        self.twist_eval(m0, n0).shift(n - n0, m - m0)
    }

    /// Brute-force word expansion `τ(y^m ⊗ x^n) = Σ_i Σ_{w ∈ W_i^m}
    /// w_{θ,δ}(x^n) ⊗ y^i` over all `2^m` words. `None` for families
    /// without Ore structure. Exponential; meant as a cross-check.
    pub fn ore_word_expansion(&self, m: usize, n: usize) -> Option<Element> {
        let (theta, delta) = self.family.ore_structure(&self.field)?;
        let xn = UniPoly::monomial(self.field, Var::X, n);
        let mut out = Element::zero(self.field);
        for mask in 0u64..(1 << m) {
            let i = mask.count_ones() as usize;
            let w = apply_word(&theta, &delta, mask, m, &xn);
            for (a, c) in w.coeffs().iter().enumerate() {
                out.add_term(TensorMonomial::new(a, i), c.clone());
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::primitive_root;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn table(family: TwistFamily) -> TwistTable {
        TwistTable::new(q(), family).unwrap()
    }

    fn quantum_over(field: FieldSpec, ell: u32) -> TwistTable {
        let root = primitive_root(&field, ell).unwrap();
        TwistTable::new(field, TwistFamily::Quantum { q: root }).unwrap()
    }

    #[test]
    fn quantum_closed_form() {
        let field = FieldSpec::cyclotomic(3).unwrap();
        let t = quantum_over(field, 3);
        let z = field.cyclotomic_generator().unwrap();
        // τ(y^2 ⊗ x^3) = q^6 x^3 ⊗ y^2
        assert_eq!(t.twist_eval(2, 3), Element::term(field, 3, 2, z.pow(6)));
    }

    #[test]
    fn jordan_generator_and_square() {
        let t = table(TwistFamily::Jordan);
        let mut expected = Element::monomial(q(), 1, 1);
        expected.add_term(TensorMonomial::new(0, 2), q().one());
        assert_eq!(t.twist_eval(1, 1), expected);

        // τ(y ⊗ x^2) = x^2⊗y + 2x⊗y^2 + 2⊗y^3, by the relation recursion.
        let mut expected = Element::monomial(q(), 2, 1);
        expected.add_term(TensorMonomial::new(1, 2), q().from_int(2));
        expected.add_term(TensorMonomial::new(0, 3), q().from_int(2));
        assert_eq!(t.twist_eval_relation(1, 2).unwrap(), expected);
        assert_eq!(t.twist_eval(1, 2), expected);
    }

    #[test]
    fn weyl_closed_form() {
        let t = table(TwistFamily::Weyl);
        // τ(y^2 ⊗ x) = x⊗y^2 + 2⊗y
        let mut expected = Element::monomial(q(), 1, 2);
        expected.add_term(TensorMonomial::new(0, 1), q().from_int(2));
        assert_eq!(t.twist_eval(2, 1), expected);
    }

    #[test]
    fn qweyl_generator() {
        let minus_one = q().from_int(-1);
        let t = table(TwistFamily::QWeyl { q: minus_one.clone() });
        let mut expected = Element::term(q(), 1, 1, minus_one);
        expected.add_term(TensorMonomial::new(0, 0), q().one());
        assert_eq!(t.twist_eval(1, 1), expected);
    }

    #[test]
    fn relation_recursion_peels_the_x_leg() {
        let field = FieldSpec::cyclotomic(4).unwrap();
        let t = quantum_over(field, 4);
        let z = field.cyclotomic_generator().unwrap();
        assert_eq!(
            t.twist_eval_relation(1, 2).unwrap(),
            Element::term(field, 2, 1, z.pow(2))
        );
    }

    #[test]
    fn normality_holds_for_every_family() {
        let families = vec![
            TwistFamily::Swap,
            TwistFamily::Quantum { q: q().from_int(-1) },
            TwistFamily::QWeyl { q: q().from_int(2) },
            TwistFamily::Jordan,
            TwistFamily::Weyl,
        ];
        for family in families {
            let t = table(family);
            for k in 0..=12 {
                assert_eq!(t.twist_eval(0, k), Element::monomial(q(), k, 0));
                assert_eq!(t.twist_eval(k, 0), Element::monomial(q(), 0, k));
                assert_eq!(t.twist_eval_relation(0, k).unwrap(), Element::monomial(q(), k, 0));
                assert_eq!(t.twist_eval_relation(k, 0).unwrap(), Element::monomial(q(), 0, k));
            }
        }
    }

    #[test]
    fn closed_form_matches_relation_recursion() {
        let f5 = FieldSpec::prime(5).unwrap();
        let tables = vec![
            table(TwistFamily::Swap),
            table(TwistFamily::Jordan),
            table(TwistFamily::Weyl),
            table(TwistFamily::QWeyl { q: q().from_int(-1) }),
            table(TwistFamily::QWeyl { q: q().from_int(2) }),
            quantum_over(FieldSpec::cyclotomic(3).unwrap(), 3),
            TwistTable::new(f5, TwistFamily::Jordan).unwrap(),
            TwistTable::new(f5, TwistFamily::Weyl).unwrap(),
        ];
        for t in &tables {
            for m in 0..=6 {
                for n in 0..=6 {
                    assert_eq!(
                        t.twist_eval(m, n),
                        t.twist_eval_relation(m, n).unwrap(),
                        "family {} at ({m},{n})",
                        t.family()
                    );
                }
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let field = FieldSpec::cyclotomic(3).unwrap();
        let t = quantum_over(field, 3);
        let z = field.cyclotomic_generator().unwrap();
        let y = Element::monomial(field, 0, 1);
        let x = Element::monomial(field, 1, 0);
        assert_eq!(t.multiply(&y, &x).unwrap(), Element::term(field, 1, 1, z));

        let t = table(TwistFamily::Swap);
        let u = Element::monomial(q(), 1, 0);
        let v = Element::monomial(q(), 0, 1);
        assert_eq!(t.multiply(&u, &v).unwrap(), t.multiply(&v, &u).unwrap());

        // qweyl(−1): y^2 is central at ℓ = 2, so (1⊗y^2)(x⊗1) = x⊗y^2.
        let t = table(TwistFamily::QWeyl { q: q().from_int(-1) });
        let y2 = Element::monomial(q(), 0, 2);
        let x = Element::monomial(q(), 1, 0);
        assert_eq!(t.multiply(&y2, &x).unwrap(), Element::monomial(q(), 1, 2));
    }

    #[test]
    fn reduced_twist_examples() {
        // qweyl at a primitive ℓth root: τ(y^ℓ ⊗ x^n) = x^n ⊗ y^ℓ.
        let field = FieldSpec::cyclotomic(4).unwrap();
        let root = primitive_root(&field, 4).unwrap();
        let t = TwistTable::new(field, TwistFamily::QWeyl { q: root }).unwrap();
        for n in 0..=9 {
            assert_eq!(t.reduced_twist_eval(4, 4, n), Element::monomial(field, n, 4));
        }

        let f3 = FieldSpec::prime(3).unwrap();
        let t = TwistTable::new(f3, TwistFamily::Jordan).unwrap();
        assert_eq!(t.reduced_twist_eval(3, 3, 4), Element::monomial(f3, 4, 3));
        assert_eq!(t.twist_eval(3, 4), Element::monomial(f3, 4, 3));

        let f5 = FieldSpec::prime(5).unwrap();
        let t = TwistTable::new(f5, TwistFamily::Weyl).unwrap();
        assert_eq!(t.reduced_twist_eval(5, 7, 6), t.twist_eval(7, 6));
    }

    #[test]
    fn reduced_equals_closed_when_powers_are_central() {
        let cases: Vec<(TwistTable, usize)> = vec![
            (quantum_over(FieldSpec::cyclotomic(3).unwrap(), 3), 3),
            (
                TwistTable::new(
                    FieldSpec::cyclotomic(4).unwrap(),
                    TwistFamily::QWeyl {
                        q: primitive_root(&FieldSpec::cyclotomic(4).unwrap(), 4).unwrap(),
                    },
                )
                .unwrap(),
                4,
            ),
            (TwistTable::new(FieldSpec::prime(3).unwrap(), TwistFamily::Jordan).unwrap(), 3),
            (TwistTable::new(FieldSpec::prime(3).unwrap(), TwistFamily::Weyl).unwrap(), 3),
        ];
        for (t, ell) in &cases {
            for m in 0..=(2 * ell + 3) {
                for n in 0..=(2 * ell + 3) {
                    assert_eq!(
                        t.reduced_twist_eval(*ell, m, n),
                        t.twist_eval(m, n),
                        "family {} ell={ell} at ({m},{n})",
                        t.family()
                    );
                }
            }
        }
    }

    #[test]
    fn word_expansion_matches_closed_form() {
        let minus_one = q().from_int(-1);
        let x = UniPoly::monomial(q(), Var::X, 1);
        let tables = vec![
            table(TwistFamily::Ore {
                theta: x.scale(&minus_one),
                delta: UniPoly::zero(q(), Var::X),
            }),
            table(TwistFamily::Ore {
                theta: x.clone(),
                delta: UniPoly::one(q(), Var::X),
            }),
            table(TwistFamily::Ore {
                theta: x.scale(&minus_one),
                delta: UniPoly::one(q(), Var::X),
            }),
            table(TwistFamily::Weyl),
        ];
        for t in &tables {
            for m in 0..=4 {
                for n in 0..=5 {
                    assert_eq!(
                        t.ore_word_expansion(m, n).unwrap(),
                        t.twist_eval(m, n),
                        "family {} at ({m},{n})",
                        t.family()
                    );
                }
            }
        }
    }

    #[test]
    fn ore_twist_agrees_with_named_families() {
        // ore(θ(x) = -x, δ = 0) is the quantum plane at q = -1;
        // ore(θ = id, δ(x) = 1) is the Weyl twist.
        let minus_one = q().from_int(-1);
        let x = UniPoly::monomial(q(), Var::X, 1);
        let ore_quantum = table(TwistFamily::Ore {
            theta: x.scale(&minus_one),
            delta: UniPoly::zero(q(), Var::X),
        });
        let quantum = table(TwistFamily::Quantum { q: minus_one });
        let ore_weyl = table(TwistFamily::Ore {
            theta: x,
            delta: UniPoly::one(q(), Var::X),
        });
        let weyl = table(TwistFamily::Weyl);
        for m in 0..=6 {
            for n in 0..=6 {
                assert_eq!(ore_quantum.twist_eval(m, n), quantum.twist_eval(m, n));
                assert_eq!(ore_weyl.twist_eval(m, n), weyl.twist_eval(m, n));
            }
        }
    }

    #[test]
    fn quantum_swap_decomposition() {
        // τ_q = σ − (1−q)·ξ_q with ξ_q(y^m ⊗ x^n) = [(n mod ℓ)(m mod ℓ)]_q x^n ⊗ y^m
        // when both residues are nonzero, and 0 otherwise.
        for ell in [2u32, 3, 4] {
            let field = FieldSpec::cyclotomic(ell).unwrap();
            let root = primitive_root(&field, ell).unwrap();
            let t = quantum_over(field, ell);
            let one_minus_q = field.one().sub(&root);
            for m in 0..=(2 * ell as usize) {
                for n in 0..=(2 * ell as usize) {
                    let i = n % ell as usize;
                    let j = m % ell as usize;
                    let xi = if i == 0 || j == 0 {
                        Element::zero(field)
                    } else {
                        Element::term(field, n, m, crate::scalars::q_number(i * j, &root))
                    };
                    let swap = Element::monomial(field, n, m);
                    let expected = swap.sub(&xi.scale(&one_minus_q)).unwrap();
                    assert_eq!(t.twist_eval(m, n), expected, "ell={ell} ({m},{n})");
                }
            }
        }
    }

    #[test]
    fn q_derivation_commutation() {
        // ∂_q ∘ θ = q · θ ∘ ∂_q on x^n, with ∂_q x^n = [n]_q x^{n-1}.
        let field = FieldSpec::cyclotomic(3).unwrap();
        let root = primitive_root(&field, 3).unwrap();
        let theta = UniPoly::monomial(field, Var::X, 1).scale(&root);
        let delta = UniPoly::one(field, Var::X);
        for n in 0..=12 {
            let xn = UniPoly::monomial(field, Var::X, n);
            let dq = apply_delta(&theta, &delta, &xn);
            assert_eq!(
                dq,
                UniPoly::monomial(field, Var::X, n.saturating_sub(1))
                    .scale(&crate::scalars::q_number(n, &root))
                    .mul(&if n == 0 {
                        UniPoly::zero(field, Var::X)
                    } else {
                        UniPoly::one(field, Var::X)
                    })
            );
            let lhs = apply_delta(&theta, &delta, &apply_theta(&theta, &xn));
            let rhs = apply_theta(&theta, &apply_delta(&theta, &delta, &xn)).scale(&root);
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn invalid_families_are_rejected() {
        assert!(TwistTable::new(q(), TwistFamily::Quantum { q: q().zero() }).is_err());
        assert!(TwistTable::new(q(), TwistFamily::QWeyl { q: q().one() }).is_err());
        let bad_theta = UniPoly::from_ints(q(), Var::X, &[0, 0, 1]);
        assert!(TwistTable::new(
            q(),
            TwistFamily::Ore { theta: bad_theta, delta: UniPoly::zero(q(), Var::X) }
        )
        .is_err());
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(TwistTable::new(f5, TwistFamily::Quantum { q: q().one() }).is_err());
    }

    #[test]
    fn central_orders() {
        let field = FieldSpec::cyclotomic(4).unwrap();
        let root = primitive_root(&field, 4).unwrap();
        assert_eq!(TwistFamily::Quantum { q: root }.central_order(&field, 16), Some(4));
        assert_eq!(TwistFamily::Jordan.central_order(&q(), 16), None);
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(TwistFamily::Weyl.central_order(&f5, 16), Some(5));
        assert_eq!(TwistFamily::Swap.central_order(&q(), 16), Some(1));

        let x = UniPoly::monomial(q(), Var::X, 1);
        let ore = TwistFamily::Ore {
            theta: x.scale(&q().from_int(-1)),
            delta: UniPoly::zero(q(), Var::X),
        };
        assert_eq!(ore.central_order(&q(), 16), Some(2));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn element() -> impl Strategy<Value = Element> {
            proptest::collection::vec(((0usize..4, 0usize..4), -3i64..=3), 0..5).prop_map(|v| {
                let mut e = Element::zero(FieldSpec::Rationals);
                for ((a, b), c) in v {
                    e.add_term(TensorMonomial::new(a, b), FieldSpec::Rationals.from_int(c));
                }
                e
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn swap_multiplication_is_commutative(u in element(), v in element()) {
                let t = TwistTable::new(FieldSpec::Rationals, TwistFamily::Swap).unwrap();
                prop_assert_eq!(t.multiply(&u, &v).unwrap(), t.multiply(&v, &u).unwrap());
            }

            #[test]
            fn multiplication_distributes(u in element(), v in element(), w in element()) {
                let t = TwistTable::new(FieldSpec::Rationals, TwistFamily::Jordan).unwrap();
                let lhs = t.multiply(&u, &v.add(&w).unwrap()).unwrap();
                let rhs = t.multiply(&u, &v).unwrap().add(&t.multiply(&u, &w).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
