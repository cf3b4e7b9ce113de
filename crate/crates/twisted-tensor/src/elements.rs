//! Sparse exact elements of `k[x] ⊗ k[y]` and univariate polynomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::scalars::{FieldSpec, Scalar};
use crate::{Error, Result};

/// Variable tag for univariate polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => write!(f, "x"),
            Var::Y => write!(f, "y"),
        }
    }
}

/// A univariate polynomial with exact coefficients, ascending, trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    field: FieldSpec,
    var: Var,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: FieldSpec, var: Var, coeffs: Vec<Scalar>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().map(Scalar::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { field, var, coeffs }
    }

    pub fn zero(field: FieldSpec, var: Var) -> Self {
        UniPoly { field, var, coeffs: vec![] }
    }

    pub fn one(field: FieldSpec, var: Var) -> Self {
        UniPoly::constant(field, var, field.one())
    }

    pub fn constant(field: FieldSpec, var: Var, c: Scalar) -> Self {
        UniPoly::new(field, var, vec![c])
    }

    /// The monomial `var^k`.
    pub fn monomial(field: FieldSpec, var: Var, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        UniPoly { field, var, coeffs }
    }

    pub fn from_ints(field: FieldSpec, var: Var, coeffs: &[i64]) -> Self {
        UniPoly::new(field, var, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(Scalar::is_one).unwrap_or(false)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(&other.coeff(k)));
        }
        UniPoly::new(self.field, self.var, out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            field: self.field,
            var: self.var,
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> UniPoly {
        if s.is_zero() {
            return UniPoly::zero(self.field, self.var);
        }
        UniPoly {
            field: self.field,
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field, self.var);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(self.field, self.var, out)
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { field: self.field, var: self.var, coeffs }
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem(&self, modulus: &UniPoly) -> UniPoly {
        assert!(modulus.is_monic(), "reduction requires a monic modulus");
        let md = modulus.degree().unwrap();
        let mut rem = self.coeffs.clone();
        while rem.len() > md {
            let lead = rem.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = rem.len() - md;
            for (k, c) in modulus.coeffs.iter().take(md).enumerate() {
                rem[shift + k] = rem[shift + k].sub(&lead.mul(c));
            }
        }
        UniPoly::new(self.field, self.var, rem)
    }

    pub fn divisible_by(&self, modulus: &UniPoly) -> bool {
        self.rem(modulus).is_zero()
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// True when every exponent with a nonzero coefficient is a multiple of
    /// `ell`, i.e. the polynomial lies in `k[var^ell]`.
    pub fn supported_on_multiples_of(&self, ell: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || k % ell == 0)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = scalar_factor_string(c);
            if out.is_empty() {
                if cs.starts_with('-') {
                    out.push('-');
                }
            } else if cs.starts_with('-') {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = cs.trim_start_matches('-');
            match k {
                0 => out.push_str(mag),
                _ => {
                    if mag != "1" {
                        out.push_str(mag);
                        out.push('*');
                    }
                    out.push_str(&self.var.to_string());
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        write!(f, "{out}")
    }
}

/// Renders a scalar for use as a multiplicative factor, parenthesizing
/// multi-term cyclotomic values so the result stays unambiguous.
fn scalar_factor_string(c: &Scalar) -> String {
    let s = c.to_string();
    let needs_parens = matches!(c, Scalar::Cyc { .. })
        && s.chars().skip(1).any(|ch| ch == '+' || ch == '-');
    if needs_parens {
        format!("({s})")
    } else {
        s
    }
}

/// A basis monomial `x^a ⊗ y^b` of the tensor square.
///
/// The derived ordering is lexicographic in `(xdeg, ydeg)`, which fixes the
/// canonical serialization order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TensorMonomial {
    #[serde(rename = "x")]
    pub xdeg: usize,
    #[serde(rename = "y")]
    pub ydeg: usize,
}

impl TensorMonomial {
    pub fn new(xdeg: usize, ydeg: usize) -> Self {
        TensorMonomial { xdeg, ydeg }
    }
}

impl fmt::Display for TensorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.xdeg, self.ydeg) {
            (0, 0) => write!(f, "1"),
            (a, 0) => write!(f, "x^{a}"),
            (0, b) => write!(f, "y^{b}"),
            (a, b) => write!(f, "x^{a}y^{b}"),
        }
    }
}

/// A sparse linear combination of tensor monomials over a fixed field.
/// Stored coefficients are never zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    field: FieldSpec,
    terms: BTreeMap<TensorMonomial, Scalar>,
}

impl Element {
    pub fn zero(field: FieldSpec) -> Self {
        Element { field, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Element::term(field, 0, 0, field.one())
    }

    /// The single term `c · x^a ⊗ y^b`.
    pub fn term(field: FieldSpec, xdeg: usize, ydeg: usize, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(TensorMonomial::new(xdeg, ydeg), c);
        }
        Element { field, terms }
    }

    pub fn monomial(field: FieldSpec, xdeg: usize, ydeg: usize) -> Self {
        Element::term(field, xdeg, ydeg, field.one())
    }

    /// `f ⊗ g` for `f ∈ k[x]`, `g ∈ k[y]`.
    pub fn tensor(f: &UniPoly, g: &UniPoly) -> Result<Element> {
        if f.field() != g.field() {
            return Err(Error::FieldMismatch(
                f.field().to_string(),
                g.field().to_string(),
            ));
        }
        if f.var() != Var::X || g.var() != Var::Y {
            return Err(Error::InvalidConfig(
                "tensor expects an x-polynomial on the left and a y-polynomial on the right".into(),
            ));
        }
        let mut out = Element::zero(f.field());
        for (a, fa) in f.coeffs().iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            for (b, gb) in g.coeffs().iter().enumerate() {
                if gb.is_zero() {
                    continue;
                }
                out.add_term(TensorMonomial::new(a, b), fa.mul(gb));
            }
        }
        Ok(out)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TensorMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, xdeg: usize, ydeg: usize) -> Scalar {
        self.terms
            .get(&TensorMonomial::new(xdeg, ydeg))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Adds `c` at the given monomial, dropping the entry if it cancels.
    pub fn add_term(&mut self, mono: TensorMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mono) {
            None => {
                self.terms.insert(mono, c);
            }
            Some(prev) => {
                let sum = prev.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(mono, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(*mono, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero(self.field);
        }
        Element {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul(s))).collect(),
        }
    }

    /// Multiplies every term by `x^dx ⊗ y^dy`.
    pub fn shift(&self, dx: usize, dy: usize) -> Element {
        Element {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (TensorMonomial::new(m.xdeg + dx, m.ydeg + dy), c.clone()))
                .collect(),
        }
    }

    /// Collects the x-polynomial sitting against each `y^b` leg.
    pub fn x_profiles(&self) -> BTreeMap<usize, UniPoly> {
        let mut map: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            map.entry(m.ydeg).or_default().push((m.xdeg, c.clone()));
        }
        map.into_iter()
            .map(|(b, terms)| {
                let deg = terms.iter().map(|(a, _)| *a).max().unwrap();
                let mut coeffs = vec![self.field.zero(); deg + 1];
                for (a, c) in terms {
                    coeffs[a] = c;
                }
                (b, UniPoly::new(self.field, Var::X, coeffs))
            })
            .collect()
    }

    /// Collects the y-polynomial sitting against each `x^a` leg.
    pub fn y_profiles(&self) -> BTreeMap<usize, UniPoly> {
        let mut map: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            map.entry(m.xdeg).or_default().push((m.ydeg, c.clone()));
        }
        map.into_iter()
            .map(|(a, terms)| {
                let deg = terms.iter().map(|(b, _)| *b).max().unwrap();
                let mut coeffs = vec![self.field.zero(); deg + 1];
                for (b, c) in terms {
                    coeffs[b] = c;
                }
                (a, UniPoly::new(self.field, Var::Y, coeffs))
            })
            .collect()
    }

    /// Rebuilds an element from `y-degree → x-polynomial` profiles.
    pub fn from_x_profiles(field: FieldSpec, profiles: &BTreeMap<usize, UniPoly>) -> Element {
        let mut out = Element::zero(field);
        for (b, poly) in profiles {
            for (a, c) in poly.coeffs().iter().enumerate() {
                out.add_term(TensorMonomial::new(a, *b), c.clone());
            }
        }
        out
    }

    /// Evaluates the element at the point `(x, y) = (alpha, beta)`.
    pub fn eval_at(&self, alpha: &Scalar, beta: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            acc = acc.add(&c.mul(&alpha.pow(m.xdeg as u64)).mul(&beta.pow(m.ydeg as u64)));
        }
        acc
    }

    pub fn max_xdeg(&self) -> usize {
        self.terms.keys().map(|m| m.xdeg).max().unwrap_or(0)
    }

    pub fn max_ydeg(&self) -> usize {
        self.terms.keys().map(|m| m.ydeg).max().unwrap_or(0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Display order: x-degree descending, then y-degree ascending.
        let mut monos: Vec<&TensorMonomial> = self.terms.keys().collect();
        monos.sort_by(|a, b| b.xdeg.cmp(&a.xdeg).then(a.ydeg.cmp(&b.ydeg)));
        let rendered: Vec<String> = monos
            .into_iter()
            .map(|m| {
                let c = &self.terms[m];
                let cs = scalar_factor_string(c);
                match (m.xdeg, m.ydeg) {
                    (0, 0) => cs,
                    (a, 0) => format!("{cs}*x^{a}"),
                    (0, b) => format!("{cs}*y^{b}"),
                    (a, b) => format!("{cs}*x^{a}y^{b}"),
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            x: usize,
            y: usize,
            c: &'a Scalar,
        }
        let mut st = ser.serialize_struct("Element", 2)?;
        st.serialize_field("field", &self.field)?;
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| Term { x: m.xdeg, y: m.ydeg, c })
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Splits `f` into its `Z/ℓZ`-graded components: the `i`-th output collects
/// the terms whose exponent is congruent to `i` mod `ℓ`, returned as full
/// polynomials so they sum back to `f`.
pub fn graded_components(f: &UniPoly, ell: usize) -> Vec<UniPoly> {
    assert!(ell >= 1, "grading order must be positive");
    let mut parts: Vec<Vec<Scalar>> = vec![vec![]; ell];
    for (k, c) in f.coeffs().iter().enumerate() {
        let i = k % ell;
        while parts[i].len() < k + 1 {
            parts[i].push(f.field().zero());
        }
        parts[i][k] = c.clone();
    }
    parts
        .into_iter()
        .map(|coeffs| UniPoly::new(f.field(), f.var(), coeffs))
        .collect()
}

/// Residue-bookkeeping form of the grading: pairs `(g_i, i)` with
/// `f = Σ g_i · t^i` and every `g_i` supported on exponent multiples of
/// `ℓ`, i.e. central whenever `t^ℓ` is.
pub fn graded_split(f: &UniPoly, ell: usize) -> Vec<(UniPoly, usize)> {
    graded_components(f, ell)
        .into_iter()
        .enumerate()
        .map(|(i, part)| {
            let mut coeffs = part.coeffs().to_vec();
            if !coeffs.is_empty() {
                coeffs.drain(..i.min(coeffs.len()));
            }
            (UniPoly::new(f.field(), f.var(), coeffs), i)
        })
        .collect()
}
