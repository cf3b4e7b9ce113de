//! Exact field arithmetic over `Q`, `Q(ζ_ℓ)` and `F_p`, together with
//! q-numbers, q-factorials and Gaussian binomials.
//!
//! The Gaussian binomial is always reduced to an integer polynomial in
//! `Z[t]` before being evaluated at a field element; at a root of unity the
//! naive quotient of q-factorials divides by zero, so the order of
//! operations matters.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::{Error, Result};

/// The coefficient field of a computation.
///
/// `Cyclotomic { ell }` is `Q[z]/(Φ_ℓ(z))` with `Φ_ℓ` the `ℓ`-th cyclotomic
/// polynomial, so `z` is a primitive `ℓ`-th root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rationals,
    Cyclotomic { ell: u32 },
    Prime { p: u64 },
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    pub fn cyclotomic(ell: u32) -> Result<Self> {
        if ell < 2 {
            return Err(Error::InvalidConfig(format!(
                "cyclotomic order must be at least 2, got {ell}"
            )));
        }
        Ok(FieldSpec::Cyclotomic { ell })
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidConfig(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime { p })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime { p } => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Cyclotomic { ell } => Scalar::Cyc {
                ell: *ell,
                coeffs: vec![BigRational::zero(); cyclotomic_degree(*ell)],
            },
            FieldSpec::Prime { p } => Scalar::Fp { p: *p, val: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            FieldSpec::Cyclotomic { ell } => {
                let mut coeffs = vec![BigRational::zero(); cyclotomic_degree(*ell)];
                if coeffs.is_empty() {
                    coeffs.push(BigRational::zero());
                }
                coeffs[0] = BigRational::from_integer(n.clone());
                Scalar::Cyc { ell: *ell, coeffs }
            }
            FieldSpec::Prime { p } => {
                let pp = BigInt::from(*p);
                let mut r = n.mod_floor(&pp);
                if r.is_negative() {
                    r += &pp;
                }
                let (_, digits) = r.to_u64_digits();
                Scalar::Fp {
                    p: *p,
                    val: digits.first().copied().unwrap_or(0),
                }
            }
        }
    }

    /// Residue of the generator `z` of a cyclotomic field.
    pub fn cyclotomic_generator(&self) -> Result<Scalar> {
        match self {
            FieldSpec::Cyclotomic { ell } => {
                let deg = cyclotomic_degree(*ell);
                let mut coeffs = vec![BigRational::zero(); deg];
                if deg == 1 {
                    // z is congruent to a rational modulo a degree-1 modulus.
                    let phi = cyclotomic_polynomial(*ell);
                    coeffs[0] = -BigRational::from_integer(phi[0].clone());
                } else {
                    coeffs[1] = BigRational::one();
                }
                Ok(Scalar::Cyc { ell: *ell, coeffs })
            }
            _ => Err(Error::InvalidConfig(
                "cyclotomic generator requested over a non-cyclotomic field".into(),
            )),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Cyclotomic { ell } => write!(f, "Q(z_{ell})"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with positive denominator, cyclotomic
/// elements are residues modulo `Φ_ℓ` stored as coefficient vectors of
/// length `deg Φ_ℓ`, and prime-field elements are reduced representatives
/// in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Cyc { ell: u32, coeffs: Vec<BigRational> },
    Fp { p: u64, val: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Cyc { ell, .. } => FieldSpec::Cyclotomic { ell: *ell },
            Scalar::Fp { p, .. } => FieldSpec::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field().one()
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar field mismatch: {} vs {}",
            self.field(),
            other.field()
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.assert_same_field(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Cyc { ell, coeffs: a }, Scalar::Cyc { coeffs: b, .. }) => Scalar::Cyc {
                ell: *ell,
                coeffs: a.iter().zip(b).map(|(x, y)| x + y).collect(),
            },
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: ((*a as u128 + *b as u128) % *p as u128) as u64,
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Cyc { ell, coeffs } => Scalar::Cyc {
                ell: *ell,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.assert_same_field(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Cyc { ell, coeffs: a }, Scalar::Cyc { coeffs: b, .. }) => {
                let mut prod = vec![BigRational::zero(); a.len() + b.len()];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        prod[i + j] += x * y;
                    }
                }
                let phi = cyclotomic_polynomial(*ell);
                let red = ratpoly_rem(prod, &phi);
                Scalar::Cyc {
                    ell: *ell,
                    coeffs: pad_to(red, cyclotomic_degree(*ell)),
                }
            }
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: ((*a as u128 * *b as u128) % *p as u128) as u64,
            },
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse; every nonzero scalar has one.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Rat(a) => Ok(Scalar::Rat(a.recip())),
            Scalar::Cyc { ell, coeffs } => {
                let phi: Vec<BigRational> = cyclotomic_polynomial(*ell)
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect();
                let inv = ratpoly_modular_inverse(coeffs, &phi)?;
                Ok(Scalar::Cyc {
                    ell: *ell,
                    coeffs: pad_to(inv, cyclotomic_degree(*ell)),
                })
            }
            Scalar::Fp { p, val } => {
                let inv = mod_pow(*val, *p - 2, *p);
                Ok(Scalar::Fp { p: *p, val: inv })
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative order, searched up to `bound`. `None` for zero or when
    /// no power up to the bound is the identity.
    pub fn multiplicative_order(&self, bound: usize) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let one = self.field().one();
        let mut acc = self.clone();
        for d in 1..=bound {
            if acc == one {
                return Some(d);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Parses the scalar text syntax: rationals `3`, `-1/2`; cyclotomic
    /// polynomials in `z` such as `1+z^2`; prime-field integers `5`.
    pub fn parse(field: &FieldSpec, input: &str) -> Result<Scalar> {
        let s = input.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        match field {
            FieldSpec::Rationals | FieldSpec::Prime { .. } => parse_rational_like(field, s),
            FieldSpec::Cyclotomic { .. } => parse_cyclotomic(field, s),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", rational_string(r)),
            Scalar::Fp { val, .. } => write!(f, "{val}"),
            Scalar::Cyc { coeffs, .. } => {
                if self.is_zero() {
                    return write!(f, "0");
                }
                let mut out = String::new();
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mag = rational_string(&c.abs());
                    let sign = if c.is_negative() { "-" } else { "+" };
                    if out.is_empty() {
                        if c.is_negative() {
                            out.push('-');
                        }
                    } else {
                        out.push_str(sign);
                    }
                    if k == 0 {
                        out.push_str(&mag);
                    } else {
                        if mag != "1" {
                            out.push_str(&mag);
                        }
                        out.push('z');
                        if k > 1 {
                            out.push_str(&format!("^{k}"));
                        }
                    }
                }
                write!(f, "{out}")
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(1))?;
        match self {
            Scalar::Rat(r) => map.serialize_entry("rat", &rational_string(r))?,
            Scalar::Cyc { ell, coeffs } => {
                #[derive(Serialize)]
                struct Cyc {
                    ell: u32,
                    coeffs: Vec<String>,
                }
                map.serialize_entry(
                    "cyc",
                    &Cyc {
                        ell: *ell,
                        coeffs: coeffs.iter().map(rational_string).collect(),
                    },
                )?;
            }
            Scalar::Fp { p, val } => {
                #[derive(Serialize)]
                struct Gfp {
                    p: u64,
                    val: u64,
                }
                map.serialize_entry("gfp", &Gfp { p: *p, val: *val })?;
            }
        }
        map.end()
    }
}

fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn pad_to(mut v: Vec<BigRational>, len: usize) -> Vec<BigRational> {
    v.truncate(len.max(1));
    while v.len() < len.max(1) {
        v.push(BigRational::zero());
    }
    v
}

fn parse_rational_like(field: &FieldSpec, s: &str) -> Result<Scalar> {
    let bad = |tok: &str| Error::Parse(format!("invalid scalar token '{tok}'"));
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| bad(n))?;
        let den: BigInt = d.trim().parse().map_err(|_| bad(d))?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match field {
            FieldSpec::Rationals => Ok(Scalar::Rat(BigRational::new(num, den))),
            FieldSpec::Prime { .. } => {
                let dv = field.from_bigint(&den);
                Ok(field.from_bigint(&num).mul(&dv.inv()?))
            }
            FieldSpec::Cyclotomic { .. } => unreachable!(),
        }
    } else {
        let n: BigInt = s.parse().map_err(|_| bad(s))?;
        Ok(field.from_bigint(&n))
    }
}

/// Parses sums of terms `c`, `cz^k`, `z^k`, with optional `*` between the
/// coefficient and `z`.
fn parse_cyclotomic(field: &FieldSpec, s: &str) -> Result<Scalar> {
    let ell = match field {
        FieldSpec::Cyclotomic { ell } => *ell,
        _ => unreachable!(),
    };
    let deg = cyclotomic_degree(ell);
    let z = field.cyclotomic_generator()?;
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut acc = field.zero();
    let mut term = String::new();
    let mut chars = compact.chars().peekable();
    let mut terms: Vec<String> = Vec::new();
    while let Some(c) = chars.next() {
        if (c == '+' || c == '-') && !term.is_empty() && !term.ends_with('^') {
            terms.push(term.clone());
            term.clear();
        }
        if c == '+' && term.is_empty() {
            continue;
        }
        term.push(c);
    }
    if !term.is_empty() {
        terms.push(term);
    }
    if terms.is_empty() {
        return Err(Error::Parse(format!("invalid scalar token '{s}'")));
    }
    for t in terms {
        let (coeff_str, zpow) = match t.find('z') {
            None => (t.as_str(), None),
            Some(pos) => {
                let (c, rest) = t.split_at(pos);
                let rest = &rest[1..];
                let k: u32 = if let Some(e) = rest.strip_prefix('^') {
                    e.parse()
                        .map_err(|_| Error::Parse(format!("invalid exponent in '{t}'")))?
                } else if rest.is_empty() {
                    1
                } else {
                    return Err(Error::Parse(format!("invalid scalar token '{t}'")));
                };
                (c.trim_end_matches('*'), Some(k))
            }
        };
        let coeff = match coeff_str {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            cs => {
                if let Some((n, d)) = cs.split_once('/') {
                    let num: BigInt = n
                        .parse()
                        .map_err(|_| Error::Parse(format!("invalid scalar token '{cs}'")))?;
                    let den: BigInt = d
                        .parse()
                        .map_err(|_| Error::Parse(format!("invalid scalar token '{cs}'")))?;
                    BigRational::new(num, den)
                } else {
                    BigRational::from_integer(
                        cs.parse()
                            .map_err(|_| Error::Parse(format!("invalid scalar token '{cs}'")))?,
                    )
                }
            }
        };
        let mut piece = Scalar::Cyc {
            ell,
            coeffs: {
                let mut v = vec![BigRational::zero(); deg];
                v[0] = coeff;
                v
            },
        };
        if let Some(k) = zpow {
            piece = piece.mul(&z.pow(k as u64));
        }
        acc = acc.add(&piece);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Rational polynomial helpers (dense, ascending coefficients).

fn ratpoly_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

/// Remainder modulo a monic integer polynomial.
fn ratpoly_rem(mut v: Vec<BigRational>, modulus: &[BigInt]) -> Vec<BigRational> {
    let md = modulus.len() - 1;
    debug_assert!(modulus[md].is_one());
    while {
        v = ratpoly_trim(v);
        v.len() > md
    } {
        let lead = v.pop().unwrap();
        let shift = v.len() - md;
        for (k, c) in modulus.iter().take(md).enumerate() {
            let delta = &lead * BigRational::from_integer(c.clone());
            v[shift + k] -= delta;
        }
    }
    v
}

fn ratpoly_divmod(
    num: &[BigRational],
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let den = ratpoly_trim(den.to_vec());
    assert!(!den.is_empty(), "division by zero polynomial");
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let mut rem = ratpoly_trim(num.to_vec());
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    while rem.len() > dd {
        let q = rem.last().unwrap() / &lead;
        let shift = rem.len() - 1 - dd;
        quot[shift] = q.clone();
        for (k, c) in den.iter().enumerate() {
            let delta = &q * c;
            rem[shift + k] -= delta;
        }
        rem = ratpoly_trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    (ratpoly_trim(quot), rem)
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
fn ratpoly_modular_inverse(a: &[BigRational], m: &[BigRational]) -> Result<Vec<BigRational>> {
    let mut r0 = m.to_vec();
    let mut r1 = ratpoly_rem_rat(a.to_vec(), m);
    let mut s0: Vec<BigRational> = vec![];
    let mut s1 = vec![BigRational::one()];
    while !ratpoly_trim(r1.clone()).is_empty() {
        let (q, r) = ratpoly_divmod(&r0, &r1);
        let s = ratpoly_sub(&s0, &ratpoly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let r0 = ratpoly_trim(r0);
    if r0.len() != 1 {
        return Err(Error::DivisionByZero);
    }
    let scale = r0[0].recip();
    Ok(ratpoly_rem_rat(
        s0.iter().map(|c| c * &scale).collect(),
        m,
    ))
}

fn ratpoly_rem_rat(v: Vec<BigRational>, modulus: &[BigRational]) -> Vec<BigRational> {
    let (_, r) = ratpoly_divmod(&v, modulus);
    r
}

fn ratpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn ratpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    ratpoly_trim(out)
}

// ---------------------------------------------------------------------------
// Integer polynomials in one variable `t`.

/// A polynomial in `Z[t]`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::from_ints(&[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::new(out)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        IntPoly::new(out)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        IntPoly::new(out)
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, den: &IntPoly) -> IntPoly {
        assert!(!den.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() < den.coeffs.len() {
            assert!(self.is_zero(), "inexact polynomial division");
            return IntPoly::zero();
        }
        let dd = den.coeffs.len() - 1;
        let lead = den.coeffs[dd].clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        while rem.len() > dd {
            let (q, r) = rem.last().unwrap().div_rem(&lead);
            assert!(r.is_zero(), "inexact polynomial division");
            let shift = rem.len() - 1 - dd;
            quot[shift] = q.clone();
            for (k, c) in den.coeffs.iter().enumerate() {
                let delta = &q * c;
                rem[shift + k] -= delta;
            }
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
        }
        assert!(rem.is_empty(), "inexact polynomial division");
        IntPoly::new(quot)
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, at: &Scalar) -> Scalar {
        let field = at.field();
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(&field.from_bigint(c));
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs().to_string();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            match k {
                0 => out.push_str(&mag),
                _ => {
                    if mag != "1" {
                        out.push_str(&mag);
                    }
                    out.push('t');
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        write!(f, "{out}")
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials.

/// The `ℓ`-th cyclotomic polynomial, ascending integer coefficients.
///
/// Computed by exact division of `t^ℓ - 1` by the cyclotomic polynomials of
/// the proper divisors of `ℓ`.
pub fn cyclotomic_polynomial(ell: u32) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&ell) {
        return hit.clone();
    }
    let result = if ell == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        let mut num = vec![BigInt::zero(); ell as usize + 1];
        num[0] = BigInt::from(-1);
        num[ell as usize] = BigInt::from(1);
        let mut num = IntPoly::new(num);
        for d in 1..ell {
            if ell % d == 0 {
                num = num.div_exact(&IntPoly::new(cyclotomic_polynomial(d)));
            }
        }
        num.coeffs().to_vec()
    };
    cache.lock().unwrap().insert(ell, result.clone());
    result
}

pub fn cyclotomic_degree(ell: u32) -> usize {
    cyclotomic_polynomial(ell).len() - 1
}

// ---------------------------------------------------------------------------
// q-combinatorics.

/// `[m]_q = 1 + q + … + q^{m-1}`; the empty sum for `m = 0`.
pub fn q_number(m: usize, q: &Scalar) -> Scalar {
    let field = q.field();
    let mut acc = field.zero();
    let mut power = field.one();
    for _ in 0..m {
        acc = acc.add(&power);
        power = power.mul(q);
    }
    acc
}

/// `[m]_q! = [m]_q [m-1]_q ⋯ [1]_q`; `1` for `m = 0`.
pub fn q_factorial(m: usize, q: &Scalar) -> Scalar {
    let field = q.field();
    let mut acc = field.one();
    for j in 1..=m {
        acc = acc.mul(&q_number(j, q));
    }
    acc
}

/// The Gaussian binomial as an integer polynomial in `t`, built by the
/// q-Pascal recurrence `C(m,i) = C(m-1,i-1) + t^i C(m-1,i)` over `Z[t]`.
pub fn q_binomial_poly(m: usize, i: usize) -> IntPoly {
    if i > m {
        return IntPoly::zero();
    }
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), IntPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(m, i)) {
        return hit.clone();
    }
    let result = if i == 0 || i == m {
        IntPoly::one()
    } else {
        q_binomial_poly(m - 1, i - 1).add(&q_binomial_poly(m - 1, i).shift(i))
    };
    cache.lock().unwrap().insert((m, i), result.clone());
    result
}

/// Gaussian binomial evaluated at `t = q`, reducing over `Z[t]` first so
/// that roots of unity never hit a zero denominator.
pub fn q_binomial(m: usize, i: usize, q: &Scalar) -> Scalar {
    if i > m {
        return q.field().zero();
    }
    q_binomial_poly(m, i).eval(q)
}

/// A deterministic primitive `ℓ`-th root of unity in the given field: the
/// residue of `z` (cyclotomic) or the smallest element of multiplicative
/// order `ℓ` (prime field). Fails when the field has no such root.
pub fn primitive_root(spec: &FieldSpec, ell: u32) -> Result<Scalar> {
    if ell == 0 {
        return Err(Error::InvalidConfig("root-of-unity order must be positive".into()));
    }
    match spec {
        FieldSpec::Rationals => match ell {
            1 => Ok(spec.one()),
            2 => Ok(spec.from_int(-1)),
            _ => Err(Error::InvalidConfig(format!(
                "Q contains no primitive {ell}th root of unity"
            ))),
        },
        FieldSpec::Cyclotomic { ell: big } => {
            if big % ell != 0 {
                return Err(Error::InvalidConfig(format!(
                    "Q(z_{big}) contains no primitive {ell}th root of unity"
                )));
            }
            let z = spec.cyclotomic_generator()?;
            Ok(z.pow((big / ell) as u64))
        }
        FieldSpec::Prime { p } => {
            if (p - 1) % ell as u64 != 0 {
                return Err(Error::InvalidConfig(format!(
                    "no root of order {ell} in F_{p}: {ell} does not divide {}",
                    p - 1
                )));
            }
            for a in 1..*p {
                let s = Scalar::Fp { p: *p, val: a };
                if s.multiplicative_order(ell as usize) == Some(ell as usize) {
                    return Ok(s);
                }
            }
            unreachable!("the unit group of a prime field is cyclic")
        }
    }
}

// ---------------------------------------------------------------------------
// Small integer helpers.

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Ordinary binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Rising product `m (m+1) ⋯ (m+k-1)` with `k` factors.
pub fn rising_product(m: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(m + j);
    }
    acc
}

/// `k!` as a big integer.
pub fn factorial(k: usize) -> BigInt {
    rising_product(1, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q7() -> FieldSpec {
        FieldSpec::prime(7).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        assert_eq!(IntPoly::new(cyclotomic_polynomial(1)), IntPoly::from_ints(&[-1, 1]));
        assert_eq!(IntPoly::new(cyclotomic_polynomial(2)), IntPoly::from_ints(&[1, 1]));
        assert_eq!(IntPoly::new(cyclotomic_polynomial(3)), IntPoly::from_ints(&[1, 1, 1]));
        assert_eq!(IntPoly::new(cyclotomic_polynomial(4)), IntPoly::from_ints(&[1, 0, 1]));
        assert_eq!(IntPoly::new(cyclotomic_polynomial(6)), IntPoly::from_ints(&[1, -1, 1]));
        assert_eq!(
            IntPoly::new(cyclotomic_polynomial(12)),
            IntPoly::from_ints(&[1, 0, -1, 0, 1])
        );
    }

    #[test]
    fn cyclotomic_generator_has_exact_order() {
        for ell in [2u32, 3, 4, 5, 6, 8, 12] {
            let field = FieldSpec::cyclotomic(ell).unwrap();
            let z = field.cyclotomic_generator().unwrap();
            assert_eq!(z.multiplicative_order(2 * ell as usize), Some(ell as usize));
        }
    }

    #[test]
    fn q_number_examples() {
        let q = FieldSpec::Rationals.from_int(5);
        assert!(q_number(0, &q).is_zero());
        let minus_one = FieldSpec::Rationals.from_int(-1);
        assert!(q_number(2, &minus_one).is_zero());
        // 1 + 2 + 4 + 8 + 16 = 31 ≡ 3 mod 7
        let two = q7().from_int(2);
        assert_eq!(q_number(5, &two), q7().from_int(3));
    }

    #[test]
    fn q_factorial_examples() {
        let one = FieldSpec::Rationals.from_int(1);
        assert_eq!(q_factorial(3, &one), FieldSpec::Rationals.from_int(6));
        let minus_one = FieldSpec::Rationals.from_int(-1);
        assert!(q_factorial(2, &minus_one).is_zero());
        // [2]_4 = 5 ≡ 0 in F_5
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(q_factorial(3, &f5.from_int(4)).is_zero());
    }

    #[test]
    fn q_binomial_poly_four_choose_two() {
        assert_eq!(q_binomial_poly(4, 2), IntPoly::from_ints(&[1, 1, 2, 1, 1]));
        assert!(q_binomial_poly(2, 3).is_zero());
    }

    #[test]
    fn q_binomial_evaluations() {
        let one = FieldSpec::Rationals.from_int(1);
        assert_eq!(q_binomial(4, 2, &one), FieldSpec::Rationals.from_int(6));
        let field = FieldSpec::cyclotomic(4).unwrap();
        let z = field.cyclotomic_generator().unwrap();
        assert!(q_binomial(4, 2, &z).is_zero());
    }

    #[test]
    fn q_binomial_matches_exact_polynomial_division() {
        // Independent route: [m]_t! / ([i]_t! [m-i]_t!) by exact division in Z[t].
        fn q_number_poly(m: usize) -> IntPoly {
            IntPoly::new(vec![BigInt::one(); m])
        }
        fn q_factorial_poly(m: usize) -> IntPoly {
            (1..=m).fold(IntPoly::one(), |acc, j| acc.mul(&q_number_poly(j)))
        }
        for m in 0..=9 {
            for i in 0..=m {
                let den = q_factorial_poly(i).mul(&q_factorial_poly(m - i));
                let quotient = q_factorial_poly(m).div_exact(&den);
                assert_eq!(q_binomial_poly(m, i), quotient, "m={m} i={i}");
            }
        }
    }

    #[test]
    fn q_pascal_identity_over_integer_polynomials() {
        for m in 1..=12 {
            for i in 0..=m {
                let lhs = q_binomial_poly(m, i);
                let rhs = if i == 0 {
                    q_binomial_poly(m - 1, 0)
                } else {
                    q_binomial_poly(m - 1, i - 1).add(&q_binomial_poly(m - 1, i).shift(i))
                };
                assert_eq!(lhs, rhs, "m={m} i={i}");
            }
        }
    }

    #[test]
    fn reduce_then_evaluate_matches_factorial_quotient_off_vanishing_locus() {
        let fields: Vec<(FieldSpec, Scalar)> = vec![
            (FieldSpec::Rationals, FieldSpec::Rationals.from_int(2)),
            (FieldSpec::Rationals, FieldSpec::Rationals.from_int(-3)),
            (q7(), q7().from_int(3)),
        ];
        for (_, q) in fields {
            for m in 0..=8usize {
                for i in 0..=m {
                    let den = q_factorial(i, &q).mul(&q_factorial(m - i, &q));
                    if den.is_zero() {
                        continue;
                    }
                    let quotient = q_factorial(m, &q).mul(&den.inv().unwrap());
                    assert_eq!(q_binomial(m, i, &q), quotient, "m={m} i={i}");
                }
            }
        }
    }

    #[test]
    fn q_number_vanishes_exactly_at_the_order() {
        for (field, ell) in [
            (FieldSpec::cyclotomic(3).unwrap(), 3usize),
            (FieldSpec::cyclotomic(4).unwrap(), 4),
            (FieldSpec::cyclotomic(6).unwrap(), 6),
            (FieldSpec::prime(7).unwrap(), 3),
        ] {
            let q = primitive_root(&field, ell as u32).unwrap();
            assert!(q_number(ell, &q).is_zero());
            for m in 1..ell {
                assert!(!q_number(m, &q).is_zero(), "[{m}]_q over {field}");
            }
        }
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(
            primitive_root(&FieldSpec::cyclotomic(2).unwrap(), 2).unwrap(),
            FieldSpec::cyclotomic(2).unwrap().from_int(-1)
        );
        assert_eq!(primitive_root(&q7(), 3).unwrap(), q7().from_int(2));
        assert!(primitive_root(&q7(), 5).is_err());
    }

    #[test]
    fn scalar_inverses() {
        let field = FieldSpec::cyclotomic(4).unwrap();
        let z = field.cyclotomic_generator().unwrap();
        let a = z.add(&field.from_int(2));
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert!(field.zero().inv().is_err());

        let f5 = FieldSpec::prime(5).unwrap();
        for v in 1..5 {
            let s = f5.from_int(v);
            assert!(s.mul(&s.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_text_round_trips() {
        let field = FieldSpec::cyclotomic(4).unwrap();
        for text in ["1+z^2", "-1/2", "z", "-z+3", "2z^3-1/3z"] {
            let s = Scalar::parse(&field, text).unwrap();
            let reparsed = Scalar::parse(&field, &s.to_string()).unwrap();
            assert_eq!(s, reparsed, "{text}");
        }
        assert_eq!(
            Scalar::parse(&FieldSpec::Rationals, "-1/2").unwrap(),
            Scalar::Rat(BigRational::new(BigInt::from(-1), BigInt::from(2)))
        );
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(Scalar::parse(&f5, "-1").unwrap(), f5.from_int(4));
        assert!(Scalar::parse(&f5, "x").is_err());
    }

    mod field_axioms {
        use super::*;
        use proptest::prelude::*;

        fn rational() -> impl Strategy<Value = Scalar> {
            (-6i64..=6, 1i64..=4).prop_map(|(n, d)| {
                Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
            })
        }

        fn cyclotomic4() -> impl Strategy<Value = Scalar> {
            proptest::collection::vec(-4i64..=4, 2).prop_map(|v| Scalar::Cyc {
                ell: 4,
                coeffs: v
                    .into_iter()
                    .map(|c| BigRational::from_integer(BigInt::from(c)))
                    .collect(),
            })
        }

        fn prime7() -> impl Strategy<Value = Scalar> {
            (0u64..7).prop_map(|v| Scalar::Fp { p: 7, val: v })
        }

        macro_rules! axioms {
            ($name:ident, $strat:expr) => {
                mod $name {
                    use super::*;
                    proptest! {
                        #![proptest_config(ProptestConfig::with_cases(64))]
                        #[test]
                        fn associative(a in $strat(), b in $strat(), c in $strat()) {
                            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                        }
                        #[test]
                        fn distributive(a in $strat(), b in $strat(), c in $strat()) {
                            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                        }
                        #[test]
                        fn commutative(a in $strat(), b in $strat()) {
                            prop_assert_eq!(a.add(&b), b.add(&a));
                            prop_assert_eq!(a.mul(&b), b.mul(&a));
                        }
                        #[test]
                        fn inverse_times_self_is_one(a in $strat()) {
                            if !a.is_zero() {
                                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
                            }
                        }
                    }
                }
            };
        }

        axioms!(over_q, rational);
        axioms!(over_q_zeta4, cyclotomic4);
        axioms!(over_f7, prime7);
    }
}
