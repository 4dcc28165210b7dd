//! Exact sparse algebra on expressions u^g · Σ c z^a z̄^b u^k, u = 1 − |z|².
//!
//! z and z̄ are independent symbols for differentiation (Wirtinger calculus),
//! but the identity z z̄ = 1 − u ties the three generators together. Terms are
//! kept in canonical form, min(a, b) = 0, which makes the representation of a
//! function unique and equality decidable coefficient-wise.
//!
//! The real offset g is stored reduced to [0, 1); its integer part is folded
//! into the u-powers k, which may therefore be negative. Two expressions whose
//! offsets differ by a non-integer cannot be added.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::special::binomial;

/// Expressions with more terms than this are rejected.
pub const MAX_TERMS: usize = 1_000_000;

/// Offsets closer than this to an integer are treated as that integer.
const OFFSET_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("base offsets {0} and {1} differ by a non-integer")]
    OffsetMismatch(f64, f64),
    #[error("expression grew to {0} terms")]
    TooLarge(usize),
    #[error("domain error: {0}")]
    DomainError(String),
}

/// Exponents (a, b, k) of z^a z̄^b u^k.
pub type Key = (u32, u32, i32);

/// Splits g into (fractional part in [0,1), integer part).
fn split_offset(g: f64) -> (f64, i32) {
    let r = g.round();
    if (g - r).abs() <= OFFSET_SNAP {
        (0.0, r as i32)
    } else {
        let f = g.floor();
        (g - f, f as i32)
    }
}

/// u^g · Σ c z^a z̄^b u^k with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskExpr {
    terms: BTreeMap<Key, Complex64>,
    offset: f64,
}

impl DiskExpr {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), offset: 0.0 }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, 0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn z() -> Self {
        Self::monomial(1, 0, 0, Complex64::new(1.0, 0.0))
    }

    pub fn zbar() -> Self {
        Self::monomial(0, 1, 0, Complex64::new(1.0, 0.0))
    }

    pub fn u() -> Self {
        Self::monomial(0, 0, 1, Complex64::new(1.0, 0.0))
    }

    /// u^g for real g.
    pub fn u_pow(g: f64) -> Self {
        Self::one().shift_offset(g)
    }

    /// c z^a z̄^b u^k (canonicalized).
    pub fn monomial(a: u32, b: u32, k: i32, c: Complex64) -> Self {
        Self::from_raw([((a, b, k), c)], 0.0).canonicalize()
    }

    /// Builds an expression from arbitrary terms without canonicalizing the
    /// keys. Repeated keys are summed and zero coefficients dropped.
    pub fn from_raw<I>(terms: I, offset: f64) -> Self
    where
        I: IntoIterator<Item = (Key, Complex64)>,
    {
        let (frac, carry) = split_offset(offset);
        let mut map = BTreeMap::new();
        for ((a, b, k), c) in terms {
            *map.entry((a, b, k + carry)).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Self { terms: map, offset: frac }
    }

    /// Multiplies by u^delta.
    pub fn shift_offset(&self, delta: f64) -> Self {
        let (frac, carry) = split_offset(self.offset + delta);
        let terms = self.terms.iter().map(|(&(a, b, k), &c)| ((a, b, k + carry), c)).collect();
        Self { terms, offset: frac }
    }

    /// Base offset g in [0, 1).
    pub fn base_offset(&self) -> f64 {
        self.offset
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Key, Complex64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, key: Key) -> Complex64 {
        self.terms.get(&key).copied().unwrap_or_default()
    }

    /// Largest coefficient modulus (0 for the zero expression).
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.keys().all(|&(a, b, _)| a.min(b) == 0)
    }

    /// Smallest u-power among the terms, if any.
    pub fn min_u_power(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, _, k)| k).min()
    }

    /// Rewrites every z^a z̄^b u^k with s = min(a,b) > 0 as
    /// z^{a−s} z̄^{b−s} (1−u)^s u^k, expanded binomially.
    pub fn canonicalize(&self) -> Self {
        let mut out: BTreeMap<Key, Complex64> = BTreeMap::new();
        for (&(a, b, k), &c) in &self.terms {
            let s = a.min(b);
            for i in 0..=s {
                let w = binomial(s, i) * if i % 2 == 0 { 1.0 } else { -1.0 };
                *out.entry((a - s, b - s, k + i as i32)).or_default() += c * w;
            }
        }
        out.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Self { terms: out, offset: self.offset }
    }

    fn finish(terms: BTreeMap<Key, Complex64>, offset: f64) -> Result<Self, AlgebraError> {
        let e = Self { terms, offset }.canonicalize();
        if e.terms.len() > MAX_TERMS {
            return Err(AlgebraError::TooLarge(e.terms.len()));
        }
        Ok(e)
    }

    /// Integer shift that brings `other`'s offset onto `self`'s, or a mismatch.
    fn offset_carry(&self, other: &Self) -> Result<i32, AlgebraError> {
        if self.is_zero() || other.is_zero() {
            return Ok(0);
        }
        let (frac, carry) = split_offset(other.offset - self.offset);
        if frac == 0.0 {
            Ok(carry)
        } else {
            Err(AlgebraError::OffsetMismatch(self.offset, other.offset))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(other.canonicalize());
        }
        let carry = self.offset_carry(other)?;
        let mut terms = self.terms.clone();
        for (&(a, b, k), &c) in &other.terms {
            *terms.entry((a, b, k + carry)).or_default() += c;
        }
        Self::finish(terms, self.offset)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        if c == Complex64::new(0.0, 0.0) {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(&k, &v)| (k, v * c)).collect();
        Self { terms, offset: self.offset }.canonicalize()
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Term-by-term product; offsets add.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let (frac, carry) = split_offset(self.offset + other.offset);
        let mut terms: BTreeMap<Key, Complex64> = BTreeMap::new();
        for (&(a1, b1, k1), &c1) in &self.terms {
            for (&(a2, b2, k2), &c2) in &other.terms {
                *terms.entry((a1 + a2, b1 + b2, k1 + k2 + carry)).or_default() += c1 * c2;
            }
            if terms.len() > MAX_TERMS {
                return Err(AlgebraError::TooLarge(terms.len()));
            }
        }
        Self::finish(terms, frac)
    }

    /// ∂/∂z: ∂_z z^a = a z^{a−1}, ∂_z z̄ = 0, ∂_z u^{g+k} = −(g+k) z̄ u^{g+k−1}.
    pub fn d_z(&self) -> Result<Self, AlgebraError> {
        let mut terms: BTreeMap<Key, Complex64> = BTreeMap::new();
        for (&(a, b, k), &c) in &self.terms {
            if a > 0 {
                *terms.entry((a - 1, b, k)).or_default() += c * a as f64;
            }
            let p = self.offset + k as f64;
            if p != 0.0 {
                *terms.entry((a, b + 1, k - 1)).or_default() -= c * p;
            }
        }
        Self::finish(terms, self.offset)
    }

    /// ∂/∂z̄: ∂_z̄ z̄^b = b z̄^{b−1}, ∂_z̄ z = 0, ∂_z̄ u^{g+k} = −(g+k) z u^{g+k−1}.
    pub fn d_zbar(&self) -> Result<Self, AlgebraError> {
        let mut terms: BTreeMap<Key, Complex64> = BTreeMap::new();
        for (&(a, b, k), &c) in &self.terms {
            if b > 0 {
                *terms.entry((a, b - 1, k)).or_default() += c * b as f64;
            }
            let p = self.offset + k as f64;
            if p != 0.0 {
                *terms.entry((a + 1, b, k - 1)).or_default() -= c * p;
            }
        }
        Self::finish(terms, self.offset)
    }

    /// Pointwise value u^g Σ c z^a z̄^b u^k.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, AlgebraError> {
        let r2 = z.norm_sqr();
        if r2 > 1.0 + 1e-12 {
            return Err(AlgebraError::DomainError(format!("|z| = {} outside the closed disk", r2.sqrt())));
        }
        let u = 1.0 - r2;
        if u <= 0.0 && (self.offset != 0.0 || self.min_u_power().is_some_and(|k| k < 0)) {
            return Err(AlgebraError::DomainError(format!(
                "u = {u} with a negative or fractional u-power"
            )));
        }
        let zb = z.conj();
        let sum: Complex64 = self
            .terms
            .iter()
            .map(|(&(a, b, k), &c)| c * z.powu(a) * zb.powu(b) * u.powi(k))
            .sum();
        Ok(if self.offset == 0.0 { sum } else { sum * u.powf(self.offset) })
    }

    /// Largest coefficient modulus of `self − other` after canonicalization.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, AlgebraError> {
        Ok(self.canonicalize().sub(&other.canonicalize())?.max_coeff())
    }

    /// Coefficient-wise equality within an absolute tolerance.
    pub fn equal(&self, other: &Self, tol: f64) -> Result<bool, AlgebraError> {
        Ok(self.max_abs_diff(other)? <= tol)
    }

    /// Drops coefficients below `rel · max_coeff`.
    pub fn pruned(&self, rel: f64) -> Self {
        let cut = rel * self.max_coeff();
        let terms = self.terms.iter().filter(|(_, c)| c.norm() > cut).map(|(&k, &c)| (k, c)).collect();
        Self { terms, offset: self.offset }
    }

    pub fn keys(&self) -> impl Iterator<Item = Key> + '_ {
        self.terms.keys().copied()
    }
}

impl Default for DiskExpr {
    fn default() -> Self {
        Self::zero()
    }
}

/// Key-sorted textual sum, e.g. `u^0.5 * ([1, 0] z^0 zb^1 u^2 + ...)`.
impl fmt::Display for DiskExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let body = self
            .terms
            .iter()
            .map(|(&(a, b, k), c)| format!("[{}, {}] z^{a} zb^{b} u^{k}", c.re, c.im))
            .collect::<Vec<_>>()
            .join(" + ");
        if self.offset == 0.0 {
            write!(f, "{body}")
        } else {
            write!(f, "u^{} * ({body})", self.offset)
        }
    }
}
