//! Generalized Zernike (disk) polynomials Z_{m,n}^γ(z, z̄).
//!
//! The explicit finite sum [`eval_explicit`] is the reference route. Every
//! other route ([`eval_gauss1`], [`eval_gauss2`], [`eval_jacobi`], the
//! symbolic [`rodrigues_expr`] and the contour integral [`eval_contour`]) is
//! an independent computation of the same value and is checked against it.

mod coeffs;
mod contour;
mod hermite;
mod inner;

use num_complex::Complex64;

use crate::algebra::DiskExpr;
use crate::error::{Error, Result};
use crate::special::{hyp2f1, jacobi_p, pochhammer};

pub use coeffs::{monomial_coeffs, BivariateCoeffs};
pub use contour::{eval_contour, eval_contour_adaptive, ContourConfig};
pub use hermite::{hermite, hermite_limit_error};
pub use inner::{inner_product, norm};

/// Largest accepted m or n.
pub const MAX_INDEX: u32 = 64;

/// Below this fraction of the natural scale (γ+1)_{m+n} a deviation is
/// measured absolutely rather than relative to the values compared.
pub const NEAR_ZERO_FLOOR: f64 = 0.1;

/// Index triple (m, n, γ) of Z_{m,n}^γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZernikeParams {
    pub m: u32,
    pub n: u32,
    pub gamma: f64,
}

impl ZernikeParams {
    pub fn new(m: u32, n: u32, gamma: f64) -> Result<Self> {
        if !(gamma > -1.0) || !gamma.is_finite() {
            return Err(Error::InvalidParams(format!("gamma = {gamma} must be a finite real > -1")));
        }
        if m > MAX_INDEX || n > MAX_INDEX {
            return Err(Error::InvalidParams(format!("m = {m}, n = {n} exceed the cap {MAX_INDEX}")));
        }
        Ok(Self { m, n, gamma })
    }

    /// Parameters of the conjugate polynomial Z_{n,m}^γ.
    pub fn swapped(&self) -> Self {
        Self { m: self.n, n: self.m, gamma: self.gamma }
    }

    /// Angular charge n − m.
    pub fn charge(&self) -> i64 {
        self.n as i64 - self.m as i64
    }

    /// (γ+1)_{m+n}, the modulus of Z on the unit circle.
    pub fn boundary_modulus(&self) -> f64 {
        pochhammer(self.gamma + 1.0, self.m + self.n)
    }
}

impl std::fmt::Display for ZernikeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "m={},n={},gamma={}", self.m, self.n, self.gamma)
    }
}

/// A point of the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.norm() <= 1.0 + 1e-12) {
            return Err(Error::DomainError(format!("|z| = {} is outside the closed unit disk", z.norm())));
        }
        Ok(Self(z))
    }

    pub fn from_re_im(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }

    pub fn modulus(&self) -> f64 {
        self.0.norm()
    }

    /// u = 1 − |z|².
    pub fn u(&self) -> f64 {
        1.0 - self.0.norm_sqr()
    }

    pub fn is_origin(&self) -> bool {
        self.0 == Complex64::new(0.0, 0.0)
    }
}

/// |a − b| relative to max(|a|, |b|, [`NEAR_ZERO_FLOOR`]·scale).
pub fn deviation(a: Complex64, b: Complex64, scale: f64) -> f64 {
    let denom = a.norm().max(b.norm()).max(NEAR_ZERO_FLOOR * scale.abs());
    let diff = (a - b).norm();
    if diff == 0.0 { 0.0 } else { diff / denom }
}

/// Z_{m,n}^γ(0) = (−1)^m (γ+m+1)_m m! δ_{m,n}.
pub fn value_at_origin(p: ZernikeParams) -> f64 {
    if p.m != p.n {
        return 0.0;
    }
    let sign = if p.m % 2 == 0 { 1.0 } else { -1.0 };
    sign * pochhammer(p.gamma + p.m as f64 + 1.0, p.m) * pochhammer(1.0, p.m)
}

/// Coefficients c_j = m! n! (γ+1)_{m+n} / ((γ+1)_j j! (m−j)! (n−j)!), j = 0..=min(m,n).
pub(crate) fn explicit_coeffs(p: ZernikeParams) -> Vec<f64> {
    let k = p.m.min(p.n);
    let mut c = pochhammer(p.gamma + 1.0, p.m + p.n);
    let mut out = Vec::with_capacity(k as usize + 1);
    out.push(c);
    for j in 0..k {
        let jf = j as f64;
        c *= (p.m - j) as f64 * (p.n - j) as f64 / ((jf + 1.0) * (p.gamma + 1.0 + jf));
        out.push(c);
    }
    out
}

/// Z_{m,n}^γ(z) = Σ_j c_j (−1)^j u^j z̄^{m−j} z^{n−j}, the reference route.
///
/// At z = 0 only the j = m = n term survives and is evaluated in the reduced
/// form shared with [`value_at_origin`].
pub fn eval_explicit(p: ZernikeParams, z: DiskPoint) -> Complex64 {
    if z.is_origin() {
        return Complex64::new(value_at_origin(p), 0.0);
    }
    let (w, u) = (z.z(), z.u());
    let wb = w.conj();
    explicit_coeffs(p)
        .into_iter()
        .enumerate()
        .map(|(j, c)| {
            let j = j as u32;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            wb.powu(p.m - j) * w.powu(p.n - j) * (sign * c * u.powi(j as i32))
        })
        .sum()
}

/// (γ+1)_{m+n} z̄^m z^n ₂F₁(−m, −n; γ+1 | 1 − 1/|z|²).
pub fn eval_gauss1(p: ZernikeParams, z: DiskPoint) -> Result<Complex64> {
    if z.is_origin() {
        return Err(Error::DomainError("the 1 - 1/|z|^2 form is undefined at z = 0".into()));
    }
    let w = z.z();
    let x = 1.0 - 1.0 / w.norm_sqr();
    let f = hyp2f1(-(p.m as f64), -(p.n as f64), p.gamma + 1.0, x)?;
    Ok(w.conj().powu(p.m) * w.powu(p.n) * (p.boundary_modulus() * f))
}

/// ((γ+1)_{m+n})² / ((γ+1)_m (γ+1)_n) z̄^m z^n ₂F₁(−m, −n; −γ−m−n | 1/|z|²).
///
/// The squared Pochhammer prefactor is formed as (γ+1)_{m+n}(γ+m+1)_n/(γ+1)_n.
pub fn eval_gauss2(p: ZernikeParams, z: DiskPoint) -> Result<Complex64> {
    if z.is_origin() {
        return Err(Error::DomainError("the 1/|z|^2 form is undefined at z = 0".into()));
    }
    let w = z.z();
    let g = p.gamma;
    let x = 1.0 / w.norm_sqr();
    let f = hyp2f1(-(p.m as f64), -(p.n as f64), -g - (p.m + p.n) as f64, x)?;
    let pre = p.boundary_modulus() * pochhammer(g + p.m as f64 + 1.0, p.n) / pochhammer(g + 1.0, p.n);
    Ok(w.conj().powu(p.m) * w.powu(p.n) * (pre * f))
}

/// Jacobi form with s = min(m,n), l = max(m,n):
/// (−1)^s s! (γ+s+1)_l |z|^{|m−n|} e^{i(n−m)arg z} P_s^{(|m−n|,γ)}(1 − 2|z|²).
///
/// For n ≥ m the prefactor reduces to (−1)^m (m∧n)! (γ+m+1)_n; used for
/// m > n that asymmetric prefactor is wrong, see [`eval_jacobi_asymmetric`].
pub fn eval_jacobi(p: ZernikeParams, z: DiskPoint) -> Complex64 {
    let s = p.m.min(p.n);
    let l = p.m.max(p.n);
    let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
    let pre = sign * pochhammer(1.0, s) * pochhammer(p.gamma + s as f64 + 1.0, l);
    jacobi_core(p, z, pre)
}

/// The Jacobi form with the prefactor (−1)^m (m∧n)! (γ+m+1)_n for every
/// ordering of (m, n). Agrees with [`eval_jacobi`] when n ≥ m only.
pub fn eval_jacobi_asymmetric(p: ZernikeParams, z: DiskPoint) -> Complex64 {
    let s = p.m.min(p.n);
    let sign = if p.m % 2 == 0 { 1.0 } else { -1.0 };
    let pre = sign * pochhammer(1.0, s) * pochhammer(p.gamma + p.m as f64 + 1.0, p.n);
    jacobi_core(p, z, pre)
}

fn jacobi_core(p: ZernikeParams, z: DiskPoint, pre: f64) -> Complex64 {
    let w = z.z();
    let angular = if p.m >= p.n { w.conj().powu(p.m - p.n) } else { w.powu(p.n - p.m) };
    let alpha = (p.m as f64 - p.n as f64).abs();
    let poly = jacobi_p(p.m.min(p.n), alpha, p.gamma, 1.0 - 2.0 * w.norm_sqr());
    angular * (pre * poly)
}

/// (−1)^{m+n} u^{−γ} ∂_z^m ∂_z̄^n u^{γ+m+n}, built symbolically.
///
/// The result has base offset 0 and integer u-powers.
pub fn rodrigues_expr(p: ZernikeParams) -> Result<DiskExpr> {
    let mut e = DiskExpr::u_pow(p.gamma + (p.m + p.n) as f64);
    for _ in 0..p.m {
        e = e.d_z()?;
    }
    for _ in 0..p.n {
        e = e.d_zbar()?;
    }
    let sign = if (p.m + p.n) % 2 == 0 { 1.0 } else { -1.0 };
    let e = e.scale_re(sign).shift_offset(-p.gamma);
    debug_assert!(e.is_zero() || e.base_offset() == 0.0);
    Ok(e)
}

/// Evaluates [`rodrigues_expr`] at `z`.
pub fn eval_rodrigues(p: ZernikeParams, z: DiskPoint) -> Result<Complex64> {
    Ok(rodrigues_expr(p)?.eval(z.z())?)
}

/// The explicit finite sum as a [`DiskExpr`]: Σ_j (−1)^j c_j z^{n−j} z̄^{m−j} u^j.
pub fn explicit_expr(p: ZernikeParams) -> DiskExpr {
    let terms = explicit_coeffs(p).into_iter().enumerate().map(|(j, c)| {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let j = j as u32;
        ((p.n - j, p.m - j, j as i32), Complex64::new(sign * c, 0.0))
    });
    DiskExpr::from_raw(terms, 0.0).canonicalize()
}

/// Evaluation route selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    Explicit,
    Gauss1,
    Gauss2,
    Jacobi,
    Rodrigues,
    Contour,
}

impl Route {
    pub const ALL: [Route; 6] =
        [Route::Explicit, Route::Gauss1, Route::Gauss2, Route::Jacobi, Route::Rodrigues, Route::Contour];

    pub fn name(&self) -> &'static str {
        match self {
            Route::Explicit => "explicit",
            Route::Gauss1 => "gauss1",
            Route::Gauss2 => "gauss2",
            Route::Jacobi => "jacobi",
            Route::Rodrigues => "rodrigues",
            Route::Contour => "contour",
        }
    }

    /// Whether the route is defined at `z`.
    pub fn applies(&self, z: DiskPoint) -> bool {
        match self {
            Route::Gauss1 | Route::Gauss2 => !z.is_origin(),
            Route::Contour => z.modulus() < 1.0,
            _ => true,
        }
    }

    /// Evaluates Z at `z`; the contour route uses the adaptive wrapper.
    pub fn eval(&self, p: ZernikeParams, z: DiskPoint) -> Result<Complex64> {
        match self {
            Route::Explicit => Ok(eval_explicit(p, z)),
            Route::Gauss1 => eval_gauss1(p, z),
            Route::Gauss2 => eval_gauss2(p, z),
            Route::Jacobi => Ok(eval_jacobi(p, z)),
            Route::Rodrigues => eval_rodrigues(p, z),
            Route::Contour => eval_contour_adaptive(p, z, ContourConfig::default()).map(|(v, _)| v),
        }
    }
}

impl std::str::FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown method '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(m: u32, n: u32, g: f64) -> ZernikeParams {
        ZernikeParams::new(m, n, g).unwrap()
    }

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::from_re_im(re, im).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
    }

    #[test]
    fn params_validation() {
        assert!(ZernikeParams::new(1, 1, -1.0).is_err());
        assert!(ZernikeParams::new(1, 1, f64::NAN).is_err());
        assert!(ZernikeParams::new(65, 0, 0.0).is_err());
        assert!(ZernikeParams::new(64, 64, 0.0).is_ok());
        assert!(DiskPoint::from_re_im(0.8, 0.7).is_err());
    }

    #[test]
    fn explicit_examples() {
        let z = pt(0.1, 0.2);
        assert_eq!(eval_explicit(zp(0, 0, 1.7), z), Complex64::new(1.0, 0.0));
        let v = eval_explicit(zp(0, 1, 1.5), z);
        assert!(close(v, z.z() * 2.5, 1e-15));
        let v = eval_explicit(zp(1, 1, 0.0), pt(0.5, 0.0));
        assert!(close(v, Complex64::new(-1.0, 0.0), 1e-15));
        // Z_{1,1}^γ = (γ+2)((γ+2)|z|² − 1)
        let (g, z) = (2.5, pt(0.3, -0.4));
        let v = eval_explicit(zp(1, 1, g), z);
        assert!(close(v, Complex64::new((g + 2.0) * ((g + 2.0) * 0.25 - 1.0), 0.0), 1e-14));
    }

    #[test]
    fn gauss_routes() {
        let z = pt(0.5, 0.0);
        assert!(close(eval_gauss1(zp(1, 1, 0.0), z).unwrap(), Complex64::new(-1.0, 0.0), 1e-14));
        assert!(close(eval_gauss2(zp(1, 1, 0.0), z).unwrap(), Complex64::new(-1.0, 0.0), 1e-14));
        for m in 0..5 {
            let (g, z) = (0.7, pt(0.3, 0.6));
            let expect = z.z().conj().powu(m) * pochhammer(g + 1.0, m);
            assert!(close(eval_gauss1(zp(m, 0, g), z).unwrap(), expect, 1e-14));
            assert!(close(eval_gauss2(zp(m, 0, g), z).unwrap(), expect, 1e-14));
        }
        let z = pt(0.4, 0.2);
        let p = zp(2, 3, 1.5);
        assert!(close(eval_gauss1(p, z).unwrap(), eval_explicit(p, z), 1e-11));
        let p = zp(3, 2, 0.5);
        let z = pt(0.0, 0.7);
        assert!(close(eval_gauss2(p, z).unwrap(), eval_explicit(p, z), 1e-11));
        let origin = pt(0.0, 0.0);
        assert!(matches!(eval_gauss1(p, origin), Err(Error::DomainError(_))));
        assert!(matches!(eval_gauss2(p, origin), Err(Error::DomainError(_))));
    }

    #[test]
    fn jacobi_route() {
        let z = pt(0.3, 0.45);
        for &g in &[-0.5, 0.0, 2.5] {
            let v = eval_jacobi(zp(1, 1, g), z);
            let r2 = z.z().norm_sqr();
            assert!(close(v, Complex64::new((g + 2.0) * ((g + 2.0) * r2 - 1.0), 0.0), 1e-14));
        }
        assert_eq!(eval_jacobi(zp(3, 1, 0.5), pt(0.0, 0.0)), Complex64::new(0.0, 0.0));
        let p = zp(2, 1, 0.0);
        let z = DiskPoint::new(Complex64::from_polar(0.3, std::f64::consts::FRAC_PI_4)).unwrap();
        assert!(close(eval_jacobi(p, z), eval_explicit(p, z), 1e-11));
    }

    #[test]
    fn asymmetric_jacobi_prefactor_holds_only_for_n_ge_m() {
        let z = pt(0.35, -0.2);
        for (m, n) in [(0, 2), (1, 3), (2, 2), (2, 5)] {
            let p = zp(m, n, 0.5);
            assert!(close(eval_jacobi_asymmetric(p, z), eval_explicit(p, z), 1e-12));
        }
        // Z_{1,0}^γ = (γ+1) z̄, but the asymmetric form gives −z̄
        let p = zp(1, 0, 0.5);
        assert!(close(eval_jacobi_asymmetric(p, z), -z.z().conj(), 1e-15));
        assert!(!close(eval_jacobi_asymmetric(p, z), eval_explicit(p, z), 1e-3));
    }

    #[test]
    fn rodrigues_small_cases() {
        let one = rodrigues_expr(zp(0, 0, 0.3)).unwrap();
        assert!(one.equal(&DiskExpr::one(), 1e-15).unwrap());
        let g = 0.5;
        let e = rodrigues_expr(zp(1, 0, g)).unwrap();
        assert!(e.equal(&DiskExpr::zbar().scale_re(g + 1.0), 1e-14).unwrap());
        let v = e.eval(Complex64::new(0.3, 0.0)).unwrap();
        assert!((v - Complex64::new(0.45, 0.0)).norm() < 1e-15);
        let p = zp(2, 2, 0.5);
        assert!(rodrigues_expr(p).unwrap().equal(&explicit_expr(p), 1e-11).unwrap());
        for &g in &[-0.5, 0.0, 1.0, 2.5] {
            let p = zp(1, 1, g);
            assert!(rodrigues_expr(p).unwrap().equal(&explicit_expr(p), 1e-12).unwrap());
        }
    }

    #[test]
    fn origin_values() {
        assert_eq!(value_at_origin(zp(1, 1, 0.0)), -2.0);
        assert_eq!(value_at_origin(zp(2, 2, 0.0)), 24.0);
        assert_eq!(value_at_origin(zp(3, 1, 0.7)), 0.0);
        let origin = pt(0.0, 0.0);
        for m in 0..=8 {
            for n in 0..=8 {
                let p = zp(m, n, 1.5);
                assert_eq!(eval_explicit(p, origin).re, value_at_origin(p));
            }
        }
    }

    #[test]
    fn deviation_measure() {
        let a = Complex64::new(1.0, 0.0);
        assert_eq!(deviation(a, a, 1.0), 0.0);
        assert!((deviation(a, a * 1.001, 1.0) - 0.001 / 1.001).abs() < 1e-12);
        // near a zero, the floor takes over
        let tiny = Complex64::new(1e-12, 0.0);
        assert!(deviation(tiny, -tiny, 100.0) < 1e-12);
    }

    #[test]
    fn route_names_roundtrip() {
        for r in Route::ALL {
            assert_eq!(r.name().parse::<Route>().unwrap(), r);
        }
        assert!("bogus".parse::<Route>().is_err());
    }
}
