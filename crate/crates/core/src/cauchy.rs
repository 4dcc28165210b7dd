//! The weighted Cauchy transform
//! C_γ f(z) = (1/π) ∫_D f(w) (1−|w|²)^γ / (w − z) dA(w).
//!
//! On a monomial w̄^p w^q u^k only one term of the geometric expansion of
//! 1/(w−z) survives the angular integral: the inner disk |w| < |z| when
//! q ≤ p and the outer annulus when q > p. What remains is an incomplete
//! beta integral in t = |w|².

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::special::{gauss_jacobi_radial, hyp2f1, incomplete_beta, BetaSide, QuadratureRule};
use crate::zernike::{deviation, eval_explicit, monomial_coeffs, DiskPoint, ZernikeParams};

/// Largest |z| accepted by [`cauchy_monomial_2f1`].
pub const HYP_RADIUS: f64 = 0.95;

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > -1.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("gamma = {gamma} must exceed -1")))
    }
}

fn check_open(z: DiskPoint) -> Result<()> {
    if z.modulus() < 1.0 {
        Ok(())
    } else {
        Err(Error::DomainError(format!("|z| = {} must be below 1", z.modulus())))
    }
}

/// C_γ(w̄^p w^q u^k)(z) through incomplete beta integrals.
///
/// With χ = q − p:
/// χ ≤ 0: −z^{−(p−q+1)} ∫₀^{|z|²} t^p (1−t)^{γ+k} dt,
/// χ > 0: z^{q−p−1} ∫_{|z|²}^1 t^p (1−t)^{γ+k} dt.
pub fn cauchy_monomial_closed(p: u32, q: u32, k: u32, gamma: f64, z: DiskPoint) -> Result<Complex64> {
    check_gamma(gamma)?;
    check_open(z)?;
    let (a, b) = (p as f64 + 1.0, gamma + k as f64 + 1.0);
    let w = z.z();
    let r2 = w.norm_sqr();
    if q <= p {
        if z.is_origin() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let radial = incomplete_beta(a, b, r2, BetaSide::Lower)?;
        Ok(-w.powu(p - q + 1).inv() * radial)
    } else {
        let radial = incomplete_beta(a, b, r2, BetaSide::Upper)?;
        Ok(w.powu(q - p - 1) * radial)
    }
}

/// The hypergeometric form for q ≤ p, written with m = p+k, n = q+k, j = k:
/// −z^n z̄^{m+1}/(m−j+1) · u^{γ+1} (u/|z|²)^j ₂F₁(1, γ+m+2; m−j+2; |z|²).
pub fn cauchy_monomial_2f1(p: u32, q: u32, k: u32, gamma: f64, z: DiskPoint) -> Result<Complex64> {
    check_gamma(gamma)?;
    if q > p {
        return Err(Error::InvalidParams(format!("hypergeometric form needs p >= q, got p={p}, q={q}")));
    }
    if z.is_origin() || z.modulus() > HYP_RADIUS {
        return Err(Error::DomainError(format!(
            "hypergeometric form needs 0 < |z| <= {HYP_RADIUS}, got {}",
            z.modulus()
        )));
    }
    let (m, n, j) = (p + k, q + k, k);
    let w = z.z();
    let (r2, u) = (w.norm_sqr(), z.u());
    let f = hyp2f1(1.0, gamma + m as f64 + 2.0, (m - j) as f64 + 2.0, r2)?;
    let radial = u.powf(gamma + 1.0) * (u / r2).powi(j as i32) * f / (m - j + 1) as f64;
    Ok(-w.powu(n) * w.conj().powu(m + 1) * radial)
}

/// u^{γ+1} Z_{m,n−1}^{γ+1}(z), the closed form of C_γ(Z_{m,n}^γ).
///
/// Used for every n ≥ 1; there is no polynomial form for n = 0.
pub fn cauchy_zernike_closed(p: ZernikeParams, z: DiskPoint) -> Result<Complex64> {
    check_open(z)?;
    if p.n == 0 {
        return Err(Error::NZero);
    }
    let shifted = ZernikeParams::new(p.m, p.n - 1, p.gamma + 1.0)?;
    Ok(eval_explicit(shifted, z) * z.u().powf(p.gamma + 1.0))
}

/// The alternative candidate u^{γ+1} Z_{n,m−1}^{γ+1}(z) with the roles of m
/// and n exchanged, kept so that it can be compared against the quadrature
/// route. Needs m ≥ 1.
pub fn cauchy_zernike_swapped_candidate(p: ZernikeParams, z: DiskPoint) -> Result<Complex64> {
    check_open(z)?;
    if p.m == 0 {
        return Err(Error::InvalidParams("swapped candidate needs m >= 1".into()));
    }
    let shifted = ZernikeParams::new(p.n, p.m - 1, p.gamma + 1.0)?;
    Ok(eval_explicit(shifted, z) * z.u().powf(p.gamma + 1.0))
}

/// C_γ(Z_{m,n}^γ)(z) by linearity over the monomial expansion of Z.
/// Valid for all (m, n), including n = 0.
pub fn cauchy_zernike_quad(p: ZernikeParams, z: DiskPoint) -> Result<Complex64> {
    check_open(z)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for (&(a, b), &c) in &monomial_coeffs(p).coeffs {
        sum += cauchy_monomial_closed(b, a, 0, p.gamma, z)? * c;
    }
    Ok(sum)
}

/// Scale used when comparing values of C_γ(Z_{m,n}^γ): the boundary modulus
/// of Z_{m,n−1}^{γ+1} (of Z_{m,0}^{γ+1} when n = 0).
pub fn cauchy_scale(p: ZernikeParams) -> f64 {
    crate::special::pochhammer(p.gamma + 2.0, (p.m + p.n).saturating_sub(1))
}

/// The defining double integral, in polar coordinates w = z + ρe^{iφ} centred at z.
///
/// The area element ρ dρ dφ cancels the pole, leaving
/// (1/π) ∫₀^{2π} e^{−iφ} ∫₀^{R(φ)} f(w)(1−|w|²)^γ dρ dφ with R(φ) the distance
/// to the unit circle along the ray. Writing 1−|w|² = (R−ρ)(ρ−R₋) puts the
/// boundary singularity into a Gauss-Jacobi weight in s = ρ/R; the angular
/// integral uses the periodic trapezoid rule. Rays are evaluated in parallel
/// and summed in order.
pub fn cauchy_direct_2d<F>(f: F, gamma: f64, z: DiskPoint, n_r: usize, n_theta: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    check_gamma(gamma)?;
    check_open(z)?;
    if n_r == 0 || n_theta == 0 {
        return Err(Error::InvalidParams("node counts must be positive".into()));
    }
    let radial = gauss_jacobi_radial(n_r, gamma)?;
    let angular = QuadratureRule::periodic(n_theta)?;
    let w0 = z.z();
    let c = z.u();
    let rays: Vec<Complex64> = angular
        .nodes()
        .par_iter()
        .zip(angular.weights().par_iter())
        .map(|(&phi, &wphi)| {
            let dir = Complex64::from_polar(1.0, phi);
            let b = (w0.conj() * dir).re;
            let root = (b * b + c).sqrt();
            let r_out = -b + root;
            let r_in = -b - root;
            let inner: Complex64 = radial
                .iter()
                .map(|(s, ws)| {
                    let rho = r_out * s;
                    f(w0 + dir * rho) * (ws * (rho - r_in).powf(gamma))
                })
                .sum();
            inner * dir.conj() * (wphi * r_out.powf(gamma + 1.0))
        })
        .collect();
    Ok(rays.into_iter().sum::<Complex64>() / std::f64::consts::PI)
}

/// Refinement policy for [`cauchy_direct_2d_adaptive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectConfig {
    pub n_r: usize,
    pub n_theta: usize,
    /// Number of times both counts may be doubled.
    pub max_doublings: u32,
    pub tol: f64,
}

impl Default for DirectConfig {
    fn default() -> Self {
        Self { n_r: 32, n_theta: 128, max_doublings: 4, tol: 1e-9 }
    }
}

/// Doubles both node counts until successive values agree to `tol`
/// (measured by [`deviation`] against `scale`); returns the value and the
/// final (n_r, n_theta).
pub fn cauchy_direct_2d_adaptive<F>(
    f: F,
    gamma: f64,
    z: DiskPoint,
    scale: f64,
    cfg: DirectConfig,
) -> Result<(Complex64, usize, usize)>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let (mut nr, mut nt) = (cfg.n_r, cfg.n_theta);
    let mut prev = cauchy_direct_2d(&f, gamma, z, nr, nt)?;
    for _ in 0..cfg.max_doublings {
        nr *= 2;
        nt *= 2;
        let next = cauchy_direct_2d(&f, gamma, z, nr, nt)?;
        if deviation(next, prev, scale) <= cfg.tol {
            return Ok((next, nr, nt));
        }
        prev = next;
    }
    Err(Error::NonConvergent(format!("direct Cauchy quadrature at z = {} stopped at ({nr}, {nt}) nodes", z.z())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::from_re_im(re, im).unwrap()
    }

    fn zp(m: u32, n: u32, g: f64) -> ZernikeParams {
        ZernikeParams::new(m, n, g).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-300)
    }

    #[test]
    fn constant_gives_minus_zbar() {
        for z in [pt(0.5, 0.0), pt(0.3, -0.4), pt(-0.1, 0.85)] {
            let v = cauchy_monomial_closed(0, 0, 0, 0.0, z).unwrap();
            assert!(close(v, -z.z().conj(), 1e-14));
        }
    }

    #[test]
    fn origin_values() {
        let o = pt(0.0, 0.0);
        for &(p, q, k) in &[(0, 0, 0), (2, 1, 1), (0, 3, 2), (4, 0, 0)] {
            assert_eq!(cauchy_monomial_closed(p, q, k, 0.5, o).unwrap(), Complex64::new(0.0, 0.0));
        }
        // charge one: the outer integral covers the whole disk
        for &g in &[-0.5, 0.0, 2.5] {
            let v = cauchy_monomial_closed(0, 1, 0, g, o).unwrap();
            assert!((v.re - 1.0 / (g + 1.0)).abs() < 1e-14 && v.im == 0.0);
        }
    }

    #[test]
    fn transform_of_z() {
        for &g in &[-0.5, 0.0, 2.5] {
            let z = pt(0.35, 0.2);
            let v = cauchy_monomial_closed(0, 1, 0, g, z).unwrap();
            let want = z.u().powf(g + 1.0) / (g + 1.0);
            assert!(close(v, Complex64::new(want, 0.0), 1e-13));
        }
    }

    #[test]
    fn hypergeometric_form_agrees() {
        let cases = [(1, 0, 1, 0.5, pt(0.4, 0.1)), (3, 0, 0, 0.0, pt(0.6, 0.0)), (0, 0, 0, 0.0, pt(0.5, 0.0))];
        for &(p, q, k, g, z) in &cases {
            let a = cauchy_monomial_2f1(p, q, k, g, z).unwrap();
            let b = cauchy_monomial_closed(p, q, k, g, z).unwrap();
            assert!(close(a, b, 1e-10), "({p},{q},{k}): {a} vs {b}");
        }
        let v = cauchy_monomial_2f1(0, 0, 0, 0.0, pt(0.5, 0.0)).unwrap();
        assert!((v - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
        assert!(cauchy_monomial_2f1(0, 0, 0, 0.0, pt(0.96, 0.0)).is_err());
        assert!(cauchy_monomial_2f1(0, 1, 0, 0.0, pt(0.5, 0.0)).is_err());
    }

    #[test]
    fn zernike_closed_examples() {
        let v = cauchy_zernike_closed(zp(1, 1, 0.0), pt(0.5, 0.0)).unwrap();
        assert!((v - Complex64::new(0.75, 0.0)).norm() < 1e-14);
        for &g in &[-0.5, 0.0, 2.5] {
            let z = pt(0.2, -0.45);
            let v = cauchy_zernike_closed(zp(0, 1, g), z).unwrap();
            assert!(close(v, Complex64::new(z.u().powf(g + 1.0), 0.0), 1e-14));
            let mono = cauchy_monomial_closed(0, 1, 0, g, z).unwrap() * (g + 1.0);
            assert!(close(v, mono, 1e-13));
            let u = z.u();
            let want = u.powf(g + 1.0) * (g + 3.0) * ((g + 2.0) - (g + 3.0) * u);
            let v = cauchy_zernike_closed(zp(1, 2, g), z).unwrap();
            assert!(close(v, Complex64::new(want, 0.0), 1e-13), "{v} vs {want}");
        }
        assert!(matches!(cauchy_zernike_closed(zp(2, 0, 0.5), pt(0.1, 0.0)), Err(Error::NZero)));
    }

    #[test]
    fn quad_route_examples() {
        let v = cauchy_zernike_quad(zp(0, 0, 0.0), pt(0.5, 0.0)).unwrap();
        assert!((v - Complex64::new(-0.5, 0.0)).norm() < 1e-14);
        for &g in &[-0.5, 0.0, 2.5] {
            for (m, n) in [(1, 1), (3, 2), (2, 4), (1, 2)] {
                let p = zp(m, n, g);
                let z = pt(0.3, 0.55);
                let a = cauchy_zernike_quad(p, z).unwrap();
                let b = cauchy_zernike_closed(p, z).unwrap();
                assert!(deviation(a, b, cauchy_scale(p)) <= 1e-9, "{p}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn swapped_candidate_differs_off_diagonal() {
        let p = zp(1, 2, 0.5);
        let z = pt(0.3, 0.2);
        let a = cauchy_zernike_quad(p, z).unwrap();
        let b = cauchy_zernike_swapped_candidate(p, z).unwrap();
        assert!(deviation(a, b, cauchy_scale(p)) > 1e-3);
        let p = zp(2, 2, 0.5);
        let a = cauchy_zernike_closed(p, z).unwrap();
        let b = cauchy_zernike_swapped_candidate(p, z).unwrap();
        assert!(deviation(a, b, cauchy_scale(p)) < 1e-14);
    }

    #[test]
    fn direct_oracle() {
        let v = cauchy_direct_2d(|_| Complex64::new(1.0, 0.0), 0.0, pt(0.5, 0.0), 64, 256).unwrap();
        assert!((v - Complex64::new(-0.5, 0.0)).norm() < 1e-8, "{v}");
        let p = zp(1, 1, 0.0);
        let z = pt(0.3, -0.2);
        let f = |w: Complex64| eval_explicit(p, DiskPoint::new(w).unwrap());
        let v = cauchy_direct_2d(f, 0.0, z, 64, 256).unwrap();
        let want = cauchy_zernike_closed(p, z).unwrap();
        assert!((v - want).norm() <= 1e-7 * want.norm(), "{v} vs {want}");
        let v = cauchy_direct_2d(|_| Complex64::new(0.0, 0.0), 0.5, z, 8, 16).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn direct_oracle_singular_weight() {
        let p = zp(2, 1, -0.5);
        let z = pt(-0.4, 0.5);
        let f = |w: Complex64| eval_explicit(p, DiskPoint::new(w).unwrap());
        let (v, _, _) = cauchy_direct_2d_adaptive(f, p.gamma, z, cauchy_scale(p), DirectConfig::default()).unwrap();
        let want = cauchy_zernike_quad(p, z).unwrap();
        assert!(deviation(v, want, cauchy_scale(p)) <= 1e-6, "{v} vs {want}");
    }

    #[test]
    fn angular_charge() {
        let n_s = 32;
        for (m, n) in [(2, 1), (1, 3), (3, 0), (2, 2)] {
            let p = zp(m, n, 0.5);
            let samples: Vec<Complex64> = (0..n_s)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * k as f64 / n_s as f64;
                    cauchy_zernike_quad(p, DiskPoint::new(Complex64::from_polar(0.5, t)).unwrap()).unwrap()
                })
                .collect();
            let charge = n as i64 - m as i64 - 1;
            let modes: Vec<(i64, f64)> = (-(n_s as i64) / 2..n_s as i64 / 2)
                .map(|q| {
                    let c: Complex64 = samples
                        .iter()
                        .enumerate()
                        .map(|(k, s)| s * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * (q * k as i64) as f64 / n_s as f64))
                        .sum();
                    (q, c.norm() / n_s as f64)
                })
                .collect();
            let main = modes.iter().find(|(q, _)| *q == charge).unwrap().1;
            assert!(main > 0.0);
            for &(q, a) in &modes {
                if q != charge {
                    assert!(a <= 1e-8 * main, "({m},{n}) mode {q}: {a}");
                }
            }
        }
    }

    #[test]
    fn domain_checks() {
        assert!(cauchy_monomial_closed(0, 0, 0, 0.0, pt(1.0, 0.0)).is_err());
        assert!(cauchy_monomial_closed(0, 0, 0, -1.0, pt(0.1, 0.0)).is_err());
        assert!(cauchy_direct_2d(|_| Complex64::new(1.0, 0.0), 0.0, pt(0.1, 0.0), 0, 4).is_err());
    }
}
