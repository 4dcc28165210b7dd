use num_complex::Complex64;

use super::{deviation, DiskPoint, ZernikeParams};
use crate::error::{Error, Result};
use crate::special::{pochhammer, QuadratureRule};

/// Smallest node count accepted by [`eval_contour`].
pub const MIN_NODES: usize = 16;

/// Doubling policy of [`eval_contour_adaptive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig {
    pub start_nodes: usize,
    pub max_nodes: usize,
    /// Successive values must agree to this, measured by [`deviation`].
    pub tol: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self { start_nodes: 64, max_nodes: 1 << 16, tol: 1e-10 }
    }
}

/// Contour-integral representation
/// Z = −(γ+m+1)_n m!/(2πi) u^{−γ} ∮_{|t|=1} t^n (1 − t z̄)^{γ+m} / (z − t)^{m+1} dt,
/// with t = e^{iθ} and the equal-weight periodic trapezoid rule.
///
/// (1 − t z̄)^{γ+m} is taken on the principal branch; Re(1 − t z̄) > 0 on the
/// contour whenever |z| < 1.
pub fn eval_contour(p: ZernikeParams, z: DiskPoint, n_nodes: usize) -> Result<Complex64> {
    if !(z.modulus() < 1.0) {
        return Err(Error::DomainError("contour route needs |z| < 1".into()));
    }
    if n_nodes < MIN_NODES {
        return Err(Error::InvalidParams(format!("contour route needs at least {MIN_NODES} nodes")));
    }
    let w = z.z();
    let wb = w.conj();
    let expo = p.gamma + p.m as f64;
    let rule = QuadratureRule::periodic(n_nodes)?;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for (theta, weight) in rule.iter() {
        let t = Complex64::from_polar(1.0, theta);
        let integrand = t.powu(p.n) * (one - t * wb).powf(expo) / (w - t).powu(p.m + 1);
        // dt = i t dθ
        sum += integrand * i * t * weight;
    }
    let pre = -pochhammer(p.gamma + p.m as f64 + 1.0, p.n) * pochhammer(1.0, p.m) * z.u().powf(-p.gamma);
    Ok(sum * pre / (2.0 * std::f64::consts::PI * i))
}

/// Doubles the node count from `start_nodes` until two successive values
/// agree to `tol`; returns the value and the node count used.
pub fn eval_contour_adaptive(p: ZernikeParams, z: DiskPoint, cfg: ContourConfig) -> Result<(Complex64, usize)> {
    let scale = p.boundary_modulus();
    let mut n = cfg.start_nodes.max(MIN_NODES);
    let mut prev = eval_contour(p, z, n)?;
    while n < cfg.max_nodes {
        n *= 2;
        let next = eval_contour(p, z, n)?;
        if deviation(next, prev, scale) <= cfg.tol {
            return Ok((next, n));
        }
        prev = next;
    }
    Err(Error::NonConvergent(format!(
        "contour route for {p} at z = {} did not settle within {} nodes",
        z.z(),
        cfg.max_nodes
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zernike::eval_explicit;

    fn zp(m: u32, n: u32, g: f64) -> ZernikeParams {
        ZernikeParams::new(m, n, g).unwrap()
    }

    #[test]
    fn constant_at_origin() {
        let v = eval_contour(zp(0, 0, 0.5), DiskPoint::from_re_im(0.0, 0.0).unwrap(), 16).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn off_diagonal_vanishes_at_origin() {
        let o = DiskPoint::from_re_im(0.0, 0.0).unwrap();
        for (m, n) in [(1, 0), (0, 2), (3, 1), (2, 5)] {
            let p = zp(m, n, 1.5);
            let v = eval_contour(p, o, 64).unwrap();
            assert!(v.norm() < 1e-14 * p.boundary_modulus(), "({m},{n}): {v}");
        }
    }

    #[test]
    fn matches_explicit() {
        let p = zp(2, 1, 0.5);
        let z = DiskPoint::from_re_im(0.3, -0.2).unwrap();
        let v = eval_contour(p, z, 256).unwrap();
        let e = eval_explicit(p, z);
        assert!((v - e).norm() <= 1e-10 * e.norm());
    }

    #[test]
    fn adaptive_wrapper() {
        let p = zp(5, 3, -0.5);
        let z = DiskPoint::from_re_im(-0.6, 0.5).unwrap();
        let (v, used) = eval_contour_adaptive(p, z, ContourConfig::default()).unwrap();
        assert!(used >= 128);
        assert!(deviation(v, eval_explicit(p, z), p.boundary_modulus()) <= 1e-10);
        let tight = ContourConfig { start_nodes: 16, max_nodes: 32, tol: 1e-14 };
        assert!(matches!(eval_contour_adaptive(p, z, tight), Err(Error::NonConvergent(_))));
    }

    #[test]
    fn rejects_boundary_and_few_nodes() {
        let p = zp(1, 1, 0.0);
        assert!(eval_contour(p, DiskPoint::from_re_im(1.0, 0.0).unwrap(), 64).is_err());
        assert!(eval_contour(p, DiskPoint::from_re_im(0.1, 0.0).unwrap(), 8).is_err());
    }
}
