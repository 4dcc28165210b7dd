//! Ladder operators ∇_α, ∇_α* and the magnetic Laplacian 𝔏_ν acting on
//! [`DiskExpr`] values, and the eigenfunctions ψ_{m,n}^ν they generate.

use num_complex::Complex64;

use crate::algebra::{AlgebraError, DiskExpr};
use crate::error::{Error, Result};
use crate::special::pochhammer;
use crate::zernike::{explicit_expr, ZernikeParams};

type AResult<T> = std::result::Result<T, AlgebraError>;

/// ν and the Landau level m (with ν > 1/2, m < ν − 1/2) plus the angular index n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    pub nu: f64,
    pub m: u32,
    pub n: u32,
}

impl SpectralParams {
    pub fn new(nu: f64, m: u32, n: u32) -> Result<Self> {
        if !(nu > 0.5) || !nu.is_finite() {
            return Err(Error::InvalidParams(format!("nu = {nu} must exceed 1/2")));
        }
        if !((m as f64) < nu - 0.5) {
            return Err(Error::InvalidParams(format!("m = {m} must be below nu - 1/2 = {}", nu - 0.5)));
        }
        Ok(Self { nu, m, n })
    }

    /// γ = 2(ν − m) − 1.
    pub fn gamma(&self) -> f64 {
        2.0 * (self.nu - self.m as f64) - 1.0
    }

    /// λ_{ν,m} = ν(2m+1) − m(m+1).
    pub fn eigenvalue(&self) -> f64 {
        self.nu * (2 * self.m + 1) as f64 - (self.m * (self.m + 1)) as f64
    }

    /// Largest m admissible for `nu`.
    pub fn max_level(nu: f64) -> Option<u32> {
        if !(nu > 0.5) {
            return None;
        }
        let top = (nu - 0.5).ceil() - 1.0;
        Some(top.max(0.0) as u32)
    }
}

impl std::fmt::Display for SpectralParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "nu={},m={},n={}", self.nu, self.m, self.n)
    }
}

/// ∇_α e = −u ∂_z e + α z̄ e.
pub fn nabla(alpha: f64, e: &DiskExpr) -> AResult<DiskExpr> {
    let d = DiskExpr::u().mul(&e.d_z()?)?.scale_re(-1.0);
    d.add(&DiskExpr::zbar().mul(e)?.scale_re(alpha))
}

/// ∇_α* e = u ∂_z̄ e + (α+1) z e.
pub fn nabla_star(alpha: f64, e: &DiskExpr) -> AResult<DiskExpr> {
    let d = DiskExpr::u().mul(&e.d_zbar()?)?;
    d.add(&DiskExpr::z().mul(e)?.scale_re(alpha + 1.0))
}

/// 𝔏_ν e = −u² ∂_z∂_z̄ e − ν u (z ∂_z e − z̄ ∂_z̄ e) + ν² z z̄ e.
pub fn magnetic_laplacian(nu: f64, e: &DiskExpr) -> AResult<DiskExpr> {
    let u = DiskExpr::u();
    let u2 = u.mul(&u)?;
    let second = u2.mul(&e.d_z()?.d_zbar()?)?.scale_re(-1.0);
    let euler = DiskExpr::z().mul(&e.d_z()?)?.sub(&DiskExpr::zbar().mul(&e.d_zbar()?)?)?;
    let first = u.mul(&euler)?.scale_re(-nu);
    let potential = DiskExpr::z().mul(&DiskExpr::zbar())?.mul(e)?.scale_re(nu * nu);
    second.add(&first)?.add(&potential)
}

/// ψ_{m,n}^ν = ∇_{ν−1} ∘ … ∘ ∇_{ν−m} (z^n u^{ν−m}).
pub fn psi(p: SpectralParams) -> AResult<DiskExpr> {
    let base = p.nu - p.m as f64;
    let mut e = DiskExpr::monomial(p.n, 0, 0, Complex64::new(1.0, 0.0)).shift_offset(base);
    for k in (1..=p.m).rev() {
        e = nabla(p.nu - k as f64, &e)?;
    }
    Ok(e)
}

/// Largest coefficient of a − b relative to the largest coefficient of either side.
fn relative_gap(a: &DiskExpr, b: &DiskExpr) -> AResult<f64> {
    let diff = a.max_abs_diff(b)?;
    let scale = a.max_coeff().max(b.max_coeff());
    Ok(if diff == 0.0 { 0.0 } else { diff / scale })
}

/// Coefficient residual of 𝔏_ν ψ − λ_{ν,m} ψ, relative to ψ's largest coefficient.
pub fn eigen_residual(p: SpectralParams) -> AResult<f64> {
    let e = psi(p)?;
    let diff = magnetic_laplacian(p.nu, &e)?.sub(&e.scale_re(p.eigenvalue()))?;
    Ok(diff.max_coeff() / e.max_coeff())
}

/// Relative coefficient residuals of
/// (i) 𝔏_ν = ∇_ν*∇_ν − ν,
/// (ii) 𝔏_ν = ∇_{ν−1}∇_{ν−1}* + ν,
/// (iii) 𝔏_ν ∇_{ν−1} = ∇_{ν−1}(𝔏_{ν−1} + 2ν − 1),
/// each applied to `e`.
pub fn factorization_residuals(nu: f64, e: &DiskExpr) -> AResult<(f64, f64, f64)> {
    let lap = magnetic_laplacian(nu, e)?;
    let first = nabla_star(nu, &nabla(nu, e)?)?.sub(&e.scale_re(nu))?;
    let second = nabla(nu - 1.0, &nabla_star(nu - 1.0, e)?)?.add(&e.scale_re(nu))?;
    let lhs = magnetic_laplacian(nu, &nabla(nu - 1.0, e)?)?;
    let inner = magnetic_laplacian(nu - 1.0, e)?.add(&e.scale_re(2.0 * nu - 1.0))?;
    let rhs = nabla(nu - 1.0, &inner)?;
    Ok((relative_gap(&lap, &first)?, relative_gap(&lap, &second)?, relative_gap(&lhs, &rhs)?))
}

/// Outcome of comparing (γ+m+1)_n u^{−(ν−m)} ψ_{m,n}^ν with the explicit Z_{m,n}^γ.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeCheck {
    pub gamma: f64,
    /// Largest coefficient difference relative to Z's largest coefficient.
    pub residual: f64,
    /// Whether both sides carry the same canonical monomials.
    pub same_keys: bool,
}

/// Coefficients below this fraction of the largest are treated as rounding
/// debris when comparing key sets.
const KEY_PRUNE: f64 = 1e-12;

pub fn bridge_check(p: SpectralParams) -> Result<BridgeCheck> {
    let gamma = p.gamma();
    let zp = ZernikeParams::new(p.m, p.n, gamma)?;
    let scale = pochhammer(gamma + p.m as f64 + 1.0, p.n);
    let lhs = psi(p)?.shift_offset(-(p.nu - p.m as f64)).scale_re(scale);
    let rhs = explicit_expr(zp);
    let residual = relative_gap(&lhs, &rhs)?;
    let keys_l: Vec<_> = lhs.pruned(KEY_PRUNE).keys().collect();
    let keys_r: Vec<_> = rhs.pruned(KEY_PRUNE).keys().collect();
    let same_keys = lhs.base_offset() == rhs.base_offset() && keys_l == keys_r;
    Ok(BridgeCheck { gamma, residual, same_keys })
}
