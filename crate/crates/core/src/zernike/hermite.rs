use num_complex::Complex64;

use super::{eval_explicit, DiskPoint, ZernikeParams};
use crate::error::{Error, Result};
use crate::special::binomial;

/// Complex Hermite polynomial H_{m,n}(z, z̄) = Σ_j (−1)^j C(m,j) C(n,j) j! z̄^{m−j} z^{n−j}.
pub fn hermite(m: u32, n: u32, z: Complex64) -> Complex64 {
    let zb = z.conj();
    let mut fact = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..=m.min(n) {
        if j > 0 {
            fact *= j as f64;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += zb.powu(m - j) * z.powu(n - j) * (sign * binomial(m, j) * binomial(n, j) * fact);
    }
    sum
}

/// |Z_{m,n}^{ρ²}(z/ρ)/ρ^{m+n} − H_{m,n}(z)|, which tends to 0 as ρ → ∞.
pub fn hermite_limit_error(m: u32, n: u32, z: Complex64, rho: f64) -> Result<f64> {
    if !(rho > 1.0) {
        return Err(Error::InvalidParams(format!("rho = {rho} must exceed 1")));
    }
    if z.norm() >= rho {
        return Err(Error::DomainError(format!("|z| = {} must be below rho = {rho}", z.norm())));
    }
    let p = ZernikeParams::new(m, n, rho * rho)?;
    let scaled = eval_explicit(p, DiskPoint::new(z / rho)?) / rho.powi((m + n) as i32);
    Ok((scaled - hermite(m, n, z)).norm())
}
