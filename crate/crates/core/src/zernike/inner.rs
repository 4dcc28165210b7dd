use num_complex::Complex64;

use super::{eval_explicit, DiskPoint, ZernikeParams};
use crate::error::{Error, Result};
use crate::special::gauss_jacobi_radial;

/// ⟨Z_{p1}, Z_{p2}⟩_γ = ∫_D Z_{p1} conj(Z_{p2}) (1−|z|²)^γ dx dy.
///
/// The angular integral is done exactly (zero unless the charges n−m agree);
/// what remains is π ∫₀¹ Z₁(√t) conj(Z₂(√t)) (1−t)^γ dt, a polynomial in t
/// against the Jacobi weight, integrated with `n_radial` Gauss-Jacobi nodes.
pub fn inner_product(p1: ZernikeParams, p2: ZernikeParams, gamma: f64, n_radial: usize) -> Result<Complex64> {
    if p1.gamma != gamma || p2.gamma != gamma {
        return Err(Error::ParamMismatch(format!(
            "inner product weight {gamma} vs parameters {} and {}",
            p1.gamma, p2.gamma
        )));
    }
    if p1.charge() != p2.charge() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let degree = ((p1.m + p1.n + p2.m + p2.n) / 2) as usize;
    if 2 * n_radial < degree + 1 {
        return Err(Error::InvalidParams(format!(
            "{n_radial} radial nodes cannot integrate degree {degree} exactly"
        )));
    }
    let rule = gauss_jacobi_radial(n_radial, gamma)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for (t, w) in rule.iter() {
        let z = DiskPoint::from_re_im(t.sqrt(), 0.0)?;
        sum += eval_explicit(p1, z) * eval_explicit(p2, z).conj() * w;
    }
    Ok(sum * std::f64::consts::PI)
}

/// ‖Z_p‖ in L²(D, (1−|z|²)^γ dx dy).
pub fn norm(p: ZernikeParams) -> Result<f64> {
    let n_radial = (p.m + p.n) as usize / 2 + 1;
    Ok(inner_product(p, p, p.gamma, n_radial)?.re.sqrt())
}
