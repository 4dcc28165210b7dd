use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{explicit_coeffs, ZernikeParams};
use crate::special::binomial;

/// Z_{m,n}^γ as a polynomial Σ c_{a,b} z^a z̄^b.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateCoeffs {
    pub params: ZernikeParams,
    /// (power of z, power of z̄) → coefficient.
    pub coeffs: BTreeMap<(u32, u32), f64>,
}

impl BivariateCoeffs {
    pub fn get(&self, a: u32, b: u32) -> f64 {
        self.coeffs.get(&(a, b)).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.coeffs.iter().map(|(&(a, b), &c)| z.powu(a) * zb.powu(b) * c).sum()
    }

    /// Coefficients of the conjugate polynomial Z_{n,m}^γ.
    pub fn conjugate(&self) -> Self {
        Self {
            params: self.params.swapped(),
            coeffs: self.coeffs.iter().map(|(&(a, b), &c)| ((b, a), c)).collect(),
        }
    }
}

/// Expands u^j = (1 − z z̄)^j in the explicit sum.
pub fn monomial_coeffs(p: ZernikeParams) -> BivariateCoeffs {
    let mut coeffs: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    for (j, c) in explicit_coeffs(p).into_iter().enumerate() {
        let j = j as u32;
        for i in 0..=j {
            // (−1)^j from the sum, (−1)^i from the binomial
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            *coeffs.entry((p.n - j + i, p.m - j + i)).or_default() += sign * c * binomial(j, i);
        }
    }
    coeffs.retain(|_, c| *c != 0.0);
    BivariateCoeffs { params: p, coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zernike::{eval_explicit, DiskPoint};

    #[test]
    fn small_tables() {
        let c = monomial_coeffs(ZernikeParams::new(0, 1, 2.5).unwrap());
        assert_eq!(c.coeffs, BTreeMap::from([((1, 0), 3.5)]));
        let c = monomial_coeffs(ZernikeParams::new(1, 1, 0.0).unwrap());
        assert_eq!(c.coeffs, BTreeMap::from([((0, 0), -2.0), ((1, 1), 4.0)]));
    }

    #[test]
    fn table_matches_explicit_and_has_full_bidegree() {
        let pts = [(0.3, 0.1), (-0.5, 0.6), (0.0, -0.9), (0.7, 0.05)];
        for m in 0..=6 {
            for n in 0..=6 {
                for &g in &[-0.5, 0.0, 2.5] {
                    let p = ZernikeParams::new(m, n, g).unwrap();
                    let c = monomial_coeffs(p);
                    assert!(c.get(n, m) != 0.0);
                    assert!(c.coeffs.keys().all(|&(a, b)| a <= n && b <= m));
                    assert_eq!(c.conjugate(), monomial_coeffs(p.swapped()));
                    for &(re, im) in &pts {
                        let z = DiskPoint::from_re_im(re, im).unwrap();
                        let (v, e) = (c.eval(z.z()), eval_explicit(p, z));
                        assert!((v - e).norm() <= 1e-11 * p.boundary_modulus().max(1.0));
                    }
                }
            }
        }
    }
}
