//! Scalar special functions and quadrature rules.
//!
//! | Function | Description |
//! |----------|-------------|
//! | [`pochhammer`] | Rising factorial (a)_k |
//! | [`hyp2f1`] | Gauss hypergeometric ₂F₁ on the real line (terminating or |x| < 1) |
//! | [`jacobi_p`] | Jacobi polynomial P_n^{(α,β)}(x) |
//! | [`incomplete_beta`] | ∫ u^{a−1}(1−u)^{b−1} du over [0,x] or [x,1] |
//! | [`gauss_legendre`] | Gauss-Legendre rule on (−1,1) |
//! | [`gauss_jacobi_radial`] | Gauss rule on (0,1) for the weight (1−t)^γ |
//!
//! Everything is plain `f64`; the parameter ranges used by the rest of the
//! crate keep magnitudes well inside double range.

mod beta;
mod hypergeometric;
mod jacobi;
mod quadrature;

pub use beta::{incomplete_beta, incomplete_beta_with, BetaConfig, BetaSide};
pub use hypergeometric::{hyp2f1, hyp2f1_with_tol, terminating_terms, SERIES_MAX_TERMS, SERIES_TOL};
pub use jacobi::jacobi_p;
pub use quadrature::{gauss_jacobi_radial, gauss_legendre, Domain, QuadratureRule};

use thiserror::Error;

/// Errors from scalar special-function evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("hypergeometric series does not converge at x = {x}")]
    NonConvergent { x: f64 },
    #[error("lower parameter c = {c} hits a pole before the series terminates")]
    PoleAtC { c: f64 },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("node iteration failed to converge for {0}")]
    NonConvergence(String),
    #[error("quadrature and closed form disagree: {quadrature} vs {closed}")]
    RouteDisagreement { quadrature: f64, closed: f64 },
}

/// Rising factorial (a)_k = a(a+1)…(a+k−1), with (a)_0 = 1.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// k! as a float.
pub fn factorial(k: u32) -> f64 {
    pochhammer(1.0, k)
}

/// Binomial coefficient C(n, k) for small nonnegative integers.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(5.5, 0), 1.0);
        assert_eq!(pochhammer(3.0, 2), 12.0);
        assert_eq!(pochhammer(-2.0, 3), 0.0);
        assert_eq!(pochhammer(1.0, 5), 120.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(5, 0), 1.0);
        assert_eq!(binomial(2, 3), 0.0);
        assert_eq!(binomial(16, 8), 12870.0);
    }
}
