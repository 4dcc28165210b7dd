//! Generalized Zernike (disk) polynomials Z_{m,n}^γ(z, z̄).
//!
//! The family is evaluated through several independent routes (explicit
//! finite sum, two terminating ₂F₁ forms, a Jacobi form, a symbolic
//! Rodrigues construction and a contour integral) so that every route can be
//! checked against the others. The crate also carries the exact algebra of
//! the magnetic Laplacian ladder construction and the weighted Cauchy
//! transform C_γ together with its quadrature oracles.
//!
//! Module map:
//!
//! - [`special`]: Pochhammer, ₂F₁, Jacobi polynomials, incomplete beta, Gaussian rules
//! - [`algebra`]: exact sparse expressions Σ c z^a z̄^b u^k with u = 1−|z|²
//! - [`zernike`]: evaluation routes, coefficients, inner products, Hermite limit
//! - [`spectral`]: ladder operators and the magnetic Laplacian
//! - [`cauchy`]: the weighted Cauchy transform
//! - [`verify`]: seeded verification suites and their reports

pub mod algebra;
pub mod cauchy;
pub mod error;
pub mod special;
pub mod spectral;
pub mod verify;
pub mod zernike;

pub use algebra::DiskExpr;
pub use error::Error;
pub use num_complex::Complex64;
pub use zernike::{DiskPoint, ZernikeParams};
