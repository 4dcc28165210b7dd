use std::f64::consts::PI;

use super::jacobi::jacobi_with_derivative;
use super::NumericsError;

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// Integration domain of a [`QuadratureRule`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Interval { lo: f64, hi: f64 },
    /// [0, 2π) with equally spaced nodes.
    Periodic,
}

/// Nodes and weights of a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    domain: Domain,
}

impl QuadratureRule {
    fn new(nodes: Vec<f64>, weights: Vec<f64>, domain: Domain) -> Self {
        debug_assert_eq!(nodes.len(), weights.len());
        debug_assert!(!nodes.is_empty());
        Self { nodes, weights, domain }
    }

    /// Equal-weight trapezoid rule on the circle: nodes 2πj/N, weights 2π/N.
    pub fn periodic(n: usize) -> Result<Self, NumericsError> {
        if n == 0 {
            return Err(NumericsError::DomainError("periodic rule needs at least one node".into()));
        }
        let h = 2.0 * PI / n as f64;
        let nodes = (0..n).map(|j| h * j as f64).collect();
        Ok(Self::new(nodes, vec![h; n], Domain::Periodic))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Iterator over (node, weight) pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Σ wᵢ f(xᵢ).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    /// Affinely maps an interval rule onto (lo, hi), scaling the weights.
    ///
    /// Only meaningful for rules whose weight function is constant (Gauss-Legendre).
    pub fn mapped(&self, lo: f64, hi: f64) -> Self {
        let Domain::Interval { lo: a, hi: b } = self.domain else {
            return self.clone();
        };
        let scale = (hi - lo) / (b - a);
        let nodes = self.nodes.iter().map(|&x| lo + (x - a) * scale).collect();
        let weights = self.weights.iter().map(|&w| w * scale).collect();
        Self::new(nodes, weights, Domain::Interval { lo, hi })
    }
}

/// Newton iteration for one root of P_n^{(α,β)} starting at `x0`.
fn newton_root(n: u32, alpha: f64, beta: f64, x0: f64) -> Result<(f64, f64), NumericsError> {
    let mut x = x0;
    for _ in 0..NEWTON_MAX_ITER {
        let (p, dp) = jacobi_with_derivative(n, alpha, beta, x);
        let dx = p / dp;
        x -= dx;
        if !x.is_finite() {
            break;
        }
        if dx.abs() <= NEWTON_TOL * x.abs().max(1.0) {
            let (_, dp) = jacobi_with_derivative(n, alpha, beta, x);
            return Ok((x, dp));
        }
    }
    Err(NumericsError::NonConvergence(format!(
        "P_{n}^({alpha},{beta}) root near {x0}"
    )))
}

/// Checks that the roots came out strictly inside (−1,1), strictly ordered.
fn check_roots(roots: &[f64], what: &str) -> Result<(), NumericsError> {
    let inside = roots.iter().all(|&x| x > -1.0 && x < 1.0);
    let ordered = roots.windows(2).all(|w| w[0] < w[1]);
    if inside && ordered {
        Ok(())
    } else {
        Err(NumericsError::NonConvergence(format!("{what}: roots collided or left (-1,1)")))
    }
}

/// Gauss-Legendre rule on (−1, 1), exact for polynomials of degree ≤ 2n−1.
///
/// Nodes come from Newton on the Legendre recurrence started at the
/// Chebyshev-type guesses cos(π(i+3/4)/(n+1/2)).
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule, NumericsError> {
    if n == 0 {
        return Err(NumericsError::DomainError("Gauss-Legendre needs n >= 1".into()));
    }
    let deg = n as u32;
    let half = n.div_ceil(2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..half {
        let guess = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let (x, dp) = if n % 2 == 1 && i == half - 1 {
            // middle node of an odd rule is exactly 0
            (0.0, jacobi_with_derivative(deg, 0.0, 0.0, 0.0).1)
        } else {
            newton_root(deg, 0.0, 0.0, guess)?
        };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    check_roots(&nodes, "Gauss-Legendre")?;
    Ok(QuadratureRule::new(nodes, weights, Domain::Interval { lo: -1.0, hi: 1.0 }))
}

/// Symmetric tridiagonal (Jacobi) matrix of the orthonormal Jacobi recurrence.
fn jacobi_matrix(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let diag = (0..n)
        .map(|k| {
            let s = 2.0 * k as f64 + ab;
            if k == 0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                (beta * beta - alpha * alpha) / (s * (s + 2.0))
            }
        })
        .collect();
    let off = (1..n)
        .map(|k| {
            let kf = k as f64;
            let s = 2.0 * kf + ab;
            (4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))).sqrt()
        })
        .collect();
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`
/// (Sturm count from the LDLᵀ pivots).
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for (i, &a) in diag.iter().enumerate() {
        let b2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        d = a - x - if i == 0 { 0.0 } else { b2 / d };
        if d == 0.0 {
            d = -f64::EPSILON * (a.abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues in ascending order by bisection. All Jacobi matrices used here
/// have their spectrum inside (−1, 1).
fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    (0..diag.len())
        .map(|k| {
            let (mut lo, mut hi) = (-1.0, 1.0);
            while hi - lo > 4.0 * f64::EPSILON {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if sturm_count(diag, off, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Gauss rule on (0, 1) in t for ∫₀¹ p(t) (1−t)^γ dt, exact for deg p ≤ 2n−1.
///
/// Built from Gauss-Jacobi with (α, β) = (γ, 0) on (−1, 1) through t = (1+x)/2.
/// With β = 0 the Christoffel weights reduce to 2^{γ+1}/((1−x²)P_n'(x)²), and the
/// change of variables contributes 2^{−γ−1}. Starting points for the Newton
/// polish are the Jacobi-matrix eigenvalues, which stay well separated for any γ > −1.
pub fn gauss_jacobi_radial(n: usize, gamma: f64) -> Result<QuadratureRule, NumericsError> {
    if n == 0 {
        return Err(NumericsError::DomainError("Gauss-Jacobi needs n >= 1".into()));
    }
    if !(gamma > -1.0) {
        return Err(NumericsError::DomainError(format!("weight exponent {gamma} must exceed -1")));
    }
    let deg = n as u32;
    let (alpha, beta) = (gamma, 0.0);
    let (diag, off) = jacobi_matrix(n, alpha, beta);
    let mut xs = Vec::with_capacity(n);
    let mut ws = Vec::with_capacity(n);
    for guess in tridiagonal_eigenvalues(&diag, &off) {
        let (x, dp) = newton_root(deg, alpha, beta, guess)?;
        xs.push(x);
        ws.push(1.0 / ((1.0 - x * x) * dp * dp));
    }
    check_roots(&xs, "Gauss-Jacobi")?;
    let nodes = xs.iter().map(|&x| (1.0 + x) / 2.0).collect();
    Ok(QuadratureRule::new(nodes, ws, Domain::Interval { lo: 0.0, hi: 1.0 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn legendre_small_rules() {
        let r1 = gauss_legendre(1).unwrap();
        assert_eq!(r1.nodes(), &[0.0]);
        assert!((r1.weights()[0] - 2.0).abs() < 1e-15);

        let r2 = gauss_legendre(2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r2.nodes()[0] + s).abs() < 1e-15 && (r2.nodes()[1] - s).abs() < 1e-15);
        assert!(r2.weights().iter().all(|w| (w - 1.0).abs() < 1e-14));
    }

    #[test]
    fn legendre_degree_14() {
        let r = gauss_legendre(8).unwrap();
        let v = r.integrate(|x| x.powi(14));
        assert!((v - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn legendre_large_n() {
        for &n in &[64, 200, 512] {
            let r = gauss_legendre(n).unwrap();
            let total: f64 = r.weights().iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n={n}");
            let v = r.integrate(|x| (3.0 * x).cos());
            assert!((v - 2.0 * 3f64.sin() / 3.0).abs() < 1e-13);
        }
    }

    #[test]
    fn jacobi_radial_basic_moments() {
        for &g in &[-0.9, -0.5, 0.0, 0.5, 2.5, 10.0] {
            let r1 = gauss_jacobi_radial(1, g).unwrap();
            let v0 = r1.integrate(|_| 1.0);
            assert!((v0 - 1.0 / (g + 1.0)).abs() < 1e-14 * (1.0 / (g + 1.0)), "g={g}");
            for n in 1..5 {
                let r = gauss_jacobi_radial(n, g).unwrap();
                let v1 = r.integrate(|t| t);
                let exact = 1.0 / ((g + 1.0) * (g + 2.0));
                assert!((v1 - exact).abs() < 1e-14 * exact, "g={g} n={n}");
            }
        }
    }

    #[test]
    fn jacobi_radial_reduces_to_legendre() {
        let j = gauss_jacobi_radial(2, 0.0).unwrap();
        let l = gauss_legendre(2).unwrap().mapped(0.0, 1.0);
        for (a, b) in j.iter().zip(l.iter()) {
            assert!((a.0 - b.0).abs() < 1e-15 && (a.1 - b.1).abs() < 1e-15);
        }
    }

    #[test]
    fn jacobi_radial_large_rules() {
        for &g in &[-0.5, 0.0, 3.5, 25.0] {
            for &n in &[32, 96, 200] {
                let r = gauss_jacobi_radial(n, g).unwrap();
                assert!(r.weights().iter().all(|&w| w > 0.0));
                let total = r.integrate(|_| 1.0);
                assert!((total * (g + 1.0) - 1.0).abs() < 1e-13, "g={g} n={n}");
            }
        }
    }

    #[test]
    fn periodic_rule() {
        let r = QuadratureRule::periodic(8).unwrap();
        assert_eq!(r.len(), 8);
        assert!((r.nodes()[2] - PI / 2.0).abs() < 1e-15);
        assert!(r.weights().iter().all(|&w| (w - PI / 4.0).abs() < 1e-15));
        assert!(QuadratureRule::periodic(0).is_err());
    }

    #[test]
    fn bad_inputs() {
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_jacobi_radial(0, 0.0).is_err());
        assert!(gauss_jacobi_radial(3, -1.0).is_err());
    }

    /// ∫_{-1}^{1} x^k dx
    fn legendre_moment(k: usize) -> f64 {
        if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) }
    }

    /// ∫_0^1 t^k (1−t)^γ dt = k! / ((γ+1)(γ+2)…(γ+k+1))
    fn jacobi_moment(k: usize, g: f64) -> f64 {
        (0..=k).fold(1.0, |acc, i| acc * if i == 0 { 1.0 } else { i as f64 } / (g + 1.0 + i as f64))
    }

    proptest! {
        #[test]
        fn legendre_exactness(n in 1usize..40, coeffs in prop::collection::vec(-1.0f64..1.0, 80)) {
            let rule = gauss_legendre(n).unwrap();
            let deg = 2 * n - 1;
            let c = &coeffs[..=deg];
            let approx = rule.integrate(|x| c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck));
            let exact: f64 = c.iter().enumerate().map(|(k, ck)| ck * legendre_moment(k)).sum();
            let mag: f64 = c.iter().enumerate().map(|(k, ck)| (ck * legendre_moment(k)).abs()).sum();
            prop_assert!((approx - exact).abs() <= 1e-13 * mag.max(1e-300));
        }

        #[test]
        fn jacobi_exactness(n in 1usize..30, g in -0.95f64..8.0, coeffs in prop::collection::vec(-1.0f64..1.0, 60)) {
            let rule = gauss_jacobi_radial(n, g).unwrap();
            let deg = 2 * n - 1;
            let c = &coeffs[..=deg];
            let approx = rule.integrate(|t| c.iter().rev().fold(0.0, |acc, &ck| acc * t + ck));
            let exact: f64 = c.iter().enumerate().map(|(k, ck)| ck * jacobi_moment(k, g)).sum();
            let mag: f64 = c.iter().enumerate().map(|(k, ck)| (ck * jacobi_moment(k, g)).abs()).sum();
            prop_assert!((approx - exact).abs() <= 1e-13 * mag);
        }
    }
}
