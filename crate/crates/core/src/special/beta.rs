use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::hypergeometric::hyp2f1;
use super::quadrature::{gauss_jacobi_radial, QuadratureRule};
use super::NumericsError;

type RuleCache = Mutex<HashMap<(usize, u64), Arc<QuadratureRule>>>;

/// Gauss-Jacobi rules keyed by (nodes, exponent bits).
fn cached_rule(nodes: usize, gamma: f64) -> Result<Arc<QuadratureRule>, NumericsError> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (nodes, gamma.to_bits());
    if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(gauss_jacobi_radial(nodes, gamma)?);
    cache.lock().expect("rule cache poisoned").insert(key, Arc::clone(&rule));
    Ok(rule)
}

/// Which piece of [0,1] the incomplete beta integral covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaSide {
    /// ∫₀ˣ
    Lower,
    /// ∫ₓ¹
    Upper,
}

/// Node count and agreement tolerance for [`incomplete_beta_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaConfig {
    pub nodes: usize,
    pub tol: f64,
}

impl Default for BetaConfig {
    fn default() -> Self {
        Self { nodes: 96, tol: 1e-11 }
    }
}

// Each one-sided form is only used on the half of [0,1] where its remainder is
// smooth (series ratio ≤ 0.9, quadrature singularity ≥ 0.11 away); the other
// half goes through the complement.
const SWITCH_LOWER: f64 = 0.9;
const SWITCH_UPPER: f64 = 0.1;

/// (1/a) x^a (1−x)^b ₂F₁(1, a+b; a+1; x), x < 1.
fn lower_series(a: f64, b: f64, x: f64) -> Result<f64, NumericsError> {
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(x.powf(a) * (1.0 - x).powf(b) * hyp2f1(1.0, a + b, a + 1.0, x)? / a)
}

fn upper_series(a: f64, b: f64, x: f64) -> Result<f64, NumericsError> {
    lower_series(b, a, 1.0 - x)
}

/// x^a ∫₀¹ (1−σ)^{a−1} (1−x+xσ)^{b−1} dσ, the lower integral after u = x(1−σ).
fn lower_quad(a: f64, b: f64, x: f64, nodes: usize) -> Result<f64, NumericsError> {
    if x == 0.0 {
        return Ok(0.0);
    }
    let rule = cached_rule(nodes, a - 1.0)?;
    Ok(x.powf(a) * rule.integrate(|s| (1.0 - x + x * s).powf(b - 1.0)))
}

/// (1−x)^b ∫₀¹ (x+(1−x)s)^{a−1} (1−s)^{b−1} ds, the upper integral after u = x+(1−x)s.
fn upper_quad(a: f64, b: f64, x: f64, nodes: usize) -> Result<f64, NumericsError> {
    if x == 1.0 {
        return Ok(0.0);
    }
    let rule = cached_rule(nodes, b - 1.0)?;
    Ok((1.0 - x).powf(b) * rule.integrate(|s| (x + (1.0 - x) * s).powf(a - 1.0)))
}

/// Evaluates one side of the integral given the two one-sided primitives.
fn assemble<L, U>(side: BetaSide, b: f64, x: f64, lower: L, upper: U) -> Result<f64, NumericsError>
where
    L: Fn(f64) -> Result<f64, NumericsError>,
    U: Fn(f64) -> Result<f64, NumericsError>,
{
    let complete = || -> Result<f64, NumericsError> { Ok(lower(0.5)? + upper(0.5)?) };
    match side {
        // with b ≤ 0 the complete integral diverges, so stay on the direct form
        BetaSide::Lower if x <= SWITCH_LOWER || b <= 0.0 => lower(x),
        BetaSide::Lower if x < 1.0 => Ok(complete()? - upper(x)?),
        BetaSide::Lower => complete(),
        BetaSide::Upper if x >= SWITCH_UPPER => upper(x),
        BetaSide::Upper if x > 0.0 => Ok(complete()? - lower(x)?),
        BetaSide::Upper => complete(),
    }
}

/// Incomplete beta integral with the default [`BetaConfig`].
pub fn incomplete_beta(a: f64, b: f64, x: f64, side: BetaSide) -> Result<f64, NumericsError> {
    incomplete_beta_with(a, b, x, side, BetaConfig::default())
}

/// ∫₀ˣ u^{a−1}(1−u)^{b−1} du (lower) or ∫ₓ¹ (upper).
///
/// Computed twice: by the closed form (1/a)x^a(1−x)^b ₂F₁(1, a+b; a+1; x)
/// and by Gauss-Jacobi quadrature on the segment. The closed form is returned
/// once both agree to `config.tol` relative; otherwise
/// [`NumericsError::RouteDisagreement`] is raised.
pub fn incomplete_beta_with(
    a: f64,
    b: f64,
    x: f64,
    side: BetaSide,
    config: BetaConfig,
) -> Result<f64, NumericsError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(NumericsError::DomainError(format!("x = {x} outside [0, 1]")));
    }
    if !(a > 0.0) {
        return Err(NumericsError::DomainError(format!("a = {a} must be positive")));
    }
    let b_ok = match side {
        BetaSide::Lower if x < 1.0 => b > -1.0,
        _ => b > 0.0,
    };
    if !b_ok {
        return Err(NumericsError::DomainError(format!("b = {b} makes the integral diverge")));
    }

    let closed = assemble(side, b, x, |t| lower_series(a, b, t), |t| upper_series(a, b, t))?;
    let quad = assemble(
        side,
        b,
        x,
        |t| lower_quad(a, b, t, config.nodes),
        |t| upper_quad(a, b, t, config.nodes),
    )?;
    if (closed - quad).abs() <= config.tol * closed.abs().max(quad.abs()) {
        Ok(closed)
    } else {
        Err(NumericsError::RouteDisagreement { quadrature: quad, closed })
    }
}
