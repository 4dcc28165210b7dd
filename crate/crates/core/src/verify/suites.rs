use num_complex::Complex64;
use rayon::prelude::*;

use super::report::{Row, VerifyReport};
use super::rng::SplitMix64;
use crate::algebra::DiskExpr;
use crate::cauchy::{
    cauchy_direct_2d_adaptive, cauchy_monomial_2f1, cauchy_monomial_closed, cauchy_scale, cauchy_zernike_closed,
    cauchy_zernike_quad, cauchy_zernike_swapped_candidate, DirectConfig,
};
use crate::error::{Error, Result};
use crate::special::{factorial, pochhammer};
use crate::spectral::{bridge_check, eigen_residual, factorization_residuals, SpectralParams};
use crate::zernike::{
    deviation, eval_contour_adaptive, eval_explicit, eval_jacobi, eval_jacobi_asymmetric, eval_rodrigues, hermite,
    hermite_limit_error, inner_product, rodrigues_expr, ContourConfig, DiskPoint, Route,
    ZernikeParams,
};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "DISKPOLY_THREADS";

const ROUTE_GAMMAS: [f64; 4] = [-0.5, 0.0, 1.0, 2.5];
const ROUTE_MAX: u32 = 8;
const ROUTE_POINTS: usize = 20;
const ROUTE_RADIUS: f64 = 0.95;
const CONTOUR_RADIUS: f64 = 0.8;
const ROUTE_TOL: f64 = 1e-9;
const CONTOUR_TOL: f64 = 1e-10;
const BOUNDARY_ANGLES: usize = 16;
const BOUNDARY_TOL: f64 = 1e-12;

const SMALL_GAMMAS: [f64; 3] = [-0.5, 0.0, 2.5];
const ORTHO_MAX: u32 = 5;
const ORTHO_TOL: f64 = 1e-11;
const NORM_TOL: f64 = 1e-12;

const CAUCHY_MAX: u32 = 5;
const CAUCHY_POINTS: usize = 10;
const CAUCHY_RADIUS: f64 = 0.8;
const CAUCHY_TOL: f64 = 1e-9;
const MONOMIAL_TUPLES: usize = 200;
const MONOMIAL_TOL: f64 = 1e-10;
const DIRECT_TOL: f64 = 1e-6;
const DIRECT_CASES: [(u32, u32); 4] = [(1, 1), (3, 2), (2, 4), (4, 0)];
const CHARGE_MAX: u32 = 3;
const CHARGE_SAMPLES: usize = 32;
const CHARGE_RADIUS: f64 = 0.5;
const CHARGE_TOL: f64 = 1e-8;

const SPECTRAL_NUS: [f64; 3] = [2.0, 2.5, 6.0];
const SPECTRAL_MAX_N: u32 = 4;
const FACTOR_NUS: [f64; 3] = [1.0, 2.5, 6.0];
const FACTOR_EXPRS: usize = 50;
const SPECTRAL_TOL: f64 = 1e-10;

const HERMITE_MAX: u32 = 4;
const HERMITE_ORIGIN_MAX: u32 = 6;
const HERMITE_RHOS: [f64; 3] = [10.0, 100.0, 1000.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Routes,
    Orthogonality,
    Contour,
    Cauchy,
    Spectral,
    Hermite,
    All,
}

impl Suite {
    const EACH: [Suite; 6] =
        [Suite::Routes, Suite::Orthogonality, Suite::Contour, Suite::Cauchy, Suite::Spectral, Suite::Hermite];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Routes => "routes",
            Suite::Orthogonality => "orthogonality",
            Suite::Contour => "contour",
            Suite::Cauchy => "cauchy",
            Suite::Spectral => "spectral",
            Suite::Hermite => "hermite",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// Overrides for the suite grids; `None` keeps each suite's own default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyConfig {
    /// Largest m and n (for the spectral suite: largest n).
    pub max_mn: Option<u32>,
    pub gammas: Option<Vec<f64>>,
    pub seed: u64,
}

impl VerifyConfig {
    fn max_or(&self, default: u32) -> u32 {
        self.max_mn.unwrap_or(default)
    }

    fn gammas_or(&self, default: &[f64]) -> Vec<f64> {
        self.gammas.clone().unwrap_or_else(|| default.to_vec())
    }
}

/// A rayon pool sized by [`THREADS_ENV`] when set, otherwise by rayon's default.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::InvalidParams(format!("{THREADS_ENV} = '{v}' is not a positive integer")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))
}

/// Runs `suite` inside a [`thread_pool`].
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    for &g in cfg.gammas.iter().flatten() {
        if !(g > -1.0) || !g.is_finite() {
            return Err(Error::InvalidParams(format!("gamma = {g} must exceed -1")));
        }
    }
    let pool = thread_pool()?;
    let rows = pool.install(|| suite_rows(suite, cfg))?;
    Ok(VerifyReport::new(suite.name(), cfg.seed, rows))
}

fn suite_rows(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<Row>> {
    match suite {
        Suite::Routes => routes(cfg),
        Suite::Orthogonality => orthogonality(cfg),
        Suite::Contour => contour(cfg),
        Suite::Cauchy => cauchy(cfg),
        Suite::Spectral => spectral(cfg),
        Suite::Hermite => Ok(hermite_rows(cfg)),
        Suite::All => {
            let mut rows = Vec::new();
            for s in Suite::EACH {
                rows.extend(suite_rows(s, cfg)?);
            }
            Ok(rows)
        }
    }
}

/// max that lets NaN win.
fn worse(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) }
}

fn nan() -> Complex64 {
    Complex64::new(f64::NAN, f64::NAN)
}

fn grid(max: u32, gammas: &[f64]) -> Result<Vec<ZernikeParams>> {
    let mut out = Vec::new();
    for &g in gammas {
        for m in 0..=max {
            for n in 0..=max {
                out.push(ZernikeParams::new(m, n, g)?);
            }
        }
    }
    Ok(out)
}

fn draw_points(rng: &mut SplitMix64, count: usize, radius: f64) -> Vec<DiskPoint> {
    (0..count).map(|_| DiskPoint::new(rng.disk_point(radius)).expect("drawn inside the disk")).collect()
}

/// The two point sets shared by the route and contour suites: one in
/// |z| ≤ 0.95 and one in |z| ≤ 0.8.
fn route_points(seed: u64) -> (Vec<DiskPoint>, Vec<DiskPoint>) {
    let mut rng = SplitMix64::new(seed);
    let wide = draw_points(&mut rng, ROUTE_POINTS, ROUTE_RADIUS);
    let inner = draw_points(&mut rng, ROUTE_POINTS, CONTOUR_RADIUS);
    (wide, inner)
}

fn routes(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let params = grid(cfg.max_or(ROUTE_MAX), &cfg.gammas_or(&ROUTE_GAMMAS))?;
    let (wide, inner) = route_points(cfg.seed);
    let rows = params.par_iter().map(|&p| route_rows(p, &wide, &inner)).collect::<Vec<_>>();
    Ok(rows.into_iter().flatten().collect())
}

fn route_rows(p: ZernikeParams, wide: &[DiskPoint], inner: &[DiskPoint]) -> Vec<Row> {
    let scale = p.boundary_modulus();
    let rod = rodrigues_expr(p).ok();
    let eval = |r: Route, z: DiskPoint| -> Option<Complex64> {
        if !r.applies(z) {
            return None;
        }
        let v = match r {
            Route::Rodrigues => rod.as_ref().and_then(|e| e.eval(z.z()).ok()),
            Route::Contour => eval_contour_adaptive(p, z, ContourConfig::default()).ok().map(|(v, _)| v),
            _ => r.eval(p, z).ok(),
        };
        Some(v.unwrap_or_else(nan))
    };
    let table = |pts: &[DiskPoint], with_contour: bool| -> Vec<Vec<Option<Complex64>>> {
        pts.iter()
            .map(|&z| {
                Route::ALL
                    .iter()
                    .map(|&r| if r == Route::Contour && !with_contour { None } else { eval(r, z) })
                    .collect()
            })
            .collect()
    };
    let mut values = table(wide, false);
    values.extend(table(inner, true));

    let mut rows = Vec::new();
    for i in 0..Route::ALL.len() {
        for j in i + 1..Route::ALL.len() {
            let mut err = 0.0;
            for vals in &values {
                if let (Some(a), Some(b)) = (vals[i], vals[j]) {
                    err = worse(err, deviation(a, b, scale));
                }
            }
            let id = format!("route-pair/{}~{}", Route::ALL[i].name(), Route::ALL[j].name());
            rows.push(Row::new(id, p.to_string(), err, ROUTE_TOL));
        }
    }

    let mut asym = 0.0;
    for &z in wide.iter().chain(inner) {
        asym = worse(asym, deviation(eval_jacobi_asymmetric(p, z), eval_explicit(p, z), scale));
    }
    rows.push(Row::record("route-pair/jacobi-asymmetric~explicit", p.to_string(), asym, ROUTE_TOL));

    let mut boundary: f64 = 0.0;
    for k in 0..BOUNDARY_ANGLES {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / BOUNDARY_ANGLES as f64;
        let z = DiskPoint::new(Complex64::from_polar(1.0, theta)).expect("unit circle");
        boundary = worse(boundary, (eval_explicit(p, z).norm() - scale).abs() / scale);
        boundary = worse(boundary, (eval_jacobi(p, z).norm() - scale).abs() / scale);
    }
    rows.push(Row::new("boundary-modulus", p.to_string(), boundary, BOUNDARY_TOL));

    let origin = DiskPoint::new(Complex64::new(0.0, 0.0)).expect("origin");
    let expect = origin_oracle(p);
    rows.push(Row::new("origin-value", p.to_string(), (eval_explicit(p, origin) - expect).norm(), 0.0));
    let mut others = (eval_jacobi(p, origin) - expect).norm() / scale;
    let rod0 = eval_rodrigues(p, origin).map_or(f64::NAN, |v| (v - expect).norm() / scale);
    others = worse(others, rod0);
    rows.push(Row::new("origin-value/jacobi+rodrigues", p.to_string(), others, ROUTE_TOL));
    rows
}

/// (−1)^m (γ+m+1)_m m! δ_{m,n}, built from the factors directly.
fn origin_oracle(p: ZernikeParams) -> Complex64 {
    if p.m != p.n {
        return Complex64::new(0.0, 0.0);
    }
    let mut v = factorial(p.m);
    for i in 0..p.m {
        v *= p.gamma + (p.m + 1 + i) as f64;
    }
    Complex64::new(if p.m % 2 == 0 { v } else { -v }, 0.0)
}

fn contour(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let params = grid(cfg.max_or(ROUTE_MAX), &cfg.gammas_or(&ROUTE_GAMMAS))?;
    let (wide, inner) = route_points(cfg.seed);
    let points: Vec<DiskPoint> = wide.into_iter().chain(inner).filter(|z| z.modulus() <= CONTOUR_RADIUS).collect();
    let cc = ContourConfig::default();
    let rows = params
        .par_iter()
        .map(|&p| {
            let scale = p.boundary_modulus();
            let (mut err, mut nodes) = (0.0, 0.0f64);
            for &z in &points {
                match eval_contour_adaptive(p, z, cc) {
                    Ok((v, used)) => {
                        err = worse(err, deviation(v, eval_explicit(p, z), scale));
                        nodes = nodes.max(used as f64);
                    }
                    Err(_) => {
                        err = f64::NAN;
                        nodes = f64::NAN;
                    }
                }
            }
            [
                Row::new("contour-adaptive", p.to_string(), err, CONTOUR_TOL),
                Row::new("contour-nodes", p.to_string(), nodes, cc.max_nodes as f64),
            ]
        })
        .collect::<Vec<_>>();
    Ok(rows.into_iter().flatten().collect())
}

fn orthogonality(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let max = cfg.max_or(ORTHO_MAX);
    let mut rows = Vec::new();
    for g in cfg.gammas_or(&SMALL_GAMMAS) {
        let params = grid(max, &[g])?;
        let norms = params
            .par_iter()
            .map(|&p| Ok(inner_product(p, p, g, (p.m + p.n) as usize + 1)?.re.sqrt()))
            .collect::<Result<Vec<f64>>>()?;
        let per = (0..params.len())
            .into_par_iter()
            .map(|i| {
                let mut err: f64 = 0.0;
                for j in 0..params.len() {
                    if i == j {
                        continue;
                    }
                    let (a, b) = (params[i], params[j]);
                    let nodes = (a.m + a.n + b.m + b.n) as usize / 2 + 2;
                    let ip = inner_product(a, b, g, nodes)?;
                    err = worse(err, ip.norm() / (norms[i] * norms[j]));
                }
                Ok(Row::new("orthogonality", params[i].to_string(), err, ORTHO_TOL))
            })
            .collect::<Result<Vec<Row>>>()?;
        rows.extend(per);
        let p0 = ZernikeParams::new(0, 0, g)?;
        let exact = std::f64::consts::PI / (g + 1.0);
        let v = inner_product(p0, p0, g, 1)?;
        rows.push(Row::new("norm-constant", format!("gamma={g}"), (v - exact).norm() / exact, NORM_TOL));
    }
    Ok(rows)
}

fn cauchy(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let max = cfg.max_or(CAUCHY_MAX);
    let gammas = cfg.gammas_or(&SMALL_GAMMAS);
    let mut rng = SplitMix64::new(cfg.seed);
    let points = draw_points(&mut rng, CAUCHY_POINTS, CAUCHY_RADIUS);

    let params: Vec<ZernikeParams> =
        grid(max, &gammas)?.into_iter().filter(|p| p.n >= 1).collect();
    let mut rows = params
        .par_iter()
        .map(|&p| cauchy_param_rows(p, &points))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<Row>>();

    let tuples: Vec<(u32, u32, u32, f64, DiskPoint)> = (0..MONOMIAL_TUPLES)
        .map(|_| {
            let p = rng.below_incl(max);
            let q = rng.below_incl(p);
            let k = rng.below_incl(3);
            let g = rng.uniform(-0.5, 2.5);
            let z = DiskPoint::new(rng.annulus_point(0.05, 0.95)).expect("inside the disk");
            (p, q, k, g, z)
        })
        .collect();
    let mono = tuples
        .par_iter()
        .enumerate()
        .map(|(i, &(p, q, k, g, z))| {
            let a = cauchy_monomial_2f1(p, q, k, g, z)?;
            let b = cauchy_monomial_closed(p, q, k, g, z)?;
            let params = format!("#{i:03},p={p},q={q},k={k},gamma={g},z={},{}", z.z().re, z.z().im);
            Ok(Row::new("cauchy/monomial-2f1~closed", params, deviation(a, b, 0.0), MONOMIAL_TOL))
        })
        .collect::<Result<Vec<Row>>>()?;
    rows.extend(mono);

    let mut cases = Vec::new();
    for &g in &gammas {
        for &(m, n) in &DIRECT_CASES {
            cases.push(ZernikeParams::new(m, n, g)?);
        }
    }
    let direct = cases
        .par_iter()
        .enumerate()
        .map(|(i, &p)| {
            let z = points[i % points.len()];
            let f = |w: Complex64| DiskPoint::new(w).map_or_else(|_| nan(), |w| eval_explicit(p, w));
            let scale = cauchy_scale(p);
            let want = cauchy_zernike_quad(p, z)?;
            let err = match cauchy_direct_2d_adaptive(f, p.gamma, z, scale, DirectConfig::default()) {
                Ok((v, _, _)) => deviation(v, want, scale),
                Err(_) => f64::NAN,
            };
            let params = format!("{p},z={},{}", z.z().re, z.z().im);
            Ok(Row::new("cauchy/direct-2d~quad", params, err, DIRECT_TOL))
        })
        .collect::<Result<Vec<Row>>>()?;
    rows.extend(direct);

    let charge_params = grid(max.min(CHARGE_MAX), &gammas)?;
    let charge = charge_params
        .par_iter()
        .map(|&p| Ok(Row::new("cauchy/angular-charge", p.to_string(), charge_leakage(p)?, CHARGE_TOL)))
        .collect::<Result<Vec<Row>>>()?;
    rows.extend(charge);
    Ok(rows)
}

fn cauchy_param_rows(p: ZernikeParams, points: &[DiskPoint]) -> Result<Vec<Row>> {
    let scale = cauchy_scale(p);
    let mut closed: f64 = 0.0;
    let mut swapped: f64 = 0.0;
    for &z in points {
        let q = cauchy_zernike_quad(p, z)?;
        closed = worse(closed, deviation(q, cauchy_zernike_closed(p, z)?, scale));
        if p.m >= 1 {
            swapped = worse(swapped, deviation(q, cauchy_zernike_swapped_candidate(p, z)?, scale));
        }
    }
    let mut rows = Vec::new();
    if p.m >= p.n {
        rows.push(Row::new("cauchy/closed~quad", p.to_string(), closed, CAUCHY_TOL));
    } else {
        rows.push(Row::new("cauchy/closed-n-gt-m~quad", p.to_string(), closed, CAUCHY_TOL));
        if p.m >= 1 {
            rows.push(Row::record("cauchy/swapped-n-gt-m~quad", p.to_string(), swapped, CAUCHY_TOL));
        }
    }
    Ok(rows)
}

/// Largest Fourier mode of C_γ(Z) on |z| = 1/2 other than n − m − 1,
/// relative to that mode.
fn charge_leakage(p: ZernikeParams) -> Result<f64> {
    let n_s = CHARGE_SAMPLES;
    let two_pi = 2.0 * std::f64::consts::PI;
    let samples = (0..n_s)
        .map(|k| {
            let z = DiskPoint::new(Complex64::from_polar(CHARGE_RADIUS, two_pi * k as f64 / n_s as f64))?;
            cauchy_zernike_quad(p, z)
        })
        .collect::<Result<Vec<_>>>()?;
    let charge = p.charge() - 1;
    let half = n_s as i64 / 2;
    let mut main = 0.0;
    let mut leak: f64 = 0.0;
    for q in -half..half {
        let c: Complex64 = samples
            .iter()
            .enumerate()
            .map(|(k, s)| s * Complex64::from_polar(1.0, -two_pi * (q * k as i64) as f64 / n_s as f64))
            .sum();
        let a = c.norm() / n_s as f64;
        if q == charge {
            main = a;
        } else {
            leak = leak.max(a);
        }
    }
    Ok(if leak == 0.0 { 0.0 } else { leak / main })
}

fn spectral(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let max_n = cfg.max_or(SPECTRAL_MAX_N);
    let mut params = Vec::new();
    for &nu in &SPECTRAL_NUS {
        let top = SpectralParams::max_level(nu).expect("nu above one half");
        for m in 0..=top {
            for n in 0..=max_n {
                params.push(SpectralParams::new(nu, m, n)?);
            }
        }
    }
    let mut rows = params
        .par_iter()
        .map(|&p| {
            let eig = eigen_residual(p)?;
            let bridge = bridge_check(p)?;
            Ok([
                Row::new("spectral/eigen", p.to_string(), eig, SPECTRAL_TOL),
                Row::new("spectral/bridge", p.to_string(), bridge.residual, SPECTRAL_TOL),
                Row::new("spectral/bridge-keys", p.to_string(), if bridge.same_keys { 0.0 } else { 1.0 }, 0.0),
            ])
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<Row>>();

    let mut rng = SplitMix64::new(cfg.seed);
    let exprs: Vec<(f64, DiskExpr)> = (0..FACTOR_EXPRS)
        .map(|i| (FACTOR_NUS[i % FACTOR_NUS.len()], random_expr(&mut rng)))
        .collect();
    let fact = exprs
        .par_iter()
        .enumerate()
        .map(|(i, (nu, e))| {
            let (a, b, c) = factorization_residuals(*nu, e)?;
            let params = format!("#{i:02},nu={nu}");
            Ok([
                Row::new("spectral/factorization-star", params.clone(), a, SPECTRAL_TOL),
                Row::new("spectral/factorization-dual", params.clone(), b, SPECTRAL_TOL),
                Row::new("spectral/intertwining", params, c, SPECTRAL_TOL),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    rows.extend(fact.into_iter().flatten());
    Ok(rows)
}

/// 1 to 4 terms z^a z̄^b u^k with a, b ≤ 5, k ≤ 3 and complex coefficients in [−1, 1]².
fn random_expr(rng: &mut SplitMix64) -> DiskExpr {
    let count = 1 + rng.below_incl(3);
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let key = (rng.below_incl(5), rng.below_incl(5), rng.below_incl(3) as i32);
            (key, Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)))
        })
        .collect();
    DiskExpr::from_raw(terms, 0.0).canonicalize()
}

fn hermite_rows(cfg: &VerifyConfig) -> Vec<Row> {
    let mut rng = SplitMix64::new(cfg.seed);
    let z = rng.disk_point(1.0);
    let max = cfg.max_or(HERMITE_MAX);
    let mut rows = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            let errs: Vec<f64> =
                HERMITE_RHOS.iter().map(|&r| hermite_limit_error(m, n, z, r).unwrap_or(f64::NAN)).collect();
            // ratio of successive errors; identically zero errors count as decreasing
            let mut ratio: f64 = 0.0;
            if errs.iter().any(|e| *e != 0.0) {
                for w in errs.windows(2) {
                    ratio = worse(ratio, w[1] / w[0]);
                }
            }
            let params = format!("m={m},n={n},z={},{}", z.re, z.im);
            rows.push(Row::new("hermite/limit-ratio", params, ratio, 1.0 - f64::EPSILON));
        }
    }
    let origin = Complex64::new(0.0, 0.0);
    for m in 0..=HERMITE_ORIGIN_MAX.max(max) {
        for n in 0..=HERMITE_ORIGIN_MAX.max(max) {
            let want = if m == n { pochhammer(1.0, m) * if m % 2 == 0 { 1.0 } else { -1.0 } } else { 0.0 };
            let err = (hermite(m, n, origin) - Complex64::new(want, 0.0)).norm();
            rows.push(Row::new("hermite/origin", format!("m={m},n={n}"), err, 0.0));
        }
    }
    rows
}
