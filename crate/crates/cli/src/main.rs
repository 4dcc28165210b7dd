//! `diskpoly`: evaluate generalized Zernike polynomials, their Cauchy
//! transforms, and run the verification suites.
//!
//! Exit codes: 0 success, 1 failing verification, 2 bad flags, 3 domain error.
//! Errors go to stderr as `ERROR <code>: <reason>`.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diskpoly::cauchy::{
    cauchy_direct_2d_adaptive, cauchy_monomial_closed, cauchy_scale, cauchy_zernike_closed, cauchy_zernike_quad,
    DirectConfig,
};
use diskpoly::verify::{run_suite, Format, Suite, VerifyConfig};
use diskpoly::zernike::{deviation, eval_explicit, rodrigues_expr, Route};
use diskpoly::{DiskPoint, Error, ZernikeParams};
use num_complex::Complex64;

#[derive(Parser)]
#[command(name = "diskpoly", version, about = "Generalized Zernike disk polynomials")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Z_{m,n}^gamma at one point
    Eval(EvalArgs),
    /// Run a verification suite and write its report
    Verify(VerifyArgs),
    /// Tabulate Z (and optionally C_gamma Z) over a polar grid
    Table(TableArgs),
    /// Evaluate the weighted Cauchy transform of Z_{m,n}^gamma or of a monomial
    Cauchy(CauchyArgs),
}

#[derive(Args)]
struct PolyArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    gamma: f64,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// Point as "re,im"
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    z: Complex64,
    #[arg(long, default_value = "explicit")]
    method: EvalMethod,
    /// Also print the symbolic Rodrigues expression
    #[arg(long)]
    dump_expr: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalMethod {
    Explicit,
    Gauss1,
    Gauss2,
    Jacobi,
    Rodrigues,
    Contour,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Routes,
    Orthogonality,
    Contour,
    Cauchy,
    Spectral,
    Hermite,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: SuiteArg,
    /// Report file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    max_mn: Option<u32>,
    /// Comma-separated list
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    gammas: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct TableArgs {
    /// Inclusive range "lo:hi"; lo > hi is empty
    #[arg(long, value_parser = parse_range, default_value = "0:2")]
    m_range: (u32, u32),
    #[arg(long, value_parser = parse_range, default_value = "0:2")]
    n_range: (u32, u32),
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
    gammas: Vec<f64>,
    /// Radii r_max*i/r_steps for i = 0..=r_steps
    #[arg(long, default_value_t = 4)]
    r_steps: u32,
    #[arg(long, default_value_t = 8)]
    theta_steps: u32,
    #[arg(long, default_value_t = 0.9)]
    r_max: f64,
    /// Add the ring r = 1
    #[arg(long)]
    include_boundary: bool,
    /// Use this single point instead of the polar grid
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    point: Option<Complex64>,
    /// Add columns for C_gamma Z (quadrature route; empty on the boundary)
    #[arg(long)]
    with_cauchy: bool,
    #[arg(long, default_value = "csv")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CauchyArgs {
    #[arg(long, required_unless_present = "monomial")]
    m: Option<u32>,
    #[arg(long, required_unless_present = "monomial")]
    n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: f64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    z: Complex64,
    /// Transform the monomial conj(w)^p w^q (1-|w|^2)^k given as "p,q,k"
    #[arg(long, value_parser = parse_triple, conflicts_with_all = ["m", "n"])]
    monomial: Option<(u32, u32, u32)>,
    #[arg(long, default_value = "all")]
    method: CauchyMethod,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CauchyMethod {
    Closed,
    Quad,
    Direct,
    All,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected \"re,im\", got '{s}'"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("bad real part '{re}': {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("bad imaginary part '{im}': {e}"))?;
    Ok(Complex64::new(re, im))
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected \"lo:hi\", got '{s}'"))?;
    let lo = lo.trim().parse().map_err(|e| format!("bad bound '{lo}': {e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("bad bound '{hi}': {e}"))?;
    Ok((lo, hi))
}

fn parse_triple(s: &str) -> Result<(u32, u32, u32), String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad index '{p}': {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [p, q, k] => Ok((p, q, k)),
        _ => Err(format!("expected \"p,q,k\", got '{s}'")),
    }
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    reason: String,
}

impl Failure {
    fn usage(reason: impl Into<String>) -> Self {
        Self { code: 2, reason: reason.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParams(_) | Error::ParamMismatch(_) => 2,
            _ => 3,
        };
        Self { code, reason: e.to_string() }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let reason: Vec<&str> = msg
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("ERROR 2: {}", reason.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let outcome = match cli.cmd {
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a),
        Command::Cauchy(a) => cmd_cauchy(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("ERROR {}: {}", f.code, f.reason);
            ExitCode::from(f.code)
        }
    }
}

fn point(z: Complex64) -> Result<DiskPoint, Failure> {
    Ok(DiskPoint::new(z)?)
}

fn line(label: &str, v: Complex64) -> String {
    format!("{label}, {:?}, {:?}", v.re, v.im)
}

fn cmd_eval(a: EvalArgs) -> CmdResult {
    let p = ZernikeParams::new(a.poly.m, a.poly.n, a.poly.gamma)?;
    let z = point(a.z)?;
    let routes: Vec<Route> = match a.method {
        EvalMethod::Explicit => vec![Route::Explicit],
        EvalMethod::Gauss1 => vec![Route::Gauss1],
        EvalMethod::Gauss2 => vec![Route::Gauss2],
        EvalMethod::Jacobi => vec![Route::Jacobi],
        EvalMethod::Rodrigues => vec![Route::Rodrigues],
        EvalMethod::Contour => vec![Route::Contour],
        EvalMethod::All => Route::ALL.into_iter().filter(|r| r.applies(z)).collect(),
    };
    let mut out = Vec::new();
    let mut values = Vec::new();
    for r in routes {
        let v = r.eval(p, z)?;
        out.push(line(r.name(), v));
        values.push(v);
    }
    if matches!(a.method, EvalMethod::All) {
        let scale = p.boundary_modulus();
        let mut worst: f64 = 0.0;
        for (i, x) in values.iter().enumerate() {
            for y in &values[i + 1..] {
                worst = worst.max(deviation(*x, *y, scale));
            }
        }
        out.push(format!("max_deviation, {worst:?}"));
    }
    if a.dump_expr {
        out.push(format!("rodrigues_expr, {}", rodrigues_expr(p)?));
    }
    println!("{}", out.join("\n"));
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let suite = match a.suite {
        SuiteArg::Routes => Suite::Routes,
        SuiteArg::Orthogonality => Suite::Orthogonality,
        SuiteArg::Contour => Suite::Contour,
        SuiteArg::Cauchy => Suite::Cauchy,
        SuiteArg::Spectral => Suite::Spectral,
        SuiteArg::Hermite => Suite::Hermite,
        SuiteArg::All => Suite::All,
    };
    let cfg = VerifyConfig { max_mn: a.max_mn, gammas: a.gammas, seed: a.seed };
    let report = run_suite(suite, &cfg)?;
    let text = report.render(a.format.into());
    match &a.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            let s = report.summary;
            println!(
                "{}: {} rows, {} pass, {} fail ({} gating)",
                report.suite, s.rows, s.pass, s.fail, s.gating_fail
            );
        }
        None => print!("{text}"),
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn grid_points(a: &TableArgs) -> Result<Vec<(Complex64, bool)>, Failure> {
    if let Some(z) = a.point {
        if z.norm() > 1.0 {
            return Err(Failure::usage(format!("point {z} lies outside the closed disk")));
        }
        return Ok(vec![(z, z.norm() >= 1.0)]);
    }
    if !(a.r_max >= 0.0 && a.r_max < 1.0) {
        return Err(Failure::usage(format!("r-max = {} must lie in [0, 1); use --include-boundary for r = 1", a.r_max)));
    }
    if a.theta_steps == 0 {
        return Err(Failure::usage("theta-steps must be positive"));
    }
    let ring = |r: f64| -> Vec<Complex64> {
        (0..a.theta_steps)
            .map(|j| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / a.theta_steps as f64))
            .collect()
    };
    let mut pts = vec![(Complex64::new(0.0, 0.0), false)];
    for i in 1..=a.r_steps {
        let r = a.r_max * i as f64 / a.r_steps as f64;
        pts.extend(ring(r).into_iter().map(|z| (z, false)));
    }
    if a.include_boundary {
        pts.extend(ring(1.0).into_iter().map(|z| (z, true)));
    }
    Ok(pts)
}

fn cmd_table(a: TableArgs) -> CmdResult {
    let pts = grid_points(&a)?;
    let mut header = vec!["m", "n", "gamma", "re_z", "im_z", "re_val", "im_val"];
    if a.with_cauchy {
        header.extend(["re_cauchy", "im_cauchy"]);
    }
    let mut rows: Vec<Vec<String>> = Vec::new();
    for &g in &a.gammas {
        for m in a.m_range.0..=a.m_range.1 {
            for n in a.n_range.0..=a.n_range.1 {
                let p = ZernikeParams::new(m, n, g)?;
                for &(z, boundary) in &pts {
                    let dz = point(z)?;
                    let v = eval_explicit(p, dz);
                    let mut row =
                        vec![m.to_string(), n.to_string(), format!("{g:?}"), format!("{:?}", z.re), format!("{:?}", z.im)];
                    row.extend([format!("{:?}", v.re), format!("{:?}", v.im)]);
                    if a.with_cauchy {
                        if boundary {
                            row.extend([String::new(), String::new()]);
                        } else {
                            let c = cauchy_zernike_quad(p, dz)?;
                            row.extend([format!("{:?}", c.re), format!("{:?}", c.im)]);
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    let text = match a.format {
        FormatArg::Csv => {
            let mut s = header.join(",");
            s.push('\n');
            for r in &rows {
                s.push_str(&r.join(","));
                s.push('\n');
            }
            s
        }
        FormatArg::Json => {
            let objs: Vec<String> = rows
                .iter()
                .map(|r| {
                    let fields: Vec<String> = header
                        .iter()
                        .zip(r)
                        .map(|(h, v)| format!("\"{h}\": {}", if v.is_empty() { "null" } else { v }))
                        .collect();
                    format!("  {{{}}}", fields.join(", "))
                })
                .collect();
            if objs.is_empty() { "[]\n".to_string() } else { format!("[\n{}\n]\n", objs.join(",\n")) }
        }
    };
    match &a.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_cauchy(a: CauchyArgs) -> CmdResult {
    let z = point(a.z)?;
    if let Some((p, q, k)) = a.monomial {
        if matches!(a.method, CauchyMethod::Direct | CauchyMethod::Quad) {
            return Err(Failure::usage("monomials support the closed method only"));
        }
        println!("{}", line("closed", cauchy_monomial_closed(p, q, k, a.gamma, z)?));
        return Ok(0);
    }
    let p = ZernikeParams::new(a.m.expect("clap enforces m"), a.n.expect("clap enforces n"), a.gamma)?;
    let want = |m: CauchyMethod| a.method == m || a.method == CauchyMethod::All;
    let mut out = Vec::new();
    if want(CauchyMethod::Closed) {
        match cauchy_zernike_closed(p, z) {
            Ok(v) => out.push(line("closed", v)),
            Err(Error::NZero) if a.method == CauchyMethod::All => {}
            Err(e) => return Err(e.into()),
        }
    }
    if want(CauchyMethod::Quad) {
        out.push(line("quad", cauchy_zernike_quad(p, z)?));
    }
    if want(CauchyMethod::Direct) {
        let f = |w: Complex64| DiskPoint::new(w).map_or(Complex64::new(f64::NAN, f64::NAN), |w| eval_explicit(p, w));
        let (v, _, _) = cauchy_direct_2d_adaptive(f, p.gamma, z, cauchy_scale(p), DirectConfig::default())?;
        out.push(line("direct", v));
    }
    println!("{}", out.join("\n"));
    Ok(0)
}
