//! Command-line front end: problem files in, JSON reports out.
//!
//! Exit codes: 0 conditions hold / success, 1 usage or input error,
//! 2 a growth condition fails, 3 the necessary condition fails (a
//! degenerate slice), 4 inconclusive at the requested radius.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::diophantine::{convergent, convergent_probe, verify_liouville_inequality};
use crate::growth::{check_conditions, Verdict};
use crate::lattice::{dual_matrix, Convention, FreqVector, PeriodLattice};
use crate::parallel::Exec;
use crate::resolvent::{ExpPoly, GridKind, GridProfile};
use crate::solver::{periodicity_defect, solve_division, synthesize_field, Forcing, Route, SolutionField, SolverError, TimeProfile};
use crate::spectrum::{slice_factorize, AxisMode, RootSolverConfig, SliceFactorization, SpectrumError};
use crate::symbolic::{parse_gauss, parse_operator, GaussRational, MultiPoly, UniPolyQ};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONDITION_FAILS: i32 = 2;
pub const EXIT_NECESSARY_FAILS: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

const DEFAULT_RADIUS: usize = 32;
const MAX_LIOUVILLE_K: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "perdiv", version, about = "Surjectivity checks and division for periodic PDE operators")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Ball radius for the growth fits.
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    /// Worker threads (0 = all cores, 1 = sequential).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long = "tol-root", global = true)]
    pub tol_root: Option<f64>,
    #[arg(long = "axis-mode", global = true, value_enum)]
    pub axis_mode: Option<AxisModeArg>,
    #[arg(long = "axis-tol", global = true)]
    pub axis_tol: Option<f64>,
    /// Overrides the half-width of every grid profile.
    #[arg(long = "grid-t", global = true)]
    pub grid_t: Option<f64>,
    /// Overrides the step of every grid profile.
    #[arg(long = "grid-h", global = true)]
    pub grid_h: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AxisModeArg {
    Exact,
    Numeric,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check both growth conditions over a ball of lattice frequencies.
    Check { problem: PathBuf },
    /// Solve the division problem for the forcing in the problem file.
    Solve {
        problem: PathBuf,
        /// Write the synthesized field as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor the symbol at one frequency.
    Roots {
        problem: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
    /// Liouville convergents, inequality checks and probes.
    Liouville {
        #[arg(long = "k-max")]
        k_max: usize,
    },
}

#[derive(Deserialize, Debug, Clone, Default)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub root: Option<f64>,
    pub axis: Option<f64>,
    pub axis_mode: Option<AxisMode>,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProfileSpec {
    Exppoly { terms: Vec<TermSpec> },
    Grid {
        #[serde(rename = "T")]
        t: f64,
        h: f64,
        kind: GridKind,
    },
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    /// Coefficients by ascending power of `t`.
    pub poly: Vec<String>,
    pub omega: String,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct ForcingSpec {
    pub mode: Vec<Value>,
    pub profile: ProfileSpec,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    pub dims: usize,
    #[serde(default)]
    pub period_matrix: Option<Vec<Vec<String>>>,
    pub operator: String,
    pub convention: Convention,
    #[serde(default)]
    pub forcing: Vec<ForcingSpec>,
    #[serde(default)]
    pub radius: Option<usize>,
    #[serde(default)]
    pub probes: Vec<Vec<Value>>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

/// An error with its exit code and a short machine-readable kind.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn usage(kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            kind,
            message: message.into(),
        }
    }

    fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "message": self.message } })
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::IdenticallyZeroSlice(_) => Self {
                code: EXIT_NECESSARY_FAILS,
                kind: "degenerate-slice",
                message: e.to_string(),
            },
            e => Self::usage("spectrum", e.to_string()),
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Degenerate(_) => Self {
                code: EXIT_NECESSARY_FAILS,
                kind: "degenerate-slice",
                message: e.to_string(),
            },
            SolverError::Spectrum(s) => s.into(),
            e => Self::usage("solver", e.to_string()),
        }
    }
}

fn parse_int(v: &Value) -> Result<BigInt, CliError> {
    let bad = || CliError::usage("frequency", format!("not an integer: {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
        Value::String(s) => s.trim().parse().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn parse_freq(vals: &[Value], n: usize) -> Result<FreqVector, CliError> {
    if vals.len() != n {
        return Err(CliError::usage("frequency", format!("expected {n} components, got {}", vals.len())));
    }
    Ok(FreqVector(vals.iter().map(parse_int).collect::<Result<_, _>>()?))
}

fn parse_xi(text: &str, n: usize) -> Result<FreqVector, CliError> {
    let vals: Vec<Value> = text.split(',').map(|s| Value::String(s.to_string())).collect();
    parse_freq(&vals, n)
}

fn parse_real(text: &str) -> Result<BigRational, CliError> {
    let g = parse_gauss(text).map_err(|e| CliError::usage("parse", format!("{text:?}: {e}")))?;
    if !g.is_real() {
        return Err(CliError::usage("parse", format!("{text:?} is not real")));
    }
    Ok(g.re)
}

/// A problem file resolved into module inputs.
pub struct Problem {
    pub spec: ProblemSpec,
    pub operator: MultiPoly,
    pub lattice: PeriodLattice,
    pub cfg: RootSolverConfig,
    pub radius: usize,
    pub probes: Vec<FreqVector>,
    pub forcing: Forcing,
}

fn build_lattice(spec: &ProblemSpec) -> Result<PeriodLattice, CliError> {
    let n = spec.dims;
    let a = spec
        .period_matrix
        .as_ref()
        .map(|rows| {
            rows.iter()
                .map(|r| r.iter().map(|s| parse_real(s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    match spec.convention {
        Convention::IntegerLattice => {
            let lat = PeriodLattice::integer(n);
            if let Some(a) = a {
                if a.as_slice() != lat.period_matrix() {
                    return Err(CliError::usage("lattice", "integer-lattice convention requires the identity period matrix"));
                }
            }
            Ok(lat)
        }
        Convention::General => {
            let a = a.ok_or_else(|| CliError::usage("lattice", "general convention needs period_matrix"))?;
            if a.len() != n {
                return Err(CliError::usage("lattice", "period matrix size differs from dims"));
            }
            dual_matrix(a).map_err(|e| CliError::usage("lattice", e.to_string()))
        }
    }
}

fn build_profile(p: &ProfileSpec, g: &GlobalArgs) -> Result<TimeProfile, CliError> {
    match p {
        ProfileSpec::Exppoly { terms } => {
            let mut e = ExpPoly::zero();
            for t in terms {
                let coeffs = t
                    .poly
                    .iter()
                    .map(|s| parse_gauss(s).map_err(|err| CliError::usage("parse", format!("{s:?}: {err}"))))
                    .collect::<Result<Vec<GaussRational>, _>>()?;
                e.add_term(parse_real(&t.omega)?, UniPolyQ::new(coeffs));
            }
            Ok(TimeProfile::ExpPoly(e))
        }
        ProfileSpec::Grid { t, h, kind } => {
            let grid = GridProfile::generate(*kind, g.grid_t.unwrap_or(*t), g.grid_h.unwrap_or(*h))
                .map_err(|e| CliError::usage("grid", e.to_string()))?;
            Ok(TimeProfile::Grid(grid))
        }
    }
}

impl Problem {
    pub fn load(path: &Path, g: &GlobalArgs) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage("io", format!("{}: {e}", path.display())))?;
        Self::from_json(&text, g)
    }

    pub fn from_json(text: &str, g: &GlobalArgs) -> Result<Self, CliError> {
        let spec: ProblemSpec = serde_json::from_str(text).map_err(|e| CliError::usage("problem-file", e.to_string()))?;
        if spec.dims == 0 {
            return Err(CliError::usage("problem-file", "dims must be positive"));
        }
        let operator = parse_operator(&spec.operator, spec.dims)
            .map_err(|e| CliError::usage("parse", format!("operator: {e}")))?;
        let lattice = build_lattice(&spec)?;
        let cfg = RootSolverConfig {
            tolerance: g.tol_root.or(spec.tolerances.root).unwrap_or(1e-12),
            axis_tolerance: g.axis_tol.or(spec.tolerances.axis).unwrap_or(1e-9),
            axis_mode: match g.axis_mode {
                Some(AxisModeArg::Exact) => AxisMode::Exact,
                Some(AxisModeArg::Numeric) => AxisMode::Numeric,
                None => spec.tolerances.axis_mode.unwrap_or(AxisMode::Exact),
            },
            ..RootSolverConfig::default()
        };
        cfg.validate().map_err(|e| CliError::usage("config", e.to_string()))?;
        let radius = g.radius.or(spec.radius).unwrap_or(DEFAULT_RADIUS);
        let probes = spec
            .probes
            .iter()
            .map(|p| parse_freq(p, spec.dims))
            .collect::<Result<_, _>>()?;
        let mut forcing = Forcing::default();
        for f in &spec.forcing {
            let xi = parse_freq(&f.mode, spec.dims)?;
            let profile = build_profile(&f.profile, g)?;
            if forcing.modes.insert(xi.clone(), profile).is_some() {
                return Err(CliError::usage("problem-file", format!("mode {xi} forced twice")));
            }
        }
        Ok(Self {
            spec,
            operator,
            lattice,
            cfg,
            radius,
            probes,
            forcing,
        })
    }

    fn config_json(&self) -> Value {
        json!({
            "name": self.spec.name,
            "dims": self.spec.dims,
            "operator": self.operator.to_string(),
            "convention": self.lattice.convention(),
            "period_matrix": self.lattice.period_matrix().iter()
                .map(|r| r.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "radius": self.radius,
            "root_solver": self.cfg,
        })
    }
}

/// `±d.ddd…e±E` with `digits` significant digits, from an exact rational.
pub fn decimal_string(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let sign = if q.is_negative() { "-" } else { "" };
    let (num, den) = (q.numer().abs(), q.denom().clone());
    let log2 = num.bits() as f64 - den.bits() as f64;
    let mut e = (log2 * std::f64::consts::LN_2 / std::f64::consts::LN_10).floor() as i64;
    let scaled = |e: i64| -> BigInt {
        let shift = digits as i64 - 1 - e;
        if shift >= 0 {
            &num * BigInt::from(10).pow(shift as u32) / &den
        } else {
            &num / (&den * BigInt::from(10).pow((-shift) as u32))
        }
    };
    let lo = BigInt::from(10).pow(digits as u32 - 1);
    let hi = &lo * 10;
    let mut m = scaled(e);
    while m >= hi {
        e += 1;
        m = scaled(e);
    }
    while m < lo {
        e -= 1;
        m = scaled(e);
    }
    let s = m.to_string();
    format!("{sign}{}.{}e{e}", &s[..1], &s[1..])
}

fn exact_json(q: &BigRational) -> Value {
    json!({ "decimal": decimal_string(q, 20), "exact": q.to_string() })
}

fn complex_json(z: Complex64) -> Value {
    // + 0.0 folds -0.0 into 0.0
    json!({ "re": z.re + 0.0, "im": z.im + 0.0 })
}

fn slice_json(f: &SliceFactorization) -> Value {
    json!({
        "xi": f.xi,
        "c": complex_json(f.c),
        "m": f.m,
        "roots": f.roots.iter().zip(&f.on_axis)
            .map(|(r, &a)| json!({ "re": r.re + 0.0, "im": r.im + 0.0, "on_axis": a })).collect::<Vec<_>>(),
        "d": f.d,
        "axis_method": f.axis_method,
        "exact_symbol": f.exact_tau.as_ref()
            .map(|p| p.coeffs().iter().map(|c| c.to_compact_string()).collect::<Vec<_>>()),
    })
}

fn profile_json(p: &TimeProfile) -> Value {
    match p {
        TimeProfile::ExpPoly(e) => json!({
            "type": "exppoly",
            "terms": e.terms().map(|(w, q)| json!({
                "omega": w.to_string(),
                "poly": q.coeffs().iter().map(|c| c.to_compact_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
        TimeProfile::Grid(g) => json!({
            "type": "grid",
            "T": g.half_width,
            "h": g.h,
            "len": g.len(),
            "max_abs": g.samples.iter().map(|z| z.norm()).fold(0.0, f64::max),
            "l2": g.norm2(),
        }),
    }
}

fn envelope(command: &str, config: Value, body: Value, started: Instant) -> Value {
    json!({
        "tool": { "name": "perdiv", "version": env!("CARGO_PKG_VERSION") },
        "command": command,
        "config": config,
        "result": body,
        "timing": { "elapsed_ms": started.elapsed().as_secs_f64() * 1e3 },
    })
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::ConditionsHold => EXIT_OK,
        Verdict::ConditionFails { .. } => EXIT_CONDITION_FAILS,
        Verdict::NecessaryConditionFails => EXIT_NECESSARY_FAILS,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn cmd_check(path: &Path, g: &GlobalArgs, started: Instant) -> Result<(i32, Value), CliError> {
    let pr = Problem::load(path, g)?;
    let report = check_conditions(&pr.operator, &pr.lattice, pr.radius, &pr.cfg, &pr.probes, Exec::with_jobs(g.jobs))
        .map_err(|e| CliError::usage("check", e.to_string()))?;
    let code = verdict_code(report.verdict);
    let body = serde_json::to_value(&report).expect("serializable report");
    Ok((code, envelope("check", pr.config_json(), body, started)))
}

/// Sample points covering one period cell: `Σ_j (k_j / N) a_j`.
fn cell_points(lattice: &PeriodLattice) -> Vec<Vec<f64>> {
    let n = lattice.dim();
    let per_axis = match n {
        1 => 32,
        2 => 16,
        3 => 8,
        _ => 4,
    };
    let a = lattice.period_vectors();
    let mut pts = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let x = (0..n)
            .map(|c| (0..n).map(|j| idx[j] as f64 / per_axis as f64 * a[j][c]).sum())
            .collect();
        pts.push(x);
        let mut j = 0;
        while j < n {
            idx[j] += 1;
            if idx[j] < per_axis {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == n {
            return pts;
        }
    }
}

fn time_window(forcing: &Forcing) -> f64 {
    forcing
        .modes
        .values()
        .find_map(|p| match p {
            TimeProfile::Grid(g) => Some(g.half_width),
            TimeProfile::ExpPoly(_) => None,
        })
        .unwrap_or(5.0)
}

fn write_csv(path: &Path, field: &SolutionField, lattice: &PeriodLattice, ts: &[f64], xs: &[Vec<f64>]) -> Result<(), CliError> {
    let values = synthesize_field(field, lattice, ts, xs)?;
    let mut out = String::from("t");
    for j in 1..=lattice.dim() {
        let _ = write!(out, ",x{j}");
    }
    out.push_str(",re,im\n");
    for (t, row) in ts.iter().zip(&values) {
        for (x, z) in xs.iter().zip(row) {
            let _ = write!(out, "{t}");
            for c in x {
                let _ = write!(out, ",{c}");
            }
            let _ = writeln!(out, ",{},{}", z.re, z.im);
        }
    }
    std::fs::write(path, out).map_err(|e| CliError::usage("io", format!("{}: {e}", path.display())))
}

fn cmd_solve(path: &Path, out: Option<&Path>, g: &GlobalArgs, started: Instant) -> Result<(i32, Value), CliError> {
    let pr = Problem::load(path, g)?;
    if pr.forcing.modes.is_empty() {
        return Err(CliError::usage("problem-file", "no forcing given"));
    }
    let field = solve_division(&pr.operator, &pr.lattice, &pr.forcing, &pr.cfg, Exec::with_jobs(g.jobs))?;
    let xs = cell_points(&pr.lattice);
    let probe_x: Vec<Vec<f64>> = xs.iter().step_by((xs.len() / 16).max(1)).cloned().collect();
    let defect = periodicity_defect(&field, &pr.lattice, &[-1.0, 0.0, 1.0], &probe_x)?;
    if let Some(out) = out {
        let tw = time_window(&pr.forcing);
        let ts: Vec<f64> = (0..=100).map(|k| -tw + 2.0 * tw * k as f64 / 100.0).collect();
        write_csv(out, &field, &pr.lattice, &ts, &xs)?;
    }
    let modes: Vec<Value> = field
        .modes
        .iter()
        .map(|(xi, m)| {
            json!({
                "xi": xi,
                "route": m.route,
                "residual": m.residual,
                "factorization": slice_json(&m.factorization),
                "solution": profile_json(&m.profile),
            })
        })
        .collect();
    let exact_routes = field.modes.values().filter(|m| m.route != Route::Grid).count();
    let body = json!({
        "modes": modes,
        "max_residual": field.max_residual(),
        "exact_modes": exact_routes,
        "periodicity_defect": defect,
    });
    Ok((EXIT_OK, envelope("solve", pr.config_json(), body, started)))
}

fn cmd_roots(path: &Path, xi: &str, g: &GlobalArgs, started: Instant) -> Result<(i32, Value), CliError> {
    let pr = Problem::load(path, g)?;
    let xi = parse_xi(xi, pr.spec.dims)?;
    let f = slice_factorize(&pr.operator, &xi, &pr.lattice, &pr.cfg)?;
    Ok((EXIT_OK, envelope("roots", pr.config_json(), slice_json(&f), started)))
}

fn cmd_liouville(k_max: usize, started: Instant) -> Result<(i32, Value), CliError> {
    if !(1..=MAX_LIOUVILLE_K).contains(&k_max) {
        return Err(CliError::usage("range", format!("--k-max must lie in 1..={MAX_LIOUVILLE_K}")));
    }
    let err = |e: crate::diophantine::DiophantineError| CliError::usage("diophantine", e.to_string());
    let mut rows = Vec::new();
    let mut all = true;
    for k in 1..=k_max {
        let c = convergent(k).map_err(err)?;
        let ineq = verify_liouville_inequality(k, k + 2).map_err(err)?;
        let probe = convergent_probe(k, k + 2).map_err(err)?;
        all &= ineq.holds && probe.holds;
        rows.push(json!({
            "k": k,
            "p": c.p.to_string(),
            "q": c.q.to_string(),
            "ratio": exact_json(&c.ratio()),
            "inequality": {
                "truncation": ineq.truncation,
                "gap": exact_json(&ineq.gap),
                "upper": exact_json(&ineq.upper),
                "middle": exact_json(&ineq.middle),
                "bound": exact_json(&ineq.bound),
                "holds": ineq.holds,
            },
            "probe": {
                "xi": c.probe_point(),
                "truncation": probe.truncation,
                "value": exact_json(&probe.value),
                "lower": exact_json(&probe.lower),
                "holds": probe.holds,
            },
        }));
    }
    let body = json!({ "rows": rows, "all_hold": all });
    let config = json!({ "k_max": k_max });
    Ok((if all { EXIT_OK } else { EXIT_CONDITION_FAILS }, envelope("liouville", config, body, started)))
}

/// Runs the tool on command-line arguments (including the program name)
/// and returns the exit code with the text for standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_OK, e.to_string()),
                _ => {
                    let err = CliError::usage("usage", e.to_string().trim().to_string());
                    (EXIT_USAGE, pretty(&err.to_json()))
                }
            };
        }
    };
    let started = Instant::now();
    let g = &cli.global;
    let result = match &cli.command {
        Command::Check { problem } => cmd_check(problem, g, started),
        Command::Solve { problem, out } => cmd_solve(problem, out.as_deref(), g, started),
        Command::Roots { problem, xi } => cmd_roots(problem, xi, g, started),
        Command::Liouville { k_max } => cmd_liouville(*k_max, started),
    };
    match result {
        Ok((code, v)) => (code, pretty(&v)),
        Err(e) => (e.code, pretty(&e.to_json())),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

/// Drops the `timing` member so reports can be compared byte for byte.
pub fn strip_timing(report: &str) -> String {
    match serde_json::from_str::<Value>(report) {
        Ok(Value::Object(mut m)) => {
            m.remove("timing");
            pretty(&Value::Object(m))
        }
        _ => report.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolvent::rational;

    #[test]
    fn decimals() {
        assert_eq!(decimal_string(&rational(1, 2), 5), "5.0000e-1");
        assert_eq!(decimal_string(&rational(-49, 64), 4), "-7.656e-1");
        assert_eq!(decimal_string(&rational(1000, 1), 3), "1.00e3");
        assert_eq!(decimal_string(&rational(1, 3), 3), "3.33e-1");
    }

    #[test]
    fn liouville_rows() {
        let (code, out) = run(["perdiv", "liouville", "--k-max", "3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let rows = v["result"]["rows"].as_array().unwrap();
        let pq: Vec<(String, String)> = rows
            .iter()
            .map(|r| (r["p"].as_str().unwrap().into(), r["q"].as_str().unwrap().into()))
            .collect();
        assert_eq!(pq, [("1", "2"), ("3", "4"), ("49", "64")].map(|(a, b)| (a.to_string(), b.to_string())));
        assert_eq!(v["result"]["all_hold"], true);
        assert_eq!(run(["perdiv", "liouville", "--k-max", "9"]).0, 1);
    }

    #[test]
    fn bad_flag_is_usage_error() {
        let (code, out) = run(["perdiv", "check"]);
        assert_eq!(code, 1);
        assert!(out.contains("\"error\""));
    }

    #[test]
    fn problem_parsing() {
        let g = GlobalArgs {
            radius: None,
            jobs: 1,
            tol_root: None,
            axis_mode: None,
            axis_tol: None,
            grid_t: None,
            grid_h: None,
        };
        let text = r#"{"name":"t","dims":2,"operator":"Dt - Dx1^2 - Dx2^2","convention":"integer-lattice",
            "forcing":[{"mode":[1,0],"profile":{"type":"exppoly","terms":[{"poly":["1","0"],"omega":"1"}]}}],
            "probes":[["-3","4"]]}"#;
        let p = Problem::from_json(text, &g).unwrap();
        assert_eq!(p.radius, DEFAULT_RADIUS);
        assert_eq!(p.probes, vec![FreqVector::from_i64(&[-3, 4])]);
        assert_eq!(
            p.forcing.modes[&FreqVector::from_i64(&[1, 0])],
            TimeProfile::ExpPoly(ExpPoly::exp_i(1))
        );
        let bad = text.replace("Dt - Dx1^2", "Dt^-1");
        assert_eq!(Problem::from_json(&bad, &g).err().unwrap().code, 1);
        let wrong = text.replace("\"convention\":\"integer-lattice\"", "\"convention\":\"integer-lattice\",\"period_matrix\":[[\"2\",\"0\"],[\"0\",\"1\"]]");
        assert!(Problem::from_json(&wrong, &g).is_err());
    }
}
