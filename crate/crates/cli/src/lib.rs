//! The `lfd` command-line tool: reads an expression file, runs one analysis
//! and writes CSV and JSON artifacts.

pub mod config;
pub mod output;

use clap::Parser;
use config::{Cli, Command, FileConfig};
use lfd_core::analysis::{
    asymptotic_fe_check, cluster_report, trivial_zero_audit, verify_count, AuditReport, ClusterReport, CountReport,
    FeCheckReport,
};
use lfd_core::expr::{degree_profile, parse_expression, DegreeProfile, ExpressionFile, PolyExpression};
use lfd_core::zeros::{
    count_nontrivial, locate_window, zero_free_bounds, BandCount, CountOptions, LocateOptions, StripBounds, ZeroRecord,
};
use lfd_core::Error;
use output::{Sink, SCHEMA};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Library(Error),
    Io(String),
    /// `verify` ran but the slack exceeded its limit.
    Threshold {
        slack: f64,
        limit: f64,
    },
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Library(e) => match e {
                Error::Parse { .. }
                | Error::ZeroExpression
                | Error::UnknownLFunction(_)
                | Error::InvalidInput(_)
                | Error::NotPrimitive { .. } => EXIT_USAGE,
                _ => EXIT_NUMERIC,
            },
            Failure::Io(_) | Failure::Threshold { .. } => EXIT_NUMERIC,
        }
    }

    fn kind(&self) -> String {
        match self {
            Failure::Usage(_) => "Usage".into(),
            Failure::Io(_) => "Io".into(),
            Failure::Threshold { .. } => "SlackExceeded".into(),
            Failure::Library(e) => {
                let dbg = format!("{e:?}");
                dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
            }
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Library(e) => e.to_string(),
            Failure::Threshold { slack, limit } => format!("slack {slack} exceeds {limit}"),
        }
    }

    /// Machine-readable form printed on stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "schema": SCHEMA,
            "error": {"kind": self.kind(), "message": self.message(), "exitCode": self.exit_code()}
        })
        .to_string()
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

/// Everything a command needs after merging flags over the config file.
struct Run {
    file: FileConfig,
    out: PathBuf,
    jobs: usize,
    seed: u64,
    plot: bool,
}

impl Run {
    fn count_options(&self, band_height: Option<f64>, strip: Option<StripBounds>) -> CountOptions {
        CountOptions {
            jobs: self.jobs,
            seed: self.seed,
            band_height: band_height.or(self.file.band_height).unwrap_or(1.0),
            strip,
            ..CountOptions::default()
        }
    }
}

fn need<T>(flag: Option<T>, file: Option<T>, name: &str) -> Outcome<T> {
    flag.or(file).ok_or_else(|| Failure::Usage(format!("missing --{name}")))
}

fn load_expression(cmd: &Command, file: &FileConfig) -> Outcome<(PolyExpression, ExpressionFile)> {
    let path = cmd
        .expr()
        .map(|p| p.to_path_buf())
        .or_else(|| file.expression.clone())
        .ok_or_else(|| Failure::Usage("no expression file given".into()))?;
    let text = std::fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let f = parse_expression(&text)?;
    let canonical = ExpressionFile::from_expression(&f)?;
    Ok((f, canonical))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalyzeParams {
    t: Option<f64>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalyzeOut<'a> {
    profile: &'a DegreeProfile,
    predicted_count: Option<f64>,
}

fn fmt_c(z: lfd_core::Complex) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{} {} {}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
    }
}

fn profile_table(p: &DegreeProfile, predicted: Option<(f64, f64)>) -> String {
    let mut s = String::new();
    let rows: Vec<(&str, String)> = vec![
        ("degRk", p.deg_rk.to_string()),
        ("degDer", p.deg_der.to_string()),
        ("degCond", p.deg_cond.to_string()),
        ("J", format!("{:?}", p.j)),
        ("sum c_J", fmt_c(p.sum_cj)),
        ("nF", p.n_f.to_string()),
        ("eta_nF", fmt_c(p.eta_nf)),
        ("pF", if p.p_f_exact { p.p_f.to_string() } else { format!("<= {} (ambiguous)", p.p_f) }),
        ("alpha1", p.alpha1.to_string()),
        ("alpha2", p.alpha2.to_string()),
    ];
    for (k, v) in rows {
        let _ = writeln!(s, "{k:<10} {v}");
    }
    if let Some((t, n)) = predicted {
        let _ = writeln!(s, "{:<10} {n}", format!("N({t})"));
    }
    if !p.assumption_satisfied {
        let _ = writeln!(s, "\nWARNING: the leading coefficients cancel (sum over J is 0);");
        let _ = writeln!(s, "WARNING: the zero-count asymptotics do not apply to this expression.");
    }
    s
}

fn analyze(run: &Run, f: &PolyExpression, file: &ExpressionFile, t: Option<f64>, sink: &mut Sink) -> Outcome<()> {
    let t = t.or(run.file.t);
    let p = degree_profile(f)?;
    let predicted = match t {
        Some(t) if t > 2.0 && p.assumption_satisfied => Some(p.predicted_count(t)),
        Some(t) if !(t > 2.0) => return Err(Failure::Usage(format!("--T {t} must exceed 2"))),
        _ => None,
    };
    if !p.assumption_satisfied {
        log::warn!("assumption violated: sum of c_j over J vanishes");
    }
    print!("{}", profile_table(&p, t.zip(predicted)));
    sink.json("analyze", &AnalyzeParams { t }, file, &AnalyzeOut { profile: &p, predicted_count: predicted })?;
    Ok(())
}

#[derive(Serialize)]
struct ZeroRow {
    beta: f64,
    gamma: f64,
    multiplicity: u32,
    residual: f64,
}

fn zero_rows(zeros: &[ZeroRecord]) -> Vec<ZeroRow> {
    zeros
        .iter()
        .map(|z| ZeroRow { beta: z.beta(), gamma: z.gamma(), multiplicity: z.multiplicity, residual: z.residual })
        .collect()
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct WindowParams {
    t1: f64,
    t2: f64,
    seed: u64,
    band_height: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    isolation_tol: Option<f64>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ZerosOut<'a> {
    strip: StripBounds,
    count: u64,
    zeros: &'a [ZeroRecord],
}

fn window(run: &Run, t1: Option<f64>, t2: Option<f64>, t: Option<f64>) -> Outcome<(f64, f64)> {
    let t1 = t1.or(run.file.t1).unwrap_or(0.0);
    let t2 = t2.or(run.file.t2).or(t).or(run.file.t).ok_or_else(|| Failure::Usage("missing --t2 or --T".into()))?;
    Ok((t1, t2))
}

fn zeros(
    run: &Run,
    f: &PolyExpression,
    file: &ExpressionFile,
    (t1, t2): (f64, f64),
    tol: f64,
    sink: &mut Sink,
) -> Outcome<()> {
    let strip = zero_free_bounds(f)?;
    let opts = run.count_options(None, Some(strip));
    let zs = locate_window(f, t1, t2, &opts, &LocateOptions { isolation_tol: tol, ..LocateOptions::default() })?;
    let count = zs.iter().map(|z| z.multiplicity as u64).sum();
    let params = WindowParams { t1, t2, seed: run.seed, band_height: opts.band_height, isolation_tol: Some(tol) };
    sink.json("zeros", &params, file, &ZerosOut { strip, count, zeros: &zs })?;
    sink.csv("zeros", &zero_rows(&zs))?;
    let pts: Vec<(f64, f64)> = zs.iter().map(|z| (z.gamma(), z.beta())).collect();
    sink.series("zeros", ("gamma", "beta"), &pts)?;
    println!("{count} zeros with {t1} < Im s < {t2} (strip {} <= Re s <= {})", strip.e1, strip.e2);
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CountOut<'a> {
    t1: f64,
    t2: f64,
    empirical: i64,
    strip: StripBounds,
    bands: &'a [BandCount],
}

fn cumulative(bands: &[BandCount]) -> Vec<(f64, f64)> {
    let mut acc = 0;
    bands
        .iter()
        .map(|b| {
            acc += b.count;
            (b.t_hi, acc as f64)
        })
        .collect()
}

fn count(
    run: &Run,
    f: &PolyExpression,
    file: &ExpressionFile,
    (t1, t2): (f64, f64),
    h: Option<f64>,
    sink: &mut Sink,
) -> Outcome<()> {
    let opts = run.count_options(h, None);
    let r = count_nontrivial(f, t1, t2, &opts)?;
    let params = WindowParams { t1, t2, seed: run.seed, band_height: opts.band_height, isolation_tol: None };
    sink.json("count", &params, file, &CountOut { t1, t2, empirical: r.count, strip: r.strip, bands: &r.bands })?;
    sink.csv("count", &r.bands)?;
    sink.series("count", ("t", "N"), &cumulative(&r.bands))?;
    println!("{} zeros with {t1} < Im s < {t2}", r.count);
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ClusterParams<'a> {
    deltas: &'a [f64],
    t1: f64,
    t2: f64,
    seed: u64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ClusterOut<'a> {
    strip: StripBounds,
    reports: &'a [ClusterReport],
    zeros: &'a [ZeroRecord],
}

fn cluster(
    run: &Run,
    f: &PolyExpression,
    file: &ExpressionFile,
    deltas: &[f64],
    (t1, t2): (f64, f64),
    sink: &mut Sink,
) -> Outcome<()> {
    if deltas.is_empty() {
        return Err(Failure::Usage("missing --delta".into()));
    }
    let strip = zero_free_bounds(f)?;
    let zs = locate_window(f, t1, t2, &run.count_options(None, Some(strip)), &LocateOptions::default())?;
    let reports: Vec<ClusterReport> =
        deltas.iter().map(|&d| cluster_report(&zs, d, t1, t2)).collect::<Result<_, _>>()?;
    sink.json(
        "cluster",
        &ClusterParams { deltas, t1, t2, seed: run.seed },
        file,
        &ClusterOut { strip, reports: &reports, zeros: &zs },
    )?;
    sink.csv("cluster", &reports)?;
    let pts: Vec<(f64, f64)> = zs.iter().map(|z| (z.gamma(), z.beta() - 0.5)).collect();
    sink.series("cluster", ("gamma", "beta-1/2"), &pts)?;
    for r in &reports {
        println!(
            "delta {}: nPlus {} nMinus {} of {} (fraction outside {})",
            r.delta, r.n_plus, r.n_minus, r.total, r.fraction_outside
        );
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AuditParams {
    epsilon: f64,
    n_from: Option<u64>,
    n_to: Option<u64>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AuditRow {
    n: u64,
    center: f64,
    count: i64,
    admissible: bool,
}

fn audit(
    run: &Run,
    f: &PolyExpression,
    file: &ExpressionFile,
    eps: f64,
    range: (Option<u64>, Option<u64>),
    sink: &mut Sink,
) -> Outcome<()> {
    let (a, b) = (range.0.or(run.file.n_from), range.1.or(run.file.n_to));
    let n_range = match (a, b) {
        (Some(a), Some(b)) => Some((a, b)),
        (Some(a), None) => Some((a, a + 4)),
        (None, None) => None,
        (None, Some(_)) => return Err(Failure::Usage("--n-to needs --n-from".into())),
    };
    let r: AuditReport = trivial_zero_audit(f, eps, n_range)?;
    sink.json("audit", &AuditParams { epsilon: eps, n_from: a, n_to: b }, file, &r)?;
    let rows: Vec<AuditRow> = r
        .disks
        .iter()
        .map(|d| AuditRow { n: d.n, center: d.centers[0], count: d.count, admissible: d.admissible })
        .collect();
    sink.csv("audit", &rows)?;
    let pts: Vec<(f64, f64)> = r.disks.iter().map(|d| (d.n as f64, d.count as f64)).collect();
    sink.series("audit", ("n", "count"), &pts)?;
    for d in &r.disks {
        println!("n = {}: {} zero(s), expected {}", d.n, d.count, r.deg_rk);
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FeParams<'a> {
    sigma: f64,
    t_grid: &'a [f64],
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FeRow {
    t: f64,
    ratio_re: f64,
    ratio_im: f64,
    r: f64,
    observed_sign: i32,
}

fn fecheck(f: &PolyExpression, file: &ExpressionFile, sigma: f64, grid: &[f64], sink: &mut Sink) -> Outcome<()> {
    if grid.is_empty() {
        return Err(Failure::Usage("missing --t grid".into()));
    }
    let r: FeCheckReport = asymptotic_fe_check(f, sigma, grid)?;
    sink.json("fecheck", &FeParams { sigma, t_grid: grid }, file, &r)?;
    let rows: Vec<FeRow> = r
        .points
        .iter()
        .map(|p| FeRow { t: p.t, ratio_re: p.ratio[0], ratio_im: p.ratio[1], r: p.r, observed_sign: p.observed_sign })
        .collect();
    sink.csv("fecheck", &rows)?;
    let pts: Vec<(f64, f64)> = r.points.iter().map(|p| (p.t, p.r)).collect();
    sink.series("fecheck", ("t", "r"), &pts)?;
    for p in &r.points {
        println!("t = {}: r = {}", p.t, p.r);
    }
    println!("sign {} (expected {})", if r.sign_matches { "matches" } else { "differs" }, r.expected_sign);
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct VerifyParams {
    t: f64,
    slack_limit: f64,
    seed: u64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct VerifyOut<'a> {
    report: &'a CountReport,
    passed: bool,
}

fn verify(run: &Run, f: &PolyExpression, file: &ExpressionFile, t: f64, limit: f64, sink: &mut Sink) -> Outcome<()> {
    let r = verify_count(f, t, &run.count_options(None, None))?;
    let passed = r.slack <= limit && r.assumption_satisfied;
    sink.json(
        "verify",
        &VerifyParams { t, slack_limit: limit, seed: run.seed },
        file,
        &VerifyOut { report: &r, passed },
    )?;
    sink.csv("verify", &r.bands)?;
    sink.series("verify", ("t", "N"), &cumulative(&r.bands))?;
    println!("empirical {} predicted {:.4} slack {:.4} (limit {limit})", r.empirical, r.predicted, r.slack);
    if !r.assumption_satisfied {
        println!("WARNING: the leading coefficients cancel; the prediction does not apply");
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Threshold { slack: r.slack, limit })
    }
}

fn dispatch(cli: Cli) -> Outcome<()> {
    let file = match &cli.common.config {
        Some(p) => FileConfig::load(p).map_err(Failure::Usage)?,
        None => FileConfig::default(),
    };
    let run = Run {
        out: cli.common.out.clone().or(file.out.clone()).unwrap_or_else(|| PathBuf::from(".")),
        jobs: cli.common.jobs.or(file.jobs).unwrap_or(1).max(1),
        seed: cli.common.seed.or(file.seed).unwrap_or(0),
        plot: cli.common.plot_data || file.plot_data.unwrap_or(false),
        file,
    };
    let (f, canonical) = load_expression(&cli.command, &run.file)?;
    let mut sink = Sink::new(&run.out, run.plot)?;
    match &cli.command {
        Command::Analyze { t, .. } => analyze(&run, &f, &canonical, *t, &mut sink),
        Command::Zeros { t1, t2, t, isolation_tol, .. } => {
            let w = window(&run, *t1, *t2, *t)?;
            let tol = isolation_tol.or(run.file.isolation_tol).unwrap_or(1e-9);
            zeros(&run, &f, &canonical, w, tol, &mut sink)
        }
        Command::Count { t, t1, band_height, .. } => {
            let t2 = need(*t, run.file.t, "T")?;
            let t1 = t1.or(run.file.t1).unwrap_or(0.0);
            count(&run, &f, &canonical, (t1, t2), *band_height, &mut sink)
        }
        Command::Cluster { delta, t, t1, t2, .. } => {
            let deltas = if delta.is_empty() { run.file.delta.clone().unwrap_or_default() } else { delta.clone() };
            let w = match (t1.or(run.file.t1), t2.or(run.file.t2)) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    let t = need(*t, run.file.t, "T")?;
                    (t, 2.0 * t)
                }
            };
            cluster(&run, &f, &canonical, &deltas, w, &mut sink)
        }
        Command::Audit { epsilon, n_from, n_to, .. } => {
            let eps = epsilon.or(run.file.epsilon).unwrap_or(0.25);
            audit(&run, &f, &canonical, eps, (*n_from, *n_to), &mut sink)
        }
        Command::Fecheck { sigma, t_grid, .. } => {
            let sigma = sigma.or(run.file.sigma).unwrap_or(3.0);
            let grid = if t_grid.is_empty() { run.file.t_grid.clone().unwrap_or_default() } else { t_grid.clone() };
            fecheck(&f, &canonical, sigma, &grid, &mut sink)
        }
        Command::Verify { t, slack, .. } => {
            let t = need(*t, run.file.t, "T")?;
            let limit = slack.or(run.file.slack).unwrap_or(5.0);
            verify(&run, &f, &canonical, t, limit, &mut sink)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
