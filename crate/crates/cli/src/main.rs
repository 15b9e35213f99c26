//! `squaretiled` command-line tool.
//!
//! Exit codes: 0 all checks pass, 1 a check failed (or an internal error),
//! 2 input error, 3 a resource cap was hit.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use squaretiled::bounds::{
    landau, massias_comparison, simple_js_bound, thm31_bound, thm32_rhs, verify_all, AnalysisError,
    BoundsReport, SmallerBound, VerifyConfig,
};
use squaretiled::report::{to_json_pretty, F15};
use squaretiled::veech::{Nu, VeechError, DEFAULT_CANDIDATE_CAP};
use squaretiled::{catalog, Direction, Origami};

const MAX_GEN_SQUARES: usize = 8;

#[derive(Parser)]
#[command(
    name = "squaretiled",
    version,
    about = "Cylinders, Veech groups and bound checks for square-tiled surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one origami file and verify every bound.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Landau's function G(m) and its two upper bounds.
    Landau {
        m: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluate the section-count bounds for a surface type (g, n) over a base (p, k).
    Bounds {
        g: u64,
        n: u64,
        p: u64,
        k: u64,
        /// Orders of the cone points and cusps, e.g. `2,3,inf` (default: k cusps).
        #[arg(long, value_delimiter = ',')]
        nu: Option<Vec<String>>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write one file per origami class with at most N squares.
    Gen {
        n: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Analyze every file in a directory.
    Batch {
        dir: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Mark every vertex, not only cone points.
    #[arg(long)]
    mark_all_vertices: bool,
    /// Check all reduced slopes p/q with |p|,|q| <= K.
    #[arg(long, value_name = "K", conflicts_with = "slopes", value_parser = clap::value_parser!(i64).range(1..))]
    slope_bound: Option<i64>,
    /// Explicit slopes, e.g. `0,1/2,inf`.
    #[arg(long, value_delimiter = ',', value_name = "p/q,...")]
    slopes: Option<Vec<String>>,
    /// Cap on the SL(2,Z)-orbit size.
    #[arg(long, value_name = "N", default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_orbit: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Worker threads for batch runs (default: all cores).
    #[arg(long, value_name = "J")]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Pass,
    Fail,
    InputError,
    CapReached,
    InternalError,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail | Status::InternalError => 1,
            Status::InputError => 2,
            Status::CapReached => 3,
        }
    }
}

/// Error from loading or analyzing one file, with its exit status.
struct Failure {
    status: Status,
    message: String,
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        let status = match &e {
            AnalysisError::Origami(_) => Status::InputError,
            AnalysisError::Veech(VeechError::OrbitCap { .. } | VeechError::CandidateCap { .. }) => {
                Status::CapReached
            }
            _ => Status::InternalError,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        status: Status::InputError,
        message: message.into(),
    }
}

#[derive(Serialize)]
struct FileResult {
    file: String,
    status: Status,
    exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<BoundsReport>,
}

impl FileResult {
    fn new(file: String, outcome: Result<BoundsReport, Failure>) -> Self {
        match outcome {
            Ok(report) => {
                let status = if report.all_pass() {
                    Status::Pass
                } else {
                    Status::Fail
                };
                FileResult {
                    file,
                    status,
                    exit_code: status.code(),
                    error: None,
                    report: Some(report),
                }
            }
            Err(f) => FileResult {
                file,
                status: f.status,
                exit_code: f.status.code(),
                error: Some(f.message),
                report: None,
            },
        }
    }

    fn summary_line(&self) -> String {
        match (&self.report, &self.error) {
            (Some(r), _) => {
                let passed = r.checks.iter().filter(|c| c.pass).count();
                let mut line = format!(
                    "{}: {} ({passed}/{} checks, mu={}, genus={})",
                    self.file,
                    if self.status == Status::Pass {
                        "PASS"
                    } else {
                        "FAIL"
                    },
                    r.checks.len(),
                    r.signature.mu,
                    r.surface.genus
                );
                for c in r.failures() {
                    line.push_str(&format!("\n  failed: {}", c.name));
                }
                line
            }
            (None, Some(e)) => format!("{}: ERROR ({e})", self.file),
            (None, None) => unreachable!(),
        }
    }
}

fn verify_config(run: &RunArgs) -> Result<VerifyConfig, Failure> {
    let mut config = VerifyConfig {
        orbit_cap: run.max_orbit as usize,
        candidate_cap: DEFAULT_CANDIDATE_CAP,
        ..Default::default()
    };
    if let Some(k) = run.slope_bound {
        config.directions = Direction::enumerate(k);
    }
    if let Some(slopes) = &run.slopes {
        let mut dirs = Vec::new();
        for s in slopes {
            let d: Direction = s
                .parse()
                .map_err(|e| input_error(format!("bad slope `{s}`: {e}")))?;
            if !dirs.contains(&d) {
                dirs.push(d);
            }
        }
        if dirs.is_empty() {
            return Err(input_error("empty slope list"));
        }
        config.directions = dirs;
    }
    Ok(config)
}

fn analyze_file(
    path: &Path,
    mark_all: bool,
    config: &VerifyConfig,
) -> Result<BoundsReport, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    let o = Origami::parse(&text).map_err(AnalysisError::from)?;
    let o = if mark_all { o.with_marking(true) } else { o };
    Ok(verify_all(&o, config)?)
}

fn emit(json: &str, path: Option<&Path>) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            fs::write(p, format!("{json}\n")).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{json}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.context("writing to stdout"),
            }
        }
    }
}

fn cmd_analyze(file: &Path, run: &RunArgs) -> anyhow::Result<u8> {
    let result = verify_config(run).and_then(|c| analyze_file(file, run.mark_all_vertices, &c));
    let result = FileResult::new(file.display().to_string(), result);
    eprintln!("{}", result.summary_line());
    if let Some(report) = &result.report {
        emit(&to_json_pretty(report), run.json.as_deref())?;
    }
    Ok(result.exit_code)
}

fn cmd_batch(dir: &Path, run: &RunArgs) -> anyhow::Result<u8> {
    let config = match verify_config(run) {
        Ok(c) => c,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return Ok(f.status.code());
        }
    };
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading directory {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    files.retain(|p| p.is_file());
    files.sort();

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = run.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build()?;
    let results: Vec<FileResult> = pool.install(|| {
        files
            .par_iter()
            .map(|p| {
                let name = p.file_name().map_or_else(
                    || p.display().to_string(),
                    |n| n.to_string_lossy().into_owned(),
                );
                FileResult::new(name, analyze_file(p, run.mark_all_vertices, &config))
            })
            .collect()
    });

    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    let reports = results.iter().filter_map(|r| r.report.as_ref());
    let checks_run: usize = reports.clone().map(|r| r.checks.len()).sum();
    let checks_passed: usize = reports.flat_map(|r| &r.checks).filter(|c| c.pass).count();
    let summary = json!({
        "files": results.len(),
        "pass": count(Status::Pass),
        "fail": count(Status::Fail),
        "errors": results.len() - count(Status::Pass) - count(Status::Fail),
        "checks_run": checks_run,
        "checks_passed": checks_passed,
    });
    for r in &results {
        println!("{}", r.summary_line());
    }
    println!(
        "summary: {} files, {} pass, {} fail, {} errors; {checks_passed}/{checks_run} checks passed",
        summary["files"], summary["pass"], summary["fail"], summary["errors"]
    );
    if let Some(path) = &run.json {
        let doc = json!({ "summary": summary, "results": results });
        emit(&to_json_pretty(&doc), Some(path))?;
    }
    Ok(results.iter().map(|r| r.exit_code).max().unwrap_or(0))
}

fn cmd_landau(m: u64, json_path: Option<&Path>) -> anyhow::Result<u8> {
    let g = landau(m);
    println!("G({m}) = {g}");
    if m >= 1 {
        let cmp = massias_comparison(m);
        let smaller = match cmp.smaller {
            SmallerBound::ExpForm => "exp(m/e)",
            SmallerBound::Massias => "Massias",
        };
        println!("exp(m/e) = {}", F15(cmp.exp_form));
        println!("Massias bound = {}", F15(cmp.massias));
        println!("smaller: {smaller}");
        if let Some(p) = json_path {
            let doc = json!({
                "m": m,
                "landau": g.to_string(),
                "exp_form": F15(cmp.exp_form),
                "massias": F15(cmp.massias),
                "smaller": smaller,
            });
            emit(&to_json_pretty(&doc), Some(p))?;
        }
    } else {
        println!("exp(m/e) = {}", F15((m as f64 / std::f64::consts::E).exp()));
        println!("Massias bound undefined for m = 0");
        if let Some(p) = json_path {
            let doc = json!({ "m": m, "landau": g.to_string() });
            emit(&to_json_pretty(&doc), Some(p))?;
        }
    }
    Ok(0)
}

fn parse_nu(s: &str) -> anyhow::Result<Nu> {
    match s.trim() {
        "inf" | "∞" => Ok(Nu::Infinite),
        t => {
            let v: u64 = t.parse().with_context(|| format!("bad order `{t}`"))?;
            if v < 2 {
                bail!("cone order must be >= 2, got {v}");
            }
            Ok(Nu::Finite(v))
        }
    }
}

fn cmd_bounds(
    g: u64,
    n: u64,
    p: u64,
    k: u64,
    nu: Option<&[String]>,
    json_path: Option<&Path>,
) -> u8 {
    let nu_list = match nu {
        None => Ok(vec![Nu::Infinite; k as usize]),
        Some(list) => list
            .iter()
            .map(|s| parse_nu(s))
            .collect::<anyhow::Result<Vec<_>>>(),
    };
    let nu_list = match nu_list {
        Ok(l) if l.len() as u64 == k => l,
        Ok(l) => {
            eprintln!("error: --nu has {} entries but k = {k}", l.len());
            return 2;
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            return 2;
        }
    };
    let values = thm31_bound(g, n, p, k).and_then(|t31| {
        Ok((
            t31,
            thm32_rhs(g, n, p, &nu_list)?,
            simple_js_bound(g, n, p, k)?,
        ))
    });
    let (t31, t32, js) = match values {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: inadmissible input: {e}");
            return 2;
        }
    };
    println!("thm31_bound = {}", F15(t31));
    println!("thm32_rhs = {}", F15(t32));
    println!("simple_js_bound = {}", F15(js));
    if let Some(path) = json_path {
        let doc = json!({
            "g": g, "n": n, "p": p, "k": k,
            "nu": nu_list.iter().map(Nu::to_string).collect::<Vec<_>>(),
            "thm31_bound": F15(t31),
            "thm32_rhs": F15(t32),
            "simple_js_bound": F15(js),
        });
        if let Err(e) = emit(&to_json_pretty(&doc), Some(path)) {
            eprintln!("error: {e:#}");
            return 1;
        }
    }
    0
}

fn cmd_gen(n: usize, out: &Path) -> anyhow::Result<u8> {
    if n == 0 || n > MAX_GEN_SQUARES {
        eprintln!("error: N must be in 1..={MAX_GEN_SQUARES}");
        return Ok(2);
    }
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let mut total = 0;
    for size in 1..=n {
        for (i, o) in catalog::classes_with(size).iter().enumerate() {
            let path = out.join(format!("n{size}_{:05}.origami", i + 1));
            fs::write(&path, o.to_text()).with_context(|| format!("writing {}", path.display()))?;
            total += 1;
        }
    }
    println!(
        "{total} classes with at most {n} squares written to {}",
        out.display()
    );
    Ok(0)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Analyze { file, run } => cmd_analyze(&file, &run),
        Command::Batch { dir, run } => cmd_batch(&dir, &run),
        Command::Landau { m, json } => cmd_landau(m, json.as_deref()),
        Command::Bounds {
            g,
            n,
            p,
            k,
            nu,
            json,
        } => Ok(cmd_bounds(g, n, p, k, nu.as_deref(), json.as_deref())),
        Command::Gen { n, out } => cmd_gen(n, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
