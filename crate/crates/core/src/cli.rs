//! Command-line harness: one subcommand per identity, JSON reports, optional
//! per-point residual CSV, and exit codes 0 (pass), 1 (check failure),
//! 2 (validation error), 3 (numerical failure).

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{character_group, DirichletCharacter};
use crate::corpus::{eisenstein_spec, emit, growth_slope, load_hecke, moebius_deconvolve, sym2_coeffs};
use crate::error::{Error, Result};
use crate::hyperbolic::{ellipticity_report, orbit_gap_report, two_circles_report, TestFamily};
use crate::lseries::{
    additive_fe_residual, circle_integral_residual, mellin_identity_residual, twisted_fe_residual, CircleOptions,
    CoeffSeq,
};
use crate::maassform::{load_spec, read_coeff_csv, write_coeff_csv};
use crate::maassform::{difference_identity_residual, involution_residual, twist_transform_residual, MaassSpec};
use crate::quotient::{dirichlet_fe_residual, quotient_fe_epsilon_residual, quotient_gamma_residual, Completion, Sym2RootNumber};
use crate::report::CheckReport;
use crate::specfun::{selftest, Precision, SpectralParam};

/// Overrides the worker-pool size.
pub const THREADS_ENV: &str = "MAASSKIT_THREADS";

/// Orbit-density companion of `check two-circles`, in radians.
pub const ORBIT_ITERATES: usize = 10_000;
pub const ORBIT_GAP_TOL: f64 = 0.01;

/// Points used by `check involution --points default`.
pub const DEFAULT_INVOLUTION_POINTS: &str =
    "0.5i,0.8i,i,1.25i,2i,0.3+0.9i,-0.4+0.7i,0.5+0.5i,0.1+1.5i,-0.25+0.6i";

#[derive(Debug, Parser)]
#[command(name = "maasskit", version, about = "Numerical checks for Maass forms and their L-functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate or ingest coefficient data.
    #[command(subcommand)]
    Corpus(CorpusCmd),
    /// Run one identity check.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Special-function identity checks.
    #[command(subcommand)]
    Specfun(SpecfunCmd),
    /// Operate on report files.
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Debug, Subcommand)]
pub enum CorpusCmd {
    /// Eisenstein spec JSON plus coefficient CSV.
    GenEisenstein {
        #[arg(long, value_parser = parse_complex)]
        nu: Complex64,
        #[arg(long, default_value_t = 2000)]
        n_max: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Validate a Hecke eigenvalue CSV and write it as JSON with its checksum.
    LoadHecke {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Symmetric-square coefficients from Hecke eigenvalues.
    Sym2 {
        #[arg(long)]
        hecke: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: u64,
        #[arg(long, default_value_t = 1000)]
        n_max: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Divide a coefficient CSV by zeta (Möbius deconvolution).
    Deconvolve {
        #[arg(long)]
        coeffs: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-point residual CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Seed for randomized suites; recorded in every report.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CompletionArg {
    Analytic,
    Arithmetic,
    Literal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RootNumberArg {
    Stated,
    Literal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Constant,
    Radial,
    ImaginaryPart,
}

#[derive(Debug, Subcommand)]
pub enum CheckCmd {
    Involution {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = "default")]
        points: String,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    TwistTransform {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        modulus: u64,
        #[arg(long, default_value = "0.5i,0.3+0.6i,-0.2+0.8i")]
        points: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 0.02)]
        min_height: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    Difference {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        modulus: u64,
        #[arg(long, default_value_t = 1)]
        a: i64,
        #[arg(long, default_value_t = 2)]
        b: i64,
        #[arg(long, default_value = "0.5i,0.3+0.6i,-0.2+0.8i")]
        points: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 0.02)]
        min_height: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    Mellin {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        w: f64,
        /// Additive shift `a/q`.
        #[arg(long, default_value = "0/1", value_parser = parse_fraction)]
        alpha: (i64, u64),
        #[arg(long, default_value = "2.5:-5:5:11")]
        grid: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    CircleIntegral {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = "i,2i,0.5+i")]
        points: String,
        #[arg(long, default_value = "0.5", value_parser = parse_complex)]
        center: Complex64,
        #[arg(long, default_value_t = 1.25)]
        radius: f64,
        #[arg(long, default_value_t = 512)]
        nodes: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    AdditiveFe {
        #[arg(long, value_parser = parse_complex)]
        nu: Complex64,
        #[arg(long)]
        modulus: u64,
        #[arg(long, default_value_t = 1)]
        a: i64,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value = "0.5:-10:10:21")]
        grid: String,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    FeEisenstein {
        #[arg(long, value_parser = parse_complex)]
        nu: Complex64,
        #[arg(long)]
        modulus: u64,
        #[arg(long, default_value = "0.5:-10:10:21")]
        grid: String,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    DirichletFe {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_enum, default_value_t = CompletionArg::Analytic)]
        completion: CompletionArg,
        #[arg(long, default_value = "0.3+2i,0.5,-1+0.5i,0.8-4i,2+i")]
        grid: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    QuotientGamma {
        #[arg(long, default_value_t = 0)]
        eps: u8,
        #[arg(long, value_parser = parse_complex)]
        nu: Complex64,
        #[arg(long, default_value = "0.7:-5:5:11")]
        grid: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    QuotientEpsilon {
        #[arg(long)]
        modulus: u64,
        /// Conductor `M` of the symmetric square.
        #[arg(long, default_value_t = 1)]
        conductor: u64,
        #[arg(long, value_enum, default_value_t = RootNumberArg::Stated)]
        root_number: RootNumberArg,
        #[arg(long, default_value = "0.7,0.3+i,0.5,-1+2i,2-3i")]
        grid: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    TwoCircles {
        #[arg(long, value_enum, default_value_t = FamilyArg::Constant)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    Ellipticity {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpecfunCmd {
    Selftest {
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReportCmd {
    /// Combine run files into one; passes iff every input passes.
    Merge {
        #[arg(long, num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Everything a run writes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub command: String,
    pub seed: u64,
    pub pass: bool,
    pub reports: Vec<CheckReport>,
}

/// `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`; whitespace is ignored.
pub fn parse_complex(text: &str) -> std::result::Result<Complex64, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number {text:?}");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// `a/q` with `q > 0`.
pub fn parse_fraction(text: &str) -> std::result::Result<(i64, u64), String> {
    let (a, q) = text.split_once('/').ok_or_else(|| format!("expected a/q, got {text:?}"))?;
    let a = a.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let q = q.trim().parse::<u64>().map_err(|e| e.to_string())?;
    if q == 0 {
        return Err("zero denominator".into());
    }
    Ok((a, q))
}

/// `re:im_start:im_end:count` (a vertical line) or a comma-separated list.
pub fn parse_grid(text: &str) -> Result<Vec<Complex64>> {
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Parameter(format!("grid {text:?} is not re:im_start:im_end:count")));
        }
        let num = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::Parameter(format!("grid {text:?}: {e}")));
        let (re, lo, hi) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        let count: usize = parts[3].trim().parse().map_err(|e| Error::Parameter(format!("grid {text:?}: {e}")))?;
        if count == 0 {
            return Err(Error::Parameter("grid count must be at least 1".into()));
        }
        let step = if count == 1 { 0.0 } else { (hi - lo) / (count - 1) as f64 };
        return Ok((0..count).map(|k| Complex64::new(re, lo + step * k as f64)).collect());
    }
    let pts = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_complex(s).map_err(Error::Parameter))
        .collect::<Result<Vec<_>>>()?;
    if pts.is_empty() {
        return Err(Error::Parameter("empty point list".into()));
    }
    Ok(pts)
}

fn parse_points(text: &str) -> Result<Vec<Complex64>> {
    parse_grid(if text == "default" { DEFAULT_INVOLUTION_POINTS } else { text })
}

fn positive(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("tolerance {tol} must be positive")))
    }
}

fn spectral(nu: Complex64) -> Result<SpectralParam> {
    SpectralParam::new(nu)
}

fn primitive_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(character_group(q)?.characters().into_iter().filter(|p| p.is_primitive()).collect())
}

fn non_principal(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(character_group(q)?.characters().into_iter().filter(|p| !p.is_principal()).collect())
}

/// Evaluates `check` on each point in the worker pool and folds the results
/// into the first report in point order.
fn per_point<F>(points: &[Complex64], check: F) -> Result<CheckReport>
where
    F: Fn(&[Complex64]) -> Result<CheckReport> + Sync,
{
    let started = Instant::now();
    let parts: Vec<CheckReport> = points.par_iter().map(|z| check(std::slice::from_ref(z))).collect::<Result<_>>()?;
    let mut it = parts.into_iter();
    let mut out = it.next().ok_or_else(|| Error::Parameter("no points".into()))?;
    for r in it {
        out.absorb(r);
    }
    Ok(out.finish(started))
}

fn with_seed(mut r: CheckReport, seed: u64) -> CheckReport {
    r.set_param("seed", seed);
    r
}

fn write_output(run: &RunOutput, out: Option<&Path>, csv: Option<&Path>) -> Result<()> {
    let json = serde_json::to_string_pretty(run)? + "\n";
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, json)?;
        }
        None => print!("{json}"),
    }
    if let Some(p) = csv {
        let mut text = String::new();
        for (i, r) in run.reports.iter().enumerate() {
            let body = r.residual_csv();
            if i == 0 {
                text.push_str(&body);
            } else {
                text.extend(body.lines().skip(1).map(|l| format!("{l}\n")));
            }
        }
        fs::write(p, text)?;
    }
    Ok(())
}

fn finish_run(command: &str, output: &OutputArgs, reports: Vec<CheckReport>) -> Result<bool> {
    let reports: Vec<CheckReport> = reports.into_iter().map(|r| with_seed(r, output.seed)).collect();
    let pass = reports.iter().all(|r| r.pass);
    let run = RunOutput { command: command.into(), seed: output.seed, pass, reports };
    write_output(&run, output.out.as_deref(), output.csv.as_deref())?;
    Ok(pass)
}

fn run_corpus(cmd: CorpusCmd) -> Result<bool> {
    match cmd {
        CorpusCmd::GenEisenstein { nu, n_max, out } => {
            let spec = eisenstein_spec(spectral(nu)?, n_max)?;
            let path = emit(&spec, &out)?;
            println!("{}", path.display());
        }
        CorpusCmd::LoadHecke { file, level, out } => {
            let h = load_hecke(&file)?.with_level(level);
            fs::write(&out, serde_json::to_string_pretty(&h)? + "\n")?;
            println!("{} primes, sha256 {}", h.primes.len(), h.checksum);
        }
        CorpusCmd::Sym2 { hecke, level, n_max, out } => {
            let h = load_hecke(&hecke)?.with_level(level);
            write_coeff_csv(&out, sym2_coeffs(&h, n_max)?.values())?;
            println!("{}", out.display());
        }
        CorpusCmd::Deconvolve { coeffs, out } => {
            let values = read_coeff_csv(&coeffs)?;
            let sigma = growth_slope(&values).max(0.0);
            let a = moebius_deconvolve(&CoeffSeq::with_exponent(values, sigma)?)?;
            write_coeff_csv(&out, a.values())?;
            println!("{}", out.display());
        }
    }
    Ok(true)
}

fn spec_at(path: &Path) -> Result<MaassSpec> {
    load_spec(path)
}

fn run_check(cmd: CheckCmd) -> Result<bool> {
    let prec = Precision::default();
    match cmd {
        CheckCmd::Involution { spec, points, tol, output } => {
            positive(tol)?;
            let s = spec_at(&spec)?;
            let pts = parse_points(&points)?;
            let r = per_point(&pts, |z| involution_residual(&s, z, &prec, tol))?;
            finish_run("check involution", &output, vec![r])
        }
        CheckCmd::TwistTransform { spec, modulus, points, tol, min_height, output } => {
            positive(tol)?;
            let s = spec_at(&spec)?;
            let pts = parse_points(&points)?;
            let p = Precision { min_height, ..prec };
            let reports = non_principal(modulus)?
                .iter()
                .map(|psi| per_point(&pts, |z| twist_transform_residual(&s, psi, z, &p, tol)))
                .collect::<Result<Vec<_>>>()?;
            finish_run("check twist-transform", &output, reports)
        }
        CheckCmd::Difference { spec, modulus, a, b, points, tol, min_height, output } => {
            positive(tol)?;
            let s = spec_at(&spec)?;
            let pts = parse_points(&points)?;
            let p = Precision { min_height, ..prec };
            let r = per_point(&pts, |z| difference_identity_residual(&s, modulus, a, b, z, &p, tol))?;
            finish_run("check difference", &output, vec![r])
        }
        CheckCmd::Mellin { spec, w, alpha, grid, tol, output } => {
            positive(tol)?;
            let s = spec_at(&spec)?;
            let g = parse_grid(&grid)?;
            let p = Precision::identity();
            let r = per_point(&g, |pt| mellin_identity_residual(&s, w, alpha, pt, &p, tol))?;
            finish_run("check mellin", &output, vec![r])
        }
        CheckCmd::CircleIntegral { spec, points, center, radius, nodes, tol, output } => {
            positive(tol)?;
            let s = spec_at(&spec)?;
            let pts = parse_points(&points)?;
            let opts = CircleOptions { center, radius, nodes };
            let r = per_point(&pts, |z| circle_integral_residual(&s, z[0], &opts, &prec, tol))?;
            finish_run("check circle-integral", &output, vec![r])
        }
        CheckCmd::AdditiveFe { nu, modulus, a, k, grid, tol, output } => {
            positive(tol)?;
            let g = parse_grid(&grid)?;
            let nu = spectral(nu)?;
            let r = per_point(&g, |pt| additive_fe_residual(nu, modulus, a, k, pt, tol))?;
            finish_run("check additive-fe", &output, vec![r])
        }
        CheckCmd::FeEisenstein { nu, modulus, grid, tol, output } => {
            positive(tol)?;
            let g = parse_grid(&grid)?;
            let nu = spectral(nu)?;
            let chars = primitive_characters(modulus)?;
            if chars.is_empty() {
                return Err(Error::Parameter(format!("no primitive characters mod {modulus}")));
            }
            let reports = chars.iter().map(|psi| twisted_fe_residual(nu, psi, &g, tol)).collect::<Result<Vec<_>>>()?;
            finish_run("check fe-eisenstein", &output, reports)
        }
        CheckCmd::DirichletFe { modulus, completion, grid, tol, output } => {
            positive(tol)?;
            let g = parse_grid(&grid)?;
            let conv = match completion {
                CompletionArg::Analytic => Completion::Analytic,
                CompletionArg::Arithmetic => Completion::Arithmetic,
                CompletionArg::Literal => Completion::Literal,
            };
            let reports = primitive_characters(modulus)?
                .iter()
                .map(|psi| dirichlet_fe_residual(psi, &g, conv, tol))
                .collect::<Result<Vec<_>>>()?;
            finish_run("check dirichlet-fe", &output, reports)
        }
        CheckCmd::QuotientGamma { eps, nu, grid, tol, output } => {
            positive(tol)?;
            let g = parse_grid(&grid)?;
            let r = quotient_gamma_residual(eps, spectral(nu)?, &g, tol)?;
            finish_run("check quotient-gamma", &output, vec![r])
        }
        CheckCmd::QuotientEpsilon { modulus, conductor, root_number, grid, tol, output } => {
            positive(tol)?;
            let g = parse_grid(&grid)?;
            let root = match root_number {
                RootNumberArg::Stated => Sym2RootNumber::Stated,
                RootNumberArg::Literal => Sym2RootNumber::Literal,
            };
            let reports = primitive_characters(modulus)?
                .iter()
                .map(|psi| quotient_fe_epsilon_residual(psi, conductor, &g, root, tol))
                .collect::<Result<Vec<_>>>()?;
            finish_run("check quotient-epsilon", &output, reports)
        }
        CheckCmd::TwoCircles { family, eps, output } => {
            positive(eps)?;
            let fam = match family {
                FamilyArg::Constant => TestFamily::Constant,
                FamilyArg::Radial => TestFamily::Radial,
                FamilyArg::ImaginaryPart => TestFamily::ImaginaryPart,
            };
            let r = two_circles_report(fam, eps)?;
            if let Some(v) = r.params.get("verdict").and_then(|v| v.as_str()) {
                eprintln!("verdict: {v}");
            }
            let gap = orbit_gap_report(ORBIT_ITERATES, ORBIT_GAP_TOL)?;
            finish_run("check two-circles", &output, vec![r, gap])
        }
        CheckCmd::Ellipticity { count, tol, output } => {
            positive(tol)?;
            if count == 0 {
                return Err(Error::Parameter("count must be at least 1".into()));
            }
            let r = ellipticity_report(output.seed, count, tol)?;
            finish_run("check ellipticity", &output, vec![r])
        }
    }
}

fn run_report(cmd: ReportCmd) -> Result<bool> {
    let ReportCmd::Merge { inputs, out } = cmd;
    let mut runs = Vec::new();
    for p in &inputs {
        let text = fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
        runs.push(serde_json::from_str::<RunOutput>(&text)?);
    }
    let reports: Vec<CheckReport> = runs.iter().flat_map(|r| r.reports.iter().cloned()).collect();
    let summary = CheckReport::merge("merged", &reports);
    let mut all = vec![summary];
    all.extend(reports);
    let pass = all.iter().all(|r| r.pass);
    let seed = runs.first().map_or(0, |r| r.seed);
    let run = RunOutput { command: "report merge".into(), seed, pass, reports: all };
    write_output(&run, out.as_deref(), None)?;
    Ok(pass)
}

/// Sizes the global worker pool from [`THREADS_ENV`] when set.
pub fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().map_err(|_| Error::Parameter(format!("{THREADS_ENV}={v} is not a count")))?;
        // a second initialisation in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Runs a parsed command; `Ok(false)` means a check failed.
pub fn execute(cli: Cli) -> Result<bool> {
    init_threads()?;
    match cli.command {
        Command::Corpus(c) => run_corpus(c),
        Command::Check(c) => run_check(c),
        Command::Specfun(SpecfunCmd::Selftest { output }) => {
            let reports = selftest::selftest(output.seed)?;
            finish_run("specfun selftest", &output, reports)
        }
        Command::Report(c) => run_report(c),
    }
}

/// Process exit code for an execution result.
pub fn exit_code(result: &Result<bool>) -> i32 {
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) if e.is_numerical() => 3,
        Err(_) => 2,
    }
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(cli);
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    exit_code(&result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("0.25").unwrap(), c(0.25, 0.0));
        assert_eq!(parse_complex("0.4i").unwrap(), c(0.0, 0.4));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("0.5+i").unwrap(), c(0.5, 1.0));
        assert_eq!(parse_complex("-0.4 - 0.7i").unwrap(), c(-0.4, -0.7));
        assert_eq!(parse_complex("1e-3+2e+1i").unwrap(), c(1e-3, 20.0));
        assert!(parse_complex("x+i").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_grid("0.5:-10:10:21").unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[10], Complex64::new(0.5, 0.0));
        assert_eq!(parse_grid("i, 2i").unwrap().len(), 2);
        assert!(parse_grid("0.5:1:2:0").is_err());
        assert!(parse_grid("1:2").is_err());
        assert_eq!(parse_points("default").unwrap().len(), 10);
        assert_eq!(parse_fraction("1/5").unwrap(), (1, 5));
        assert!(parse_fraction("1/0").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Ok(true)), 0);
        assert_eq!(exit_code(&Ok(false)), 1);
        assert_eq!(exit_code(&Err(Error::Parameter("x".into()))), 2);
        assert_eq!(exit_code(&Err(Error::Quadrature("x".into()))), 3);
    }
}
