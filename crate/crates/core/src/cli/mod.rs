//! Command-line front end.

pub mod format;
pub mod scenario;
pub mod svg;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::band::FactoryMode;
use crate::dist::{check_shrc, SHRC_GRID};
use crate::error::Error;
use crate::oracle::{verify_policy, ORACLE_N};
use crate::payoff::bayes_payoff;
use crate::qc::qc_grid_check;
use crate::welfare::{compare_roles_with, efficiency_region, inefficiency_area};

pub use format::fmt_num;
pub use scenario::{parse_scenario, ConfigError, Mode, Scenario};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECKS_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "shootout", version, about = "Price announcements and welfare for the Texas Shoot-Out under distribution bands")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Scenario file (`key = value` lines).
    #[arg(long)]
    pub config: PathBuf,
    /// Override the band width.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Override the number of grid points.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Override the approx-sup offset.
    #[arg(long)]
    pub delta: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal price at one valuation.
    Price {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Price policy on the valuation grid as CSV.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Interim welfare of both roles as CSV.
    Welfare {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Inefficient chooser valuations per divider valuation as CSV.
    Efficiency {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hazard-rate, quasiconcavity and oracle checks.
    Check {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Render a sweep or welfare CSV as SVG.
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io { path: PathBuf, source: std::io::Error },
    Compute(Error),
    Schema(String),
    ChecksFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed => EXIT_CHECKS_FAILED,
            CliError::Io { .. } => EXIT_IO,
            CliError::Config(_) | CliError::Compute(_) | CliError::Schema(_) => EXIT_CONFIG,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Io { path, source } => write!(f, "I/O error on {}: {source}", path.display()),
            CliError::Compute(e) => write!(f, "error: {e}"),
            CliError::Schema(m) => write!(f, "schema error: {m}"),
            CliError::ChecksFailed => write!(f, "one or more checks failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Loads the scenario file and applies command-line overrides.
pub fn load_scenario(args: &ScenarioArgs) -> Result<Scenario, CliError> {
    let text = read(&args.config)?;
    let mut s = parse_scenario(&text).map_err(|e| CliError::Config(format!("{}: {e}", args.config.display())))?;
    if let Some(eps) = args.eps {
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(CliError::Config("--eps must be a finite number >= 0".into()));
        }
        s.eps = eps;
    }
    if let Some(n) = args.grid {
        if n < 2 {
            return Err(CliError::Config("--grid must be at least 2".into()));
        }
        s.grid_n = n;
    }
    if let Some(d) = args.delta {
        if !(d > 0.0 && d.is_finite()) {
            return Err(CliError::Config("--delta must be a finite number > 0".into()));
        }
        s.delta = d;
    }
    Ok(s)
}

pub fn cmd_price(s: &Scenario, x: f64) -> Result<String, CliError> {
    let (p, regime) = match s.mode {
        Mode::Interval => crate::solver::interval_price(x, s.a.unwrap(), s.b.unwrap(), s.delta),
        _ => crate::solver::correlated_price(x, &s.factory()?, s.utility, s.tol)?,
    };
    Ok(format!("x={} price={} regime={}\n", fmt_num(x), fmt_num(p), regime))
}

pub fn cmd_sweep(s: &Scenario) -> Result<String, CliError> {
    let policy = s.policy()?;
    let mut out = String::from("x,price,regime\n");
    for ((x, p), r) in policy.grid.iter().zip(&policy.prices).zip(&policy.regimes) {
        let _ = writeln!(out, "{},{},{}", fmt_num(*x), fmt_num(*p), r);
    }
    Ok(out)
}

pub fn cmd_welfare(s: &Scenario) -> Result<String, CliError> {
    if !s.utility.is_identity() {
        return Err(Error::UnsupportedUtility(format!(
            "welfare is only defined for risk-neutral partners, got {}",
            s.utility.tag()
        ))
        .into());
    }
    if s.mode != Mode::Iid {
        return Err(Error::Unsupported("welfare needs mode = iid".into()).into());
    }
    let policy = s.policy()?;
    let band = policy.factory.fixed().expect("iid factory").clone();
    let curve = compare_roles_with(&band, &policy, s.grid_n, s.quad_tol)?;
    let mut out = String::from("x,phi_d,phi_c\n");
    for i in 0..curve.grid.len() {
        let _ = writeln!(out, "{},{},{}", fmt_num(curve.grid[i]), fmt_num(curve.phi_d[i]), fmt_num(curve.phi_c[i]));
    }
    match curve.equality_band {
        Some((lo, hi)) => {
            let _ = writeln!(out, "# equality_band={},{}", fmt_num(lo), fmt_num(hi));
        }
        None => out.push_str("# equality_band=none\n"),
    }
    Ok(out)
}

pub fn cmd_efficiency(s: &Scenario) -> Result<String, CliError> {
    let policy = s.policy()?;
    let mut out = String::from("x_d,bad_lo,bad_hi\n");
    for &x in &policy.grid {
        match efficiency_region(x, &policy)?.bad_interval {
            Some((lo, hi)) => {
                let _ = writeln!(out, "{},{},{}", fmt_num(x), fmt_num(lo), fmt_num(hi));
            }
            None => {
                let _ = writeln!(out, "{},,", fmt_num(x));
            }
        }
    }
    let area = inefficiency_area(&policy, s.grid_n)?;
    let _ = writeln!(out, "# area={}", fmt_num(area));
    Ok(out)
}

/// Report text and whether every binding check passed. The hazard-rate
/// check is only sufficient for quasiconcavity, so it is reported but never
/// fails the run.
pub fn cmd_check(s: &Scenario) -> Result<(String, bool), CliError> {
    let mut out = String::new();
    let mut ok = true;

    match s.reference_cdf() {
        Some(cdf) if s.mode != Mode::Interval => {
            let cdf = cdf?;
            match check_shrc(&cdf, SHRC_GRID) {
                Ok(r) if r.holds => {
                    let _ = writeln!(out, "shrc: pass ({} samples)", r.samples);
                }
                Ok(r) => {
                    let lo = r.violations.iter().map(|v| v.x).fold(f64::INFINITY, f64::min);
                    let hi = r.violations.iter().map(|v| v.x).fold(f64::NEG_INFINITY, f64::max);
                    let _ = writeln!(
                        out,
                        "shrc: fail (advisory) {} violations on [{}, {}]",
                        r.violations.len(),
                        fmt_num(lo),
                        fmt_num(hi)
                    );
                }
                Err(e) => {
                    let _ = writeln!(out, "shrc: not applicable ({e})");
                }
            }
        }
        _ => out.push_str("shrc: skipped (no single reference prior)\n"),
    }

    let factory = s.factory()?;
    let (lo, hi) = factory.support();
    for k in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let x_d = lo + k * (hi - lo);
        let band = factory.build(x_d)?;
        let domain = (0.5 * lo, 0.5 * hi);
        let r0 = qc_grid_check(|p| bayes_payoff(p, x_d, &band.g0, s.utility), domain, 1001);
        let r1 = qc_grid_check(|p| bayes_payoff(p, x_d, &band.g1, s.utility), domain, 1001);
        let verdict = |ok: bool| if ok { "pass" } else { "fail" };
        let _ = writeln!(out, "qc x_d={}: g0 {}, g1 {}", fmt_num(x_d), verdict(r0.ok), verdict(r1.ok));
        ok &= r0.ok && r1.ok;
    }

    let policy = s.policy()?;
    let report = verify_policy(&policy, 1e-6, ORACLE_N)?;
    let _ = writeln!(
        out,
        "oracle: {} max_gap={} worst_x={} samples={}",
        if report.passed { "pass" } else { "fail" },
        fmt_num(report.max_abs_gap),
        fmt_num(report.worst_input),
        report.samples
    );
    ok &= report.passed;
    if factory.mode() == FactoryMode::Correlated {
        out.push_str("note: band depends on the divider's valuation\n");
    }
    Ok((out, ok))
}

pub fn cmd_plot(input: &Path, out: &Path) -> Result<(), CliError> {
    let csv = read(input)?;
    let svg = svg::render_svg(&csv).map_err(|e| CliError::Schema(e.0))?;
    write(out, &svg)
}

/// Runs one command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Price { scenario, x } => {
            let s = load_scenario(&scenario)?;
            print!("{}", cmd_price(&s, x)?);
        }
        Command::Sweep { scenario, out } => {
            let s = load_scenario(&scenario)?;
            write(&out, &cmd_sweep(&s)?)?;
        }
        Command::Welfare { scenario, out } => {
            let s = load_scenario(&scenario)?;
            write(&out, &cmd_welfare(&s)?)?;
        }
        Command::Efficiency { scenario, out } => {
            let s = load_scenario(&scenario)?;
            write(&out, &cmd_efficiency(&s)?)?;
        }
        Command::Check { scenario } => {
            let s = load_scenario(&scenario)?;
            let (report, ok) = cmd_check(&s)?;
            print!("{report}");
            if !ok {
                return Err(CliError::ChecksFailed);
            }
        }
        Command::Plot { input, out } => cmd_plot(&input, &out)?,
    }
    Ok(EXIT_OK)
}
