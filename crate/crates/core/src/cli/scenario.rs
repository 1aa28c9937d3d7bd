//! Scenario files: `key = value` lines with `#` comments.
//!
//! ```text
//! # uniform prior with an eps-shift band
//! dist = uniform(0, 1)
//! mode = iid
//! eps = 0.2
//! grid_n = 101
//! ```

use std::fmt;

use crate::band::{correlated_triangular_factory, eps_shift_band, BandFactory};
use crate::dist::{make_cdf, Cdf, DistFamily};
use crate::error::Result as LibResult;
use crate::payoff::Utility;
use crate::solver::{sweep_interval_policy, sweep_policy, PricePolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Iid,
    Correlated,
    Interval,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// Reference prior; required in iid mode, unused in correlated mode.
    pub dist: Option<DistFamily>,
    pub eps: f64,
    pub mode: Mode,
    pub utility: Utility,
    pub a: Option<f64>,
    pub b: Option<f64>,
    /// Valuation support in interval mode.
    pub support: (f64, f64),
    pub grid_n: usize,
    pub tol: f64,
    pub quad_tol: f64,
    pub delta: f64,
}

/// A scenario parse or validation failure.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}, field '{}': {}", self.field, self.message),
            None => write!(f, "field '{}': {}", self.field, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

fn err(line: Option<usize>, field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { line, field: field.to_string(), message: message.into() }
}

fn parse_f64(line: usize, field: &str, v: &str) -> Result<f64, ConfigError> {
    let x: f64 = v.trim().parse().map_err(|_| err(Some(line), field, format!("'{}' is not a number", v.trim())))?;
    if !x.is_finite() {
        return Err(err(Some(line), field, "must be finite"));
    }
    Ok(x)
}

fn parse_dist(line: usize, v: &str) -> Result<DistFamily, ConfigError> {
    let v = v.trim();
    let open = v.find('(').ok_or_else(|| err(Some(line), "dist", "expected family(args), e.g. uniform(0,1)"))?;
    if !v.ends_with(')') {
        return Err(err(Some(line), "dist", "missing closing parenthesis"));
    }
    let name = v[..open].trim();
    let inner = &v[open + 1..v.len() - 1];
    let args: Vec<f64> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(|a| parse_f64(line, "dist", a)).collect::<Result<_, _>>()?
    };
    let want = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(err(Some(line), "dist", format!("{name} takes {n} arguments, got {}", args.len())))
        }
    };
    let fam = match name {
        "uniform" => {
            want(2)?;
            DistFamily::Uniform { a: args[0], b: args[1] }
        }
        "triangular" => {
            want(3)?;
            DistFamily::Triangular { a: args[0], b: args[1], c: args[2] }
        }
        "truncnormal" => {
            want(4)?;
            DistFamily::TruncNormal { lo: args[0], hi: args[1], mu: args[2], sigma: args[3] }
        }
        "beta" => {
            want(2)?;
            DistFamily::Beta { alpha: args[0], beta: args[1] }
        }
        other => return Err(err(Some(line), "dist", format!("unknown family '{other}'"))),
    };
    fam.validate().map_err(|e| err(Some(line), "dist", e.to_string()))?;
    Ok(fam)
}

/// Parses and validates a scenario.
pub fn parse_scenario(text: &str) -> Result<Scenario, ConfigError> {
    let mut dist = None;
    let mut dist_line = None;
    let mut eps = 0.0;
    let mut mode = Mode::Iid;
    let mut utility_tag: Option<(usize, String)> = None;
    let mut rho: Option<f64> = None;
    let mut a = None;
    let mut b = None;
    let mut lo = None;
    let mut hi = None;
    let mut grid_n = 101usize;
    let mut tol = 1e-10;
    let mut quad_tol = 1e-8;
    let mut delta = 1e-6;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(Some(line), content, "expected 'key = value'"))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "dist" => {
                dist = Some(parse_dist(line, value)?);
                dist_line = Some(line);
            }
            "eps" => {
                eps = parse_f64(line, key, value)?;
                if eps < 0.0 {
                    return Err(err(Some(line), key, "must be >= 0"));
                }
            }
            "mode" => {
                mode = match value {
                    "iid" => Mode::Iid,
                    "correlated" => Mode::Correlated,
                    "interval" => Mode::Interval,
                    other => {
                        return Err(err(Some(line), key, format!("expected iid, correlated or interval, got '{other}'")))
                    }
                }
            }
            "utility" => utility_tag = Some((line, value.to_string())),
            "rho" => rho = Some(parse_f64(line, key, value)?),
            "a" => a = Some(parse_f64(line, key, value)?),
            "b" => b = Some(parse_f64(line, key, value)?),
            "lo" => lo = Some(parse_f64(line, key, value)?),
            "hi" => hi = Some(parse_f64(line, key, value)?),
            "grid_n" => {
                grid_n = value
                    .parse()
                    .map_err(|_| err(Some(line), key, format!("'{value}' is not a count")))?;
                if grid_n < 2 {
                    return Err(err(Some(line), key, "must be at least 2"));
                }
            }
            "tol" | "quad_tol" | "delta" => {
                let v = parse_f64(line, key, value)?;
                if v <= 0.0 {
                    return Err(err(Some(line), key, "must be > 0"));
                }
                match key {
                    "tol" => tol = v,
                    "quad_tol" => quad_tol = v,
                    _ => delta = v,
                }
            }
            other => return Err(err(Some(line), other, "unknown key")),
        }
    }

    let utility = match utility_tag {
        None => Utility::Identity,
        Some((_, ref t)) if t == "identity" => Utility::Identity,
        Some((line, ref t)) if t == "cara" => {
            let r = rho.ok_or_else(|| err(Some(line), "rho", "cara utility needs rho"))?;
            Utility::cara(r).map_err(|e| err(Some(line), "rho", e.to_string()))?
        }
        Some((line, t)) => return Err(err(Some(line), "utility", format!("expected identity or cara, got '{t}'"))),
    };

    let mut support = (0.0, 1.0);
    match mode {
        Mode::Iid => {
            if dist.is_none() {
                return Err(err(None, "dist", "required in iid mode"));
            }
        }
        Mode::Correlated => {
            if dist.is_some() {
                return Err(err(
                    dist_line,
                    "dist",
                    "correlated mode always uses a triangular prior on [0,1] with mode at the divider's value",
                ));
            }
        }
        Mode::Interval => {
            let a = a.ok_or_else(|| err(None, "a", "required in interval mode"))?;
            let b = b.ok_or_else(|| err(None, "b", "required in interval mode"))?;
            if let Some(d) = dist {
                support = make_cdf(d).map_err(|e| err(dist_line, "dist", e.to_string()))?.support();
            }
            support = (lo.unwrap_or(support.0), hi.unwrap_or(support.1));
            if !(support.0 < support.1) {
                return Err(err(None, "lo", "support needs lo < hi"));
            }
            if a > b {
                return Err(err(None, "a", format!("needs a <= b, got a = {a}, b = {b}")));
            }
            if a < support.0 || b > support.1 {
                return Err(err(None, "a", "a and b must lie in the support"));
            }
        }
    }

    Ok(Scenario { dist, eps, mode, utility, a, b, support, grid_n, tol, quad_tol, delta })
}

impl Scenario {
    pub fn reference_cdf(&self) -> Option<LibResult<Cdf>> {
        self.dist.map(make_cdf)
    }

    /// The band factory for iid and correlated modes; the interval band for interval mode.
    pub fn factory(&self) -> LibResult<BandFactory> {
        match self.mode {
            Mode::Iid => {
                let f = make_cdf(self.dist.expect("validated"))?;
                Ok(BandFactory::iid(eps_shift_band(&f, self.eps)?))
            }
            Mode::Correlated => correlated_triangular_factory(self.eps),
            Mode::Interval => {
                let band = crate::band::interval_band(self.a.unwrap(), self.b.unwrap(), self.support)?;
                Ok(BandFactory::iid(band))
            }
        }
    }

    pub fn policy(&self) -> LibResult<PricePolicy> {
        match self.mode {
            Mode::Interval => {
                sweep_interval_policy(self.a.unwrap(), self.b.unwrap(), self.support, self.delta, self.grid_n)
            }
            _ => sweep_policy(&self.factory()?, self.utility, self.grid_n, self.tol),
        }
    }
}
