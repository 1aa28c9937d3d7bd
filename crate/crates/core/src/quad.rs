//! Adaptive Simpson quadrature and Stieltjes expectations against a [`Cdf`].

use crate::dist::Cdf;
use crate::error::{Error, Result};

/// Recursion cap for [`adaptive_simpson`].
pub const MAX_DEPTH: u32 = 50;

struct Simpson<'a> {
    f: &'a dyn Fn(f64) -> f64,
    failed: Option<(f64, f64, f64)>,
}

impl Simpson<'_> {
    #[allow(clippy::too_many_arguments)]
    fn step(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        let h = b - a;
        let left = h / 12.0 * (fa + 4.0 * flm + fm);
        let right = h / 12.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        if diff.abs() <= 15.0 * tol || h <= 1e-15 * (1.0 + a.abs()) {
            return left + right + diff / 15.0;
        }
        if depth == 0 {
            if self.failed.is_none() {
                self.failed = Some((a, b, diff.abs() / 15.0));
            }
            return left + right + diff / 15.0;
        }
        self.step(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + self.step(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut s = Simpson { f, failed: None };
    let est = s.step(a, b, fa, fm, fb, whole, tol, max_depth);
    match s.failed {
        Some(_) => Err(Error::Quadrature { a, b, tol, estimate: est }),
        None => Ok(est),
    }
}

/// Integrates over `[a, b]`, splitting at every breakpoint inside it.
/// The tolerance is shared evenly across pieces.
pub fn integrate_piecewise(f: &dyn Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64], tol: f64) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let mut pts = vec![a];
    pts.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    pts.push(b);
    pts.sort_by(|x, y| x.total_cmp(y));
    pts.dedup();
    let pieces = (pts.len() - 1) as f64;
    let mut total = 0.0;
    for w in pts.windows(2) {
        total += adaptive_simpson(f, w[0], w[1], tol / pieces, MAX_DEPTH)?;
    }
    Ok(total)
}

/// `∫ h dG` over the closed interval `[a, b]`: atoms in `[a, b]` plus the
/// density part. `h` only needs to be smooth between `breaks` and the CDF kinks.
pub fn stieltjes(cdf: &Cdf, h: &dyn Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64], tol: f64) -> Result<f64> {
    stieltjes_with(cdf, h, a, b, true, true, breaks, tol)
}

/// Like [`stieltjes`] with control over whether atoms sitting exactly at the
/// interval ends are counted.
#[allow(clippy::too_many_arguments)]
pub fn stieltjes_with(
    cdf: &Cdf,
    h: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    include_a: bool,
    include_b: bool,
    breaks: &[f64],
    tol: f64,
) -> Result<f64> {
    let mut total = 0.0;
    for atom in cdf.atoms() {
        let inside = (atom.at > a && atom.at < b)
            || (atom.at == a && include_a)
            || (atom.at == b && include_b && b != a);
        if inside {
            total += atom.mass * h(atom.at);
        }
    }
    if b > a {
        let mut all: Vec<f64> = cdf.kinks().to_vec();
        all.extend_from_slice(breaks);
        let g = |x: f64| h(x) * cdf.density(x);
        total += integrate_piecewise(&g, a, b, &all, tol)?;
    }
    Ok(total)
}

/// `E_G[h]` over the whole support.
pub fn expectation(cdf: &Cdf, h: &dyn Fn(f64) -> f64, breaks: &[f64], tol: f64) -> Result<f64> {
    let (lo, hi) = cdf.support();
    stieltjes(cdf, h, lo, hi, breaks, tol)
}
