//! Quasiconcavity tools: grid verification, golden-section maximisation,
//! and the peak of the minimum of two single-peaked functions.

use crate::error::{Error, Result};

/// Slack used by [`qc_grid_check`] before a dip counts as a violation.
pub const QC_TOL: f64 = 1e-9;

/// A sampled triple `x_i < x_j < x_k` with `f(x_j) <= min(f(x_i), f(x_k)) - QC_TOL`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QcWitness {
    pub x: [f64; 3],
    pub value: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QcReport {
    pub ok: bool,
    pub witness: Option<QcWitness>,
}

/// Checks strict quasiconcavity on `n` equispaced points of `domain`.
///
/// A dip below both a point on its left and a point on its right is a
/// violation; prefix and suffix maxima make this a single pass. The
/// returned witness has the smallest middle index.
pub fn qc_grid_check(f: impl Fn(f64) -> f64, domain: (f64, f64), n: usize) -> QcReport {
    let n = n.max(3);
    let (lo, hi) = domain;
    let xs: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();

    let mut suffix = vec![n - 1; n];
    for j in (0..n - 1).rev() {
        suffix[j] = if ys[j] > ys[suffix[j + 1]] { j } else { suffix[j + 1] };
    }
    let mut best_left = 0;
    for j in 1..n - 1 {
        let k = suffix[j + 1];
        if ys[j] <= ys[best_left].min(ys[k]) - QC_TOL {
            let i = best_left;
            return QcReport {
                ok: false,
                witness: Some(QcWitness { x: [xs[i], xs[j], xs[k]], value: [ys[i], ys[j], ys[k]] }),
            };
        }
        if ys[j] > ys[best_left] {
            best_left = j;
        }
    }
    QcReport { ok: true, witness: None }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakResult {
    pub location: f64,
    pub value: f64,
    /// False when the search closed in on a jump, so the supremum is only
    /// approached from one side.
    pub attained: bool,
    pub bracket: (f64, f64),
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the peak of a strictly quasiconcave function.
pub fn unimodal_max(f: impl Fn(f64) -> f64, domain: (f64, f64), tol: f64) -> PeakResult {
    let (mut a, mut b) = domain;
    if !(b > a) {
        let v = f(a);
        return PeakResult { location: a, value: v, attained: true, bracket: (a, a) };
    }
    let tol = tol.max(4.0 * f64::EPSILON * (a.abs().max(b.abs()) + 1e-300));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..300 {
        if b - a <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let fa = f(a);
    let fb = f(b);
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    let mut best = (a, fa);
    for cand in [(c, fc), (mid, fm), (d, fd), (b, fb)] {
        if cand.1 > best.1 {
            best = cand;
        }
    }
    let scale = best.1.abs().max(1.0);
    let attained = (fa - fb).abs() <= 1e-7 * scale;
    PeakResult { location: best.0, value: best.1, attained, bracket: (a, b) }
}

/// Peak of `min(f, g)` when `g` is the smaller function left of `crossing`
/// and `f` the smaller one right of it. `None` means `f` never takes over,
/// so the minimum is `g` throughout.
pub fn min_peak(m_f: f64, m_g: f64, crossing: Option<f64>) -> Result<f64> {
    let Some(x0) = crossing else {
        return Ok(m_g);
    };
    if x0 < m_f && m_g < x0 {
        return Err(Error::Ordering(format!(
            "crossing {x0} lies between the peaks m_g = {m_g} and m_f = {m_f}"
        )));
    }
    if x0 < m_f {
        Ok(m_f)
    } else if m_g < x0 {
        Ok(m_g)
    } else {
        Ok(x0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_check_examples() {
        assert!(qc_grid_check(|x| -(x - 0.4) * (x - 0.4), (0.0, 1.0), 101).ok);
        let r = qc_grid_check(|x| -f64::min((x - 0.25).abs(), (x - 0.75).abs()), (0.0, 1.0), 101);
        assert!(!r.ok);
        let w = r.witness.unwrap();
        assert!(w.x[0] < w.x[1] && w.x[1] < w.x[2]);
        assert!(w.value[1] <= w.value[0].min(w.value[2]) - QC_TOL);
    }

    #[test]
    fn plateaus_count_as_violations_only_when_they_dip() {
        // constant functions are quasiconcave but not strictly; the 1e-9 slack keeps them ok
        assert!(qc_grid_check(|_| 1.0, (0.0, 1.0), 11).ok);
    }

    #[test]
    fn golden_section() {
        let r = unimodal_max(|p| -(p - 0.3) * (p - 0.3), (0.0, 1.0), 1e-10);
        assert!((r.location - 0.3).abs() < 1e-9);
        assert!(r.attained);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-10);
        let edge = unimodal_max(|p| p, (0.0, 1.0), 1e-10);
        assert!((edge.location - 1.0).abs() < 1e-9);
        let point = unimodal_max(|p| p, (0.5, 0.5), 1e-10);
        assert_eq!(point.location, 0.5);
    }

    #[test]
    fn golden_section_flags_unattained_suprema() {
        let r = unimodal_max(|p| if p < 0.4 { p } else { 0.0 }, (0.0, 1.0), 1e-10);
        assert!(!r.attained);
        assert!((r.location - 0.4).abs() < 1e-9 && r.location < 0.4);
    }

    #[test]
    fn min_peak_cases() {
        assert_eq!(min_peak(0.3, 0.7, Some(0.5)).unwrap(), 0.5);
        assert_eq!(min_peak(0.3, 0.7, Some(0.1)).unwrap(), 0.3);
        assert_eq!(min_peak(0.3, 0.7, Some(0.9)).unwrap(), 0.7);
        assert_eq!(min_peak(0.4, 0.4, Some(0.4)).unwrap(), 0.4);
        assert_eq!(min_peak(0.3, 0.7, None).unwrap(), 0.7);
        assert!(min_peak(0.7, 0.3, Some(0.5)).is_err());
    }
}
