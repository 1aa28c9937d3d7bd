//! Cumulative distribution functions on a closed valuation interval.
//!
//! A [`Cdf`] is right-continuous, piecewise smooth, and may carry point
//! masses. Besides the built-in parametric families it can represent
//! horizontal shifts of another CDF (clipped to the same support, with
//! the clipped mass piled onto the endpoints), Dirac measures, and a
//! splice of two CDFs at a switch point. Those are the shapes the band
//! and welfare code needs.

use std::sync::Arc;

use statrs::function::beta::beta_reg;
use statrs::function::erf::erfc;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Built-in parametric families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistFamily {
    Uniform { a: f64, b: f64 },
    /// Triangular on `[a, b]` with mode `c`.
    Triangular { a: f64, b: f64, c: f64 },
    /// Normal(mu, sigma) truncated to `[lo, hi]`.
    TruncNormal { lo: f64, hi: f64, mu: f64, sigma: f64 },
    /// Beta(alpha, beta) on `[0, 1]`.
    Beta { alpha: f64, beta: f64 },
}

impl DistFamily {
    pub fn name(&self) -> &'static str {
        match self {
            DistFamily::Uniform { .. } => "uniform",
            DistFamily::Triangular { .. } => "triangular",
            DistFamily::TruncNormal { .. } => "truncnormal",
            DistFamily::Beta { .. } => "beta",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |constraint: &str| {
            Err(Error::InvalidParameter {
                family: self.name(),
                constraint: constraint.to_string(),
            })
        };
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match *self {
            DistFamily::Uniform { a, b } => {
                if !finite(&[a, b]) {
                    return fail("parameters must be finite");
                }
                if !(a < b) {
                    return fail("a < b");
                }
            }
            DistFamily::Triangular { a, b, c } => {
                if !finite(&[a, b, c]) {
                    return fail("parameters must be finite");
                }
                if !(a < b) {
                    return fail("a < b");
                }
                if !(a <= c && c <= b) {
                    return fail("a <= c <= b");
                }
            }
            DistFamily::TruncNormal { lo, hi, mu, sigma } => {
                if !finite(&[lo, hi, mu, sigma]) {
                    return fail("parameters must be finite");
                }
                if !(lo < hi) {
                    return fail("lo < hi");
                }
                if !(sigma > 0.0) {
                    return fail("sigma > 0");
                }
            }
            DistFamily::Beta { alpha, beta } => {
                if !finite(&[alpha, beta]) {
                    return fail("parameters must be finite");
                }
                if !(alpha > 0.0) {
                    return fail("alpha > 0");
                }
                if !(beta > 0.0) {
                    return fail("beta > 0");
                }
            }
        }
        Ok(())
    }
}

/// A point mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub at: f64,
    pub mass: f64,
}

#[derive(Debug, Clone)]
enum Shape {
    Uniform { a: f64, b: f64 },
    Triangular { a: f64, b: f64, c: f64 },
    TruncNormal { mu: f64, sigma: f64, phi_lo: f64, mass: f64 },
    Beta { alpha: f64, beta: f64, ln_b: f64 },
    Dirac(f64),
    /// `G(x) = base(x + offset)` on the base support.
    Shifted { base: Arc<Cdf>, offset: f64 },
    /// `below` on `[lo, at)`, `above` on `[at, hi]`.
    Spliced { below: Arc<Cdf>, above: Arc<Cdf>, at: f64 },
}

/// A right-continuous distribution function on `[lo, hi]`.
#[derive(Debug, Clone)]
pub struct Cdf {
    shape: Shape,
    lo: f64,
    hi: f64,
    family: Option<DistFamily>,
    kinks: Vec<f64>,
    atoms: Vec<Atom>,
}

fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

fn std_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

fn sorted_unique(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup();
    v
}

/// Smallest `x` in `[lo, hi]` with `pred(x)`, for `pred` monotone false→true.
///
/// Bisects down to adjacent floats, so exact breakpoints are recovered
/// exactly. Returns `hi` when the predicate never holds.
pub(crate) fn first_true(lo: f64, hi: f64, pred: impl Fn(f64) -> bool) -> f64 {
    if pred(lo) {
        return lo;
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..2100 {
        let m = a + 0.5 * (b - a);
        if m <= a || m >= b {
            break;
        }
        if pred(m) {
            b = m;
        } else {
            a = m;
        }
    }
    b
}

/// Largest `x` in `[lo, hi]` with `pred(x)`, for `pred` monotone true→false.
/// Returns `lo` when the predicate fails everywhere.
pub(crate) fn last_true(lo: f64, hi: f64, pred: impl Fn(f64) -> bool) -> f64 {
    if pred(hi) {
        return hi;
    }
    if !pred(lo) {
        return lo;
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..2100 {
        let m = a + 0.5 * (b - a);
        if m <= a || m >= b {
            break;
        }
        if pred(m) {
            a = m;
        } else {
            b = m;
        }
    }
    a
}

impl Cdf {
    /// Builds the CDF of a parametric family.
    pub fn from_family(family: DistFamily) -> Result<Cdf> {
        family.validate()?;
        let (shape, lo, hi, kinks) = match family {
            DistFamily::Uniform { a, b } => (Shape::Uniform { a, b }, a, b, vec![a, b]),
            DistFamily::Triangular { a, b, c } => {
                (Shape::Triangular { a, b, c }, a, b, vec![a, c, b])
            }
            DistFamily::TruncNormal { lo, hi, mu, sigma } => {
                let phi_lo = std_normal_cdf((lo - mu) / sigma);
                let mass = std_normal_cdf((hi - mu) / sigma) - phi_lo;
                if !(mass > 0.0) {
                    return Err(Error::InvalidParameter {
                        family: "truncnormal",
                        constraint: "truncation interval carries no normal mass".into(),
                    });
                }
                (Shape::TruncNormal { mu, sigma, phi_lo, mass }, lo, hi, vec![lo, hi])
            }
            DistFamily::Beta { alpha, beta } => {
                let ln_b = ln_gamma(alpha) + ln_gamma(beta) - ln_gamma(alpha + beta);
                (Shape::Beta { alpha, beta, ln_b }, 0.0, 1.0, vec![0.0, 1.0])
            }
        };
        Ok(Cdf {
            shape,
            lo,
            hi,
            family: Some(family),
            kinks: sorted_unique(kinks),
            atoms: Vec::new(),
        })
    }

    /// Unit point mass at `at`, viewed on the support `[lo, hi]`.
    pub fn dirac(at: f64, support: (f64, f64)) -> Result<Cdf> {
        let (lo, hi) = support;
        if !(lo <= at && at <= hi) {
            return Err(Error::Ordering(format!(
                "point mass at {at} outside support [{lo}, {hi}]"
            )));
        }
        Ok(Cdf {
            shape: Shape::Dirac(at),
            lo,
            hi,
            family: None,
            kinks: sorted_unique(vec![lo, at, hi]),
            atoms: vec![Atom { at, mass: 1.0 }],
        })
    }

    /// `G(x) = F(x + offset)` on the support of `F`: zero below it, one
    /// from its upper end on. Mass pushed past an endpoint becomes an atom
    /// there.
    pub fn shifted(&self, offset: f64) -> Cdf {
        let (lo, hi) = (self.lo, self.hi);
        let mut kinks = vec![lo, hi];
        kinks.extend(
            self.kinks
                .iter()
                .map(|k| k - offset)
                .filter(|&k| k > lo && k < hi),
        );
        let mut atoms = Vec::new();
        let at_lo = self.eval(lo + offset);
        if at_lo > 0.0 {
            atoms.push(Atom { at: lo, mass: at_lo });
        }
        atoms.extend(
            self.atoms
                .iter()
                .map(|a| Atom { at: a.at - offset, mass: a.mass })
                .filter(|a| a.at > lo && a.at < hi),
        );
        if hi > lo {
            let at_hi = 1.0 - self.left_limit(hi + offset);
            if at_hi > 0.0 {
                atoms.push(Atom { at: hi, mass: at_hi });
            }
        }
        Cdf {
            shape: Shape::Shifted { base: Arc::new(self.clone()), offset },
            lo,
            hi,
            family: None,
            kinks: sorted_unique(kinks),
            atoms,
        }
    }

    /// `below` strictly left of `at`, `above` from `at` on. Monotone when
    /// `below <= above` pointwise.
    pub fn spliced(below: &Cdf, above: &Cdf, at: f64) -> Cdf {
        let (lo, hi) = (below.lo, below.hi);
        let mut kinks = vec![lo, hi];
        if at > lo && at < hi {
            kinks.push(at);
        }
        kinks.extend(below.kinks.iter().copied().filter(|&k| k < at));
        kinks.extend(above.kinks.iter().copied().filter(|&k| k > at));

        let mut atoms: Vec<Atom> = below.atoms.iter().copied().filter(|a| a.at < at).collect();
        if at >= lo && at <= hi {
            let jump = above.eval(at) - below.left_limit(at);
            if jump > 0.0 {
                atoms.push(Atom { at, mass: jump });
            }
        }
        atoms.extend(above.atoms.iter().copied().filter(|a| a.at > at));
        Cdf {
            shape: Shape::Spliced {
                below: Arc::new(below.clone()),
                above: Arc::new(above.clone()),
                at,
            },
            lo,
            hi,
            family: None,
            kinks: sorted_unique(kinks),
            atoms,
        }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// The family this CDF was built from, if any.
    pub fn family(&self) -> Option<DistFamily> {
        self.family
    }

    /// Ascending breakpoints where smoothness may fail (support ends included).
    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x < self.lo {
            return 0.0;
        }
        if x >= self.hi {
            return 1.0;
        }
        let v = match &self.shape {
            Shape::Uniform { a, b } => (x - a) / (b - a),
            Shape::Triangular { a, b, c } => {
                let (a, b, c) = (*a, *b, *c);
                if x < c {
                    (x - a) * (x - a) / ((b - a) * (c - a))
                } else if x == c {
                    (c - a) / (b - a)
                } else {
                    1.0 - (b - x) * (b - x) / ((b - a) * (b - c))
                }
            }
            Shape::TruncNormal { mu, sigma, phi_lo, mass } => {
                (std_normal_cdf((x - mu) / sigma) - phi_lo) / mass
            }
            Shape::Beta { alpha, beta, .. } => {
                if x <= 0.0 {
                    0.0
                } else {
                    beta_reg(*alpha, *beta, x)
                }
            }
            Shape::Dirac(at) => {
                if x >= *at {
                    1.0
                } else {
                    0.0
                }
            }
            Shape::Shifted { base, offset } => base.eval(x + offset),
            Shape::Spliced { below, above, at } => {
                if x < *at {
                    below.eval(x)
                } else {
                    above.eval(x)
                }
            }
        };
        v.clamp(0.0, 1.0)
    }

    /// `lim_{y↑x} G(y)`.
    pub fn left_limit(&self, x: f64) -> f64 {
        if x <= self.lo {
            return 0.0;
        }
        if x > self.hi {
            return 1.0;
        }
        match &self.shape {
            Shape::Dirac(at) => {
                if x > *at {
                    1.0
                } else {
                    0.0
                }
            }
            Shape::Shifted { base, offset } => base.left_limit(x + offset),
            Shape::Spliced { below, above, at } => {
                if x <= *at {
                    below.left_limit(x)
                } else {
                    above.left_limit(x)
                }
            }
            // the families are continuous on their support
            _ => self.eval(x),
        }
    }

    /// Density of the absolutely continuous part (zero outside the support).
    pub fn density(&self, x: f64) -> f64 {
        if x < self.lo || x > self.hi {
            return 0.0;
        }
        match &self.shape {
            Shape::Uniform { a, b } => 1.0 / (b - a),
            Shape::Triangular { a, b, c } => {
                let (a, b, c) = (*a, *b, *c);
                if x < c || (x == c && c == b) {
                    2.0 * (x - a) / ((b - a) * (c - a))
                } else {
                    2.0 * (b - x) / ((b - a) * (b - c))
                }
            }
            Shape::TruncNormal { mu, sigma, mass, .. } => {
                std_normal_pdf((x - mu) / sigma) / (sigma * mass)
            }
            Shape::Beta { alpha, beta, ln_b } => {
                ((alpha - 1.0) * x.ln() + (beta - 1.0) * (1.0 - x).ln() - ln_b).exp()
            }
            Shape::Dirac(_) => 0.0,
            Shape::Shifted { base, offset } => base.density(x + offset),
            Shape::Spliced { below, above, at } => {
                if x < *at {
                    below.density(x)
                } else {
                    above.density(x)
                }
            }
        }
    }

    /// `f'(x) / f(x)` for the built-in families.
    fn log_density_slope(&self, x: f64) -> Option<f64> {
        match &self.shape {
            Shape::Uniform { .. } => Some(0.0),
            Shape::Triangular { a, b, c } => {
                if x < *c {
                    Some(1.0 / (x - a))
                } else {
                    Some(-1.0 / (b - x))
                }
            }
            Shape::TruncNormal { mu, sigma, .. } => Some(-(x - mu) / (sigma * sigma)),
            Shape::Beta { alpha, beta, .. } => Some((alpha - 1.0) / x - (beta - 1.0) / (1.0 - x)),
            _ => None,
        }
    }

    /// Closed-form `(d/dx (x + F/f), d/dx (x - (1-F)/f))` for the built-in
    /// families, `None` for derived CDFs.
    pub fn shrc_slopes(&self, x: f64) -> Option<(f64, f64)> {
        let r = self.log_density_slope(x)?;
        let f = self.density(x);
        let big_f = self.eval(x);
        Some((2.0 - big_f * r / f, 2.0 + (1.0 - big_f) * r / f))
    }

    /// Smallest and largest median.
    pub fn median_bracket(&self) -> (f64, f64) {
        match &self.shape {
            Shape::Uniform { a, b } => {
                let m = 0.5 * (a + b);
                return (m, m);
            }
            Shape::Triangular { a, b, c } => {
                let (a, b, c) = (*a, *b, *c);
                let m = if c >= 0.5 * (a + b) {
                    a + ((b - a) * (c - a) / 2.0).sqrt()
                } else {
                    b - ((b - a) * (b - c) / 2.0).sqrt()
                };
                return (m, m);
            }
            Shape::Dirac(at) => return (*at, *at),
            Shape::Shifted { base, offset } => {
                // G(x) = F(x + offset), clipped to the support
                let (bm, bp) = base.median_bracket();
                let lo = (bm - offset).clamp(self.lo, self.hi);
                let hi = (bp - offset).clamp(self.lo, self.hi);
                return (lo, hi.max(lo));
            }
            _ => {}
        }
        let mu_minus = first_true(self.lo, self.hi, |x| self.eval(x) >= 0.5);
        let mu_plus = last_true(self.lo, self.hi, |x| self.left_limit(x) <= 0.5);
        (mu_minus, mu_plus.max(mu_minus))
    }
}

/// Builds a CDF for a parametric family.
pub fn make_cdf(family: DistFamily) -> Result<Cdf> {
    Cdf::from_family(family)
}

pub fn median_bracket(cdf: &Cdf) -> (f64, f64) {
    cdf.median_bracket()
}

/// Which of the two hazard-rate conditions a sample violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShrcCondition {
    /// `d/dx (x + F/f) >= 0`
    Lower,
    /// `d/dx (x - (1-F)/f) >= 0`
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShrcViolation {
    pub x: f64,
    pub condition: ShrcCondition,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShrcReport {
    pub holds: bool,
    pub violations: Vec<ShrcViolation>,
    pub samples: usize,
}

/// Default grid size for [`check_shrc`].
pub const SHRC_GRID: usize = 2001;

const SHRC_TOL: f64 = -1e-9;

/// Samples both hazard-rate slopes on `grid_n` interior points.
///
/// Built-in families use their closed-form slopes; anything else uses
/// central differences with step `1e-5 * width`.
pub fn check_shrc(cdf: &Cdf, grid_n: usize) -> Result<ShrcReport> {
    let (lo, hi) = cdf.support();
    let width = hi - lo;
    let h = 1e-5 * width;
    let lower = |x: f64| x + cdf.eval(x) / cdf.density(x);
    let upper = |x: f64| x - (1.0 - cdf.eval(x)) / cdf.density(x);

    let mut violations = Vec::new();
    for i in 0..grid_n {
        let x = lo + width * (i + 1) as f64 / (grid_n + 1) as f64;
        let f = cdf.density(x);
        if !(f > 0.0) {
            return Err(Error::ZeroDensity { x });
        }
        let (s1, s2) = match cdf.shrc_slopes(x) {
            Some(s) => s,
            None => (
                (lower(x + h) - lower(x - h)) / (2.0 * h),
                (upper(x + h) - upper(x - h)) / (2.0 * h),
            ),
        };
        if !(s1 >= SHRC_TOL) {
            violations.push(ShrcViolation { x, condition: ShrcCondition::Lower, slope: s1 });
        }
        if !(s2 >= SHRC_TOL) {
            violations.push(ShrcViolation { x, condition: ShrcCondition::Upper, slope: s2 });
        }
    }
    Ok(ShrcReport { holds: violations.is_empty(), violations, samples: grid_n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive_simpson;

    fn uniform() -> Cdf {
        make_cdf(DistFamily::Uniform { a: 0.0, b: 1.0 }).unwrap()
    }

    #[test]
    fn family_spot_values() {
        assert_eq!(uniform().eval(0.3), 0.3);
        let tri = make_cdf(DistFamily::Triangular { a: 0.0, b: 1.0, c: 0.5 }).unwrap();
        assert!((tri.eval(0.25) - 0.125).abs() < 1e-15);
        assert_eq!(tri.eval(0.5), 0.5);
        let beta = make_cdf(DistFamily::Beta { alpha: 0.5, beta: 1.0 }).unwrap();
        assert!((beta.eval(0.25) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn beta_cdf_matches_integrated_density() {
        // closed form x^{1/2}; the density is singular at 0, so integrate from a small offset
        let beta = make_cdf(DistFamily::Beta { alpha: 0.5, beta: 1.0 }).unwrap();
        let lo = 1e-4;
        let mass = adaptive_simpson(&|x| beta.density(x), lo, 0.25, 1e-11, 60).unwrap();
        assert!((mass - (0.5 - lo.sqrt())).abs() < 1e-8);
    }

    #[test]
    fn invalid_parameters_name_the_constraint() {
        let err = make_cdf(DistFamily::Triangular { a: 0.0, b: 1.0, c: 1.5 }).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidParameter { family: "triangular", constraint: "a <= c <= b".into() }
        );
        assert!(make_cdf(DistFamily::Uniform { a: 1.0, b: 1.0 }).is_err());
        assert!(make_cdf(DistFamily::TruncNormal { lo: 0.0, hi: 1.0, mu: 0.0, sigma: 0.0 })
            .is_err());
        assert!(make_cdf(DistFamily::Beta { alpha: -1.0, beta: 1.0 }).is_err());
    }

    #[test]
    fn medians() {
        assert_eq!(uniform().median_bracket(), (0.5, 0.5));
        let d = Cdf::dirac(0.2, (0.0, 1.0)).unwrap();
        assert_eq!(d.median_bracket(), (0.2, 0.2));
        assert_eq!(d.left_limit(0.2), 0.0);
        assert_eq!(d.eval(0.2), 1.0);
    }

    #[test]
    fn shifted_and_spliced_medians() {
        let g0 = uniform().shifted(-0.2);
        let g1 = uniform().shifted(0.2);
        assert_eq!(g1.median_bracket(), (0.3, 0.3));
        assert_eq!(g0.median_bracket(), (0.7, 0.7));
        // a jump straddling one half pins the median at the jump
        let star = Cdf::spliced(&g0, &g1, 0.5);
        assert_eq!(star.median_bracket(), (0.5, 0.5));
        let atom = star.atoms().iter().find(|a| a.at == 0.5).unwrap();
        assert!((atom.mass - 0.4).abs() < 1e-15);
    }

    #[test]
    fn shrc_closed_forms_match_finite_differences() {
        let fams = [
            DistFamily::Uniform { a: 0.0, b: 1.0 },
            DistFamily::Triangular { a: 0.0, b: 1.0, c: 0.3 },
            DistFamily::TruncNormal { lo: 0.0, hi: 1.0, mu: 0.0, sigma: 1.0 },
            DistFamily::Beta { alpha: 2.0, beta: 3.0 },
            DistFamily::Beta { alpha: 0.5, beta: 1.0 },
        ];
        for fam in fams {
            let cdf = make_cdf(fam).unwrap();
            let h = 1e-5;
            let lower = |x: f64| x + cdf.eval(x) / cdf.density(x);
            let upper = |x: f64| x - (1.0 - cdf.eval(x)) / cdf.density(x);
            for &x in &[0.11, 0.2, 0.45, 0.6, 0.85] {
                let (s1, s2) = cdf.shrc_slopes(x).unwrap();
                let d1 = (lower(x + h) - lower(x - h)) / (2.0 * h);
                let d2 = (upper(x + h) - upper(x - h)) / (2.0 * h);
                assert!((s1 - d1).abs() < 1e-4 * (1.0 + d1.abs()), "{fam:?} x={x}: {s1} vs {d1}");
                assert!((s2 - d2).abs() < 1e-4 * (1.0 + d2.abs()), "{fam:?} x={x}: {s2} vs {d2}");
            }
        }
    }

    #[test]
    fn shrc_examples() {
        let r = check_shrc(&uniform(), 101).unwrap();
        assert!(r.holds);
        let tri = make_cdf(DistFamily::Triangular { a: 0.0, b: 1.0, c: 0.5 }).unwrap();
        assert_eq!(tri.shrc_slopes(0.25).unwrap().0, 1.5);
        assert!(check_shrc(&tri, 101).unwrap().holds);

        let beta = make_cdf(DistFamily::Beta { alpha: 0.5, beta: 1.0 }).unwrap();
        let r = check_shrc(&beta, 2001).unwrap();
        assert!(!r.holds);
        assert!(r.violations.iter().all(|v| v.condition == ShrcCondition::Upper));
        assert!(r.violations.iter().all(|v| v.x < 1.0 / 9.0));
        // 3 - x^{-1/2}
        let v = r.violations[0];
        assert!((v.slope - (3.0 - v.x.powf(-0.5))).abs() < 1e-9);
    }

    #[test]
    fn shrc_on_derived_cdf_uses_finite_differences() {
        let g = uniform().shifted(0.2);
        // interior of a clipped shift has zero density past 0.8
        assert!(matches!(check_shrc(&g, 11), Err(Error::ZeroDensity { .. })));
        let tri = make_cdf(DistFamily::Triangular { a: 0.0, b: 1.0, c: 0.5 }).unwrap();
        let inner = tri.shifted(0.0);
        assert!(check_shrc(&inner, 101).unwrap().holds);
    }

    #[test]
    fn shift_atoms_and_limits() {
        let g0 = uniform().shifted(-0.2);
        let g1 = uniform().shifted(0.2);
        assert_eq!(g0.eval(0.5), 0.3);
        assert_eq!(g0.eval(1.0), 1.0);
        assert!((g0.left_limit(1.0) - 0.8).abs() < 1e-15);
        assert_eq!(g0.atoms().len(), 1);
        assert!((g0.atoms()[0].mass - 0.2).abs() < 1e-15);
        assert_eq!(g1.eval(0.0), 0.2);
        assert_eq!(g1.left_limit(0.0), 0.0);
        assert_eq!(g1.atoms()[0].at, 0.0);
        assert!(g0.kinks().contains(&0.2));
        assert!(g1.kinks().contains(&0.8));
    }
}
