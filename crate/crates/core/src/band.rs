//! Distribution bands `{G : G0 <= G <= G1}` and x_D-dependent band factories.

use std::fmt;
use std::sync::Arc;

use crate::dist::{first_true, last_true, make_cdf, Cdf, DistFamily};
use crate::error::{Error, Result};

/// Grid used to verify `g0 <= g1`.
pub const DOMINANCE_GRID: usize = 1001;
const DOMINANCE_TOL: f64 = 1e-12;

/// A band between the dominating bound `g0` and the dominated bound `g1`.
#[derive(Debug, Clone)]
pub struct Band {
    pub g0: Cdf,
    pub g1: Cdf,
    /// `sup {x : g0(x) = 0}`
    pub alpha: f64,
    /// `inf {x : g1(x) = 1}`
    pub beta_pt: f64,
    pub mu_g1_minus: f64,
    pub mu_g0_plus: f64,
    pub label: String,
}

fn snap_to(r: f64, kinks: &[f64]) -> f64 {
    for &k in kinks {
        if (k - r).abs() <= 4.0 * f64::EPSILON * (1.0 + k.abs()) {
            return k;
        }
    }
    r
}

impl Band {
    pub fn new(g0: Cdf, g1: Cdf, label: impl Into<String>) -> Result<Band> {
        let (lo, hi) = g0.support();
        if g1.support() != (lo, hi) {
            return Err(Error::Ordering(format!(
                "band bounds live on different supports {:?} and {:?}",
                g0.support(),
                g1.support()
            )));
        }
        for i in 0..DOMINANCE_GRID {
            let x = lo + (hi - lo) * i as f64 / (DOMINANCE_GRID - 1) as f64;
            let (a, b) = (g0.eval(x), g1.eval(x));
            if a > b + DOMINANCE_TOL {
                return Err(Error::Dominance { x, g0: a, g1: b });
            }
        }
        let alpha = snap_to(last_true(lo, hi, |x| g0.eval(x) <= 0.0), g0.kinks());
        let beta_pt = snap_to(first_true(lo, hi, |x| g1.eval(x) >= 1.0), g1.kinks());
        let mu_g1_minus = g1.median_bracket().0;
        let mu_g0_plus = g0.median_bracket().1;
        if mu_g1_minus > mu_g0_plus {
            return Err(Error::Ordering(format!(
                "median bracket inverted: {mu_g1_minus} > {mu_g0_plus}"
            )));
        }
        Ok(Band { g0, g1, alpha, beta_pt, mu_g1_minus, mu_g0_plus, label: label.into() })
    }

    pub fn g0(&self) -> &Cdf {
        &self.g0
    }

    pub fn g1(&self) -> &Cdf {
        &self.g1
    }

    pub fn support(&self) -> (f64, f64) {
        self.g0.support()
    }

    /// `(mu_g1_minus, mu_g0_plus)`
    pub fn median_bracket(&self) -> (f64, f64) {
        (self.mu_g1_minus, self.mu_g0_plus)
    }
}

/// Band spanned by shifting `f` left and right by `eps`.
pub fn eps_shift_band(f: &Cdf, eps: f64) -> Result<Band> {
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::InvalidParameter {
            family: "eps-shift band",
            constraint: "eps >= 0".into(),
        });
    }
    let (g0, g1) = if eps == 0.0 {
        (f.clone(), f.clone())
    } else {
        (f.shifted(-eps), f.shifted(eps))
    };
    Band::new(g0, g1, format!("eps-shift(eps={eps})"))
}

/// Every distribution with mass in `[a, b]`: point masses at `a` and `b`
/// are the extreme members.
pub fn interval_band(a: f64, b: f64, support: (f64, f64)) -> Result<Band> {
    if a > b {
        return Err(Error::Ordering(format!("interval band needs a <= b, got a = {a}, b = {b}")));
    }
    let g1 = Cdf::dirac(a, support)?;
    let g0 = Cdf::dirac(b, support)?;
    Band::new(g0, g1, format!("interval(a={a}, b={b})"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactoryMode {
    Iid,
    Correlated,
}

type Builder = Arc<dyn Fn(f64) -> Result<Band> + Send + Sync>;

#[derive(Clone)]
enum Source {
    Fixed(Arc<Band>),
    Built(Builder),
}

/// Maps the divider's valuation to the band the divider faces.
#[derive(Clone)]
pub struct BandFactory {
    mode: FactoryMode,
    source: Source,
    support: (f64, f64),
    label: String,
}

impl fmt::Debug for BandFactory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BandFactory")
            .field("mode", &self.mode)
            .field("support", &self.support)
            .field("label", &self.label)
            .finish()
    }
}

impl BandFactory {
    /// Same band for every valuation.
    pub fn iid(band: Band) -> BandFactory {
        let support = band.support();
        let label = band.label.clone();
        BandFactory { mode: FactoryMode::Iid, source: Source::Fixed(Arc::new(band)), support, label }
    }

    pub fn correlated(
        support: (f64, f64),
        label: impl Into<String>,
        builder: impl Fn(f64) -> Result<Band> + Send + Sync + 'static,
    ) -> BandFactory {
        BandFactory {
            mode: FactoryMode::Correlated,
            source: Source::Built(Arc::new(builder)),
            support,
            label: label.into(),
        }
    }

    pub fn build(&self, x_d: f64) -> Result<Arc<Band>> {
        match &self.source {
            Source::Fixed(b) => Ok(Arc::clone(b)),
            Source::Built(f) => f(x_d).map(Arc::new),
        }
    }

    /// The band, when it does not depend on the valuation.
    pub fn fixed(&self) -> Option<&Band> {
        match &self.source {
            Source::Fixed(b) => Some(b),
            Source::Built(_) => None,
        }
    }

    pub fn mode(&self) -> FactoryMode {
        self.mode
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// The chooser's value is believed triangular on `[0, 1]` with mode at the
/// divider's own value, blurred by an `eps` shift.
pub fn correlated_triangular_factory(eps: f64) -> Result<BandFactory> {
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::InvalidParameter {
            family: "eps-shift band",
            constraint: "eps >= 0".into(),
        });
    }
    Ok(BandFactory::correlated((0.0, 1.0), format!("correlated-triangular(eps={eps})"), move |x_d| {
        let tri = make_cdf(DistFamily::Triangular { a: 0.0, b: 1.0, c: x_d.clamp(0.0, 1.0) })?;
        eps_shift_band(&tri, eps)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform() -> Cdf {
        make_cdf(DistFamily::Uniform { a: 0.0, b: 1.0 }).unwrap()
    }

    #[test]
    fn uniform_shift_band() {
        let band = eps_shift_band(&uniform(), 0.2).unwrap();
        assert_eq!(band.median_bracket(), (0.3, 0.7));
        assert_eq!((band.alpha, band.beta_pt), (0.2, 0.8));
        assert!((band.g0.eval(0.5) - 0.3).abs() < 1e-15);
        assert_eq!(band.g0.eval(0.1), 0.0);
        assert_eq!(band.g1.eval(0.9), 1.0);
        assert!((band.g1.eval(0.5) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn degenerate_band() {
        let band = eps_shift_band(&uniform(), 0.0).unwrap();
        assert_eq!(band.median_bracket(), (0.5, 0.5));
        assert_eq!((band.alpha, band.beta_pt), (0.0, 1.0));
    }

    #[test]
    fn full_uncertainty_when_eps_exceeds_width() {
        let band = eps_shift_band(&uniform(), 1.5).unwrap();
        assert_eq!(band.g1.eval(0.0), 1.0);
        assert_eq!(band.g0.eval(0.999), 0.0);
        assert_eq!(band.median_bracket(), (0.0, 1.0));
    }

    #[test]
    fn interval_bands() {
        let band = interval_band(0.2, 0.7, (0.0, 1.0)).unwrap();
        assert_eq!(band.median_bracket(), (0.2, 0.7));
        assert_eq!(band.g1.eval(0.2), 1.0);
        assert_eq!(band.g0.left_limit(0.7), 0.0);
        let point = interval_band(0.5, 0.5, (0.0, 1.0)).unwrap();
        assert_eq!(point.median_bracket(), (0.5, 0.5));
        assert!(matches!(interval_band(0.7, 0.2, (0.0, 1.0)), Err(Error::Ordering(_))));
    }

    #[test]
    fn dominance_is_enforced() {
        let u = uniform();
        assert!(matches!(Band::new(u.shifted(0.2), u.shifted(-0.2), "swapped"), Err(Error::Dominance { .. })));
    }

    #[test]
    fn correlated_factory() {
        let fac = correlated_triangular_factory(0.2).unwrap();
        assert_eq!(fac.mode(), FactoryMode::Correlated);
        let band = fac.build(0.5).unwrap();
        let (lo, hi) = band.median_bracket();
        assert!((lo - 0.3).abs() < 1e-12 && (hi - 0.7).abs() < 1e-12);
        let flat = correlated_triangular_factory(0.0).unwrap().build(0.3).unwrap();
        let tri = make_cdf(DistFamily::Triangular { a: 0.0, b: 1.0, c: 0.3 }).unwrap();
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            assert_eq!(flat.g0.eval(x), tri.eval(x));
            assert_eq!(flat.g1.eval(x), tri.eval(x));
        }
    }
}
