//! Optimal price announcements.
//!
//! Against a single prior the divider maximises the Bayesian payoff. Against
//! a band, the median test picks one of three regimes: best response to
//! `g1` below the smallest median of `g1`, best response to `g0` above the
//! largest median of `g0`, and the full hedge `x/2` in between.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::band::{interval_band, Band, BandFactory};
use crate::dist::{first_true, last_true, Cdf};
use crate::error::{Error, Result};
use crate::payoff::{payoff_with_prob, Utility};
use crate::qc::unimodal_max;

/// Default bracket width for price searches.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    BayesLow,
    Hedge,
    BayesHigh,
    /// Supremum not attained; the price sits just below it.
    ApproxSup,
}

impl Regime {
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::BayesLow => "bayes-low",
            Regime::Hedge => "hedge",
            Regime::BayesHigh => "bayes-high",
            Regime::ApproxSup => "approx-sup",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Regime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Regime> {
        match s {
            "bayes-low" => Ok(Regime::BayesLow),
            "hedge" => Ok(Regime::Hedge),
            "bayes-high" => Ok(Regime::BayesHigh),
            "approx-sup" => Ok(Regime::ApproxSup),
            other => Err(Error::Unsupported(format!("unknown regime tag '{other}'"))),
        }
    }
}

/// Probability that the chooser sells at price `p`. An atom at the top of
/// the support is excluded when the divider values the firm below it, so the
/// payoff stays continuous on the closed search interval.
fn sell_prob(f: &Cdf, p: f64, x_d: f64) -> f64 {
    let (_, hi) = f.support();
    let two_p = 2.0 * p;
    if two_p >= hi && x_d < hi {
        f.left_limit(hi)
    } else {
        f.eval(two_p)
    }
}

fn objective(f: &Cdf, p: f64, x_d: f64, u: Utility) -> f64 {
    payoff_with_prob(p, x_d, sell_prob(f, p, x_d), u)
}

fn objective_slope(f: &Cdf, p: f64, x_d: f64, u: Utility) -> f64 {
    let g = sell_prob(f, p, x_d);
    let dens = f.density(2.0 * p);
    -u.derivative(x_d - p) * g + u.derivative(p) * (1.0 - g) + 2.0 * dens * (u.apply(x_d - p) - u.apply(p))
}

/// Refines a golden-section optimum by bisecting the first-order condition
/// on a small window, when that window avoids every kink and atom.
fn polish(f: &Cdf, p0: f64, x_d: f64, u: Utility) -> f64 {
    let (lo, hi) = f.support();
    let half = 1e-6 * (hi - lo).max(f64::MIN_POSITIVE);
    let (a, b) = ((p0 - half).max(0.5 * lo), (p0 + half).min(0.5 * hi));
    if !(b > a) {
        return p0;
    }
    let blocked = f
        .kinks()
        .iter()
        .chain(f.atoms().iter().map(|at| &at.at))
        .any(|&k| k >= 2.0 * a && k <= 2.0 * b);
    if blocked {
        return p0;
    }
    let (sa, sb) = (objective_slope(f, a, x_d, u), objective_slope(f, b, x_d, u));
    if !(sa > 0.0 && sb < 0.0) {
        return p0;
    }
    let root = first_true(a, b, |p| objective_slope(f, p, x_d, u) <= 0.0);
    let v0 = objective(f, p0, x_d, u);
    let v1 = objective(f, root, x_d, u);
    if v1 >= v0 - 4.0 * f64::EPSILON * v0.abs().max(1.0) {
        root
    } else {
        p0
    }
}

/// Best response to a single prior, searching `2p` over the support.
pub fn bayes_price(x_d: f64, f: &Cdf, u: Utility, tol: f64) -> f64 {
    let (lo, hi) = f.support();
    let peak = unimodal_max(|p| objective(f, p, x_d, u), (0.5 * lo, 0.5 * hi), tol);
    polish(f, peak.location, x_d, u)
}

/// Maxmin-optimal price against a band, classified by the median test.
pub fn knight_price(x_d: f64, band: &Band, u: Utility, tol: f64) -> (f64, Regime) {
    if x_d < band.mu_g1_minus {
        (bayes_price(x_d, &band.g1, u, tol), Regime::BayesLow)
    } else if x_d > band.mu_g0_plus {
        (bayes_price(x_d, &band.g0, u, tol), Regime::BayesHigh)
    } else {
        (0.5 * x_d, Regime::Hedge)
    }
}

/// Optimal announcement when the chooser's value is only known to lie in `[a, b]`.
pub fn interval_price(x_d: f64, a: f64, b: f64, delta: f64) -> (f64, Regime) {
    if x_d < a {
        (0.5 * a - delta, Regime::ApproxSup)
    } else if x_d > b {
        (0.5 * b, Regime::BayesHigh)
    } else {
        (0.5 * x_d, Regime::Hedge)
    }
}

/// [`knight_price`] against the band the factory assigns to `x_d`.
pub fn correlated_price(x_d: f64, factory: &BandFactory, u: Utility, tol: f64) -> Result<(f64, Regime)> {
    let band = factory.build(x_d)?;
    Ok(knight_price(x_d, &band, u, tol))
}

/// Closed-form hedge condition for the correlated triangular band, as
/// usually stated: `sqrt(x/2) - eps <= x` on the lower half and
/// `x <= 1 + eps - sqrt((1-x)/2)` on the upper half.
///
/// The two square roots are the medians of the triangular prior with mode
/// on the opposite half, so this disagrees with the median test near the
/// ends of `[0, 1]`. [`triangular_hedge_exact`] is the condition the solver
/// actually follows.
pub fn triangular_hedge_test(x_d: f64, eps: f64) -> bool {
    let low = x_d <= 0.5 && (x_d / 2.0).sqrt() - eps <= x_d;
    let high = x_d >= 0.5 && x_d <= 1.0 + eps - ((1.0 - x_d) / 2.0).sqrt();
    low || high
}

/// Median of the triangular distribution on `[0, 1]` with mode `c`.
pub fn triangular_median(c: f64) -> f64 {
    if c >= 0.5 {
        (c / 2.0).sqrt()
    } else {
        1.0 - ((1.0 - c) / 2.0).sqrt()
    }
}

/// Median test for the correlated triangular band: hedge iff the divider's
/// value lies within `eps` of the median of its own triangular prior.
pub fn triangular_hedge_exact(x_d: f64, eps: f64) -> bool {
    (x_d - triangular_median(x_d)).abs() <= eps
}

/// How a policy maps valuations to prices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriceRule {
    /// Median test against the factory's band.
    MedianTest,
    /// Full uncertainty on `[a, b]`.
    Interval { a: f64, b: f64, delta: f64 },
}

/// A price announcement function sampled on a valuation grid.
#[derive(Debug, Clone)]
pub struct PricePolicy {
    pub grid: Vec<f64>,
    pub prices: Vec<f64>,
    pub regimes: Vec<Regime>,
    /// First valuation where the lower Bayesian regime ends.
    pub kink_lo: f64,
    /// Last valuation before the upper Bayesian regime starts.
    pub kink_hi: f64,
    pub factory: BandFactory,
    pub rule: PriceRule,
    pub utility: Utility,
    pub tol: f64,
}

impl PricePolicy {
    pub fn support(&self) -> (f64, f64) {
        self.factory.support()
    }

    /// Exact price at any valuation (not just grid points).
    pub fn price_at(&self, x: f64) -> Result<(f64, Regime)> {
        match self.rule {
            PriceRule::MedianTest => correlated_price(x, &self.factory, self.utility, self.tol),
            PriceRule::Interval { a, b, delta } => Ok(interval_price(x, a, b, delta)),
        }
    }

    pub fn price(&self, x: f64) -> Result<f64> {
        self.price_at(x).map(|(p, _)| p)
    }

    pub fn band_at(&self, x: f64) -> Result<std::sync::Arc<Band>> {
        self.factory.build(x)
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// `n` equispaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn evaluate(grid: Vec<f64>, eval: impl Fn(f64) -> Result<(f64, Regime)> + Sync) -> Result<(Vec<f64>, Vec<f64>, Vec<Regime>)> {
    let rows: Vec<(f64, Regime)> = grid.par_iter().map(|&x| eval(x)).collect::<Result<_>>()?;
    let (prices, regimes) = rows.into_iter().unzip();
    Ok((grid, prices, regimes))
}

/// Samples the optimal policy on a uniform grid over the factory's support.
pub fn sweep_policy(factory: &BandFactory, u: Utility, grid_n: usize, tol: f64) -> Result<PricePolicy> {
    if grid_n < 2 {
        return Err(Error::Unsupported("sweep needs at least 2 grid points".into()));
    }
    let (lo, hi) = factory.support();
    let (kink_lo, kink_hi) = match factory.fixed() {
        Some(band) => band.median_bracket(),
        None => {
            let regime = |x: f64| {
                factory.build(x).map(|b| {
                    if x < b.mu_g1_minus {
                        Regime::BayesLow
                    } else if x > b.mu_g0_plus {
                        Regime::BayesHigh
                    } else {
                        Regime::Hedge
                    }
                })
            };
            // surface build errors before the bisections swallow them
            regime(lo)?;
            regime(hi)?;
            let k_lo = first_true(lo, hi, |x| !matches!(regime(x), Ok(Regime::BayesLow)));
            let k_hi = last_true(lo, hi, |x| !matches!(regime(x), Ok(Regime::BayesHigh)));
            (k_lo, k_hi.max(k_lo))
        }
    };
    let (grid, prices, regimes) =
        evaluate(uniform_grid(lo, hi, grid_n), |x| correlated_price(x, factory, u, tol))?;
    Ok(PricePolicy {
        grid,
        prices,
        regimes,
        kink_lo,
        kink_hi,
        factory: factory.clone(),
        rule: PriceRule::MedianTest,
        utility: u,
        tol,
    })
}

/// Samples the interval-band policy on a uniform grid over `support`.
pub fn sweep_interval_policy(a: f64, b: f64, support: (f64, f64), delta: f64, grid_n: usize) -> Result<PricePolicy> {
    if grid_n < 2 {
        return Err(Error::Unsupported("sweep needs at least 2 grid points".into()));
    }
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter { family: "interval band", constraint: "delta > 0".into() });
    }
    let band = interval_band(a, b, support)?;
    let factory = BandFactory::iid(band);
    let (grid, prices, regimes) =
        evaluate(uniform_grid(support.0, support.1, grid_n), |x| Ok(interval_price(x, a, b, delta)))?;
    Ok(PricePolicy {
        grid,
        prices,
        regimes,
        kink_lo: a,
        kink_hi: b,
        factory,
        rule: PriceRule::Interval { a, b, delta },
        utility: Utility::Identity,
        tol: DEFAULT_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::{correlated_triangular_factory, eps_shift_band};
    use crate::dist::{make_cdf, DistFamily};
    use crate::payoff::worst_case_payoff;

    fn uniform() -> Cdf {
        make_cdf(DistFamily::Uniform { a: 0.0, b: 1.0 }).unwrap()
    }

    #[test]
    fn bayes_examples() {
        let f = uniform();
        let id = Utility::Identity;
        assert!((bayes_price(0.5, &f, id, DEFAULT_TOL) - 0.25).abs() < 1e-9);
        assert!((bayes_price(1.0, &f, id, DEFAULT_TOL) - 0.375).abs() < 1e-9);
        assert!((bayes_price(0.0, &f, id, DEFAULT_TOL) - 0.125).abs() < 1e-9);
    }

    #[test]
    fn knight_examples() {
        let band = eps_shift_band(&uniform(), 0.2).unwrap();
        let id = Utility::Identity;
        let (p, r) = knight_price(0.0, &band, id, DEFAULT_TOL);
        assert!((p - 0.075).abs() < 1e-12 && r == Regime::BayesLow);
        assert_eq!(knight_price(0.5, &band, id, DEFAULT_TOL), (0.25, Regime::Hedge));
        let (p, r) = knight_price(1.0, &band, id, DEFAULT_TOL);
        assert!((p - 0.425).abs() < 1e-12 && r == Regime::BayesHigh);
    }

    #[test]
    fn knight_price_beats_its_neighbours() {
        let band = eps_shift_band(&uniform(), 0.2).unwrap();
        let u = Utility::cara(1.5).unwrap();
        for &x in &[0.0, 0.1, 0.25, 0.5, 0.8, 1.0] {
            let (p, _) = knight_price(x, &band, u, DEFAULT_TOL);
            let v = worst_case_payoff(p, x, &band, u);
            for k in 1..=20 {
                let q = (k as f64) / 40.0;
                assert!(worst_case_payoff(q, x, &band, u) <= v + 1e-12, "x={x} q={q}");
            }
        }
    }

    #[test]
    fn interval_rule() {
        assert_eq!(interval_price(0.5, 0.2, 0.7, 1e-6), (0.25, Regime::Hedge));
        assert_eq!(interval_price(0.9, 0.2, 0.7, 1e-6), (0.35, Regime::BayesHigh));
        let (p, r) = interval_price(0.1, 0.2, 0.7, 1e-6);
        assert!((p - 0.099999).abs() < 1e-15 && r == Regime::ApproxSup);
    }

    #[test]
    fn hedge_tests() {
        assert!(triangular_hedge_test(0.125, 0.125));
        assert!(!triangular_hedge_test(0.125, 0.12));
        assert!(triangular_hedge_test(0.5, 0.0));
        assert!(!triangular_hedge_exact(0.125, 0.05));
        assert!(triangular_hedge_exact(0.5, 0.0));
        assert!(!triangular_hedge_exact(0.1, 0.2));
    }

    #[test]
    fn correlated_regimes_follow_the_median_test() {
        let fac = correlated_triangular_factory(0.2).unwrap();
        let id = Utility::Identity;
        for &x in &[0.0, 0.1, 0.2, 0.5, 0.8, 0.9, 1.0] {
            let (_, r) = correlated_price(x, &fac, id, DEFAULT_TOL).unwrap();
            assert_eq!(r == Regime::Hedge, triangular_hedge_exact(x, 0.2), "x={x}");
        }
        let (_, r) = correlated_price(0.125, &correlated_triangular_factory(0.05).unwrap(), id, DEFAULT_TOL).unwrap();
        assert_eq!(r, Regime::BayesLow);
    }

    #[test]
    fn sweep_kinks() {
        let fac = BandFactory::iid(eps_shift_band(&uniform(), 0.2).unwrap());
        let pol = sweep_policy(&fac, Utility::Identity, 101, DEFAULT_TOL).unwrap();
        assert_eq!((pol.kink_lo, pol.kink_hi), (0.3, 0.7));
        assert!(pol.prices.windows(2).all(|w| w[0] <= w[1]));
        let corr = sweep_policy(&correlated_triangular_factory(0.2).unwrap(), Utility::Identity, 21, DEFAULT_TOL).unwrap();
        // hedging holds on |x - median| <= eps
        let lo = first_true(0.0, 0.5, |x| triangular_hedge_exact(x, 0.2));
        assert!((corr.kink_lo - lo).abs() < 1e-9);
        assert!((corr.kink_hi - (1.0 - lo)).abs() < 1e-9);
    }
}
