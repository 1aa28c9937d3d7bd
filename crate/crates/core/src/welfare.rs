//! Interim worst-case welfare of both roles for risk-neutral partners.
//!
//! `phi_divider(x)` is the divider's worst-case payoff at the optimal price.
//! `phi_chooser(x)` minimises the chooser's expected payoff
//! `E_G[max(x - m(z), m(z))]` over the band, where `z` is the divider's
//! value and `m` the divider's policy. The minimiser puts `g0` below the
//! valuation `z*` at which `2 m(z*) = x`, and `g1` from there on.

use std::cell::RefCell;

use rayon::prelude::*;

use crate::band::Band;
use crate::dist::{first_true, last_true, Cdf};
use crate::error::{Error, Result};
use crate::payoff::{worst_case_payoff, Utility};
use crate::quad::expectation;
use crate::solver::{knight_price, uniform_grid, PricePolicy, PriceRule, Regime};

/// Default absolute tolerance for welfare quadrature.
pub const DEFAULT_QUAD_TOL: f64 = 1e-8;

/// Distance from a regime boundary at which derivatives are refused.
pub const KINK_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct WelfareCurve {
    pub grid: Vec<f64>,
    pub phi_d: Vec<f64>,
    pub phi_c: Vec<f64>,
    /// `[beta_pt, alpha]` when non-empty: both roles get exactly `x/2` there.
    pub equality_band: Option<(f64, f64)>,
    pub eps_label: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyRegion {
    pub x_d: f64,
    /// Chooser valuations for which the partner who values the firm less ends up with it.
    pub bad_interval: Option<(f64, f64)>,
}

fn require_identity(u: Utility) -> Result<()> {
    if u.is_identity() {
        Ok(())
    } else {
        Err(Error::UnsupportedUtility(format!(
            "welfare is only defined for risk-neutral partners, got {}",
            u.tag()
        )))
    }
}

fn require_welfare_policy(policy: &PricePolicy) -> Result<()> {
    require_identity(policy.utility)?;
    if policy.rule != PriceRule::MedianTest || policy.factory.fixed().is_none() {
        return Err(Error::Unsupported(
            "welfare needs a policy built from a single band shared by all valuations".into(),
        ));
    }
    Ok(())
}

/// Divider's worst-case payoff at the optimal announcement.
pub fn phi_divider(x: f64, band: &Band, tol: f64) -> f64 {
    let (p, _) = knight_price(x, band, Utility::Identity, tol);
    worst_case_payoff(p, x, band, Utility::Identity)
}

/// Switch valuation `z*` with `2 m(z*) = x_c`, or the midpoint of the
/// preimage when `m` is flat there.
pub fn switch_point(x_c: f64, policy: &PricePolicy) -> Result<f64> {
    let (lo, hi) = policy.support();
    // surface pricing errors once; the bisections below then cannot fail
    policy.price(lo)?;
    let two_m = |z: f64| 2.0 * policy.price(z).unwrap_or(f64::NAN);
    let z_lo = first_true(lo, hi, |z| two_m(z) >= x_c);
    let z_hi = last_true(lo, hi, |z| two_m(z) <= x_c);
    Ok(if z_hi >= z_lo { 0.5 * (z_lo + z_hi) } else { z_lo })
}

/// Where the chooser's worst case is an outer case or a switch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChooserCase {
    /// `x_c < 2 m(x_l)`: the chooser always sells; worst case `g1`.
    AlwaysSell,
    /// `x_c > 2 m(x_h)`: the chooser always buys; worst case `g0`.
    AlwaysBuy,
    Switch(f64),
}

pub fn chooser_case(x_c: f64, policy: &PricePolicy) -> Result<ChooserCase> {
    let (lo, hi) = policy.support();
    if x_c < 2.0 * policy.price(lo)? {
        Ok(ChooserCase::AlwaysSell)
    } else if x_c > 2.0 * policy.price(hi)? {
        Ok(ChooserCase::AlwaysBuy)
    } else {
        Ok(ChooserCase::Switch(switch_point(x_c, policy)?))
    }
}

/// The chooser's worst-case belief about the divider's valuation.
pub fn chooser_worst_cdf(x_c: f64, policy: &PricePolicy, band: &Band) -> Result<Cdf> {
    require_welfare_policy(policy)?;
    Ok(match chooser_case(x_c, policy)? {
        ChooserCase::AlwaysSell => band.g1.clone(),
        ChooserCase::AlwaysBuy => band.g0.clone(),
        ChooserCase::Switch(z) => Cdf::spliced(&band.g0, &band.g1, z),
    })
}

/// Chooser's payoff when the divider with valuation `z` announces `m(z)`.
fn chooser_payoff(x_c: f64, m: f64) -> f64 {
    (x_c - m).max(m)
}

/// Chooser's interim worst-case expected payoff.
pub fn phi_chooser(x_c: f64, policy: &PricePolicy, band: &Band, quad_tol: f64) -> Result<f64> {
    let worst = chooser_worst_cdf(x_c, policy, band)?;
    let mut breaks = vec![policy.kink_lo, policy.kink_hi, band.alpha, band.beta_pt];
    if let ChooserCase::Switch(z) = chooser_case(x_c, policy)? {
        breaks.push(z);
    }
    let failure = RefCell::new(None);
    let h = |z: f64| match policy.price(z) {
        Ok(m) => chooser_payoff(x_c, m),
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let v = expectation(&worst, &h, &breaks, quad_tol)?;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// `(dΦ_D/dx, dΦ_C/dx)` away from regime boundaries.
pub fn phi_derivatives(x: f64, policy: &PricePolicy, band: &Band) -> Result<(f64, f64)> {
    require_welfare_policy(policy)?;
    let (lo, hi) = policy.support();
    let two_m_lo = 2.0 * policy.price(lo)?;
    let two_m_hi = 2.0 * policy.price(hi)?;
    for boundary in [band.mu_g1_minus, band.mu_g0_plus, two_m_lo, two_m_hi] {
        if (x - boundary).abs() <= KINK_GUARD {
            return Err(Error::Kink { x, boundary });
        }
    }
    let (p, regime) = policy.price_at(x)?;
    let d_phi_d = match regime {
        Regime::BayesLow => band.g1.eval(2.0 * p),
        Regime::BayesHigh => band.g0.eval(2.0 * p),
        _ => 0.5,
    };
    let d_phi_c = if x < two_m_lo {
        0.0
    } else if x > two_m_hi {
        1.0
    } else {
        let z = switch_point(x, policy)?;
        0.5 * (band.g1.eval(z) + band.g0.eval(z))
    };
    Ok((d_phi_d, d_phi_c))
}

fn equality_band(band: &Band) -> Option<(f64, f64)> {
    (band.beta_pt <= band.alpha).then_some((band.beta_pt, band.alpha))
}

/// Both welfare curves on a uniform grid, with the default quadrature tolerance.
pub fn compare_roles(band: &Band, policy: &PricePolicy, grid_n: usize) -> Result<WelfareCurve> {
    compare_roles_with(band, policy, grid_n, DEFAULT_QUAD_TOL)
}

pub fn compare_roles_with(band: &Band, policy: &PricePolicy, grid_n: usize, quad_tol: f64) -> Result<WelfareCurve> {
    require_welfare_policy(policy)?;
    let (lo, hi) = policy.support();
    let grid = uniform_grid(lo, hi, grid_n.max(2));
    let rows: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&x| Ok((phi_divider(x, band, policy.tol), phi_chooser(x, policy, band, quad_tol)?)))
        .collect::<Result<_>>()?;
    let (phi_d, phi_c) = rows.into_iter().unzip();
    Ok(WelfareCurve {
        grid,
        phi_d,
        phi_c,
        equality_band: equality_band(band),
        eps_label: band.label.clone(),
    })
}

/// Chooser valuations that lead to an inefficient allocation.
pub fn efficiency_region(x_d: f64, policy: &PricePolicy) -> Result<EfficiencyRegion> {
    let (p, regime) = policy.price_at(x_d)?;
    let two_m = 2.0 * p;
    let bad_interval = match regime {
        Regime::Hedge => None,
        Regime::BayesLow | Regime::ApproxSup => Some((x_d, two_m)),
        Regime::BayesHigh => Some((two_m, x_d)),
    };
    Ok(EfficiencyRegion { x_d, bad_interval })
}

/// Trapezoidal integral of the bad-interval length over the divider's valuation.
pub fn inefficiency_area(policy: &PricePolicy, grid_n: usize) -> Result<f64> {
    let (lo, hi) = policy.support();
    let grid = uniform_grid(lo, hi, grid_n.max(2));
    let lengths: Vec<f64> = grid
        .par_iter()
        .map(|&x| {
            efficiency_region(x, policy).map(|r| r.bad_interval.map_or(0.0, |(a, b)| (b - a).max(0.0)))
        })
        .collect::<Result<_>>()?;
    let h = (hi - lo) / (grid.len() - 1) as f64;
    Ok(lengths.windows(2).map(|w| 0.5 * h * (w[0] + w[1])).sum())
}
