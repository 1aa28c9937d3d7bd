//! Optimal price announcements, interim welfare and efficiency regions for
//! the Texas Shoot-Out when the divider's belief about the chooser is a
//! distribution band rather than a single prior.
//!
//! The divider names a price `p`; the chooser either buys the divider's
//! share or sells her own at `p`, selling when indifferent. A divider who
//! maximises the worst case over the band fully hedges (`p = x/2`) on the
//! median bracket of the band and best-responds to one of the band's bounds
//! outside it.

pub mod band;
pub mod cli;
pub mod dist;
pub mod error;
pub mod oracle;
pub mod payoff;
pub mod qc;
pub mod quad;
pub mod solver;
pub mod welfare;

pub use band::{correlated_triangular_factory, eps_shift_band, interval_band, Band, BandFactory, FactoryMode};
pub use dist::{check_shrc, make_cdf, median_bracket, Atom, Cdf, DistFamily, ShrcCondition, ShrcReport, ShrcViolation};
pub use error::{Error, Result};
pub use oracle::{chooser_worst_scan, grid_argmax_price, verify_policy, ChooserScan, OracleReport};
pub use payoff::{bayes_payoff, chooser_decision, maxmin_price, worst_case_payoff, Decision, Utility};
pub use qc::{min_peak, qc_grid_check, unimodal_max, PeakResult, QcReport, QcWitness};
pub use solver::{
    bayes_price, correlated_price, interval_price, knight_price, sweep_interval_policy, sweep_policy,
    triangular_hedge_exact, triangular_hedge_test, triangular_median, PricePolicy, PriceRule, Regime,
};
pub use welfare::{
    chooser_worst_cdf, compare_roles, compare_roles_with, efficiency_region, inefficiency_area, phi_chooser,
    phi_derivatives, phi_divider, EfficiencyRegion, WelfareCurve,
};
