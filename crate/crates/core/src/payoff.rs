//! Utilities, the chooser's best response, and the divider's payoffs.

use crate::band::Band;
use crate::dist::Cdf;
use crate::error::{Error, Result};

/// Strictly increasing, concave utility of money.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Utility {
    Identity,
    /// `u(w) = (1 - exp(-rho w)) / rho`
    Cara { rho: f64 },
}

impl Utility {
    pub fn cara(rho: f64) -> Result<Utility> {
        if rho > 0.0 && rho.is_finite() {
            Ok(Utility::Cara { rho })
        } else {
            Err(Error::InvalidParameter { family: "cara", constraint: "rho > 0".into() })
        }
    }

    pub fn apply(&self, w: f64) -> f64 {
        match *self {
            Utility::Identity => w,
            Utility::Cara { rho } => -(-rho * w).exp_m1() / rho,
        }
    }

    pub fn derivative(&self, w: f64) -> f64 {
        match *self {
            Utility::Identity => 1.0,
            Utility::Cara { rho } => (-rho * w).exp(),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Utility::Identity)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Utility::Identity => "identity",
            Utility::Cara { .. } => "cara",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Sell,
    Buy,
}

/// The chooser sells when indifferent.
pub fn chooser_decision(x_c: f64, p: f64) -> Decision {
    if x_c <= 2.0 * p {
        Decision::Sell
    } else {
        Decision::Buy
    }
}

/// Expected utility of announcing `p` when the chooser's value is drawn from `f`.
pub fn bayes_payoff(p: f64, x_d: f64, f: &Cdf, u: Utility) -> f64 {
    payoff_with_prob(p, x_d, f.eval(2.0 * p), u)
}

pub(crate) fn payoff_with_prob(p: f64, x_d: f64, sell_prob: f64, u: Utility) -> f64 {
    u.apply(x_d - p) * sell_prob + u.apply(p) * (1.0 - sell_prob)
}

/// Worst case over the band: only its two bounds matter.
pub fn worst_case_payoff(p: f64, x_d: f64, band: &Band, u: Utility) -> f64 {
    let two_p = 2.0 * p;
    if two_p < x_d {
        bayes_payoff(p, x_d, band.g0(), u)
    } else if two_p > x_d {
        bayes_payoff(p, x_d, band.g1(), u)
    } else {
        u.apply(0.5 * x_d)
    }
}

/// Price that makes the divider indifferent to the chooser's action.
pub fn maxmin_price(x_d: f64) -> f64 {
    0.5 * x_d
}
