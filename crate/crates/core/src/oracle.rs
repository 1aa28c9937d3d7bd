//! Brute-force cross-checks that share no search or quadrature code with
//! the solver and welfare modules.

use rayon::prelude::*;

use crate::band::Band;
use crate::error::Result;
use crate::payoff::{worst_case_payoff, Utility};
use crate::solver::{uniform_grid, PricePolicy};

/// Default number of candidate prices.
pub const ORACLE_N: usize = 20_001;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub max_abs_gap: f64,
    pub worst_input: f64,
    pub passed: bool,
    pub samples: usize,
}

/// Best of `n` equispaced prices with `2p` on the band's support.
pub fn grid_argmax_price(x_d: f64, band: &Band, u: Utility, n: usize) -> (f64, f64) {
    let (lo, hi) = band.support();
    let n = n.max(3);
    let mut best = (0.5 * lo, f64::NEG_INFINITY);
    for i in 0..n {
        let p = 0.5 * (lo + (hi - lo) * i as f64 / (n - 1) as f64);
        let v = worst_case_payoff(p, x_d, band, u);
        if v > best.1 {
            best = (p, v);
        }
    }
    best
}

/// Compares the policy's stored prices with the grid oracle at every grid
/// valuation. The gap is the oracle's advantage `max(best - achieved, 0)`:
/// a policy price that beats every grid candidate, as happens for
/// suprema sitting between grid prices, counts as zero gap.
pub fn verify_policy(policy: &PricePolicy, tol: f64, n: usize) -> Result<OracleReport> {
    let u = policy.utility;
    let gaps: Vec<(f64, f64)> = policy
        .grid
        .par_iter()
        .zip(policy.prices.par_iter())
        .map(|(&x, &p)| {
            let band = policy.band_at(x)?;
            let achieved = worst_case_payoff(p, x, &band, u);
            let (_, best) = grid_argmax_price(x, &band, u, n);
            Ok((x, (best - achieved).max(0.0)))
        })
        .collect::<Result<_>>()?;
    let mut worst = (gaps.first().map_or(f64::NAN, |g| g.0), 0.0);
    for &(x, g) in &gaps {
        if g > worst.1 {
            worst = (x, g);
        }
    }
    let (worst_input, max_abs_gap) = worst;
    Ok(OracleReport { max_abs_gap, worst_input, passed: max_abs_gap <= tol, samples: gaps.len() })
}

/// Tabulated policy and band bounds for scanning switch-form beliefs.
///
/// A candidate belief equals `g0` strictly below a node `t_j` and `g1` from
/// `t_j` on. Its expectation is a Stieltjes sum: jumps at nodes are weighted
/// with the payoff at the node and continuous mass in each cell with the
/// payoff at the cell midpoint.
#[derive(Debug, Clone)]
pub struct ChooserScan {
    m_node: Vec<f64>,
    m_mid: Vec<f64>,
    g0: Vec<f64>,
    g0_left: Vec<f64>,
    g1: Vec<f64>,
    g1_left: Vec<f64>,
}

impl ChooserScan {
    pub fn new(policy: &PricePolicy, band: &Band, n: usize) -> Result<ChooserScan> {
        let (lo, hi) = band.support();
        let nodes = uniform_grid(lo, hi, n.max(2));
        let mids: Vec<f64> = nodes.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let m_node = nodes.par_iter().map(|&z| policy.price(z)).collect::<Result<Vec<_>>>()?;
        let m_mid = mids.par_iter().map(|&z| policy.price(z)).collect::<Result<Vec<_>>>()?;
        Ok(ChooserScan {
            m_node,
            m_mid,
            g0: nodes.iter().map(|&t| band.g0.eval(t)).collect(),
            g0_left: nodes.iter().map(|&t| band.g0.left_limit(t)).collect(),
            g1: nodes.iter().map(|&t| band.g1.eval(t)).collect(),
            g1_left: nodes.iter().map(|&t| band.g1.left_limit(t)).collect(),
        })
    }

    /// Smallest expected chooser payoff over all switch nodes, including
    /// the pure `g0` and pure `g1` beliefs.
    pub fn min_expectation(&self, x_c: f64) -> f64 {
        let h = |m: f64| (x_c - m).max(m);
        let last = self.m_node.len() - 1;
        let cell = |g: &[f64], gl: &[f64], k: usize| {
            (gl[k] - g[k - 1]) * h(self.m_mid[k - 1]) + (g[k] - gl[k]) * h(self.m_node[k])
        };
        // prefix[j] = g0 mass on [t_0, t_j] weighted; suffix[j] = g1 mass on (t_{j-1}, t_last]
        let mut prefix = vec![0.0; last + 1];
        prefix[0] = self.g0[0] * h(self.m_node[0]);
        for k in 1..=last {
            prefix[k] = prefix[k - 1] + cell(&self.g0, &self.g0_left, k);
        }
        let mut suffix = vec![0.0; last + 2];
        for k in (1..=last).rev() {
            suffix[k] = suffix[k + 1] + cell(&self.g1, &self.g1_left, k);
        }
        let mut best = prefix[last];
        best = best.min(self.g1[0] * h(self.m_node[0]) + suffix[1]);
        for j in 1..=last {
            let switch_cell = (self.g0_left[j] - self.g0[j - 1]) * h(self.m_mid[j - 1])
                + (self.g1[j] - self.g0_left[j]) * h(self.m_node[j]);
            best = best.min(prefix[j - 1] + switch_cell + suffix[j + 1]);
        }
        best
    }
}

/// Minimum of the chooser's expected payoff over switch-form beliefs on `n` nodes.
pub fn chooser_worst_scan(x_c: f64, policy: &PricePolicy, band: &Band, n: usize) -> Result<f64> {
    Ok(ChooserScan::new(policy, band, n)?.min_expectation(x_c))
}
