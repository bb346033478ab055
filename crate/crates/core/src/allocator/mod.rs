//! Bandwidth allocation on top of a reuse scheme.
//!
//! - [`equal_rate`]: the LP that maximizes a common per-circle rate subject to
//!   the scheme's bandwidth caps, behind the [`EqualRateSolver`] trait.
//! - [`greedy`]: first-fit allocation that tries the smallest-coverage band
//!   first.
//! - [`pairing`]: the two-cell interference-pattern comparison.

pub mod equal_rate;
pub mod greedy;
pub mod pairing;
pub mod simplex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::NetworkLayout;
use crate::linkmodel::{spectral_efficiency, LinkParams};
use crate::schemes::Scheme;

pub use equal_rate::{
    solve_equal_rate, CoverageConstrainedSimplex, DenseSimplex, EqualRateSolver, SolverRegistry,
};
pub use greedy::{greedy_allocate, DenialReason, GreedyOutcome, UeAssignment, UeRequest};
pub use pairing::{evaluate_pairings, optimal_pattern_probability, PairingComparison, Pattern};

/// Eight circles at `β0 = i/8`.
pub fn default_circles() -> Vec<f64> {
    (1..=8).map(|i| f64::from(i) / 8.0).collect()
}

/// Spectrum efficiency per (level, circle).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyMatrix {
    pub circles: Vec<f64>,
    /// `eta[level][circle]`, bit/s/Hz.
    pub eta: Vec<Vec<f64>>,
}

impl EfficiencyMatrix {
    pub fn new(circles: Vec<f64>, eta: Vec<Vec<f64>>) -> Result<Self> {
        let m = Self { circles, eta };
        m.validate()?;
        Ok(m)
    }

    pub fn levels(&self) -> usize {
        self.eta.len()
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    fn validate(&self) -> Result<()> {
        if self.circles.is_empty() {
            return Err(Error::Empty("circle list"));
        }
        if self.eta.is_empty() {
            return Err(Error::Empty("efficiency matrix"));
        }
        for row in &self.eta {
            if row.len() != self.circles.len() {
                return Err(Error::ShapeMismatch {
                    rows: self.eta.len(),
                    cols: row.len(),
                    levels: self.eta.len(),
                });
            }
        }
        for i in 0..self.circles.len() {
            let usable = self
                .eta
                .iter()
                .any(|row| row[i] > 0.0 && row[i].is_finite());
            if !usable {
                return Err(Error::Infeasible(i));
            }
        }
        Ok(())
    }
}

/// η of every level of `scheme` at every circle.
pub fn efficiency_matrix(
    params: &LinkParams,
    layout: &NetworkLayout,
    scheme: &Scheme,
    circles: &[f64],
) -> Result<EfficiencyMatrix> {
    let dists = circles
        .iter()
        .map(|&b| layout.distances(b))
        .collect::<Result<Vec<_>>>()?;
    let eta = scheme
        .levels()
        .iter()
        .map(|level| {
            let profile = scheme.interference_profile(level.index)?;
            dists
                .iter()
                .map(|d| spectral_efficiency(params, &profile, d))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    EfficiencyMatrix::new(circles.to_vec(), eta)
}

/// Bandwidth fractions meeting one common rate on every circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AllocationResult {
    /// `x[level][circle]`, fraction of the total bandwidth.
    pub x: Vec<Vec<f64>>,
    /// Per-circle rate, bit/s/Hz of total bandwidth.
    pub common_rate: f64,
    /// `circles · common_rate`.
    pub overall_efficiency: f64,
    /// Whether each level uses its whole cap.
    pub binding: Vec<bool>,
}

impl AllocationResult {
    pub fn level_totals(&self) -> Vec<f64> {
        self.x.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn circle_totals(&self) -> Vec<f64> {
        let m = self.x.first().map_or(0, Vec::len);
        (0..m)
            .map(|i| self.x.iter().map(|row| row[i]).sum())
            .collect()
    }

    /// Rate delivered on each circle.
    pub fn circle_rates(&self, eff: &EfficiencyMatrix) -> Vec<f64> {
        (0..eff.circle_count())
            .map(|i| {
                self.x
                    .iter()
                    .zip(&eff.eta)
                    .map(|(xr, er)| xr[i] * er[i])
                    .sum()
            })
            .collect()
    }

    /// Largest violation of the cap, rate and sign constraints.
    pub fn max_residual(&self, caps: &[f64], eff: &EfficiencyMatrix) -> f64 {
        let cap_excess = self
            .level_totals()
            .iter()
            .zip(caps)
            .map(|(t, c)| (t - c).max(0.0))
            .fold(0.0, f64::max);
        let rate_gap = self
            .circle_rates(eff)
            .iter()
            .map(|r| (r - self.common_rate).abs())
            .fold(0.0, f64::max);
        let negative = self
            .x
            .iter()
            .flatten()
            .map(|&v| (-v).max(0.0))
            .fold(0.0, f64::max);
        cap_excess.max(rate_gap).max(negative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reuse1_edge_entry() {
        let m = efficiency_matrix(
            &LinkParams::default(),
            &NetworkLayout::new(1.0).unwrap(),
            &Scheme::reuse1(),
            &default_circles(),
        )
        .unwrap();
        assert_eq!(m.levels(), 1);
        assert!((m.eta[0][7] - 0.51).abs() <= 0.02);
    }

    #[test]
    fn sfr8_innermost_level() {
        let m = efficiency_matrix(
            &LinkParams::default(),
            &NetworkLayout::new(1.0).unwrap(),
            &Scheme::mlsfr(4, -17.0).unwrap(),
            &default_circles(),
        )
        .unwrap();
        // 0.271 / 0.0452 from the published allocation
        assert!((m.eta[7][0] - 6.0).abs() < 0.1, "{}", m.eta[7][0]);
    }

    #[test]
    fn duplicate_circles_duplicate_columns() {
        let m = efficiency_matrix(
            &LinkParams::default(),
            &NetworkLayout::new(1.0).unwrap(),
            &Scheme::sfr2(-6.0).unwrap(),
            &[0.5, 0.5, 0.75],
        )
        .unwrap();
        for row in &m.eta {
            assert_eq!(row[0], row[1]);
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        assert_eq!(
            EfficiencyMatrix::new(vec![], vec![vec![]]),
            Err(Error::Empty("circle list"))
        );
        assert!(EfficiencyMatrix::new(vec![0.5], vec![vec![1.0, 2.0]]).is_err());
        assert_eq!(
            EfficiencyMatrix::new(vec![0.5, 1.0], vec![vec![1.0, 0.0]]),
            Err(Error::Infeasible(1))
        );
        let layout = NetworkLayout::new(1.0).unwrap();
        assert!(
            efficiency_matrix(&LinkParams::default(), &layout, &Scheme::reuse1(), &[0.0]).is_err()
        );
    }
}
