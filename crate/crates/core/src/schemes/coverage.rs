use serde::{Deserialize, Serialize};

use super::Scheme;
use crate::error::{Error, Result};

/// Calibrated so that the SFR-8 bands line up with the equal-rate banding.
pub const DEFAULT_COVERAGE_MARGIN: f64 = 1.45;

/// Maps a band's PDL to the largest normalized distance it may serve.
///
/// The radius follows the equal-received-power contour: a band `g` dB below
/// the maximum reaches `10^(g / slope)` of the cell radius, scaled by
/// `margin` and clipped to the cell edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageRule {
    pub margin: f64,
    pub pathloss_slope: f64,
}

impl Default for CoverageRule {
    fn default() -> Self {
        Self {
            margin: DEFAULT_COVERAGE_MARGIN,
            pathloss_slope: 37.6,
        }
    }
}

impl CoverageRule {
    pub fn new(margin: f64, pathloss_slope: f64) -> Result<Self> {
        if !(margin > 0.0 && margin.is_finite()) {
            return Err(Error::InvalidMargin(margin));
        }
        Ok(Self {
            margin,
            pathloss_slope,
        })
    }

    pub fn beta_max(&self, gain_db: f64) -> f64 {
        (self.margin * 10f64.powf(gain_db / self.pathloss_slope)).min(1.0)
    }
}

/// Coverage radius (fraction of `r`) of one level of `scheme`.
pub fn coverage_beta(scheme: &Scheme, level_index: usize, rule: &CoverageRule) -> Result<f64> {
    Ok(rule.beta_max(scheme.level(level_index)?.gain_db))
}
