//! Scenario files: a flat JSON object whose keys are all optional.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use mlsfr_core::allocator::{default_circles, UeRequest};
use mlsfr_core::hexgrid::NetworkLayout;
use mlsfr_core::linkmodel::{LinkParams, DEFAULT_TX_DENSITY_DBM_PER_MHZ};
use mlsfr_core::schemes::{CoverageRule, SchemeSpec, DEFAULT_COVERAGE_MARGIN};

/// A (position, efficiency fraction) pair for the γ design rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignAnchor {
    pub beta0: f64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scenario {
    pub noise_density_dbm_per_hz: f64,
    pub tx_density_dbm_per_mhz: f64,
    pub bandwidth_mhz: f64,
    pub pathloss_intercept_db: f64,
    pub pathloss_slope: f64,
    pub cell_radius_km: f64,

    /// Schemes compared by `fig6` and `table4`.
    pub schemes: Vec<SchemeSpec>,
    /// Normalized radii of the equally loaded UE circles.
    pub circles: Vec<f64>,
    /// Equal-rate solver name.
    pub solver: String,
    pub coverage_margin: f64,

    pub design_anchors: Vec<DesignAnchor>,
    pub design_subbands: usize,
    /// Grid the first anchor's γ is rounded to before building the scheme;
    /// 0 keeps it exact.
    pub design_round_db: f64,

    pub fig5_beta0_squared: Vec<f64>,
    pub fig5_gamma_min_db: f64,
    pub fig5_gamma_step_db: f64,
    pub fig6_beta_step: f64,

    pub alloc_scheme: SchemeSpec,
    pub requests: Vec<UeRequest>,

    /// Edge-cell UE positions and centre-cell UE positions.
    pub pairing_edge: [f64; 2],
    pub pairing_center: [f64; 2],
    pub pairing_neighbors: Vec<u32>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl Default for Scenario {
    fn default() -> Self {
        let link = LinkParams::default();
        Self {
            noise_density_dbm_per_hz: link.noise_density_dbm_per_hz,
            tx_density_dbm_per_mhz: DEFAULT_TX_DENSITY_DBM_PER_MHZ,
            bandwidth_mhz: link.bandwidth_mhz,
            pathloss_intercept_db: link.pathloss_intercept_db,
            pathloss_slope: link.pathloss_slope,
            cell_radius_km: 1.0,
            schemes: vec![
                SchemeSpec::reuse1(),
                SchemeSpec::sfr2(-6.0),
                SchemeSpec::mlsfr(4, -17.0),
            ],
            circles: default_circles(),
            solver: "simplex".into(),
            coverage_margin: DEFAULT_COVERAGE_MARGIN,
            design_anchors: vec![DesignAnchor {
                beta0: 1.0,
                fraction: 0.90,
            }],
            design_subbands: 4,
            design_round_db: 0.5,
            fig5_beta0_squared: vec![0.25, 0.5, 0.75, 1.0],
            fig5_gamma_min_db: -30.0,
            fig5_gamma_step_db: 0.25,
            fig6_beta_step: 0.05,
            alloc_scheme: SchemeSpec::mlsfr(4, -17.0),
            requests: (1..=8)
                .map(|i| UeRequest::new(f64::from(i) / 8.0, 0.05))
                .collect(),
            pairing_edge: [0.7, 0.95],
            pairing_center: [0.2, 0.45],
            pairing_neighbors: vec![1, 6],
            out: None,
        }
    }
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading scenario {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("parsing scenario {}", path.display()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn link_params(&self) -> LinkParams {
        LinkParams {
            noise_density_dbm_per_hz: self.noise_density_dbm_per_hz,
            tx_density_dbm_per_mhz: self.tx_density_dbm_per_mhz,
            bandwidth_mhz: self.bandwidth_mhz,
            pathloss_intercept_db: self.pathloss_intercept_db,
            pathloss_slope: self.pathloss_slope,
        }
    }

    pub fn layout(&self) -> Result<NetworkLayout> {
        Ok(NetworkLayout::new(self.cell_radius_km)?)
    }

    pub fn coverage_rule(&self) -> Result<CoverageRule> {
        Ok(CoverageRule::new(
            self.coverage_margin,
            self.pathloss_slope,
        )?)
    }
}
