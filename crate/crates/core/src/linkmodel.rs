//! Downlink link budget: path loss, SINR and Shannon spectrum efficiency.
//!
//! Everything runs in linear power units internally; dB appears only at the
//! API surface. Powers are normalized by the receiver noise power, so the
//! bandwidth cancels and the only budget that matters is `k0 = p0 / N0`.

use serde::{Deserialize, Serialize};

use crate::db_to_linear;
use crate::error::{Error, Result};
use crate::hexgrid::{Distances, NetworkLayout};

/// 50 dBm over a 20 MHz carrier, about 37 dBm/MHz.
pub const DEFAULT_TX_DENSITY_DBM_PER_MHZ: f64 = 37.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkParams {
    /// Receiver noise density N0.
    pub noise_density_dbm_per_hz: f64,
    /// Transmit power density p0 at the maximum PDL.
    pub tx_density_dbm_per_mhz: f64,
    /// Carried for reporting; it cancels out of every ratio.
    pub bandwidth_mhz: f64,
    pub pathloss_intercept_db: f64,
    pub pathloss_slope: f64,
}

impl Default for LinkParams {
    fn default() -> Self {
        Self {
            noise_density_dbm_per_hz: -169.0,
            tx_density_dbm_per_mhz: DEFAULT_TX_DENSITY_DBM_PER_MHZ,
            bandwidth_mhz: 20.0,
            pathloss_intercept_db: 128.1,
            pathloss_slope: 37.6,
        }
    }
}

impl LinkParams {
    /// `p0 / N0` in dB, with p0 converted from dBm/MHz to dBm/Hz.
    pub fn k0_db(&self) -> f64 {
        self.tx_density_dbm_per_mhz - 60.0 - self.noise_density_dbm_per_hz
    }

    pub fn k0(&self) -> f64 {
        db_to_linear(self.k0_db())
    }

    /// `L(d) = a + b·log10(d)` with `d` in km.
    pub fn path_loss_db(&self, d_km: f64) -> Result<f64> {
        if d_km.is_nan() || d_km <= 0.0 {
            return Err(Error::NonPositiveDistance(d_km));
        }
        Ok(self.pathloss_intercept_db + self.pathloss_slope * d_km.log10())
    }

    /// Inverse of the linear path loss, `1 / L(d)`.
    pub fn path_gain(&self, d_km: f64) -> Result<f64> {
        self.path_loss_db(d_km).map(|l| db_to_linear(-l))
    }
}

/// PDL gains applied to the serving site, the first ring and the second ring.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferenceProfile {
    pub serving_gain_db: f64,
    pub ring1_gain_db: f64,
    pub ring2_gain_db: f64,
}

impl InterferenceProfile {
    pub fn new(serving_gain_db: f64, ring1_gain_db: f64, ring2_gain_db: f64) -> Result<Self> {
        for g in [serving_gain_db, ring1_gain_db, ring2_gain_db] {
            // -inf is allowed: a silent band
            if g > 0.0 || g.is_nan() {
                return Err(Error::PositiveGain(g));
            }
        }
        Ok(Self {
            serving_gain_db,
            ring1_gain_db,
            ring2_gain_db,
        })
    }

    /// All sites at full PDL.
    pub fn reuse1() -> Self {
        Self {
            serving_gain_db: 0.0,
            ring1_gain_db: 0.0,
            ring2_gain_db: 0.0,
        }
    }

    /// Serving and co-primary sites at full PDL, first ring at `gamma_db`.
    pub fn soft_reuse(gamma_db: f64) -> Result<Self> {
        Self::new(0.0, gamma_db, 0.0)
    }
}

/// Signal and interference powers, both normalized to the noise power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub signal: f64,
    pub interference: f64,
}

impl LinkBudget {
    pub fn sinr(&self) -> f64 {
        self.signal / (self.interference + 1.0)
    }

    pub fn efficiency(&self) -> f64 {
        (1.0 + self.sinr()).log2()
    }
}

pub fn link_budget(
    params: &LinkParams,
    profile: &InterferenceProfile,
    dists: &Distances,
) -> Result<LinkBudget> {
    let k0 = params.k0();
    let signal = db_to_linear(profile.serving_gain_db) * k0 * params.path_gain(dists[0])?;
    let ring1 = dists[1..=6]
        .iter()
        .map(|&d| params.path_gain(d))
        .sum::<Result<f64>>()?;
    let ring2 = dists[7..]
        .iter()
        .map(|&d| params.path_gain(d))
        .sum::<Result<f64>>()?;
    let interference = k0
        * (db_to_linear(profile.ring1_gain_db) * ring1
            + db_to_linear(profile.ring2_gain_db) * ring2);
    Ok(LinkBudget {
        signal,
        interference,
    })
}

/// Shannon spectrum efficiency (bit/s/Hz) with interference treated as noise.
pub fn spectral_efficiency(
    params: &LinkParams,
    profile: &InterferenceProfile,
    dists: &Distances,
) -> Result<f64> {
    link_budget(params, profile, dists).map(|b| b.efficiency())
}

/// Efficiency at normalized distance `beta0` on the layout's UE line.
pub fn efficiency_at(
    params: &LinkParams,
    layout: &NetworkLayout,
    profile: &InterferenceProfile,
    beta0: f64,
) -> Result<f64> {
    spectral_efficiency(params, profile, &layout.distances(beta0)?)
}

/// η at each first-ring gain in `gamma_grid_db`, serving and second ring at
/// full PDL.
pub fn gamma_sweep(
    params: &LinkParams,
    layout: &NetworkLayout,
    beta0: f64,
    gamma_grid_db: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if gamma_grid_db.is_empty() {
        return Err(Error::Empty("gamma grid"));
    }
    let dists = layout.distances(beta0)?;
    gamma_grid_db
        .iter()
        .map(|&g| {
            let profile = InterferenceProfile::soft_reuse(g)?;
            Ok((g, spectral_efficiency(params, &profile, &dists)?))
        })
        .collect()
}

/// The γ → 0 (linear) limit of [`gamma_sweep`]: first ring silent.
pub fn gamma_plateau(params: &LinkParams, layout: &NetworkLayout, beta0: f64) -> Result<f64> {
    let profile = InterferenceProfile::soft_reuse(f64::NEG_INFINITY)?;
    efficiency_at(params, layout, &profile, beta0)
}
