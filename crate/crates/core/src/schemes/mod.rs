//! Frequency-reuse schemes as lists of PDL levels.
//!
//! A scheme with `N` sub-bands has `2N` levels sorted by descending gain.
//! Levels `1..=N` are the serving cell's primary bands and levels
//! `N+1..=2N` its secondary bands. Level `i` shares its sub-band with level
//! `2N + 1 - i`, so the highest primary PDL sits opposite the lowest
//! secondary one. Reuse-1 is the degenerate single-level scheme whose only
//! level is its own partner.

mod coverage;
mod design;
mod registry;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linkmodel::InterferenceProfile;

pub use coverage::{coverage_beta, CoverageRule, DEFAULT_COVERAGE_MARGIN};
pub use design::{design_gamma, efficiency_fraction_at};
pub use registry::{SchemeFactory, SchemeRegistry, SchemeSpec};

const CAP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Primary,
    Secondary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    /// 1-based, in descending gain order.
    pub index: usize,
    /// PDL relative to the maximum PDL.
    pub gain_db: f64,
    pub role: Role,
    /// The level occupying the same sub-band in the opposite role.
    pub partner_index: usize,
    /// Fraction of the total bandwidth.
    pub bandwidth_cap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scheme {
    name: String,
    levels: Vec<Level>,
    sub_band_count: usize,
}

impl Scheme {
    /// Validates `levels` and wraps them into a scheme.
    pub fn from_levels(name: impl Into<String>, levels: Vec<Level>) -> Result<Self> {
        let sub_band_count = validate(&levels)?;
        Ok(Self {
            name: name.into(),
            levels,
            sub_band_count,
        })
    }

    /// Single level at full PDL over the whole band.
    pub fn reuse1() -> Self {
        Self {
            name: "reuse-1".into(),
            levels: vec![Level {
                index: 1,
                gain_db: 0.0,
                role: Role::Primary,
                partner_index: 1,
                bandwidth_cap: 1.0,
            }],
            sub_band_count: 1,
        }
    }

    /// Classic two-level SFR: one third primary at 0 dB, two thirds secondary
    /// at `gamma_db`.
    pub fn sfr2(gamma_db: f64) -> Result<Self> {
        let mut s = Self::mlsfr(1, gamma_db)?;
        s.name = "SFR-2".into();
        Ok(s)
    }

    /// `2N`-level ML-SFR with gains uniformly spaced in dB from 0 down to
    /// `gamma_min_db`.
    pub fn mlsfr(n_subbands: usize, gamma_min_db: f64) -> Result<Self> {
        if n_subbands == 0 {
            return Err(Error::ZeroSubbands);
        }
        check_gain(gamma_min_db)?;
        let count = 2 * n_subbands;
        let step = gamma_min_db / (count - 1) as f64;
        let n = n_subbands as f64;
        let levels = (1..=count)
            .map(|index| {
                let primary = index <= n_subbands;
                Level {
                    index,
                    // pin both ends exactly
                    gain_db: if index == 1 {
                        0.0
                    } else if index == count {
                        gamma_min_db
                    } else {
                        step * (index - 1) as f64
                    },
                    role: if primary {
                        Role::Primary
                    } else {
                        Role::Secondary
                    },
                    partner_index: count + 1 - index,
                    bandwidth_cap: if primary {
                        1.0 / (3.0 * n)
                    } else {
                        2.0 / (3.0 * n)
                    },
                }
            })
            .collect();
        Ok(Self {
            name: format!("SFR-{count}"),
            levels,
            sub_band_count: n_subbands,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn sub_band_count(&self) -> usize {
        self.sub_band_count
    }

    /// Level by 1-based index.
    pub fn level(&self, index: usize) -> Result<&Level> {
        index
            .checked_sub(1)
            .and_then(|i| self.levels.get(i))
            .ok_or(Error::LevelOutOfRange {
                index,
                levels: self.levels.len(),
            })
    }

    pub fn caps(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.bandwidth_cap).collect()
    }

    /// `(h_m, l_m)` gains for each sub-band, highest primary first.
    pub fn subband_gains(&self) -> Vec<(f64, f64)> {
        self.levels
            .iter()
            .filter(|l| l.role == Role::Primary)
            .map(|l| (l.gain_db, self.levels[l.partner_index - 1].gain_db))
            .collect()
    }

    /// Per-sub-band PDL ratio `l_m - h_m` in dB.
    pub fn subband_gammas_db(&self) -> Vec<f64> {
        self.subband_gains().iter().map(|(h, l)| l - h).collect()
    }

    /// Gains seen by a UE served on `level_index`: the first ring transmits
    /// at the partner level's PDL, the second ring at the serving PDL.
    pub fn interference_profile(&self, level_index: usize) -> Result<InterferenceProfile> {
        let level = self.level(level_index)?;
        let partner = self.level(level.partner_index)?;
        InterferenceProfile::new(level.gain_db, partner.gain_db, level.gain_db)
    }
}

impl<'de> Deserialize<'de> for Scheme {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            name: String,
            levels: Vec<Level>,
        }
        let raw = Raw::deserialize(de)?;
        Scheme::from_levels(raw.name, raw.levels).map_err(serde::de::Error::custom)
    }
}

fn check_gain(g: f64) -> Result<()> {
    if g <= 0.0 {
        Ok(())
    } else {
        Err(Error::PositiveGain(g))
    }
}

/// Checks every structural invariant and returns the sub-band count.
fn validate(levels: &[Level]) -> Result<usize> {
    let bad = |msg: String| Err(Error::InvalidScheme(msg));
    if levels.is_empty() {
        return bad("no levels".into());
    }
    let count = levels.len();
    for (pos, l) in levels.iter().enumerate() {
        if l.index != pos + 1 {
            return bad(format!(
                "level at position {} has index {}",
                pos + 1,
                l.index
            ));
        }
        if !l.gain_db.is_finite() {
            return bad(format!("level {} gain is not finite", l.index));
        }
        check_gain(l.gain_db)?;
        if !(l.bandwidth_cap > 0.0 && l.bandwidth_cap <= 1.0) {
            return bad(format!(
                "level {} cap {} outside (0, 1]",
                l.index, l.bandwidth_cap
            ));
        }
        if l.partner_index == 0 || l.partner_index > count {
            return bad(format!(
                "level {} partner {} out of range",
                l.index, l.partner_index
            ));
        }
    }
    if levels[0].gain_db != 0.0 {
        return bad("level 1 gain must be 0 dB".into());
    }
    if levels.windows(2).any(|w| w[1].gain_db > w[0].gain_db) {
        return bad("gains must be non-increasing in level index".into());
    }
    let total: f64 = levels.iter().map(|l| l.bandwidth_cap).sum();
    if (total - 1.0).abs() > CAP_TOLERANCE {
        return bad(format!("bandwidth caps sum to {total}, expected 1"));
    }

    if count == 1 {
        if levels[0].partner_index != 1 {
            return bad("single-level scheme must be its own partner".into());
        }
        return Ok(1);
    }
    if !count.is_multiple_of(2) {
        return bad(format!(
            "{count} levels; multi-level schemes need an even count"
        ));
    }
    let n = count / 2;
    for l in levels {
        let p = &levels[l.partner_index - 1];
        if p.partner_index != l.index {
            return bad(format!(
                "partner relation not an involution at level {}",
                l.index
            ));
        }
        let want = if l.index <= n {
            Role::Primary
        } else {
            Role::Secondary
        };
        if l.role != want {
            return bad(format!("level {} should be {:?}", l.index, want));
        }
        if p.role == l.role {
            return bad(format!("levels {} and {} share a role", l.index, p.index));
        }
    }
    // highest primary with lowest secondary, and so on inward
    for l in &levels[..n] {
        if l.partner_index != count + 1 - l.index {
            return bad(format!(
                "level {} pairs with {}, expected {}",
                l.index,
                l.partner_index,
                count + 1 - l.index
            ));
        }
    }
    Ok(n)
}

/// Whether `l_1 <= ... <= l_N <= h_N <= ... <= h_1` holds.
pub fn ordering_holds(scheme: &Scheme) -> bool {
    let pairs = scheme.subband_gains();
    let lows = pairs.iter().map(|p| p.1);
    let highs = pairs.iter().rev().map(|p| p.0);
    let chain: Vec<f64> = lows.chain(highs).collect();
    chain.windows(2).all(|w| w[0] <= w[1])
}
