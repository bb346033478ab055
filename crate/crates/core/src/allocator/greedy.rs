//! Coverage-ordered first-fit allocation.
//!
//! Each UE reports its position. The bands covering it are listed by
//! ascending coverage radius and the UE takes the first band with enough
//! capacity left. Serving UEs from the tightest band first keeps the
//! wide-coverage bands free for the UEs only they can reach.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::check_beta;
use crate::schemes::{CoverageRule, Scheme};

const CAPACITY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UeRequest {
    pub beta0: f64,
    /// Bandwidth fraction wanted.
    pub demand: f64,
}

impl UeRequest {
    pub fn new(beta0: f64, demand: f64) -> Self {
        Self { beta0, demand }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DenialReason {
    #[serde(rename = "out of coverage")]
    OutOfCoverage,
    #[serde(rename = "insufficient resources")]
    InsufficientResources,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UeAssignment {
    pub ue: usize,
    pub beta0: f64,
    pub demand: f64,
    /// Covering levels, smallest coverage first.
    pub band_list: Vec<usize>,
    pub level: Option<usize>,
    pub denial: Option<DenialReason>,
}

impl UeAssignment {
    pub fn satisfied(&self) -> bool {
        self.level.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyOutcome {
    pub assignments: Vec<UeAssignment>,
    /// Capacity left on each level after all requests.
    pub remaining: Vec<f64>,
}

/// First-fit over every level of `scheme`, in request order.
pub fn greedy_allocate(
    requests: &[UeRequest],
    scheme: &Scheme,
    rule: &CoverageRule,
) -> Result<GreedyOutcome> {
    let all: Vec<usize> = (1..=scheme.len()).collect();
    greedy_allocate_among(requests, scheme, rule, &all)
}

/// First-fit restricted to the 1-based `levels` of `scheme`.
pub fn greedy_allocate_among(
    requests: &[UeRequest],
    scheme: &Scheme,
    rule: &CoverageRule,
    levels: &[usize],
) -> Result<GreedyOutcome> {
    for r in requests {
        check_beta(r.beta0)?;
        if !(r.demand > 0.0 && r.demand.is_finite()) {
            return Err(Error::InvalidDemand(r.demand));
        }
    }
    let mut reach = Vec::with_capacity(levels.len());
    for &idx in levels {
        let level = scheme.level(idx)?;
        reach.push((idx, rule.beta_max(level.gain_db), level.gain_db));
    }
    // smallest coverage first; equal coverage, lower PDL first
    reach.sort_by(|a, b| {
        a.1.total_cmp(&b.1)
            .then(a.2.total_cmp(&b.2))
            .then(a.0.cmp(&b.0))
    });

    let mut remaining = scheme.caps();
    let mut assignments = Vec::with_capacity(requests.len());
    for (ue, req) in requests.iter().enumerate() {
        let band_list: Vec<usize> = reach
            .iter()
            .filter(|(_, cov, _)| *cov >= req.beta0)
            .map(|(idx, _, _)| *idx)
            .collect();
        let level = band_list
            .iter()
            .copied()
            .find(|&idx| remaining[idx - 1] + CAPACITY_SLACK >= req.demand);
        let denial = match (level, band_list.is_empty()) {
            (Some(idx), _) => {
                remaining[idx - 1] = (remaining[idx - 1] - req.demand).max(0.0);
                None
            }
            (None, true) => Some(DenialReason::OutOfCoverage),
            (None, false) => Some(DenialReason::InsufficientResources),
        };
        assignments.push(UeAssignment {
            ue,
            beta0: req.beta0,
            demand: req.demand,
            band_list,
            level,
            denial,
        });
    }
    Ok(GreedyOutcome {
        assignments,
        remaining,
    })
}
