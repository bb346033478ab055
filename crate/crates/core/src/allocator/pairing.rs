//! Two-cell interference patterns.
//!
//! Two cell-edge UEs in site 0 share two frequencies with two cell-centre UEs
//! in neighbouring site 1. Each UE sits on its own site's line toward the
//! shared vertex A. Every downlink transmission is power-controlled to
//! deliver the cell-edge received power, so a transmission to a UE at `β`
//! costs `L(β·r) / L(r)` of the full PDL. A UE is then hurt only by the
//! co-channel transmission in the other cell, and that interference grows
//! with the other UE's distance from its site.
//!
//! Pairing the most distant edge UE with the nearest centre UE (the
//! assortative pattern) maximizes the worst UE's efficiency.

use serde::{Deserialize, Serialize};

use crate::db_to_linear;
use crate::error::Result;
use crate::hexgrid::{NetworkLayout, Point};
use crate::linkmodel::LinkParams;

const NEIGHBOR: usize = 1;
const TIE_TOLERANCE: f64 = 1e-12;

/// Which centre UE shares a frequency with each edge UE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pattern {
    /// `edge[k]` with `center[k]`.
    Direct,
    /// `edge[k]` with `center[1 - k]`.
    Swapped,
}

impl Pattern {
    fn partner(self, k: usize) -> usize {
        match self {
            Pattern::Direct => k,
            Pattern::Swapped => 1 - k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternEval {
    pub pattern: Pattern,
    pub edge_eta: [f64; 2],
    pub center_eta: [f64; 2],
    pub min_eta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairingComparison {
    pub direct: PatternEval,
    pub swapped: PatternEval,
    /// `None` when both patterns give the same worst-case efficiency.
    pub better: Option<Pattern>,
    /// The pattern pairing the farther edge UE with the nearer centre UE;
    /// `None` when either pair of positions coincides.
    pub assortative: Option<Pattern>,
}

impl PairingComparison {
    pub fn is_tie(&self) -> bool {
        self.better.is_none()
    }
}

/// Compares both frequency pairings of the four UEs.
pub fn evaluate_pairings(
    edge: [f64; 2],
    center: [f64; 2],
    params: &LinkParams,
    layout: &NetworkLayout,
) -> Result<PairingComparison> {
    let r = layout.cell_radius_km;
    let k0 = params.k0();
    let edge_pts = [
        layout.point_toward_vertex(0, edge[0])?,
        layout.point_toward_vertex(0, edge[1])?,
    ];
    let center_pts = [
        layout.point_toward_vertex(NEIGHBOR, center[0])?,
        layout.point_toward_vertex(NEIGHBOR, center[1])?,
    ];
    let serving_site = layout.centers[0];
    let neighbor_site = layout.centers[NEIGHBOR];

    let edge_loss = params.path_loss_db(r)?;
    // received power, normalized to noise, for every power-controlled UE
    let signal = k0 * db_to_linear(-edge_loss);
    let tx_gain =
        |beta: f64| -> Result<f64> { Ok(db_to_linear(params.path_loss_db(beta * r)? - edge_loss)) };
    let victim_eta = |victim: &Point, foreign_site: &Point, interferer_beta: f64| -> Result<f64> {
        let interference =
            k0 * tx_gain(interferer_beta)? * params.path_gain(victim.distance(foreign_site))?;
        Ok((1.0 + signal / (interference + 1.0)).log2())
    };

    let evaluate = |pattern: Pattern| -> Result<PatternEval> {
        let mut edge_eta = [0.0; 2];
        let mut center_eta = [0.0; 2];
        for k in 0..2 {
            let j = pattern.partner(k);
            edge_eta[k] = victim_eta(&edge_pts[k], &neighbor_site, center[j])?;
            center_eta[j] = victim_eta(&center_pts[j], &serving_site, edge[k])?;
        }
        let min_eta = edge_eta
            .iter()
            .chain(center_eta.iter())
            .copied()
            .fold(f64::INFINITY, f64::min);
        Ok(PatternEval {
            pattern,
            edge_eta,
            center_eta,
            min_eta,
        })
    };

    let direct = evaluate(Pattern::Direct)?;
    let swapped = evaluate(Pattern::Swapped)?;
    let scale = direct.min_eta.abs().max(swapped.min_eta.abs()).max(1.0);
    let better = if (direct.min_eta - swapped.min_eta).abs() <= TIE_TOLERANCE * scale {
        None
    } else if direct.min_eta > swapped.min_eta {
        Some(Pattern::Direct)
    } else {
        Some(Pattern::Swapped)
    };
    let assortative = if edge[0] == edge[1] || center[0] == center[1] {
        None
    } else if (edge[0] > edge[1]) == (center[0] < center[1]) {
        Some(Pattern::Direct)
    } else {
        Some(Pattern::Swapped)
    };
    Ok(PairingComparison {
        direct,
        swapped,
        better,
        assortative,
    })
}

/// Chance that a random assignment realizes the best pattern against every
/// one of `neighbor_count` neighbours: `2^-count`.
pub fn optimal_pattern_probability(neighbor_count: u32) -> f64 {
    0.5f64.powi(neighbor_count as i32)
}
