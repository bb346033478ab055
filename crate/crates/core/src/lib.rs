//! Multi-level soft frequency reuse (ML-SFR) for cellular downlink.
//!
//! The crate is layered bottom-up:
//!
//! - [`hexgrid`]: the 13-cell hexagonal topology and UE-to-site distances.
//! - [`linkmodel`]: path loss, SINR and Shannon spectrum efficiency.
//! - [`schemes`]: reuse-1, SFR-2 and 2N-level ML-SFR schemes, the γ design
//!   rule, coverage radii and a by-name registry of scheme builders.
//! - [`allocator`]: the equal-rate bandwidth LP, the coverage-ordered greedy
//!   allocator and the two-cell interference-pattern analysis.

pub mod allocator;
pub mod error;
pub mod hexgrid;
pub mod linkmodel;
pub mod schemes;

pub use error::{Error, Result};

/// Decibels to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Linear power ratio to decibels.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}
