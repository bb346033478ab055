//! Choosing the first-ring PDL ratio γ for a target position.

use crate::error::{Error, Result};
use crate::hexgrid::NetworkLayout;
use crate::linkmodel::{efficiency_at, gamma_plateau, InterferenceProfile, LinkParams};

const ETA_TOLERANCE: f64 = 1e-6;

/// η(γ, β0) as a fraction of its γ → 0 (linear) ceiling.
pub fn efficiency_fraction_at(
    params: &LinkParams,
    layout: &NetworkLayout,
    beta0: f64,
    gamma_db: f64,
) -> Result<f64> {
    let profile = InterferenceProfile::soft_reuse(gamma_db)?;
    Ok(efficiency_at(params, layout, &profile, beta0)? / gamma_plateau(params, layout, beta0)?)
}

/// The γ (dB) at which the UE at `beta0` reaches `fraction` of the
/// efficiency it would get with a silent first ring.
///
/// η is strictly decreasing in γ, so the root is bracketed by stepping down
/// from 0 dB and then bisected until η is within 1e-6 of the target.
pub fn design_gamma(
    params: &LinkParams,
    layout: &NetworkLayout,
    beta0: f64,
    fraction: f64,
) -> Result<f64> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::FractionOutOfRange(fraction));
    }
    let eta = |g: f64| efficiency_at(params, layout, &InterferenceProfile::soft_reuse(g)?, beta0);
    let target = fraction * gamma_plateau(params, layout, beta0)?;

    let mut hi = 0.0;
    let eta_hi = eta(hi)?;
    if eta_hi >= target {
        // already at the target with the first ring at full power
        return Ok(hi);
    }
    let mut lo = -10.0;
    while eta(lo)? < target {
        hi = lo;
        lo -= 10.0;
        if lo < -400.0 {
            return Err(Error::FractionOutOfRange(fraction));
        }
    }
    loop {
        let mid = 0.5 * (lo + hi);
        let e = eta(mid)?;
        if (e - target).abs() <= ETA_TOLERANCE || hi - lo < 1e-12 {
            return Ok(mid);
        }
        if e > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}
