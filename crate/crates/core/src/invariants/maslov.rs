use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geom::CurvatureProfile;

pub const INTEGRALITY_TOLERANCE: f64 = 1e-4;

/// `(1/2π) ∫₀^L k ds` by the periodic trapezoid rule.
pub fn total_curvature_turns(k: &CurvatureProfile) -> f64 {
    k.integral() / TAU
}

/// Nearest integer to the total curvature over `2π` together with the rounding residual.
pub fn maslov_with_residual(k: &CurvatureProfile) -> (i64, f64) {
    let t = total_curvature_turns(k);
    let r = t.round();
    (r as i64, (t - r).abs())
}

pub fn maslov_index(k: &CurvatureProfile) -> Result<i64> {
    let value = total_curvature_turns(k);
    let (mu, residual) = maslov_with_residual(k);
    if residual > INTEGRALITY_TOLERANCE {
        return Err(Error::NonIntegral { value, residual });
    }
    Ok(mu)
}
