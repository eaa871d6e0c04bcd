use num_complex::Complex64;
use num_integer::Integer;

use super::curve::{CurvatureProfile, SampledCurve};
use super::frenet::integrate_unitary_flow;
use super::projection::{su2_from_rotation, su2_matrix};
use super::sphere::{derivative3, frenet_rotation};
use crate::error::{Error, Result};
use crate::linalg::{Mat2, Point3};
use crate::rational::{detect_rational, Rational, RationalDetect};

/// A closed Legendrian lift of a curve on S².
#[derive(Debug, Clone)]
pub struct Lift {
    pub curve: SampledCurve,
    /// Number of periods of the projected curve traversed before the lift closes.
    pub clifford_index: u64,
    /// `+1` when the SU(2) frame lift closes with the projected curve, `−1` otherwise.
    pub frame_sign: i8,
    /// Total curvature of the lift over one projected period, divided by `2π`.
    pub partial_total_curvature: Rational,
}

/// Generator `[[−ik/2, −1], [1, ik/2]]` of the SU(2) lift of the Frenet frame of `η`.
fn spin_generator(k: f64) -> Mat2 {
    let h = Complex64::new(0.0, 0.5 * k);
    Mat2::new(-h, Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0), h)
}

/// Unit-speed Legendrian lift `γ = e^{iα/2} γ̃` of a speed-2 curve `η` on S² whose
/// geodesic curvature is `k_half`.
pub fn legendrian_lift(eta: &[Point3], k_half: &CurvatureProfile, cfg: &RationalDetect) -> Result<Lift> {
    let n = eta.len();
    if n != k_half.len() {
        return Err(Error::InvalidInput(format!("{} points but {} curvature samples", n, k_half.len())));
    }
    let k = k_half.scaled(2.0);
    let tangent = derivative3(eta, k.period, 1);
    let start = su2_matrix(&su2_from_rotation(&frenet_rotation(&eta[0], &tangent[0])));
    let frames = integrate_unitary_flow(&k, start, spin_generator, 1.0 + k.max_abs());

    let ratio = frames[n] * start.adjoint();
    let sign: i8 = if ratio.trace().re >= 0.0 { 1 } else { -1 };
    let closure = (frames[n] - start.scale_real(sign as f64)).max_abs();
    if closure > 1e-6 {
        return Err(Error::Consistency(format!("SU(2) lift misses ±start by {closure:e}")));
    }

    let alpha = k.grid().antiderivative(&k.values);
    let total = k.integral();
    let turn = total / std::f64::consts::TAU;
    let rational = detect_rational(turn, cfg).ok_or_else(|| Error::NotClosed(format!("total curvature / 2pi = {turn} is not rational")))?;
    let delta = if sign > 0 { 0 } else { 1 };
    let twice_q = 2 * rational.q as i64;
    let cl = (twice_q / (rational.p + delta * rational.q as i64).gcd(&twice_q)) as u64;

    let mut samples = Vec::with_capacity(n * cl as usize);
    for p in 0..cl {
        let lap_sign = if sign < 0 && p % 2 == 1 { -1.0 } else { 1.0 };
        for i in 0..n {
            let phase = Complex64::from_polar(lap_sign, 0.5 * (alpha[i] + p as f64 * total));
            samples.push(frames[i].column(0).scale(phase));
        }
    }
    Ok(Lift {
        curve: SampledCurve::new(samples, cl as f64 * k.period)?,
        clifford_index: cl,
        frame_sign: sign,
        partial_total_curvature: rational,
    })
}
