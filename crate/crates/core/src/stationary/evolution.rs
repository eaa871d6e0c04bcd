use num_complex::Complex64;

use super::closure::PhiLoop;
use super::modulus::quartic_from_modulus;
use crate::error::Result;
use crate::geom::SampledCurve;
use crate::linalg::Mat2;
use crate::rational::{detect_rational, RationalDetect};

/// `exp(i(𝔪 − ¼b)t)` with `𝔪 = diag(−λ, λ)`.
pub fn rigid_motion(lambda: f64, b: f64, t: f64) -> Mat2 {
    Mat2::diag(Complex64::from_polar(1.0, (-lambda - 0.25 * b) * t), Complex64::from_polar(1.0, (lambda - 0.25 * b) * t))
}

/// `γ̂(s, t) = exp(i(𝔪 − ¼b)t) γ(s − at)` for a loop in standard position.
pub fn time_evolution(lp: &PhiLoop, t: f64) -> Result<SampledCurve> {
    let q = quartic_from_modulus(&lp.modulus)?;
    Ok(lp.curve.phase_shifted(-q.a * t).transformed(&rigid_motion(q.lambda, q.b, t)))
}

/// Time period `2π ñ n / (h λ)` of a loop with `P = m̃/ñ`, `h = gcd(n, m̃)`, when `P` is rational.
pub fn time_period(lp: &PhiLoop, period_function: f64, detect: &RationalDetect) -> Result<Option<f64>> {
    let q = quartic_from_modulus(&lp.modulus)?;
    let Some(p) = detect_rational(period_function, detect) else {
        return Ok(None);
    };
    let n = u64::from(lp.wave_number);
    let h = num_integer::gcd(n, p.p.unsigned_abs()).max(1);
    Ok(Some(2.0 * std::f64::consts::PI * (p.q * n) as f64 / (h as f64 * q.lambda)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stationary::{snap_to_modular_curve, standard_phi_loop, time_periodicity_function, ClosureConfig, Modulus};

    fn max_dist(a: &SampledCurve, b: &SampledCurve) -> f64 {
        a.samples.iter().zip(&b.samples).map(|(x, y)| (*x - *y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn identity_at_zero() {
        let md = snap_to_modular_curve(&Modulus::symmetric(0.600642, 2.44722).unwrap(), 5.0 / 6.0).unwrap();
        let lp = standard_phi_loop(&md, &ClosureConfig { samples: 256, ..Default::default() }).unwrap();
        assert!(max_dist(&time_evolution(&lp, 0.0).unwrap(), &lp.curve) < 1e-14);
    }

    #[test]
    fn reference_time_period() {
        let md = snap_to_modular_curve(&Modulus::symmetric(3.245612, 10.568031).unwrap(), 5.0 / 6.0).unwrap();
        let lp = standard_phi_loop(&md, &ClosureConfig { samples: 256, ..Default::default() }).unwrap();
        assert_eq!(lp.wave_number, 6);
        let p = time_periodicity_function(&md).unwrap();
        let detect = RationalDetect { max_denominator: 64, tolerance: 1e-5 };
        let period = time_period(&lp, p, &detect).unwrap().unwrap();
        assert!((period - 6.0 * 0.229849).abs() < 1e-4, "{period}");
        let back = time_evolution(&lp, period).unwrap();
        assert!(max_dist(&back, &lp.curve) < 1e-4);
    }

    #[test]
    fn agrees_with_frame_flow() {
        use crate::flow::{z1_frame_evolution, FlowConfig, FlowState};
        let md = snap_to_modular_curve(&Modulus::symmetric(0.600642, 2.44722).unwrap(), 5.0 / 6.0).unwrap();
        let lp = standard_phi_loop(&md, &ClosureConfig { samples: 64, ..Default::default() }).unwrap();
        let t = 0.2;
        let state = FlowState::with_frame(lp.profile.clone(), lp.frame0);
        let evo = z1_frame_evolution(&state, t, &FlowConfig::default()).unwrap();
        let exact = time_evolution(&lp, t).unwrap();
        let err = max_dist(&evo.curve, &exact);
        assert!(err < 1e-5, "{err}");
    }
}
