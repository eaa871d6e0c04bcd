use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::modulus::{quartic_from_modulus, Modulus};
use super::profile::{curvature_profile, hamiltonian};
use super::quadrature::{diagonalizing_frame, is_exceptional, lambda_density};
use crate::ellip::{complete_k, complete_pi, EllipticParameter};
use crate::error::{Error, Result};
use crate::geom::{frenet_frames, CurvatureProfile, Frame, SampledCurve};
use crate::linalg::{ComplexPair, Mat2};
use crate::rational::{detect_rational, Rational, RationalDetect};

/// Upper end of the exceptional branch (`K(e1²/16)` needs `e1 < 4`).
pub const EXCEPTIONAL_BRANCH_LIMIT: f64 = 4.0 - 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosureConfig {
    pub detect: RationalDetect,
    /// Nodes per wavelength.
    pub samples: usize,
    pub max_wave_number: u32,
    pub order_tolerance: f64,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        Self { detect: RationalDetect::default(), samples: 1024, max_wave_number: 128, order_tolerance: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureReport {
    pub modulus: Modulus,
    pub phi1: f64,
    pub phi2: f64,
    pub phi2_regularized: f64,
    pub exceptional: bool,
    pub rational_pair: Option<(Rational, Rational)>,
    pub closed: bool,
    pub wave_number: Option<u32>,
    pub monodromy: Mat2,
}

fn symmetric_parts(modulus: &Modulus) -> Result<(f64, f64)> {
    match *modulus {
        Modulus::SymmetricCnoidal { e1, e3 } => Ok((e1, e3)),
        _ => Err(Error::InvalidModulus("a symmetric modulus is required".into())),
    }
}

/// `Φ₂` of a symmetric modulus in closed form; the exceptional branch is used on `|β| = 4`.
pub fn phi2_closed_form(modulus: &Modulus) -> Result<f64> {
    let (e1, e3) = symmetric_parts(modulus)?;
    if is_exceptional(modulus)? {
        return Ok(e1 / (4.0 * PI) * complete_k(EllipticParameter::new(e1 * e1 / 16.0)?));
    }
    let q = quartic_from_modulus(modulus)?;
    let r2 = e1 * e1 + e3 * e3;
    let m = q.parameter();
    let d = r2 - 16.0;
    let pi3 = complete_pi(-64.0 * e1 * e1 / (d * d), m)?;
    Ok(q.lambda / (2.0 * PI * r2.sqrt()) * (complete_k(m) - (r2 + 16.0) / d * pi3))
}

/// Shift taking `Φ₂` to the regularized `Φ̃₂`: `0`, `½` or `1` for `|β| <, =, > 4`.
pub fn regularization_shift(modulus: &Modulus) -> Result<f64> {
    if !modulus.is_symmetric() {
        return Ok(0.0);
    }
    Ok(if is_exceptional(modulus)? {
        0.5
    } else if modulus.norm() > 4.0 {
        1.0
    } else {
        0.0
    })
}

/// `Φ̃₂` of a symmetric modulus.
pub fn phi2_regularized(modulus: &Modulus) -> Result<f64> {
    Ok(phi2_closed_form(modulus)? + regularization_shift(modulus)?)
}

/// `Φ̃₂` at `(e1, e3)` for `e1 ≥ 0`, continued to the axis `e1 = 0`.
pub fn phi2_regularized_at(e1: f64, e3: f64) -> Result<f64> {
    if e1 == 0.0 && e3 > 0.0 {
        return Ok(if e3 < 4.0 { 2.0 / e3 } else { 1.0 - 2.0 / e3 });
    }
    phi2_regularized(&Modulus::symmetric(e1, e3)?)
}

/// `(1/2π)∫₀^ω Λ ds` by spectral quadrature.
pub fn phi2_by_quadrature(modulus: &Modulus, samples: usize) -> Result<f64> {
    let q = quartic_from_modulus(modulus)?;
    let k = curvature_profile(modulus, samples)?;
    let lam: Vec<f64> = k.values.iter().map(|v| lambda_density(&q, *v)).collect();
    Ok(k.grid().integral(&lam) / (2.0 * PI))
}

/// Frame at `s = 0` in which the momentum is `diag(−λ, λ)`.
///
/// Symmetric moduli use `(U, U*)/‖U‖` with `U = (−4i(2e1+λ), |β|²−16)`.
pub fn standard_frame(modulus: &Modulus) -> Result<Frame> {
    let q = quartic_from_modulus(modulus)?;
    if let Modulus::SymmetricCnoidal { e1, e3 } = *modulus {
        let u = ComplexPair::new(Complex64::new(0.0, -4.0 * (2.0 * e1 + q.lambda)), Complex64::new(e1 * e1 + e3 * e3 - 16.0, 0.0));
        let u = u.scale(Complex64::new(1.0 / u.norm(), 0.0));
        return Ok(Frame::from_columns(u, u.star()));
    }
    Ok(Frame(diagonalizing_frame(&hamiltonian(&q, modulus.e2(), 0.0), q.lambda)?))
}

/// `Γ(ω)Γ(0)⁻¹` from Frenet integration over one wavelength.
pub fn monodromy(modulus: &Modulus, samples: usize) -> Result<Mat2> {
    let k = curvature_profile(modulus, samples)?;
    let g0 = standard_frame(modulus)?;
    let frames = frenet_frames(&k, &g0);
    Ok(frames[samples].matrix() * g0.matrix().adjoint())
}

/// Smallest `n ≤ max` with `‖Mⁿ − Id‖ ≤ tol`.
pub fn matrix_order(m: &Mat2, max: u32, tol: f64) -> Option<u32> {
    let mut p = Mat2::IDENTITY;
    for n in 1..=max {
        p = p * *m;
        if (p - Mat2::IDENTITY).max_abs() <= tol {
            return Some(n);
        }
    }
    None
}

pub fn closure_quanta(modulus: &Modulus, cfg: &ClosureConfig) -> Result<ClosureReport> {
    let k = curvature_profile(modulus, cfg.samples)?;
    let phi1 = k.grid().integral(&k.values) / (2.0 * PI);
    let exceptional = is_exceptional(modulus)?;
    let phi2 = if modulus.is_symmetric() {
        phi2_closed_form(modulus)?
    } else {
        if exceptional {
            return Err(Error::ExceptionalModulus);
        }
        phi2_by_quadrature(modulus, cfg.samples)?
    };
    let phi2_regularized = phi2 + regularization_shift(modulus)?;
    let rational_pair = detect_rational(phi1, &cfg.detect).zip(detect_rational(phi2_regularized, &cfg.detect));
    let monodromy = monodromy(modulus, cfg.samples)?;
    let closed = rational_pair.is_some();
    let wave_number = if closed { matrix_order(&monodromy, cfg.max_wave_number, cfg.order_tolerance) } else { None };
    Ok(ClosureReport { modulus: *modulus, phi1, phi2, phi2_regularized, exceptional, rational_pair, closed, wave_number, monodromy })
}

/// A closed symmetric stationary loop in its standard position.
#[derive(Debug, Clone)]
pub struct PhiLoop {
    pub modulus: Modulus,
    pub characteristic: Rational,
    pub wave_number: u32,
    pub frame0: Frame,
    /// Curvature over the full period `n ω`.
    pub profile: CurvatureProfile,
    pub curve: SampledCurve,
    pub monodromy: Mat2,
    /// `‖Γ(nω) − Γ(0)‖`.
    pub closure_defect: f64,
}

impl PhiLoop {
    pub fn wavelength(&self) -> f64 {
        self.profile.period / self.wave_number as f64
    }
}

pub fn standard_phi_loop(modulus: &Modulus, cfg: &ClosureConfig) -> Result<PhiLoop> {
    symmetric_parts(modulus)?;
    let report = closure_quanta(modulus, cfg)?;
    let (_, characteristic) =
        report.rational_pair.ok_or_else(|| Error::NotClosed(format!("Φ̃₂ = {} is not rational", report.phi2_regularized)))?;
    let n = report
        .wave_number
        .ok_or_else(|| Error::NotClosed(format!("monodromy has no order ≤ {} within {:e}", cfg.max_wave_number, cfg.order_tolerance)))?;
    let one = curvature_profile(modulus, cfg.samples)?;
    let values: Vec<f64> = (0..n).flat_map(|_| one.values.iter().copied()).collect();
    let profile = CurvatureProfile::new(values, one.period * n as f64)?;
    let frame0 = standard_frame(modulus)?;
    let frames = frenet_frames(&profile, &frame0);
    let total = profile.len();
    let curve = SampledCurve::new(frames[..total].iter().map(Frame::gamma).collect(), profile.period)?;
    let monodromy = frames[cfg.samples].matrix() * frame0.matrix().adjoint();
    let closure_defect = (frames[total].matrix() - frame0.matrix()).max_abs();
    Ok(PhiLoop { modulus: *modulus, characteristic, wave_number: n, frame0, profile, curve, monodromy, closure_defect })
}
