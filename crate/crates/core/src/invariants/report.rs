use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::maslov::{maslov_index, maslov_with_residual};
use super::planar::{crossings, turning_number, Sweep};
use crate::error::{Error, Result};
use crate::geom::{clifford_projection, curvature_of, heisenberg_projection, lagrangian_projection, SampledCurve};
use crate::linalg::ComplexPair;
use crate::spectral::SpectralGrid;

/// Homotopy class of the SO(3) frame of the Clifford projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    One,
    Half,
}

impl Spin {
    pub fn value(self) -> f64 {
        match self {
            Spin::One => 1.0,
            Spin::Half => 0.5,
        }
    }
}

impl Serialize for Spin {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

pub const PERIOD_TOLERANCE: f64 = 1e-6;
const MAX_RESAMPLES: usize = 4;

/// Writhe of the Lagrangian projection of the Heisenberg image.
pub fn bennequin_number(curve: &SampledCurve) -> Result<i64> {
    let mut current = curve.clone();
    for attempt in 0..=MAX_RESAMPLES {
        let lifted = heisenberg_projection(&current)?;
        let planar = lagrangian_projection(&lifted);
        let height: Vec<f64> = lifted.iter().map(|p| p[2]).collect();
        match crossings(&planar, &height)? {
            Sweep::Crossings(c) => return Ok(c.iter().map(|x| x.sign as i64).sum()),
            Sweep::NearVertex => {
                let shift = curve.spacing() * (0.3819660112501051 + 0.1 * attempt as f64);
                current = curve.phase_shifted(shift);
            }
        }
    }
    Err(Error::Consistency("crossing sweep stayed degenerate after resampling".into()))
}

/// Largest `c` whose shift by `L/c` fixes the sampled curve in ℝ³, from its Fourier support.
fn shift_symmetry(points: &[[f64; 3]], period: f64) -> Result<usize> {
    let n = points.len();
    let g = SpectralGrid::new(n, period);
    let spectra: Vec<Vec<Complex64>> = (0..3).map(|c| g.forward_real(&points.iter().map(|p| p[c]).collect::<Vec<_>>())).collect();
    let peak = spectra.iter().flat_map(|s| s[1..].iter()).map(|z| z.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Err(Error::PeriodDetection);
    }
    let mut c = 0usize;
    for i in 1..n {
        if spectra.iter().any(|s| s[i].norm() > 1e-8 * peak) {
            let mode = if i <= n / 2 { i } else { n - i };
            c = c.gcd(&mode);
        }
    }
    if c == 0 {
        return Err(Error::PeriodDetection);
    }
    let shift = period / c as f64;
    let worst = (0..3)
        .map(|comp| {
            let v: Vec<f64> = points.iter().map(|p| p[comp]).collect();
            g.shift(&v, shift).iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    if worst > PERIOD_TOLERANCE {
        return Err(Error::PeriodDetection);
    }
    Ok(c)
}

fn value_at(curve: &SampledCurve, s: f64) -> ComplexPair {
    let g = SpectralGrid::new(curve.len(), curve.period);
    let (z1, z2) = curve.components();
    let eval = |z: &[Complex64]| {
        let re: Vec<f64> = z.iter().map(|w| w.re).collect();
        let im: Vec<f64> = z.iter().map(|w| w.im).collect();
        Complex64::new(g.eval_at(&re, s), g.eval_at(&im, s))
    };
    ComplexPair::new(eval(&z1), eval(&z2))
}

/// Clifford index `cl` with `2L = cl·L_η` and the spin of the curve.
pub fn clifford_index_and_spin(curve: &SampledCurve) -> Result<(u32, Spin)> {
    let eta = clifford_projection(curve);
    let cl = shift_symmetry(&eta, curve.period)?;
    let mu = maslov_index(&curvature_of(curve)?)?;
    let p = curve.period / cl as f64;
    let pairing = value_at(curve, p).inner(&curve.samples[0]) * Complex64::from_polar(1.0, -PI * mu as f64 / cl as f64);
    let spin = if (pairing - 1.0).norm() < 1e-4 {
        Spin::One
    } else if (pairing + 1.0).norm() < 1e-4 {
        Spin::Half
    } else {
        return Err(Error::Consistency(format!("frame holonomy {pairing} is not ±1")));
    };
    Ok((cl as u32, spin))
}

/// Discrete invariants of a closed unit-speed Legendrian curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub maslov: i64,
    pub maslov_residual: f64,
    pub clifford_index: u32,
    pub spin: Spin,
    pub bennequin: Option<i64>,
    pub turning_number: i64,
    pub legendrian_residual: f64,
}

pub fn invariant_report(curve: &SampledCurve) -> Result<InvariantReport> {
    let k = curvature_of(curve)?;
    let maslov = maslov_index(&k)?;
    let (_, maslov_residual) = maslov_with_residual(&k);
    let (clifford_index, spin) = clifford_index_and_spin(curve)?;
    let planar = lagrangian_projection(&heisenberg_projection(curve)?);
    let bennequin = match bennequin_number(curve) {
        Ok(b) => Some(b),
        Err(Error::Tangency(_)) | Err(Error::Consistency(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(InvariantReport {
        maslov,
        maslov_residual,
        clifford_index,
        spin,
        bennequin,
        turning_number: turning_number(&planar)?,
        legendrian_residual: curve.legendrian_residual(),
    })
}
