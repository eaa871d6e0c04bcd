use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexPair, Mat2};
use crate::spectral::SpectralGrid;

/// Uniformly sampled periodic curvature `k(s)` over one period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureProfile {
    pub values: Vec<f64>,
    pub period: f64,
}

impl CurvatureProfile {
    pub fn new(values: Vec<f64>, period: f64) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput("profile needs at least two samples".into()));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidInput(format!("period {period} must be positive")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { values, period })
    }

    pub fn constant(value: f64, n: usize, period: f64) -> Result<Self> {
        Self::new(vec![value; n], period)
    }

    pub fn from_fn(n: usize, period: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        let h = period / n as f64;
        Self::new((0..n).map(|i| f(i as f64 * h)).collect(), period)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.len() as f64
    }

    pub fn grid(&self) -> SpectralGrid {
        SpectralGrid::new(self.len(), self.period)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// `∫₀^L k ds` by the periodic trapezoid rule.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.spacing()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { values: self.values.iter().map(|v| v * c).collect(), period: self.period }
    }
}

/// Closed curve in ℂ² sampled at `N` uniform parameter nodes over one period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve {
    pub samples: Vec<ComplexPair>,
    pub period: f64,
}

/// How derivatives of sampled data are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Differentiation {
    #[default]
    Spectral,
    CenteredDifference,
}

impl SampledCurve {
    pub fn new(samples: Vec<ComplexPair>, period: f64) -> Result<Self> {
        if samples.len() < 3 {
            return Err(Error::InvalidInput("curve needs at least three samples".into()));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidInput(format!("period {period} must be positive")));
        }
        Ok(Self { samples, period })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.len() as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.len()).map(|i| i as f64 * h).collect()
    }

    pub fn components(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        self.samples.iter().map(|p| (p.z1, p.z2)).unzip()
    }

    pub fn from_components(z1: &[Complex64], z2: &[Complex64], period: f64) -> Result<Self> {
        Self::new(z1.iter().zip(z2).map(|(&a, &b)| ComplexPair::new(a, b)).collect(), period)
    }

    /// Derivative of the given order at every node.
    pub fn derivative(&self, order: usize, scheme: Differentiation) -> Vec<ComplexPair> {
        let (z1, z2) = self.components();
        let (d1, d2) = match scheme {
            Differentiation::Spectral => {
                let g = SpectralGrid::new(self.len(), self.period);
                (g.derivative_complex(&z1, order), g.derivative_complex(&z2, order))
            }
            Differentiation::CenteredDifference => {
                let h = self.spacing();
                (centered(&z1, h, order), centered(&z2, h, order))
            }
        };
        d1.into_iter().zip(d2).map(|(a, b)| ComplexPair::new(a, b)).collect()
    }

    /// Apply a constant matrix to every sample.
    pub fn transformed(&self, a: &Mat2) -> Self {
        Self { samples: self.samples.iter().map(|p| a.apply(p)).collect(), period: self.period }
    }

    /// `max |⟨γ_x, γ⟩|`.
    pub fn legendrian_residual(&self) -> f64 {
        let d = self.derivative(1, Differentiation::Spectral);
        d.iter().zip(&self.samples).map(|(dx, g)| dx.inner(g).norm()).fold(0.0, f64::max)
    }

    /// `max ||γ|² − 1|`.
    pub fn sphere_residual(&self) -> f64 {
        self.samples.iter().map(|p| (p.norm_sqr() - 1.0).abs()).fold(0.0, f64::max)
    }

    pub fn speeds(&self) -> Vec<f64> {
        self.derivative(1, Differentiation::Spectral).iter().map(ComplexPair::norm).collect()
    }

    /// The same curve sampled from `delta` onwards, by spectral interpolation.
    pub fn phase_shifted(&self, delta: f64) -> Self {
        let (z1, z2) = self.components();
        let g = SpectralGrid::new(self.len(), self.period);
        let (a, b) = (g.shift_complex(&z1, delta), g.shift_complex(&z2, delta));
        Self { samples: a.into_iter().zip(b).map(|(x, y)| ComplexPair::new(x, y)).collect(), period: self.period }
    }
}

fn centered(v: &[Complex64], h: f64, order: usize) -> Vec<Complex64> {
    let n = v.len();
    let at = |i: isize| v[i.rem_euclid(n as isize) as usize];
    (0..n as isize)
        .map(|i| match order {
            0 => at(i),
            1 => (at(i + 1) - at(i - 1)) / (2.0 * h),
            2 => (at(i + 1) - at(i) * 2.0 + at(i - 1)) / (h * h),
            _ => panic!("centered differences support orders up to 2"),
        })
        .collect()
}

/// `k = Im⟨γ_xx, γ_x⟩ / ⟨γ_x, γ_x⟩^{3/2}` at every node.
pub fn curvature_of(curve: &SampledCurve) -> Result<CurvatureProfile> {
    curvature_with(curve, Differentiation::Spectral)
}

pub fn curvature_with(curve: &SampledCurve, scheme: Differentiation) -> Result<CurvatureProfile> {
    let d1 = curve.derivative(1, scheme);
    let d2 = curve.derivative(2, scheme);
    let mut values = Vec::with_capacity(curve.len());
    for (x, xx) in d1.iter().zip(&d2) {
        let speed2 = x.norm_sqr();
        if speed2.sqrt() < 1e-6 {
            return Err(Error::DegenerateSpeed(speed2.sqrt()));
        }
        values.push(xx.inner(x).im / speed2.powf(1.5));
    }
    CurvatureProfile::new(values, curve.period)
}

/// A point of U(2) whose columns are `(γ, γ_s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame(pub Mat2);

impl Frame {
    pub fn from_columns(gamma: ComplexPair, gamma_s: ComplexPair) -> Self {
        Self(Mat2::from_columns(gamma, gamma_s))
    }

    pub fn identity() -> Self {
        Self(Mat2::IDENTITY)
    }

    pub fn gamma(&self) -> ComplexPair {
        self.0.column(0)
    }

    pub fn gamma_s(&self) -> ComplexPair {
        self.0.column(1)
    }

    pub fn matrix(&self) -> Mat2 {
        self.0
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.0.unitarity_defect()
    }
}
