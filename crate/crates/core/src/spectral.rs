//! Fourier differentiation, integration and interpolation on uniform periodic grids.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// FFT plans and wavenumbers for one grid size and period.
#[derive(Clone)]
pub struct SpectralGrid {
    n: usize,
    period: f64,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    wave: Vec<f64>,
}

impl std::fmt::Debug for SpectralGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralGrid").field("n", &self.n).field("period", &self.period).finish()
    }
}

impl SpectralGrid {
    pub fn new(n: usize, period: f64) -> Self {
        assert!(n >= 2, "grid needs at least two nodes");
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(n);
        let ifft = planner.plan_fft_inverse(n);
        let base = TAU / period;
        let wave = (0..n)
            .map(|i| {
                let k = if i <= n / 2 { i as f64 } else { i as f64 - n as f64 };
                k * base
            })
            .collect();
        Self { n, period, fft, ifft, wave }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.n as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| i as f64 * self.spacing()).collect()
    }

    /// Angular wavenumbers in FFT order; the Nyquist entry is positive.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.wave
    }

    fn is_nyquist(&self, i: usize) -> bool {
        self.n.is_multiple_of(2) && i == self.n / 2
    }

    pub fn forward(&self, data: &[Complex64]) -> Vec<Complex64> {
        let mut buf = data.to_vec();
        self.fft.process(&mut buf);
        buf
    }

    /// Inverse transform including the `1/n` normalization.
    pub fn inverse(&self, spec: &[Complex64]) -> Vec<Complex64> {
        let mut buf = spec.to_vec();
        self.ifft.process(&mut buf);
        let s = 1.0 / self.n as f64;
        buf.iter_mut().for_each(|z| *z *= s);
        buf
    }

    pub fn forward_real(&self, data: &[f64]) -> Vec<Complex64> {
        let buf: Vec<Complex64> = data.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.forward(&buf)
    }

    pub fn inverse_real(&self, spec: &[Complex64]) -> Vec<f64> {
        self.inverse(spec).into_iter().map(|z| z.re).collect()
    }

    /// Symbol of `d^order/ds^order`.
    pub fn derivative_symbol(&self, order: usize) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                if order % 2 == 1 && self.is_nyquist(i) {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, self.wave[i]).powu(order as u32)
                }
            })
            .collect()
    }

    fn apply_symbol(&self, spec: &[Complex64], symbol: &[Complex64]) -> Vec<Complex64> {
        spec.iter().zip(symbol).map(|(a, b)| a * b).collect()
    }

    pub fn derivative(&self, v: &[f64], order: usize) -> Vec<f64> {
        if order == 0 {
            return v.to_vec();
        }
        let spec = self.forward_real(v);
        self.inverse_real(&self.apply_symbol(&spec, &self.derivative_symbol(order)))
    }

    pub fn derivative_complex(&self, v: &[Complex64], order: usize) -> Vec<Complex64> {
        if order == 0 {
            return v.to_vec();
        }
        let spec = self.forward(v);
        self.inverse(&self.apply_symbol(&spec, &self.derivative_symbol(order)))
    }

    /// `[v, v', …, v^(max_order)]` from one forward transform.
    pub fn jets(&self, v: &[f64], max_order: usize) -> Vec<Vec<f64>> {
        let spec = self.forward_real(v);
        self.jets_from_spectrum(&spec, max_order)
    }

    pub fn jets_from_spectrum(&self, spec: &[Complex64], max_order: usize) -> Vec<Vec<f64>> {
        (0..=max_order).map(|j| self.inverse_real(&self.apply_symbol(spec, &self.derivative_symbol(j)))).collect()
    }

    fn shift_symbol(&self, delta: f64) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                if self.is_nyquist(i) {
                    Complex64::new((self.wave[i] * delta).cos(), 0.0)
                } else {
                    Complex64::from_polar(1.0, self.wave[i] * delta)
                }
            })
            .collect()
    }

    /// Samples of `s ↦ v(s + delta)`.
    pub fn shift(&self, v: &[f64], delta: f64) -> Vec<f64> {
        let spec = self.forward_real(v);
        self.inverse_real(&self.apply_symbol(&spec, &self.shift_symbol(delta)))
    }

    pub fn shift_complex(&self, v: &[Complex64], delta: f64) -> Vec<Complex64> {
        let spec = self.forward(v);
        self.inverse(&self.apply_symbol(&spec, &self.shift_symbol(delta)))
    }

    /// Trigonometric interpolant evaluated at an arbitrary `s`.
    pub fn eval_at(&self, v: &[f64], s: f64) -> f64 {
        let spec = self.forward_real(v);
        let sym = self.shift_symbol(s);
        spec.iter().zip(&sym).map(|(a, b)| (a * b).re).sum::<f64>() / self.n as f64
    }

    pub fn mean(&self, v: &[f64]) -> f64 {
        v.iter().sum::<f64>() / v.len() as f64
    }

    /// Periodic trapezoid rule over one period.
    pub fn integral(&self, v: &[f64]) -> f64 {
        self.mean(v) * self.period
    }

    /// `F(s_i) = ∫_0^{s_i} v`, including the secular mean term.
    pub fn antiderivative(&self, v: &[f64]) -> Vec<f64> {
        let spec = self.forward_real(v);
        let mean = spec[0].re / self.n as f64;
        let anti: Vec<Complex64> = (0..self.n)
            .map(|i| if i == 0 || self.is_nyquist(i) { Complex64::new(0.0, 0.0) } else { spec[i] / Complex64::new(0.0, self.wave[i]) })
            .collect();
        let periodic = self.inverse_real(&anti);
        let h = self.spacing();
        periodic.iter().enumerate().map(|(i, p)| mean * i as f64 * h + p - periodic[0]).collect()
    }
}
