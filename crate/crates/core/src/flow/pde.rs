use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diffalg::{generate_hierarchy, CompiledPoly, DiffPoly};
use crate::error::{Error, Result};
use crate::geom::{CurvatureProfile, Frame};
use crate::spectral::SpectralGrid;

/// Time-step control for curvature flows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowConfig {
    /// Safety factor on the explicit nonlinear rate.
    pub cfl: f64,
    /// Upper bound on the time step.
    pub max_dt: f64,
    /// Abort once `max|k|` exceeds this multiple of its initial value.
    pub blowup_factor: f64,
    /// Refuse runs needing more time steps than this.
    pub max_steps: usize,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self { cfl: 0.1, max_dt: 1e-2, blowup_factor: 1e3, max_steps: 2_000_000 }
    }
}

/// Curvature profile at flow time `t`, optionally with the frame at `s = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub k: CurvatureProfile,
    pub t: f64,
    pub frame0: Option<Frame>,
}

impl FlowState {
    pub fn new(k: CurvatureProfile) -> Self {
        Self { k, t: 0.0, frame0: None }
    }

    pub fn with_frame(k: CurvatureProfile, frame0: Frame) -> Self {
        Self { k, t: 0.0, frame0: Some(frame0) }
    }
}

/// Exponential time-differencing coefficients for one step size.
#[derive(Debug, Clone)]
pub struct EtdStepper {
    dt: f64,
    e: Vec<Complex64>,
    e2: Vec<Complex64>,
    q: Vec<Complex64>,
    f1: Vec<Complex64>,
    f2: Vec<Complex64>,
    f3: Vec<Complex64>,
}

impl EtdStepper {
    pub fn dt(&self) -> f64 {
        self.dt
    }
}

const CONTOUR_POINTS: usize = 32;

fn phi_coefficients(z: Complex64) -> [Complex64; 4] {
    let eval = |l: Complex64| {
        let el = l.exp();
        let l3 = l * l * l;
        [
            ((l * 0.5).exp() - 1.0) / l,
            (-4.0 - l + el * (4.0 - 3.0 * l + l * l)) / l3,
            (2.0 + l + el * (l - 2.0)) / l3,
            (-4.0 - 3.0 * l - l * l + el * (4.0 - l)) / l3,
        ]
    };
    if z.norm() >= 0.5 {
        return eval(z);
    }
    let mut acc = [Complex64::new(0.0, 0.0); 4];
    for j in 0..CONTOUR_POINTS {
        let r = Complex64::from_polar(1.0, std::f64::consts::TAU * (j as f64 + 0.5) / CONTOUR_POINTS as f64);
        for (a, v) in acc.iter_mut().zip(eval(z + r)) {
            *a += v;
        }
    }
    acc.map(|a| a / CONTOUR_POINTS as f64)
}

/// Pseudospectral solver for `k_t = F[k]` with `F` a differential polynomial,
/// the degree-one part of `F` treated exactly.
#[derive(Debug, Clone)]
pub struct CurvatureFlow {
    grid: SpectralGrid,
    linear: Vec<Complex64>,
    nonlinear: CompiledPoly,
    full: CompiledPoly,
    order: usize,
}

impl CurvatureFlow {
    pub fn new(rhs: &DiffPoly, samples: usize, period: f64) -> Self {
        let grid = SpectralGrid::new(samples, period);
        let (lin, rest) = rhs.split_linear();
        let mut linear = vec![Complex64::new(0.0, 0.0); samples];
        for (mono, c) in lin.terms() {
            let order = mono.top_order().unwrap_or(0);
            let coeff = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
            for (l, s) in linear.iter_mut().zip(grid.derivative_symbol(order)) {
                *l += s * coeff;
            }
        }
        let order = rhs.max_jet_order().unwrap_or(0);
        Self { grid, linear, nonlinear: rest.compile(), full: rhs.compile(), order }
    }

    /// Flow `k_t = M_{n+1}` induced by `Z_n`.
    pub fn mkdv(n: usize, samples: usize, period: f64) -> Result<Self> {
        let levels = generate_hierarchy(n + 1)?;
        Ok(Self::new(&levels[n].m, samples, period))
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    /// `F[k]` at the nodes.
    pub fn rhs_values(&self, k: &[f64]) -> Vec<f64> {
        self.full.eval_samples(&self.grid.jets(k, self.order))
    }

    /// Largest stable step for data of amplitude `amplitude`.
    pub fn stable_dt(&self, amplitude: f64, cfg: &FlowConfig) -> f64 {
        let kmax = self.grid.wavenumbers().iter().fold(0.0f64, |a, w| a.max(w.abs()));
        let rate: f64 = self.nonlinear.term_shapes().map(|(c, deg, top)| c * amplitude.powi(deg - 1) * kmax.powi(top as i32)).sum();
        if rate > 0.0 {
            (cfg.cfl / rate).min(cfg.max_dt)
        } else {
            cfg.max_dt
        }
    }

    pub fn stepper(&self, dt: f64) -> EtdStepper {
        let n = self.linear.len();
        let mut st = EtdStepper {
            dt,
            e: Vec::with_capacity(n),
            e2: Vec::with_capacity(n),
            q: Vec::with_capacity(n),
            f1: Vec::with_capacity(n),
            f2: Vec::with_capacity(n),
            f3: Vec::with_capacity(n),
        };
        for &l in &self.linear {
            let z = l * dt;
            let [q, f1, f2, f3] = phi_coefficients(z);
            st.e.push(z.exp());
            st.e2.push((z * 0.5).exp());
            st.q.push(q * dt);
            st.f1.push(f1 * dt);
            st.f2.push(f2 * dt);
            st.f3.push(f3 * dt);
        }
        st
    }

    fn nonlinear_spectrum(&self, v: &[Complex64]) -> (Vec<Complex64>, f64) {
        let order = self.nonlinear.max_jet_order().unwrap_or(0);
        let jets = self.grid.jets_from_spectrum(v, order);
        let amp = jets[0].iter().fold(0.0f64, |a, x| a.max(x.abs()));
        (self.grid.forward_real(&self.nonlinear.eval_samples(&jets)), amp)
    }

    /// One ETDRK4 step on the spectrum `v`; returns `max|k|` at the start of the step.
    pub fn step(&self, st: &EtdStepper, v: &mut [Complex64]) -> f64 {
        let n = v.len();
        let (nv, amp) = self.nonlinear_spectrum(v);
        let a: Vec<Complex64> = (0..n).map(|i| st.e2[i] * v[i] + st.q[i] * nv[i]).collect();
        let (na, _) = self.nonlinear_spectrum(&a);
        let b: Vec<Complex64> = (0..n).map(|i| st.e2[i] * v[i] + st.q[i] * na[i]).collect();
        let (nb, _) = self.nonlinear_spectrum(&b);
        let c: Vec<Complex64> = (0..n).map(|i| st.e2[i] * a[i] + st.q[i] * (nb[i] * 2.0 - nv[i])).collect();
        let (nc, _) = self.nonlinear_spectrum(&c);
        for i in 0..n {
            v[i] = st.e[i] * v[i] + nv[i] * st.f1[i] + (na[i] + nb[i]) * st.f2[i] * 2.0 + nc[i] * st.f3[i];
        }
        amp
    }

    /// Integrate `k` forward by `duration` with uniform steps.
    pub fn advance(&self, k: &[f64], duration: f64, cfg: &FlowConfig) -> Result<Vec<f64>> {
        if duration == 0.0 {
            return Ok(k.to_vec());
        }
        let initial = k.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let limit = cfg.blowup_factor * initial;
        let dt_max = self.stable_dt(initial, cfg);
        let steps = step_count(duration, dt_max, cfg)?;
        let st = self.stepper(duration / steps as f64);
        let mut v = self.grid.forward_real(k);
        for _ in 0..steps {
            let amp = self.step(&st, &mut v);
            if !amp.is_finite() || amp > limit.max(f64::MIN_POSITIVE) && initial > 0.0 {
                return Err(Error::BlowUp { max: amp, limit });
            }
        }
        let out = self.grid.inverse_real(&v);
        let amp = out.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if !amp.is_finite() || (initial > 0.0 && amp > limit) {
            return Err(Error::BlowUp { max: amp, limit });
        }
        Ok(out)
    }
}

/// Number of uniform steps of size at most `dt_max` covering `duration`.
pub(crate) fn step_count(duration: f64, dt_max: f64, cfg: &FlowConfig) -> Result<usize> {
    let needed = (duration.abs() / dt_max).ceil().max(1.0);
    if !needed.is_finite() || needed > cfg.max_steps as f64 {
        return Err(Error::StepBudget { needed, limit: cfg.max_steps });
    }
    Ok(needed as usize)
}

/// `k(·, t_end)` under `k_t = M_{n+1}`.
pub fn evolve_curvature(state: &FlowState, n: usize, t_end: f64, cfg: &FlowConfig) -> Result<FlowState> {
    let flow = CurvatureFlow::mkdv(n, state.k.len(), state.k.period)?;
    let values = flow.advance(&state.k.values, t_end - state.t, cfg)?;
    Ok(FlowState { k: CurvatureProfile::new(values, state.k.period)?, t: t_end, frame0: state.frame0 })
}
