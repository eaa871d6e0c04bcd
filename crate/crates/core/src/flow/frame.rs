use num_complex::Complex64;

use super::pde::{CurvatureFlow, EtdStepper, FlowConfig, FlowState};
use crate::error::{Error, Result};
use crate::geom::{frenet_frames, frenet_generator, frenet_reconstruct, CurvatureProfile, Frame, SampledCurve};
use crate::linalg::Mat2;

pub const COMPATIBILITY_TOLERANCE: f64 = 1e-6;
const FRAME_STEP_BUDGET: f64 = 0.02;

/// `P` of `Γ_t = Γ P` for the `Z_1` flow, from `k`, `k_s`, `k_ss`.
pub fn z1_generator(k: f64, ks: f64, kss: f64) -> Mat2 {
    let half_sq = 0.5 * k * k;
    Mat2::new(
        Complex64::new(0.0, 2.0 * k),
        Complex64::new(4.0 - half_sq, ks),
        Complex64::new(half_sq - 4.0, ks),
        Complex64::new(0.0, kss + 0.5 * k * k * k - 2.0 * k),
    )
}

/// Result of evolving a curve together with its frames under `Z_1`.
#[derive(Debug, Clone)]
pub struct FrameEvolution {
    pub state: FlowState,
    pub frames: Vec<Frame>,
    pub curve: SampledCurve,
    /// Largest `|U_t − P_s − [U, P]|` seen during the run.
    pub compatibility_residual: f64,
}

impl FrameEvolution {
    /// Largest distance between the evolved curve and the curve rebuilt from `k(·, t)`
    /// with the evolved frame at `s = 0`.
    pub fn route_discrepancy(&self) -> f64 {
        let rebuilt = frenet_reconstruct(&self.state.k, &self.frames[0]);
        rebuilt.samples.iter().zip(&self.curve.samples).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max)
    }
}

struct Jets {
    k: Vec<f64>,
    ks: Vec<f64>,
    kss: Vec<f64>,
}

fn jets(flow: &CurvatureFlow, spec: &[Complex64]) -> Jets {
    let mut j = flow.grid().jets_from_spectrum(spec, 2).into_iter();
    let (k, ks, kss) = (j.next().unwrap_or_default(), j.next().unwrap_or_default(), j.next().unwrap_or_default());
    Jets { k, ks, kss }
}

fn compatibility(flow: &CurvatureFlow, k: &[f64]) -> f64 {
    let grid = flow.grid();
    let kt = flow.rhs_values(k);
    let j = grid.jets(k, 3);
    let p: Vec<Mat2> = (0..k.len()).map(|i| z1_generator(j[0][i], j[1][i], j[2][i])).collect();
    let entry = |r: usize, c: usize, im: bool| -> Vec<f64> {
        let v: Vec<f64> = p.iter().map(|m| if im { m.get(r, c).im } else { m.get(r, c).re }).collect();
        grid.derivative(&v, 1)
    };
    let ds: Vec<[[Complex64; 2]; 2]> = {
        let parts: Vec<Vec<f64>> = (0..8).map(|x| entry(x / 4, (x / 2) % 2, x % 2 == 1)).collect();
        (0..k.len())
            .map(|i| std::array::from_fn(|r| std::array::from_fn(|c| Complex64::new(parts[4 * r + 2 * c][i], parts[4 * r + 2 * c + 1][i]))))
            .collect()
    };
    (0..k.len())
        .map(|i| {
            let u = frenet_generator(j[0][i]);
            let ut = Mat2::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, kt[i]));
            (ut - Mat2(ds[i]) - u.commutator(&p[i])).max_abs()
        })
        .fold(0.0, f64::max)
}

/// Evolve the frame field of the curve with curvature `state.k` and initial frame
/// `state.frame0` under `Z_1` up to `t_end`.
pub fn z1_frame_evolution(state: &FlowState, t_end: f64, cfg: &FlowConfig) -> Result<FrameEvolution> {
    let frame0 = state.frame0.ok_or_else(|| Error::InvalidInput("frame evolution needs an initial frame".into()))?;
    let n = state.k.len();
    let flow = CurvatureFlow::mkdv(1, n, state.k.period)?;
    let mut frames: Vec<Mat2> = frenet_frames(&state.k, &frame0).into_iter().take(n).map(|f| f.matrix()).collect();
    let duration = t_end - state.t;

    let amplitude = state.k.max_abs();
    let jets0 = flow.grid().jets(&state.k.values, 2);
    let p_bound = (0..n).map(|i| z1_generator(jets0[0][i], jets0[1][i], jets0[2][i]).max_abs()).fold(1.0, f64::max);
    let dt_frame = (FRAME_STEP_BUDGET / p_bound).min(2.0 * flow.stable_dt(amplitude, cfg));
    let steps = super::pde::step_count(duration, dt_frame, cfg)?;
    let dt = duration / steps as f64;
    let half: EtdStepper = flow.stepper(0.5 * dt);

    let mut spec = flow.grid().forward_real(&state.k.values);
    let mut residual = compatibility(&flow, &state.k.values);
    let limit = cfg.blowup_factor * amplitude;
    let check_every = (steps / 20).max(1);
    for step in 0..steps {
        let j0 = jets(&flow, &spec);
        flow.step(&half, &mut spec);
        let jm = jets(&flow, &spec);
        flow.step(&half, &mut spec);
        let j1 = jets(&flow, &spec);
        let amp = j1.k.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if !amp.is_finite() || (amplitude > 0.0 && amp > limit) {
            return Err(Error::BlowUp { max: amp, limit });
        }
        for (i, g) in frames.iter_mut().enumerate() {
            let p0 = z1_generator(j0.k[i], j0.ks[i], j0.kss[i]);
            let pm = z1_generator(jm.k[i], jm.ks[i], jm.kss[i]);
            let p1 = z1_generator(j1.k[i], j1.ks[i], j1.kss[i]);
            let k1 = *g * p0;
            let k2 = (*g + k1.scale_real(0.5 * dt)) * pm;
            let k3 = (*g + k2.scale_real(0.5 * dt)) * pm;
            let k4 = (*g + k3.scale_real(dt)) * p1;
            *g = (*g + (k1 + k2.scale_real(2.0) + k3.scale_real(2.0) + k4).scale_real(dt / 6.0)).polar_unitary();
        }
        if (step + 1) % check_every == 0 || step + 1 == steps {
            residual = residual.max(compatibility(&flow, &j1.k));
            if residual > COMPATIBILITY_TOLERANCE {
                return Err(Error::Compatibility(residual));
            }
        }
    }
    let k_end = CurvatureProfile::new(flow.grid().inverse_real(&spec), state.k.period)?;
    let frames: Vec<Frame> = frames.into_iter().map(Frame).collect();
    let curve = SampledCurve::new(frames.iter().map(Frame::gamma).collect(), state.k.period)?;
    Ok(FrameEvolution { state: FlowState { k: k_end, t: t_end, frame0: Some(frames[0]) }, frames, curve, compatibility_residual: residual })
}
