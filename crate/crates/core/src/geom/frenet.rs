use num_complex::Complex64;

use super::curve::{CurvatureProfile, Frame, SampledCurve};
use crate::linalg::Mat2;

/// Target for `substep × ‖generator‖`.
const STEP_BUDGET: f64 = 0.005;

/// `U = [[0, −1], [1, i k]]`.
pub fn frenet_generator(k: f64) -> Mat2 {
    Mat2::new(Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, k))
}

/// Integrates `G' = G A(k(s))` across one period with RK4 substeps and polar re-unitarization.
///
/// Returns `N + 1` matrices at the nodes `0, h, …, L`. `bound` is an upper bound for `‖A‖`.
pub fn integrate_unitary_flow(k: &CurvatureProfile, start: Mat2, generator: impl Fn(f64) -> Mat2, bound: f64) -> Vec<Mat2> {
    let n = k.len();
    let h = k.spacing();
    let substeps = ((h * bound / STEP_BUDGET).ceil() as usize).max(1);
    let grid = k.grid();
    let offsets: Vec<Vec<f64>> = (0..2 * substeps).map(|j| grid.shift(&k.values, j as f64 * h / (2 * substeps) as f64)).collect();
    let kv = |j: usize, i: usize| if j == 2 * substeps { k.values[(i + 1) % n] } else { offsets[j][i] };
    let dt = h / substeps as f64;
    let mut out = Vec::with_capacity(n + 1);
    let mut g = start;
    out.push(g);
    for i in 0..n {
        for r in 0..substeps {
            let a0 = generator(kv(2 * r, i));
            let am = generator(kv(2 * r + 1, i));
            let a1 = generator(kv(2 * r + 2, i));
            let k1 = g * a0;
            let k2 = (g + k1.scale_real(0.5 * dt)) * am;
            let k3 = (g + k2.scale_real(0.5 * dt)) * am;
            let k4 = (g + k3.scale_real(dt)) * a1;
            let incr = (k1 + k2.scale_real(2.0) + k3.scale_real(2.0) + k4).scale_real(dt / 6.0);
            g = (g + incr).polar_unitary();
        }
        out.push(g);
    }
    out
}

/// Frenet frames at the `N + 1` nodes of one period.
pub fn frenet_frames(k: &CurvatureProfile, frame0: &Frame) -> Vec<Frame> {
    let bound = 1.0 + k.max_abs();
    integrate_unitary_flow(k, frame0.matrix(), frenet_generator, bound).into_iter().map(Frame).collect()
}

/// Curve with curvature `k` and initial frame `frame0`, sampled over one period of `k`.
pub fn frenet_reconstruct(k: &CurvatureProfile, frame0: &Frame) -> SampledCurve {
    let frames = frenet_frames(k, frame0);
    let samples = frames[..k.len()].iter().map(Frame::gamma).collect();
    SampledCurve { samples, period: k.period }
}
