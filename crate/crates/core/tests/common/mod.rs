#![allow(dead_code)]

use std::f64::consts::TAU;

use legflow_core::geom::sphere::speed_and_geodesic_curvature;
use legflow_core::geom::{legendrian_lift, CurvatureProfile, Lift};
use legflow_core::invariants::RationalDetect;
use legflow_core::linalg::{norm3, Point3};
use legflow_core::spectral::SpectralGrid;
use rand::Rng;

/// Height perturbation `Σ a_j cos(jθ) + b_j sin(jθ)` of a latitude circle.
#[derive(Debug, Clone)]
pub struct Wobble {
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl Wobble {
    pub fn random(rng: &mut impl Rng, modes: usize, amplitude: f64) -> Self {
        let mut draw = || (1..=modes).map(|j| amplitude * rng.gen_range(-1.0..1.0) / j as f64).collect();
        Self { cos: draw(), sin: draw() }
    }

    fn eval(&self, th: f64) -> f64 {
        self.cos
            .iter()
            .zip(&self.sin)
            .enumerate()
            .map(|(j, (a, b))| {
                let x = (j + 1) as f64 * th;
                a * x.cos() + b * x.sin()
            })
            .sum()
    }

    /// Point on S² at angle `th` for the circle at height `h`.
    pub fn point(&self, h: f64, th: f64) -> Point3 {
        let z = h + self.eval(th);
        let p = [z, th.cos(), th.sin()];
        let r = norm3(&p);
        [p[0] / r, p[1] / r, p[2] / r]
    }
}

fn turns_on_grid(w: &Wobble, h: f64, m: usize) -> f64 {
    let pts: Vec<Point3> = (0..m).map(|i| w.point(h, TAU * i as f64 / m as f64)).collect();
    let (speed, kg) = speed_and_geodesic_curvature(&pts, TAU);
    let g = SpectralGrid::new(m, TAU);
    g.integral(&speed.iter().zip(&kg).map(|(v, k)| v * k).collect::<Vec<_>>()) / TAU
}

/// Closed speed-2 curve on S² with rational total geodesic curvature `target`, at `n`
/// uniform nodes, with its geodesic curvature.
pub fn sphere_curve(w: &Wobble, target: f64, n: usize) -> (Vec<Point3>, CurvatureProfile) {
    let m = 2048;
    let (mut lo, mut hi) = (-0.95, 0.95);
    let f = |h: f64| turns_on_grid(w, h, m) - target;
    let flo = f(lo);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let h = 0.5 * (lo + hi);

    let pts: Vec<Point3> = (0..m).map(|i| w.point(h, TAU * i as f64 / m as f64)).collect();
    let (speed, _) = speed_and_geodesic_curvature(&pts, TAU);
    let g = SpectralGrid::new(m, TAU);
    let length = g.integral(&speed);
    let rate = length / TAU;
    let wiggle: Vec<f64> = g.antiderivative(&speed).iter().zip(g.nodes()).map(|(a, t)| a - rate * t).collect();
    let period = 0.5 * length;
    let mut th = 0.0;
    let eta: Vec<Point3> = (0..n)
        .map(|i| {
            let target_arc = length * i as f64 / n as f64;
            for _ in 0..50 {
                let r = rate * th + g.eval_at(&wiggle, th) - target_arc;
                th -= r / g.eval_at(&speed, th);
                if r.abs() < 1e-14 * length {
                    break;
                }
            }
            w.point(h, th)
        })
        .collect();
    let (_, kg) = speed_and_geodesic_curvature(&eta, period);
    (eta, CurvatureProfile::new(kg, period).expect("finite curvature"))
}

/// Random rational `p/q` with `q ≤ 7` in `(−0.6, 0.6)`.
pub fn random_turns(rng: &mut impl Rng) -> f64 {
    loop {
        let q = rng.gen_range(1..=7) as f64;
        let p = rng.gen_range(-4..=4) as f64;
        let x = p / q;
        if x.abs() < 0.6 {
            return x;
        }
    }
}

pub fn random_lift(rng: &mut impl Rng, n: usize) -> Lift {
    let w = Wobble::random(rng, 3, 0.15);
    let target = random_turns(rng);
    let (eta, kh) = sphere_curve(&w, target, n);
    legendrian_lift(&eta, &kh, &RationalDetect { max_denominator: 64, tolerance: 1e-7 }).expect("lift closes")
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub mod props;
