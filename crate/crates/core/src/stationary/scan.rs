use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::closure::{phi2_regularized_at, EXCEPTIONAL_BRANCH_LIMIT};
use super::modulus::Modulus;
use super::quadrature::{is_exceptional, EXCEPTIONAL_TOLERANCE};
use crate::ellip::{complete_k, EllipticParameter};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub e1_max: f64,
    pub e3_max: f64,
    pub initial_step: f64,
    pub min_step: f64,
    pub newton_tolerance: f64,
    pub max_points: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self { e1_max: 40.0, e3_max: 60.0, initial_step: 1e-2, min_step: 1e-7, newton_tolerance: 1e-10, max_points: 200_000 }
    }
}

/// One traced point of `Σ_q` with its derived data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModularPoint {
    pub e1: f64,
    pub e3: f64,
    pub phi2_regularized: f64,
    pub lambda: f64,
    pub omega: f64,
    pub period_function: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModularTrace {
    pub q: f64,
    pub points: Vec<ModularPoint>,
    pub lower_limit: [f64; 2],
    pub upper_limit: Option<[f64; 2]>,
    pub exceptional: Option<[f64; 2]>,
    pub unbounded: bool,
    /// `e3 / e1` at the far end of an unbounded trace.
    pub asymptotic_slope: Option<f64>,
}

impl ModularTrace {
    /// Minimum of the time-periodicity function along the trace.
    pub fn period_minimum(&self) -> Option<&ModularPoint> {
        self.points.iter().filter(|p| p.e1 > 0.0).min_by(|a, b| a.period_function.total_cmp(&b.period_function))
    }
}

fn field(e1: f64, e3: f64) -> Result<f64> {
    phi2_regularized_at(e1.abs(), e3)
}

fn gradient(e1: f64, e3: f64) -> Result<[f64; 2]> {
    let h = 1e-6 * (1.0 + e1.hypot(e3));
    Ok([(field(e1 + h, e3)? - field(e1 - h, e3)?) / (2.0 * h), (field(e1, e3 + h)? - field(e1, e3 - h)?) / (2.0 * h)])
}

/// Newton iteration along `∇Φ̃₂` onto the level `q`.
fn correct(mut x: [f64; 2], q: f64, tol: f64) -> Option<[f64; 2]> {
    for _ in 0..30 {
        if x[1] <= 0.0 {
            return None;
        }
        let f = field(x[0], x[1]).ok()? - q;
        if f.abs() < tol {
            return Some(x);
        }
        let g = gradient(x[0], x[1]).ok()?;
        let g2 = g[0] * g[0] + g[1] * g[1];
        if g2 == 0.0 || !g2.is_finite() {
            return None;
        }
        x = [x[0] - f * g[0] / g2, x[1] - f * g[1] / g2];
    }
    None
}

fn solve_monotone(f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (flo, fhi) = (f(lo)?, f(hi)?);
    if flo.signum() == fhi.signum() {
        return Err(Error::InvalidInput("no sign change on the bracket".into()));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid)?.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * hi.abs().max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Point of `Σ_q` on the exceptional circle `|β| = 4`.
pub fn exceptional_point(q: f64) -> Result<[f64; 2]> {
    if q <= 0.5 {
        return Err(Error::InvalidInput(format!("q = {q} must exceed 1/2")));
    }
    let branch = |e1: f64| -> Result<f64> { Ok(e1 / (4.0 * PI) * complete_k(EllipticParameter::new(e1 * e1 / 16.0)?) + 0.5 - q) };
    let e1 = solve_monotone(branch, 1e-12, EXCEPTIONAL_BRANCH_LIMIT)?;
    Ok([e1, (16.0 - e1 * e1).sqrt()])
}

/// Boundary points of `Σ_q` on the `e3` axis: `2/q` and, for `q < 1`, `2/(1−q)`.
pub fn axis_limits(q: f64) -> Result<(f64, Option<f64>)> {
    if q <= 0.5 {
        return Err(Error::InvalidInput(format!("q = {q} must exceed 1/2")));
    }
    let lower = solve_monotone(|e3| Ok(field(0.0, e3)? - q), 1e-9, 4.0 - 1e-12)?;
    let upper = if q < 1.0 { Some(solve_monotone(|e3| Ok(field(0.0, e3)? - q), 4.0 + 1e-12, 1e9)?) } else { None };
    Ok((lower, upper))
}

/// Moves a symmetric modulus onto `Σ_q`.
pub fn snap_to_modular_curve(modulus: &Modulus, q: f64) -> Result<Modulus> {
    let (e1, e3) = (modulus.e1(), modulus.e3());
    if !modulus.is_symmetric() {
        return Err(Error::InvalidModulus("a symmetric modulus is required".into()));
    }
    if is_exceptional(modulus)? {
        let [a, b] = exceptional_point(q)?;
        return Modulus::symmetric(a, b);
    }
    let x = correct([e1, e3], q, 1e-13).ok_or(Error::ContinuationStall { e1, e3 })?;
    Modulus::symmetric(x[0], x[1])
}

/// `P(β) = π(e3²−e1²)|β| / (16λK(m))`.
pub fn time_periodicity_function(modulus: &Modulus) -> Result<f64> {
    if !modulus.is_symmetric() {
        return Err(Error::InvalidModulus("a symmetric modulus is required".into()));
    }
    period_function_at(modulus.e1(), modulus.e3())
}

fn symmetric_lambda(e1: f64, e3: f64) -> f64 {
    0.25 * ((e1 * e1 + e3 * e3 - 16.0).powi(2) + 64.0 * e1 * e1).sqrt()
}

fn period_function_at(e1: f64, e3: f64) -> Result<f64> {
    let r = e1.hypot(e3);
    let k = complete_k(EllipticParameter::new(e1 * e1 / (r * r))?);
    Ok(PI * (e3 * e3 - e1 * e1) * r / (16.0 * symmetric_lambda(e1, e3) * k))
}

fn point_record(x: [f64; 2]) -> Result<ModularPoint> {
    let [e1, e3] = x;
    let r = e1.hypot(e3);
    let k = complete_k(EllipticParameter::new(e1 * e1 / (r * r))?);
    Ok(ModularPoint {
        e1,
        e3,
        phi2_regularized: field(e1, e3)?,
        lambda: symmetric_lambda(e1, e3),
        omega: 8.0 * k / r,
        period_function: period_function_at(e1, e3)?,
    })
}

fn near_circle(x: [f64; 2]) -> bool {
    (x[0].hypot(x[1]) - 4.0).abs() < 10.0 * EXCEPTIONAL_TOLERANCE
}

/// Traces `Σ_q` from its lower axis point by predictor–corrector continuation.
pub fn scan_modular_curve(q: f64, cfg: &ScanConfig) -> Result<ModularTrace> {
    let (lower, upper_axis) = axis_limits(q)?;
    let star = exceptional_point(q)?;
    let mut path = vec![[0.0, lower]];
    let mut x = [0.0, lower];
    let mut tangent = [1.0, 0.0];
    let mut step = cfg.initial_step;
    let mut failures = 0;
    let mut exceptional = None;
    let mut upper_limit = None;
    let mut unbounded = false;
    while path.len() < cfg.max_points {
        let g = gradient(x[0], x[1])?;
        let mut t = [-g[1], g[0]];
        let n = t[0].hypot(t[1]);
        t = [t[0] / n, t[1] / n];
        if t[0] * tangent[0] + t[1] * tangent[1] < 0.0 {
            t = [-t[0], -t[1]];
        }
        let pred = [x[0] + step * t[0], x[1] + step * t[1]];
        if pred[0] <= 0.0 {
            let e3 = upper_axis.ok_or(Error::ContinuationStall { e1: x[0], e3: x[1] })?;
            upper_limit = Some([0.0, e3]);
            path.push([0.0, e3]);
            break;
        }
        if exceptional.is_none() && ((x[0].hypot(x[1]) - 4.0) * (pred[0].hypot(pred[1]) - 4.0) <= 0.0 || near_circle(pred)) {
            exceptional = Some(star);
            path.push(star);
            x = [star[0] + cfg.initial_step * t[0], star[1] + cfg.initial_step * t[1]];
            x = correct(x, q, cfg.newton_tolerance).ok_or(Error::ContinuationStall { e1: star[0], e3: star[1] })?;
            path.push(x);
            tangent = t;
            continue;
        }
        match correct(pred, q, cfg.newton_tolerance) {
            Some(y) if !near_circle(y) && (y[0] - x[0]).hypot(y[1] - x[1]) < 2.0 * step => {
                failures = 0;
                tangent = t;
                x = y;
                path.push(x);
                step = (2.0 * step).min(cfg.initial_step);
                if x[0] > cfg.e1_max || x[1] > cfg.e3_max {
                    unbounded = true;
                    break;
                }
            }
            _ => {
                failures += 1;
                step *= 0.5;
                if failures >= 5 || step < cfg.min_step {
                    return Err(Error::ContinuationStall { e1: x[0], e3: x[1] });
                }
            }
        }
    }
    let points = path.par_iter().map(|x| point_record(*x)).collect::<Result<Vec<_>>>()?;
    let asymptotic_slope = unbounded.then(|| x[1] / x[0]);
    Ok(ModularTrace { q, points, lower_limit: [0.0, lower], upper_limit, exceptional, unbounded, asymptotic_slope })
}

/// Minimum of `P` on `Σ_q`, refined by golden-section search between the neighbours of the
/// smallest traced value.
pub fn minimize_period_function(trace: &ModularTrace) -> Result<ModularPoint> {
    let pts = &trace.points;
    let i = (1..pts.len().saturating_sub(1))
        .min_by(|a, b| pts[*a].period_function.total_cmp(&pts[*b].period_function))
        .ok_or_else(|| Error::InvalidInput("trace too short".into()))?;
    let (a, b) = ([pts[i - 1].e1, pts[i - 1].e3], [pts[i + 1].e1, pts[i + 1].e3]);
    let at = |t: f64| -> Result<ModularPoint> {
        let x = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
        let y = correct(x, trace.q, 1e-13).ok_or(Error::ContinuationStall { e1: x[0], e3: x[1] })?;
        point_record(y)
    };
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut c = hi - phi * (hi - lo);
    let mut d = lo + phi * (hi - lo);
    let (mut fc, mut fd) = (at(c)?.period_function, at(d)?.period_function);
    for _ in 0..80 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = at(c)?.period_function;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = at(d)?.period_function;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    at(0.5 * (lo + hi))
}
