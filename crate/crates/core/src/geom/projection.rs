use num_complex::Complex64;

use super::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::linalg::{ComplexPair, Mat2, Point3};

/// Rotation `σ(w)` of the spin covering, returned row-major.
pub fn sigma(w: &ComplexPair) -> [[f64; 3]; 3] {
    let (w1, w2) = (w.z1, w.z2);
    let p = w1 * w2.conj();
    let q = w1 * w2;
    let d = w1 * w1 - w2 * w2;
    let s = w1 * w1 + w2 * w2;
    let col1 = [w1.norm_sqr() - w2.norm_sqr(), 2.0 * p.re, -2.0 * p.im];
    let col2 = [-2.0 * q.re, d.re, -s.im];
    let col3 = [-2.0 * q.im, d.im, s.re];
    std::array::from_fn(|i| [col1[i], col2[i], col3[i]])
}

/// Clifford map `π_C(w) = σ(w) e₁`.
pub fn clifford_point(w: &ComplexPair) -> Point3 {
    let p = w.z1 * w.z2.conj();
    [w.z1.norm_sqr() - w.z2.norm_sqr(), 2.0 * p.re, -2.0 * p.im]
}

pub fn clifford_projection(curve: &SampledCurve) -> Vec<Point3> {
    curve.samples.iter().map(clifford_point).collect()
}

/// The SU(2) matrix `(w, w*)`.
pub fn su2_matrix(w: &ComplexPair) -> Mat2 {
    Mat2::from_columns(*w, w.star())
}

/// A unit `w` with `σ(w) = r` (the other preimage is `−w`); `r` is row-major in SO(3).
pub fn su2_from_rotation(r: &[[f64; 3]; 3]) -> ComplexPair {
    let tr = r[0][0] + r[1][1] + r[2][2];
    let q = if tr > 0.0 {
        let s = 2.0 * (1.0 + tr).sqrt();
        [0.25 * s, (r[2][1] - r[1][2]) / s, (r[0][2] - r[2][0]) / s, (r[1][0] - r[0][1]) / s]
    } else if r[0][0] > r[1][1] && r[0][0] > r[2][2] {
        let s = 2.0 * (1.0 + r[0][0] - r[1][1] - r[2][2]).sqrt();
        [(r[2][1] - r[1][2]) / s, 0.25 * s, (r[0][1] + r[1][0]) / s, (r[0][2] + r[2][0]) / s]
    } else if r[1][1] > r[2][2] {
        let s = 2.0 * (1.0 + r[1][1] - r[0][0] - r[2][2]).sqrt();
        [(r[0][2] - r[2][0]) / s, (r[0][1] + r[1][0]) / s, 0.25 * s, (r[1][2] + r[2][1]) / s]
    } else {
        let s = 2.0 * (1.0 + r[2][2] - r[0][0] - r[1][1]).sqrt();
        [(r[1][0] - r[0][1]) / s, (r[0][2] + r[2][0]) / s, (r[1][2] + r[2][1]) / s, 0.25 * s]
    };
    ComplexPair::new(Complex64::new(q[0], -q[1]), Complex64::new(q[3], -q[2]))
}

pub const POLE_TOLERANCE: f64 = 1e-6;

/// Heisenberg projection from `S³ \ {(−1, 0)}` to ℝ³.
pub fn heisenberg_point(p: &ComplexPair) -> Result<Point3> {
    heisenberg_indexed(0, p)
}

fn heisenberg_indexed(index: usize, p: &ComplexPair) -> Result<Point3> {
    let one = Complex64::new(1.0, 0.0);
    let distance = (p.z1 + one).norm().hypot(p.z2.norm());
    if distance < POLE_TOLERANCE {
        return Err(Error::Pole { index, distance });
    }
    let i = Complex64::i();
    let w = i * 2f64.sqrt() * p.z2 / (one + p.z1);
    let z = i * (one - p.z1) / (one + p.z1);
    Ok([w.re, w.im, z.re])
}

pub fn heisenberg_projection(curve: &SampledCurve) -> Result<Vec<Point3>> {
    curve.samples.iter().enumerate().map(|(i, p)| heisenberg_indexed(i, p)).collect()
}

/// Drop the vertical coordinate.
pub fn lagrangian_projection(points: &[Point3]) -> Vec<[f64; 2]> {
    points.iter().map(|p| [p[0], p[1]]).collect()
}
