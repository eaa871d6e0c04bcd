use num_complex::Complex64;
use num_integer::Integer;

use super::curve::{Frame, SampledCurve};
use crate::error::{Error, Result};
use crate::linalg::ComplexPair;

fn check_coprime(m: u32, n: u32) -> Result<()> {
    if m == 0 || n == 0 || m.gcd(&n) != 1 {
        return Err(Error::NotCoprime { m, n });
    }
    Ok(())
}

/// Least period `2π√(mn)` of the torus knot of type `(−m, n)`.
pub fn torus_knot_period(m: u32, n: u32) -> f64 {
    std::f64::consts::TAU * ((m * n) as f64).sqrt()
}

/// Constant curvature `(m − n)/√(mn)`.
pub fn torus_knot_curvature(m: u32, n: u32) -> f64 {
    (m as f64 - n as f64) / ((m * n) as f64).sqrt()
}

/// Frame `(γ, γ_s)` of the constant-curvature knot at arclength `s`.
pub fn torus_knot_frame(m: u32, n: u32, s: f64) -> Frame {
    let (mf, nf) = (m as f64, n as f64);
    let r = (mf * nf).sqrt();
    let norm = 1.0 / (mf + nf).sqrt();
    let e1 = Complex64::from_polar(1.0, -nf * s / r);
    let e2 = Complex64::from_polar(1.0, mf * s / r);
    let i = Complex64::i();
    let gamma = ComplexPair::new(e1 * (mf.sqrt() * norm), e2 * (nf.sqrt() * norm));
    let gamma_s = ComplexPair::new(-i * e1 * (nf.sqrt() * norm), i * e2 * (mf.sqrt() * norm));
    Frame::from_columns(gamma, gamma_s)
}

/// `γ_{m,n}` sampled at `samples` nodes over its least period.
pub fn torus_knot_curve(m: u32, n: u32, samples: usize) -> Result<SampledCurve> {
    check_coprime(m, n)?;
    let period = torus_knot_period(m, n);
    let h = period / samples as f64;
    let pts = (0..samples).map(|i| torus_knot_frame(m, n, i as f64 * h).gamma()).collect();
    SampledCurve::new(pts, period)
}

/// Closed form of the Lagrangian projection of the Heisenberg image of `γ_{m,n}` in the variable `u = √(m/n) s`.
pub fn epicycloid_point(m: u32, n: u32, u: f64) -> [f64; 2] {
    let (mf, nf) = (m as f64, n as f64);
    let c = (2.0 * nf * (mf + nf)).sqrt();
    let d = (2.0 * mf * nf).sqrt();
    let rho = 2.0 * mf + nf + 2.0 * (mf * (mf + nf)).sqrt() * (nf * u / mf).cos();
    let w = (mf + nf) / mf * u;
    [(-c * u.sin() - d * w.sin()) / rho, (c * u.cos() + d * w.cos()) / rho]
}
