use num_complex::Complex64;

use super::modulus::{quartic_from_modulus, Modulus, QuarticData};
use super::profile::{curvature_profile, hamiltonian};
use crate::error::{Error, Result};
use crate::geom::{frenet_frames, CurvatureProfile, Frame};
use crate::linalg::{ComplexPair, Mat2};

/// Distance `||β| − 4|` below which a symmetric modulus counts as exceptional.
pub const EXCEPTIONAL_TOLERANCE: f64 = 1e-5;
const DEGENERACY_TOLERANCE: f64 = 1e-8;

/// Whether the eigenvector fields vanish at `s = 0` (`8e2 + b + 4λ = 0`).
pub fn is_exceptional(modulus: &Modulus) -> Result<bool> {
    if modulus.is_symmetric() {
        return Ok((modulus.norm() - 4.0).abs() < EXCEPTIONAL_TOLERANCE);
    }
    let q = quartic_from_modulus(modulus)?;
    let e2 = modulus.e2();
    let g = 8.0 * e2 + q.b + 4.0 * q.lambda;
    Ok(g.abs() < EXCEPTIONAL_TOLERANCE * EXCEPTIONAL_TOLERANCE * (8.0 * e2.abs() + q.b.abs() + 4.0 * q.lambda))
}

/// `Λ = (16(4−a) + (b+4λ)k) / (4(8k+4λ+b))`.
pub fn lambda_density(q: &QuarticData, k: f64) -> f64 {
    (16.0 * (4.0 - q.a) + (q.b + 4.0 * q.lambda) * k) / (4.0 * (8.0 * k + 4.0 * q.lambda + q.b))
}

/// Eigenvectors `V¹` (for `−λ`) and `V²` (for `λ`) of `H`.
pub fn eigenvectors(h: &Mat2, lambda: f64) -> (ComplexPair, ComplexPair) {
    let l = Complex64::new(lambda, 0.0);
    (ComplexPair::new(h.get(0, 1), -h.get(0, 0) - l), ComplexPair::new(l - h.get(1, 1), h.get(1, 0)))
}

/// Unitary `Γ` with `Γ H Γ⁻¹ = diag(−λ, λ)`, built from the eigenvectors of `H`.
pub fn diagonalizing_frame(h: &Mat2, lambda: f64) -> Result<Mat2> {
    let (v1, v2) = eigenvectors(h, lambda);
    let l = Complex64::new(lambda, 0.0);
    let (alt1, alt2) = (ComplexPair::new(h.get(1, 1) + l, -h.get(1, 0)), ComplexPair::new(h.get(0, 1), l - h.get(0, 0)));
    let pick = |a: ComplexPair, b: ComplexPair| if a.norm() >= b.norm() { a } else { b };
    let (w1, w2) = (pick(v1, alt1), pick(v2, alt2));
    if w1.norm() < DEGENERACY_TOLERANCE || w2.norm() < DEGENERACY_TOLERANCE {
        return Err(Error::EigenvectorDegeneracy(w1.norm().min(w2.norm())));
    }
    let w = Mat2::from_columns(w1.scale(Complex64::new(1.0 / w1.norm(), 0.0)), w2.scale(Complex64::new(1.0 / w2.norm(), 0.0)));
    Ok(w.adjoint())
}

#[derive(Debug, Clone)]
pub struct QuadratureFrame {
    pub profile: CurvatureProfile,
    pub frames: Vec<Frame>,
    pub v1: Vec<ComplexPair>,
    pub v2: Vec<ComplexPair>,
    /// Phases of the two rows, zero at `s = 0`.
    pub theta1: Vec<f64>,
    pub theta2: Vec<f64>,
    /// `∫₀^ω k ds` and `∫₀^ω Λ ds`.
    pub total_curvature: f64,
    pub total_lambda: f64,
}

impl QuadratureFrame {
    /// Largest distance between these frames and Frenet integration seeded at `s = 0`.
    pub fn frenet_discrepancy(&self) -> f64 {
        let direct = frenet_frames(&self.profile, &self.frames[0]);
        direct.iter().zip(&self.frames).map(|(a, b)| (a.matrix() - b.matrix()).max_abs()).fold(0.0, f64::max)
    }
}

pub fn reconstruct_frame_by_quadrature(modulus: &Modulus, n: usize) -> Result<QuadratureFrame> {
    if is_exceptional(modulus)? {
        return Err(Error::ExceptionalModulus);
    }
    let q = quartic_from_modulus(modulus)?;
    let profile = curvature_profile(modulus, n)?;
    let grid = profile.grid();
    let ks = grid.derivative(&profile.values, 1);
    let mut v1 = Vec::with_capacity(n);
    let mut v2 = Vec::with_capacity(n);
    for (k, d) in profile.values.iter().zip(&ks) {
        let (a, b) = eigenvectors(&hamiltonian(&q, *k, *d), q.lambda);
        let small = a.norm().min(b.norm());
        if small < DEGENERACY_TOLERANCE {
            return Err(Error::EigenvectorDegeneracy(small));
        }
        v1.push(a);
        v2.push(b);
    }
    let lam: Vec<f64> = profile.values.iter().map(|k| lambda_density(&q, *k)).collect();
    let d1: Vec<f64> = profile.values.iter().zip(&lam).map(|(k, l)| 0.75 * k + l).collect();
    let d2: Vec<f64> = profile.values.iter().zip(&lam).map(|(k, l)| 0.25 * k - l).collect();
    let theta1 = grid.antiderivative(&d1);
    let theta2 = grid.antiderivative(&d2);
    let frames = (0..n)
        .map(|i| {
            let w = Mat2::from_columns(
                v1[i].scale(Complex64::new(1.0 / v1[i].norm(), 0.0)),
                v2[i].scale(Complex64::new(1.0 / v2[i].norm(), 0.0)),
            );
            Frame(Mat2::diag(Complex64::from_polar(1.0, theta1[i]), Complex64::from_polar(1.0, theta2[i])) * w.adjoint())
        })
        .collect();
    Ok(QuadratureFrame {
        total_curvature: grid.integral(&profile.values),
        total_lambda: grid.integral(&lam),
        profile,
        frames,
        v1,
        v2,
        theta1,
        theta2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvector_norms() {
        let md = Modulus::symmetric(1.3, 2.1).unwrap();
        let q = quartic_from_modulus(&md).unwrap();
        let k = curvature_profile(&md, 64).unwrap();
        let ks = k.grid().derivative(&k.values, 1);
        let (k, ks) = (k.values[9], ks[9]);
        let h = hamiltonian(&q, k, ks);
        let (v1, v2) = eigenvectors(&h, q.lambda);
        let expect = 0.5 * q.lambda * (8.0 * k + 4.0 * q.lambda + q.b);
        assert!((v1.norm_sqr() - expect).abs() < 1e-9 && (v2.norm_sqr() - expect).abs() < 1e-9);
        let hv = h.apply(&v1);
        assert!((hv - v1.scale(Complex64::new(-q.lambda, 0.0))).norm() < 1e-9);
    }

    #[test]
    fn quadrature_matches_frenet() {
        for md in [
            Modulus::symmetric(0.600642, 2.44722).unwrap(),
            Modulus::symmetric(3.245612, 10.568031).unwrap(),
            Modulus::dnoidal(3.0, 1.0, 0.5).unwrap(),
            Modulus::cnoidal(2.0, -0.5, 1.3).unwrap(),
        ] {
            let qf = reconstruct_frame_by_quadrature(&md, 512).unwrap();
            let err = qf.frenet_discrepancy();
            assert!(err < 1e-6, "{md:?} {err}");
        }
    }

    #[test]
    fn momentum_is_diagonal() {
        let md = Modulus::symmetric(1.7, 2.2).unwrap();
        let q = quartic_from_modulus(&md).unwrap();
        let qf = reconstruct_frame_by_quadrature(&md, 256).unwrap();
        let ks = qf.profile.grid().derivative(&qf.profile.values, 1);
        let target = Mat2::diag(Complex64::new(-q.lambda, 0.0), Complex64::new(q.lambda, 0.0));
        for (i, f) in qf.frames.iter().enumerate() {
            let g = f.matrix();
            let m = g * hamiltonian(&q, qf.profile.values[i], ks[i]) * g.adjoint();
            assert!((m - target).max_abs() < 1e-7);
        }
    }

    #[test]
    fn exceptional_is_signalled() {
        let md = Modulus::symmetric(2.4, 3.2).unwrap();
        assert!(matches!(reconstruct_frame_by_quadrature(&md, 64), Err(Error::ExceptionalModulus)));
    }
}
