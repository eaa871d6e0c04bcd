use num_complex::Complex64;

use super::modulus::{quartic_from_modulus, Modulus, QuarticData};
use crate::ellip::jacobi_cn_dn_sn;
use crate::error::{Error, Result};
use crate::geom::{frenet_generator, CurvatureProfile};
use crate::linalg::Mat2;

pub const FIRST_INTEGRAL_TOLERANCE: f64 = 1e-9;
const EIGENVALUE_TOLERANCE: f64 = 1e-7;

fn rhs(q: &QuarticData, k: f64) -> f64 {
    -0.5 * q.derivative(k)
}

/// One wavelength of the stationary curvature at `n` nodes.
pub fn curvature_profile(modulus: &Modulus, n: usize) -> Result<CurvatureProfile> {
    let q = quartic_from_modulus(modulus)?;
    if let Modulus::SymmetricCnoidal { e1, .. } = *modulus {
        let m = q.parameter();
        return CurvatureProfile::from_fn(n, q.omega, |s| -e1 * jacobi_cn_dn_sn(q.scale * s, m).cn);
    }
    integrated_profile(modulus, &q, n)
}

fn integrated_profile(modulus: &Modulus, q: &QuarticData, n: usize) -> Result<CurvatureProfile> {
    if n == 0 {
        return Err(Error::InvalidInput("profile needs at least one node".into()));
    }
    let spread = modulus.roots().iter().fold(1.0f64, |a, r| a.max(r.norm()));
    let h_node = q.omega / n as f64;
    let sub = (h_node * spread / 2e-3).ceil().max(1.0) as usize;
    let h = h_node / sub as f64;
    let (mut k, mut p) = (modulus.e2(), 0.0);
    let mut values = Vec::with_capacity(n);
    let mut drift = 0.0f64;
    for _ in 0..n {
        values.push(k);
        drift = drift.max((p * p + q.eval(k)).abs());
        for _ in 0..sub {
            let (k1, p1) = (p, rhs(q, k));
            let (k2, p2) = (p + 0.5 * h * p1, rhs(q, k + 0.5 * h * k1));
            let (k3, p3) = (p + 0.5 * h * p2, rhs(q, k + 0.5 * h * k2));
            let (k4, p4) = (p + h * p3, rhs(q, k + h * k3));
            k += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            p += h / 6.0 * (p1 + 2.0 * p2 + 2.0 * p3 + p4);
        }
    }
    drift = drift.max((p * p + q.eval(k)).abs());
    if drift > FIRST_INTEGRAL_TOLERANCE {
        return Err(Error::Consistency(format!("first integral drift {drift:.3e}")));
    }
    CurvatureProfile::new(values, q.omega)
}

/// Pointwise `(k')² + P(k)` with `k'` taken spectrally.
pub fn first_integral_residual(q: &QuarticData, k: &CurvatureProfile) -> f64 {
    let ks = k.grid().derivative(&k.values, 1);
    k.values.iter().zip(&ks).map(|(v, d)| (d * d + q.eval(*v)).abs()).fold(0.0, f64::max)
}

/// Pointwise residual of `k'' + ½k³ + ak + ½b = 0`.
pub fn second_order_residual(q: &QuarticData, k: &CurvatureProfile) -> f64 {
    let kss = k.grid().derivative(&k.values, 2);
    k.values.iter().zip(&kss).map(|(v, d)| (d - rhs(q, *v)).abs()).fold(0.0, f64::max)
}

/// Conserved Hermitian field with eigenvalues `±λ`.
pub fn hamiltonian(q: &QuarticData, k: f64, ks: f64) -> Mat2 {
    let d = 2.0 * k + 0.25 * q.b;
    let off = 0.5 * k * k + q.a - 4.0;
    Mat2::new(Complex64::new(d, 0.0), Complex64::new(ks, off), Complex64::new(ks, -off), Complex64::new(-d, 0.0))
}

#[derive(Debug, Clone)]
pub struct MomentumFrame {
    pub h: Vec<Mat2>,
    pub lambda: f64,
    pub eigenvalue_drift: f64,
    /// Largest `|H' + [U, H]|` over the nodes.
    pub conservation_residual: f64,
}

pub fn momentum_field(modulus: &Modulus, k: &CurvatureProfile) -> Result<MomentumFrame> {
    let q = quartic_from_modulus(modulus)?;
    let grid = k.grid();
    let ks = grid.derivative(&k.values, 1);
    let h: Vec<Mat2> = k.values.iter().zip(&ks).map(|(v, d)| hamiltonian(&q, *v, *d)).collect();
    let eigenvalue_drift = h.iter().map(|m| ((-m.det().re).sqrt() - q.lambda).abs()).fold(0.0, f64::max);
    if eigenvalue_drift > EIGENVALUE_TOLERANCE {
        return Err(Error::Consistency(format!("momentum eigenvalue drift {eigenvalue_drift:.3e}")));
    }
    let entry = |r: usize, c: usize| -> (Vec<f64>, Vec<f64>) {
        let re: Vec<f64> = h.iter().map(|m| m.get(r, c).re).collect();
        let im: Vec<f64> = h.iter().map(|m| m.get(r, c).im).collect();
        (grid.derivative(&re, 1), grid.derivative(&im, 1))
    };
    let (d11, d12, d21, d22) = (entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1));
    let conservation_residual = (0..h.len())
        .map(|i| {
            let c = |d: &(Vec<f64>, Vec<f64>)| Complex64::new(d.0[i], d.1[i]);
            let dh = Mat2::new(c(&d11), c(&d12), c(&d21), c(&d22));
            (dh + frenet_generator(k.values[i]).commutator(&h[i])).max_abs()
        })
        .fold(0.0, f64::max);
    Ok(MomentumFrame { h, lambda: q.lambda, eigenvalue_drift, conservation_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_profile_values() {
        let md = Modulus::symmetric(2.0, 2.0).unwrap();
        let k = curvature_profile(&md, 256).unwrap();
        assert!((k.values[0] + 2.0).abs() < 1e-14);
        assert!((k.values[128] - 2.0).abs() < 1e-12);
        assert!(k.values[64].abs() < 1e-12);
    }

    #[test]
    fn reference_amplitude() {
        let k = curvature_profile(&Modulus::symmetric(0.600642, 2.44722).unwrap(), 512).unwrap();
        assert!((k.max_abs() - 0.600642).abs() < 1e-12);
    }

    #[test]
    fn integrated_profiles_satisfy_ode() {
        for md in [Modulus::dnoidal(3.0, 1.0, 0.5).unwrap(), Modulus::cnoidal(2.0, -0.5, 1.3).unwrap()] {
            let q = quartic_from_modulus(&md).unwrap();
            let k = curvature_profile(&md, 256).unwrap();
            assert!(first_integral_residual(&q, &k) < 1e-8, "{md:?}");
            assert!(second_order_residual(&q, &k) < 1e-8, "{md:?}");
            let top = k.values.iter().cloned().fold(f64::MIN, f64::max);
            assert!((top - md.e1()).abs() < 1e-6, "{md:?}");
        }
    }

    #[test]
    fn integrated_matches_closed_form() {
        let sym = Modulus::symmetric(1.1, 2.3).unwrap();
        let cn = Modulus::cnoidal(1.1, -1.1, 2.3).unwrap();
        let a = curvature_profile(&sym, 128).unwrap();
        let b = curvature_profile(&cn, 128).unwrap();
        assert!((a.period - b.period).abs() < 1e-13);
        let err = a.values.iter().zip(&b.values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(err < 1e-9, "{err}");
    }

    #[test]
    fn momentum_is_conserved() {
        for md in [Modulus::symmetric(2.0, 2.0).unwrap(), Modulus::dnoidal(3.0, 1.0, 0.5).unwrap()] {
            let k = curvature_profile(&md, 256).unwrap();
            let mf = momentum_field(&md, &k).unwrap();
            assert!(mf.eigenvalue_drift < 1e-9);
            assert!(mf.conservation_residual < 1e-8, "{}", mf.conservation_residual);
            assert!(mf.h.iter().all(|h| h.trace().norm() == 0.0));
        }
    }

    #[test]
    fn flat_hamiltonian() {
        let q = QuarticData { a: 0.0, b: 0.4, c: 0.0, lambda: 4.0, m: 0.5, scale: 1.0, omega: 1.0 };
        let h = hamiltonian(&q, 0.0, 0.0);
        assert_eq!(h.get(0, 0), Complex64::new(0.1, 0.0));
        assert_eq!(h.get(0, 1), Complex64::new(0.0, -4.0));
        assert_eq!(h.get(1, 0), Complex64::new(0.0, 4.0));
    }
}
