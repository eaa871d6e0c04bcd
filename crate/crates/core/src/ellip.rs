//! Complete elliptic integrals and Jacobi elliptic functions.
//!
//! The parameter `m` is the square of the Jacobi modulus.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Elliptic parameter `m` (square of the modulus), validated to lie in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EllipticParameter(f64);

impl EllipticParameter {
    pub fn new(m: f64) -> Result<Self> {
        if m.is_finite() && (0.0..1.0).contains(&m) {
            Ok(Self(m))
        } else {
            Err(Error::EllipticDomain(m))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Complementary parameter `1 - m`.
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }
}

impl TryFrom<f64> for EllipticParameter {
    type Error = Error;
    fn try_from(m: f64) -> Result<Self> {
        Self::new(m)
    }
}

/// Complete integral of the first kind, by the arithmetic-geometric mean.
pub fn complete_k(m: EllipticParameter) -> f64 {
    let mut a = 1.0_f64;
    let mut b = m.complement().sqrt();
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    FRAC_PI_2 / a
}

/// Complete integral of the third kind
/// `∫₀^{π/2} dθ / ((1 − n sin²θ) √(1 − m sin²θ))` for `n < 1`.
pub fn complete_pi(n: f64, m: EllipticParameter) -> Result<f64> {
    if !n.is_finite() || n >= 1.0 {
        return Err(Error::CharacteristicDomain(n));
    }
    let mc = m.complement();
    if n == 0.0 {
        return Ok(complete_k(m));
    }
    if n > 0.0 {
        return Ok(carlson_rf(0.0, mc, 1.0) + n / 3.0 * carlson_rj(0.0, mc, 1.0, 1.0 - n));
    }
    // Negative characteristic: map to N = (m - n)/(1 - n) in (m, 1) so that the
    // R_J term stays positive and no cancellation occurs for large |n|.
    let mv = m.value();
    let big_n = (mv - n) / (1.0 - n);
    let p = mc / (1.0 - n);
    let k = carlson_rf(0.0, mc, 1.0);
    let pi_big = k + big_n / 3.0 * carlson_rj(0.0, mc, 1.0, p);
    let d = mv - n;
    Ok(mv / d * k + (-n * mc) / ((1.0 - n) * d) * pi_big)
}

/// Jacobi elliptic functions at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobi {
    pub cn: f64,
    pub dn: f64,
    pub sn: f64,
}

/// `(cn, dn, sn)` at `u` by argument reduction modulo `4K` and descending Landen.
pub fn jacobi_cn_dn_sn(u: f64, m: EllipticParameter) -> Jacobi {
    let mv = m.value();
    if mv == 0.0 {
        return Jacobi { cn: u.cos(), dn: 1.0, sn: u.sin() };
    }
    let period = 4.0 * complete_k(m);
    let u = u - period * (u / period).round();

    let mut a = [0.0_f64; 32];
    let mut c = [0.0_f64; 32];
    a[0] = 1.0;
    let mut b = m.complement().sqrt();
    c[0] = mv.sqrt();
    let mut steps = 0;
    while steps + 1 < a.len() {
        if c[steps].abs() <= f64::EPSILON {
            break;
        }
        let (an, bn) = (a[steps], b);
        a[steps + 1] = 0.5 * (an + bn);
        c[steps + 1] = 0.5 * (an - bn);
        b = (an * bn).sqrt();
        steps += 1;
    }
    let mut phi = (1u64 << steps) as f64 * a[steps] * u;
    for j in (1..=steps).rev() {
        phi = 0.5 * (phi + (c[j] * phi.sin() / a[j]).asin());
    }
    let (sn, cn) = phi.sin_cos();
    let dn = (1.0 - mv * sn * sn).sqrt();
    Jacobi { cn, dn, sn }
}

const DUPLICATION_TOL: f64 = 1e-4;

/// Carlson's symmetric integral `R_F(x, y, z)`; at most one argument may vanish.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    let (mut x, mut y, mut z) = (x, y, z);
    loop {
        let mu = (x + y + z) / 3.0;
        let dx = 1.0 - x / mu;
        let dy = 1.0 - y / mu;
        let dz = 1.0 - z / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()) < DUPLICATION_TOL {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / mu.sqrt();
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
    }
}

/// Degenerate integral `R_C(x, y)` for `y > 0`.
pub fn carlson_rc(x: f64, y: f64) -> f64 {
    let (mut x, mut y) = (x, y);
    loop {
        let mu = (x + 2.0 * y) / 3.0;
        let s = (y - mu) / mu;
        if s.abs() < DUPLICATION_TOL {
            let poly = 1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)));
            return poly / mu.sqrt();
        }
        let lam = 2.0 * x.sqrt() * y.sqrt() + y;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
    }
}

/// Carlson's integral `R_J(x, y, z, p)` for `p > 0`.
pub fn carlson_rj(x: f64, y: f64, z: f64, p: f64) -> f64 {
    const C1: f64 = 3.0 / 14.0;
    const C2: f64 = 1.0 / 3.0;
    const C3: f64 = 3.0 / 22.0;
    const C4: f64 = 3.0 / 26.0;
    const C5: f64 = 0.75 * C3;
    const C6: f64 = 1.5 * C4;
    const C7: f64 = 0.5 * C2;
    const C8: f64 = C3 + C3;
    let (mut x, mut y, mut z, mut p) = (x, y, z, p);
    let mut sum = 0.0;
    let mut fac = 1.0;
    loop {
        let ave = 0.2 * (x + y + z + 2.0 * p);
        let dx = (ave - x) / ave;
        let dy = (ave - y) / ave;
        let dz = (ave - z) / ave;
        let dp = (ave - p) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()).max(dp.abs()) < DUPLICATION_TOL {
            let ea = dx * (dy + dz) + dy * dz;
            let eb = dx * dy * dz;
            let ec = dp * dp;
            let ed = ea - 3.0 * ec;
            let ee = eb + 2.0 * dp * (ea - ec);
            let series = 1.0 + ed * (-C1 + C5 * ed - C6 * ee) + eb * (C7 + dp * (-C8 + dp * C4)) + dp * ea * (C2 - dp * C3) - C2 * dp * ec;
            return 3.0 * sum + fac * series / (ave * ave.sqrt());
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * (sy + sz) + sy * sz;
        let alpha = (p * (sx + sy + sz) + sx * sy * sz).powi(2);
        let beta = p * (p + lam).powi(2);
        sum += fac * carlson_rc(alpha, beta);
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        p = 0.25 * (p + lam);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn param(m: f64) -> EllipticParameter {
        EllipticParameter::new(m).unwrap()
    }

    #[allow(clippy::too_many_arguments)]
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) + simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1)
        }
    }

    fn quad(f: &dyn Fn(f64) -> f64) -> f64 {
        let (a, b) = (0.0, FRAC_PI_2);
        simpson(f, a, b, f(a), f(0.5 * (a + b)), f(b), 1e-15, 40)
    }

    #[test]
    fn k_at_zero_is_half_pi() {
        assert!((complete_k(param(0.0)) - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn k_matches_quadrature() {
        for (m, tol) in [(0.5, 1e-12), (0.99, 1e-10)] {
            let oracle = quad(&|t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt());
            let k = complete_k(param(m));
            assert!((k - oracle).abs() <= tol * oracle, "m={m}: {k} vs {oracle}");
        }
    }

    #[test]
    fn pi_reduces_to_k_at_zero_characteristic() {
        let m = param(0.3);
        assert!((complete_pi(0.0, m).unwrap() - complete_k(m)).abs() < 1e-15);
    }

    #[test]
    fn pi_elementary_at_m_zero() {
        let v = complete_pi(-1.0, param(0.0)).unwrap();
        assert!((v - PI / (2.0 * 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn pi_matches_quadrature() {
        for (n, m) in [(-0.7, 0.6), (0.4, 0.2), (-30.0, 0.9), (0.9, 0.1)] {
            let oracle = quad(&|t: f64| {
                let s2 = t.sin().powi(2);
                1.0 / ((1.0 - n * s2) * (1.0 - m * s2).sqrt())
            });
            let v = complete_pi(n, param(m)).unwrap();
            assert!((v - oracle).abs() <= 1e-11 * oracle, "n={n} m={m}: {v} vs {oracle}");
        }
    }

    #[test]
    fn pi_large_negative_characteristic_tracks_asymptote() {
        // Π(n, m) ~ π / (2√(−n)) as n → −∞
        let n = -1e12;
        let v = complete_pi(n, param(0.3)).unwrap();
        let asym = FRAC_PI_2 / (-n).sqrt();
        assert!((v / asym - 1.0).abs() < 1e-5);
    }

    #[test]
    fn pi_domain_errors() {
        assert!(complete_pi(1.0, param(0.2)).is_err());
        assert!(complete_pi(f64::NAN, param(0.2)).is_err());
        assert!(EllipticParameter::new(1.0).is_err());
        assert!(EllipticParameter::new(-0.1).is_err());
    }

    #[test]
    fn jacobi_at_origin() {
        for m in [0.0, 0.3, 0.95] {
            let j = jacobi_cn_dn_sn(0.0, param(m));
            assert_eq!((j.cn, j.dn, j.sn), (1.0, 1.0, 0.0));
        }
    }

    #[test]
    fn jacobi_quarter_period() {
        let m = param(0.4);
        let j = jacobi_cn_dn_sn(complete_k(m), m);
        assert!(j.cn.abs() < 1e-12);
        assert!((j.dn - 0.6f64.sqrt()).abs() < 1e-12);
        assert!((j.sn - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_matches_ode_integration() {
        let m = 0.81;
        let rhs = |y: [f64; 3]| [y[1] * y[2], -y[0] * y[2], -m * y[0] * y[1]];
        let mut y = [0.0, 1.0, 1.0];
        let steps = 13_000;
        let h = 1.3 / steps as f64;
        for _ in 0..steps {
            let k1 = rhs(y);
            let k2 = rhs(std::array::from_fn(|i| y[i] + 0.5 * h * k1[i]));
            let k3 = rhs(std::array::from_fn(|i| y[i] + 0.5 * h * k2[i]));
            let k4 = rhs(std::array::from_fn(|i| y[i] + h * k3[i]));
            y = std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
        }
        let j = jacobi_cn_dn_sn(1.3, param(m));
        assert!((j.sn - y[0]).abs() < 1e-12);
        assert!((j.cn - y[1]).abs() < 1e-12);
        assert!((j.dn - y[2]).abs() < 1e-12);
        assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() < 1e-12);
        assert!((j.dn * j.dn + m * j.sn * j.sn - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_long_arguments_are_periodic() {
        let m = param(0.7);
        let p = 4.0 * complete_k(m);
        for u in [0.3, 57.1, -88.8, 9_999.2] {
            let a = jacobi_cn_dn_sn(u, m);
            let b = jacobi_cn_dn_sn(u + p, m);
            assert!((a.cn - b.cn).abs() < 1e-10, "u={u}");
        }
    }

    #[test]
    fn k_increasing_on_grid() {
        let ks: Vec<f64> = (0..100).map(|i| complete_k(param(i as f64 / 100.0))).collect();
        assert!(ks.windows(2).all(|w| w[1] > w[0]));
    }
}
