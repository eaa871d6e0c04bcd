//! Recognizing small-denominator rationals in floating-point data.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Reduced fraction `p/q` with `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rational {
    pub p: i64,
    pub q: u64,
}

impl Rational {
    pub fn new(p: i64, q: u64) -> Self {
        let g = num_integer::gcd(p.unsigned_abs(), q).max(1);
        Self { p: p / g as i64, q: q / g }
    }

    pub fn to_f64(self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Denominator bound and tolerance for [`detect_rational`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RationalDetect {
    pub max_denominator: u64,
    pub tolerance: f64,
}

impl Default for RationalDetect {
    fn default() -> Self {
        Self { max_denominator: 64, tolerance: 1e-9 }
    }
}

/// First continued-fraction convergent of `x` within tolerance and under the denominator bound.
pub fn detect_rational(x: f64, cfg: &RationalDetect) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h1, mut h2) = (1i128, 0i128);
    let (mut k1, mut k2) = (0i128, 1i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let (h, k) = (a as i128 * h1 + h2, a as i128 * k1 + k2);
        if k > cfg.max_denominator as i128 {
            return None;
        }
        if (x - h as f64 / k as f64).abs() <= cfg.tolerance {
            return Some(Rational::new(h as i64, k as u64));
        }
        let frac = r - a;
        if frac <= f64::EPSILON {
            return None;
        }
        (h2, h1, k2, k1) = (h1, h, k1, k);
        r = 1.0 / frac;
    }
    None
}
