use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ellip::{complete_k, EllipticParameter};
use crate::error::{Error, Result};

/// Root data of the phase polynomial of a stationary curvature profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Modulus {
    /// Four real roots `e1 > e2 > e3 > e4 = −(e1+e2+e3)`.
    Dnoidal { e1: f64, e2: f64, e3: f64 },
    /// Real roots `e1 > e2` and the pair `−(e1+e2)/2 ± i e3`.
    Cnoidal { e1: f64, e2: f64, e3: f64 },
    /// Cnoidal with `e2 = −e1`.
    SymmetricCnoidal { e1: f64, e3: f64 },
}

/// Case tag used by the constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusCase {
    Dnoidal,
    Cnoidal,
    SymmetricCnoidal,
}

fn finite(xs: &[f64]) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

impl Modulus {
    pub fn dnoidal(e1: f64, e2: f64, e3: f64) -> Result<Self> {
        finite(&[e1, e2, e3])?;
        let e4 = -(e1 + e2 + e3);
        if e1 > e2 && e2 > e3 && e3 > e4 {
            Ok(Self::Dnoidal { e1, e2, e3 })
        } else {
            Err(Error::InvalidModulus(format!("dnoidal needs e1 > e2 > e3 > −(e1+e2+e3), got ({e1}, {e2}, {e3})")))
        }
    }

    pub fn cnoidal(e1: f64, e2: f64, e3: f64) -> Result<Self> {
        finite(&[e1, e2, e3])?;
        if e1 > e2 && e3 > 0.0 {
            Ok(Self::Cnoidal { e1, e2, e3 })
        } else {
            Err(Error::InvalidModulus(format!("cnoidal needs e1 > e2 and e3 > 0, got ({e1}, {e2}, {e3})")))
        }
    }

    pub fn symmetric(e1: f64, e3: f64) -> Result<Self> {
        finite(&[e1, e3])?;
        if e1 > 0.0 && e3 > 0.0 {
            Ok(Self::SymmetricCnoidal { e1, e3 })
        } else {
            Err(Error::InvalidModulus(format!("symmetric modulus needs e1 > 0 and e3 > 0, got ({e1}, {e3})")))
        }
    }

    pub fn new(case: ModulusCase, e1: f64, e2: Option<f64>, e3: f64) -> Result<Self> {
        let need = || Error::InvalidModulus("e2 is required for this case".into());
        match case {
            ModulusCase::Dnoidal => Self::dnoidal(e1, e2.ok_or_else(need)?, e3),
            ModulusCase::Cnoidal => Self::cnoidal(e1, e2.ok_or_else(need)?, e3),
            ModulusCase::SymmetricCnoidal => Self::symmetric(e1, e3),
        }
    }

    pub fn case(&self) -> ModulusCase {
        match self {
            Self::Dnoidal { .. } => ModulusCase::Dnoidal,
            Self::Cnoidal { .. } => ModulusCase::Cnoidal,
            Self::SymmetricCnoidal { .. } => ModulusCase::SymmetricCnoidal,
        }
    }

    pub fn e1(&self) -> f64 {
        match *self {
            Self::Dnoidal { e1, .. } | Self::Cnoidal { e1, .. } | Self::SymmetricCnoidal { e1, .. } => e1,
        }
    }

    pub fn e2(&self) -> f64 {
        match *self {
            Self::Dnoidal { e2, .. } | Self::Cnoidal { e2, .. } => e2,
            Self::SymmetricCnoidal { e1, .. } => -e1,
        }
    }

    pub fn e3(&self) -> f64 {
        match *self {
            Self::Dnoidal { e3, .. } | Self::Cnoidal { e3, .. } | Self::SymmetricCnoidal { e3, .. } => e3,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self, Self::SymmetricCnoidal { .. })
    }

    /// `|β| = √(e1² + e3²)` of a symmetric modulus.
    pub fn norm(&self) -> f64 {
        self.e1().hypot(self.e3())
    }

    /// The four roots of the phase polynomial.
    pub fn roots(&self) -> [Complex64; 4] {
        let (e1, e2, e3) = (self.e1(), self.e2(), self.e3());
        match self {
            Self::Dnoidal { .. } => [e1, e2, e3, -(e1 + e2 + e3)].map(|r| Complex64::new(r, 0.0)),
            _ => {
                let mu = -0.5 * (e1 + e2);
                [Complex64::new(e1, 0.0), Complex64::new(e2, 0.0), Complex64::new(mu, e3), Complex64::new(mu, -e3)]
            }
        }
    }
}

/// Coefficients of `P(x) = ¼x⁴ + ax² + bx + c` with the derived wave data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuarticData {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub lambda: f64,
    pub m: f64,
    /// Argument scale: `k` is a function of `scale · s`.
    pub scale: f64,
    pub omega: f64,
}

impl QuarticData {
    pub fn eval(&self, x: f64) -> f64 {
        let x2 = x * x;
        0.25 * x2 * x2 + self.a * x2 + self.b * x + self.c
    }

    pub fn derivative(&self, x: f64) -> f64 {
        x * x * x + 2.0 * self.a * x + self.b
    }

    pub fn parameter(&self) -> EllipticParameter {
        EllipticParameter::new(self.m).expect("validated at construction")
    }
}

pub fn momentum_eigenvalue(a: f64, b: f64, c: f64) -> f64 {
    0.25 * (256.0 - 128.0 * a + 16.0 * a * a + b * b - 16.0 * c).sqrt()
}

pub fn quartic_from_modulus(modulus: &Modulus) -> Result<QuarticData> {
    let roots = modulus.roots();
    let mut poly =
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
    for (deg, r) in roots.iter().enumerate() {
        for i in (1..=deg + 1).rev() {
            let prev = poly[i - 1];
            poly[i] -= *r * prev;
        }
    }
    let (a, b, c) = (0.25 * poly[2].re, 0.25 * poly[3].re, 0.25 * poly[4].re);
    let lambda = momentum_eigenvalue(a, b, c);
    let (e1, e2, e3) = (modulus.e1(), modulus.e2(), modulus.e3());
    let (m, scale, half_periods) = match modulus {
        Modulus::Dnoidal { .. } => {
            let e4 = -(e1 + e2 + e3);
            let g = (e1 - e3) * (e2 - e4);
            ((e1 - e2) * (e3 - e4) / g, 0.25 * g.sqrt(), 2.0)
        }
        Modulus::Cnoidal { .. } | Modulus::SymmetricCnoidal { .. } => {
            let mu = -0.5 * (e1 + e2);
            let aa = (e1 - mu).hypot(e3);
            let bb = (e2 - mu).hypot(e3);
            let m = if modulus.is_symmetric() {
                e1 * e1 / (e1 * e1 + e3 * e3)
            } else {
                ((e1 - e2).powi(2) - (aa - bb).powi(2)) / (4.0 * aa * bb)
            };
            (m, 0.5 * (aa * bb).sqrt(), 4.0)
        }
    };
    if !(m > 0.0 && m < 1.0) || !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::InvalidModulus(format!("degenerate quartic (m = {m}, λ = {lambda})")));
    }
    let omega = half_periods * complete_k(EllipticParameter::new(m)?) / scale;
    Ok(QuarticData { a, b, c, lambda, m, scale, omega })
}
