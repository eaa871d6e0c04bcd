//! Points of ℂ², 2×2 complex matrices and small real-vector helpers.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type Point3 = [f64; 3];

pub fn dot3(a: &Point3, b: &Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: &Point3, b: &Point3) -> Point3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm3(a: &Point3) -> f64 {
    dot3(a, a).sqrt()
}

/// A vector of ℂ² with the Hermitian product `⟨v, w⟩ = v₁w̄₁ + v₂w̄₂`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexPair {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl ComplexPair {
    pub const fn new(z1: Complex64, z2: Complex64) -> Self {
        Self { z1, z2 }
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.z1 * other.z1.conj() + self.z2 * other.z2.conj()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.z1 * c, self.z2 * c)
    }

    /// `w* = (−w̄₂, w̄₁)`, the unit vector completing `w` to a frame of SU(2).
    pub fn star(&self) -> Self {
        Self::new(-self.z2.conj(), self.z1.conj())
    }
}

impl Add for ComplexPair {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.z1 + o.z1, self.z2 + o.z2)
    }
}

impl Sub for ComplexPair {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.z1 - o.z1, self.z2 - o.z2)
    }
}

/// Row-major 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Self::new(a, ZERO, ZERO, d)
    }

    pub fn from_columns(c0: ComplexPair, c1: ComplexPair) -> Self {
        Self::new(c0.z1, c1.z1, c0.z2, c1.z2)
    }

    pub fn column(&self, j: usize) -> ComplexPair {
        ComplexPair::new(self.0[0][j], self.0[1][j])
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[i][j]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        let m = &self.0;
        Self::new(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self(self.0.map(|r| r.map(|z| z * c)))
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self(self.0.map(|r| r.map(|z| z * c)))
    }

    pub fn apply(&self, v: &ComplexPair) -> ComplexPair {
        let m = &self.0;
        ComplexPair::new(m[0][0] * v.z1 + m[0][1] * v.z2, m[1][0] * v.z1 + m[1][1] * v.z2)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |(A*A − I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self - Self::IDENTITY).max_abs()
    }

    /// Unitary factor of the polar decomposition.
    pub fn polar_unitary(&self) -> Self {
        let s = self.adjoint() * *self;
        let root_det = s.det().re.max(0.0).sqrt();
        let t = (s.trace().re + 2.0 * root_det).sqrt();
        let sqrt_s = (s + Self::IDENTITY.scale_real(root_det)).scale_real(1.0 / t);
        *self * sqrt_s.inverse()
    }

    /// Matrix exponential via the traceless decomposition `A = (tr A/2) I + B`, `B² = −det(B) I`.
    pub fn exp(&self) -> Self {
        let half_tr = self.trace() * 0.5;
        let b = *self - Self::IDENTITY.scale(half_tr);
        let delta = -b.det();
        let root = delta.sqrt();
        let (c, s) = if root.norm() < 1e-4 {
            let d = delta;
            (ONE + d / 2.0 + d * d / 24.0 + d * d * d / 720.0, ONE + d / 6.0 + d * d / 120.0 + d * d * d / 5040.0)
        } else {
            (root.cosh(), root.sinh() / root)
        };
        (Self::IDENTITY.scale(c) + b.scale(s)).scale(half_tr.exp())
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] + o.0[i][j])))
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] - o.0[i][j])))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        Mat2(std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j])))
    }
}
