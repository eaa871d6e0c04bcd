use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent vector over the jet variables `u_0, u_1, …`, with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Self(exponents)
    }

    pub fn one() -> Self {
        Self(Vec::new())
    }

    /// The single jet variable `u_j`.
    pub fn var(j: usize) -> Self {
        let mut e = vec![0; j + 1];
        e[j] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, j: usize) -> u32 {
        self.0.get(j).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Highest jet order present, `None` for the constant monomial.
    pub fn top_order(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Scaling weight with `u_j` of weight `j + 1`.
    pub fn weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(j, &e)| (j as u32 + 1) * e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn shifted(&self, j: usize, delta: i32) -> Self {
        let mut e = self.0.clone();
        if e.len() <= j {
            e.resize(j + 1, 0);
        }
        e[j] = (e[j] as i32 + delta) as u32;
        Self::new(e)
    }
}

impl Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        let n = self.0.len().max(rhs.0.len());
        Monomial::new((0..n).map(|j| self.exponent(j) + rhs.exponent(j)).collect())
    }
}

/// Higher jet orders sort first; ties broken by larger exponents at the highest index.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for j in (0..n).rev() {
            match other.exponent(j).cmp(&self.exponent(j)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the jet variables with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl DiffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::one())
    }

    /// The jet variable `u_j`.
    pub fn var(j: usize) -> Self {
        Self::term(BigRational::one(), Monomial::var(j))
    }

    pub fn term(coeff: BigRational, mono: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(mono, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono.clone()).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn max_jet_order(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::top_order).max()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Every monomial has odd degree.
    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|m| m.degree() % 2 == 1)
    }

    /// Every monomial has even degree.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.degree() % 2 == 0)
    }

    /// `∂P/∂u_j`.
    pub fn partial(&self, j: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(j);
            if e > 0 {
                out.add_term(m.shifted(j, -1), c * BigRational::from_integer(e.into()));
            }
        }
        out
    }

    /// `D P = Σ_j u_{j+1} ∂P/∂u_j`.
    pub fn total_derivative(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (j, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let mono = m.shifted(j, -1).shifted(j + 1, 1);
                    out.add_term(mono, c * BigRational::from_integer(e.into()));
                }
            }
        }
        out
    }

    /// `D^k P`.
    pub fn total_derivative_n(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.total_derivative())
    }

    /// Variational derivative `E P = Σ_j (−D)^j ∂P/∂u_j`.
    pub fn euler_operator(&self) -> Self {
        let Some(order) = self.max_jet_order() else {
            return Self::zero();
        };
        let mut out = Self::zero();
        for j in 0..=order {
            let mut t = self.partial(j).total_derivative_n(j);
            if j % 2 == 1 {
                t = -t;
            }
            out = out + t;
        }
        out
    }

    /// `∫ P du_j` with zero constant.
    pub fn integrate_wrt(&self, j: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(j) + 1;
            out.add_term(m.shifted(j, 1), c / BigRational::from_integer(e.into()));
        }
        out
    }

    /// `D⁻¹ P`, defined only on the image of `D` (checked through `E P = 0`).
    pub fn integrate_total(&self) -> Result<Self> {
        if !self.euler_operator().is_zero() {
            return Err(Error::NotExactDerivative(self.to_string()));
        }
        let mut rem = self.clone();
        let mut acc = Self::zero();
        while !rem.is_zero() {
            let Some(n) = rem.max_jet_order().filter(|&n| n >= 1) else {
                return Err(Error::NotExactDerivative(self.to_string()));
            };
            let mut lead = Self::zero();
            for (m, c) in &rem.terms {
                match m.exponent(n) {
                    0 => {}
                    1 => lead.add_term(m.shifted(n, -1), c.clone()),
                    _ => return Err(Error::NotExactDerivative(self.to_string())),
                }
            }
            let q = lead.integrate_wrt(n - 1);
            rem = rem - q.total_derivative();
            acc = acc + q;
        }
        Ok(acc)
    }

    /// Homotopy inversion of the Euler operator: a density `ρ` with `E ρ = G`.
    pub fn inverse_euler(g: &Self) -> Result<Self> {
        let mut rho = Self::zero();
        for (m, c) in &g.terms {
            let d = BigRational::from_integer((m.degree() + 1).into());
            rho.add_term(&Monomial::var(0) * m, c / d);
        }
        if rho.euler_operator() != *g {
            return Err(Error::NotVariational(g.to_string()));
        }
        Ok(rho)
    }

    /// Representative modulo total derivatives with no monomial linear in a top variable of order ≥ 1.
    pub fn reduce_mod_total_derivatives(&self) -> Self {
        let mut p = self.clone();
        loop {
            let target = p.terms.iter().find_map(|(m, c)| {
                let n = m.top_order()?;
                (n >= 1 && m.exponent(n) == 1).then(|| (m.clone(), c.clone(), n))
            });
            let Some((m, c, n)) = target else {
                return p;
            };
            let q = Self::term(c, m.shifted(n, -1)).integrate_wrt(n - 1);
            p = p - q.total_derivative();
        }
    }

    /// Floating-point evaluation at a jet `(u_0, u_1, …)`.
    pub fn evaluate(&self, jet: &[f64]) -> Result<f64> {
        if let Some(order) = self.max_jet_order() {
            if jet.len() <= order {
                return Err(Error::JetArity { needed: order + 1, got: jet.len() });
            }
        }
        Ok(self.compile().eval(jet))
    }

    pub fn compile(&self) -> CompiledPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let factors = m.exponents().iter().enumerate().filter(|(_, &e)| e > 0).map(|(j, &e)| (j, e as i32)).collect();
                (c.to_f64().unwrap_or(f64::NAN), factors)
            })
            .collect();
        CompiledPoly { terms, order: self.max_jet_order() }
    }

    /// Split into the part of degree one and the remainder.
    pub fn split_linear(&self) -> (Self, Self) {
        let mut lin = Self::zero();
        let mut rest = Self::zero();
        for (m, c) in &self.terms {
            if m.degree() == 1 {
                lin.add_term(m.clone(), c.clone());
            } else {
                rest.add_term(m.clone(), c.clone());
            }
        }
        (lin, rest)
    }

    pub fn max_abs_coefficient(&self) -> BigRational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

/// Floating-point image of a [`DiffPoly`] for repeated numeric evaluation.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
    order: Option<usize>,
}

impl CompiledPoly {
    pub fn max_jet_order(&self) -> Option<usize> {
        self.order
    }

    pub fn eval(&self, jet: &[f64]) -> f64 {
        self.terms.iter().map(|(c, factors)| factors.iter().fold(*c, |acc, &(j, e)| acc * jet[j].powi(e))).sum()
    }

    /// Evaluate on sampled jets, where `jets[j][i]` is `u_j` at node `i`.
    pub fn eval_samples(&self, jets: &[Vec<f64>]) -> Vec<f64> {
        let n = jets.first().map_or(0, Vec::len);
        let mut jet = vec![0.0; jets.len()];
        (0..n)
            .map(|i| {
                for (slot, col) in jet.iter_mut().zip(jets) {
                    *slot = col[i];
                }
                self.eval(&jet)
            })
            .collect()
    }

    /// `(|c|, degree, top order)` per term.
    pub fn term_shapes(&self) -> impl Iterator<Item = (f64, i32, usize)> + '_ {
        self.terms.iter().map(|(c, f)| {
            let deg = f.iter().map(|&(_, e)| e).sum();
            let top = f.iter().map(|&(j, _)| j).max().unwrap_or(0);
            (c.abs(), deg, top)
        })
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(mut self, rhs: DiffPoly) -> DiffPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        self.clone() + rhs.clone()
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: DiffPoly) -> DiffPoly {
        self + (-rhs)
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        self.clone() - rhs.clone()
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma * mb, ca * cb);
            }
        }
        out
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}
