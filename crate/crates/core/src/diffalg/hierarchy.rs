use super::poly::{rational, DiffPoly};
use crate::error::{Error, Result};

pub const MAX_LEVEL: usize = 8;

/// One member of the mKdV hierarchy.
///
/// `m` is the flow polynomial, `rho` the conserved density, `l = 2 E(rho)`,
/// and `n` satisfies `D(n) = u_0 m`.
#[derive(Debug, Clone, PartialEq)]
pub struct HierarchyLevel {
    pub j: usize,
    pub rho: DiffPoly,
    pub m: DiffPoly,
    pub l: DiffPoly,
    pub n: DiffPoly,
}

impl HierarchyLevel {
    /// `ρ_1 = ½u²`, `M_1 = u_1`.
    pub fn first() -> Result<Self> {
        let u = DiffPoly::var(0);
        let rho = (&u * &u).scale(&rational(1, 2));
        let m = DiffPoly::var(1);
        let n = (&u * &m).integrate_total()?;
        Ok(Self { j: 1, l: rho.euler_operator().scale(&rational(2, 1)), rho, m, n })
    }

    /// Checks the defining identities exactly.
    pub fn verify(&self) -> Result<()> {
        let u = DiffPoly::var(0);
        let e_rho = self.rho.euler_operator();
        if self.n.total_derivative() != &u * &self.m {
            return Err(Error::Consistency(format!("D(N_{0}) != u M_{0}", self.j)));
        }
        if e_rho.total_derivative() != self.m {
            return Err(Error::Consistency(format!("D E(rho_{0}) != M_{0}", self.j)));
        }
        if self.l != e_rho.scale(&rational(2, 1)) {
            return Err(Error::Consistency(format!("L_{0} != 2 E(rho_{0})", self.j)));
        }
        Ok(())
    }
}

/// `ℜ P = D²P + D(u D⁻¹(u P))`.
pub fn recursion_operator(p: &DiffPoly) -> Result<DiffPoly> {
    let u = DiffPoly::var(0);
    let inner = (&u * p).integrate_total()?;
    Ok(p.total_derivative_n(2) + (&u * &inner).total_derivative())
}

/// `ℰ P = D³P + D(u D⁻¹(u D P))`.
pub fn density_operator(p: &DiffPoly) -> Result<DiffPoly> {
    recursion_operator(&p.total_derivative())
}

pub fn recursion_step(level: &HierarchyLevel) -> Result<HierarchyLevel> {
    let u = DiffPoly::var(0);
    let m = level.m.total_derivative_n(2) + (&u * &level.n).total_derivative();
    let e_rho = level.rho.euler_operator().total_derivative_n(2) + &u * &level.n;
    let rho = DiffPoly::inverse_euler(&e_rho)?.reduce_mod_total_derivatives();
    let n = (&u * &m).integrate_total()?;
    let next = HierarchyLevel { j: level.j + 1, l: rho.euler_operator().scale(&rational(2, 1)), rho, m, n };
    next.verify()?;
    Ok(next)
}

/// Levels `1..=n_max`.
pub fn generate_hierarchy(n_max: usize) -> Result<Vec<HierarchyLevel>> {
    if !(1..=MAX_LEVEL).contains(&n_max) {
        return Err(Error::HierarchyDepth(n_max));
    }
    let mut levels = vec![HierarchyLevel::first()?];
    while levels.len() < n_max {
        let next = recursion_step(levels.last().expect("non-empty"))?;
        levels.push(next);
    }
    Ok(levels)
}
