use crate::diffalg::{DiffPoly, HierarchyLevel};
use crate::error::{Error, Result};
use crate::geom::CurvatureProfile;

fn level(levels: &[HierarchyLevel], j: usize) -> Result<&HierarchyLevel> {
    levels.iter().find(|l| l.j == j).ok_or_else(|| Error::InvalidInput(format!("hierarchy level {j} not available")))
}

fn eval_on(poly: &DiffPoly, k: &CurvatureProfile) -> Vec<f64> {
    let order = poly.max_jet_order().unwrap_or(0);
    poly.compile().eval_samples(&k.grid().jets(&k.values, order))
}

/// Value of `∫ L_m D(L_j) ds` with the L¹ norm of its integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pairing {
    pub value: f64,
    pub integrand_l1: f64,
}

pub fn symplectic_pairing(levels: &[HierarchyLevel], m: usize, j: usize, k: &CurvatureProfile) -> Result<Pairing> {
    let lm = eval_on(&level(levels, m)?.l, k);
    let dlj = eval_on(&level(levels, j)?.l.total_derivative(), k);
    let h = k.spacing();
    let value = lm.iter().zip(&dlj).map(|(a, b)| a * b).sum::<f64>() * h;
    let integrand_l1 = lm.iter().zip(&dlj).map(|(a, b)| (a * b).abs()).sum::<f64>() * h;
    Ok(Pairing { value, integrand_l1 })
}

/// `∫₀^L ρ_j ds` for every supplied level.
pub fn conserved_integrals(levels: &[HierarchyLevel], k: &CurvatureProfile) -> Vec<f64> {
    levels.iter().map(|l| eval_on(&l.rho, k).iter().sum::<f64>() * k.spacing()).collect()
}

/// Components `(p, q, r) = (N_j, M_j, L_j)` of `V_j = p γ_s + q (iγ_s) + r (iγ)`.
pub fn vector_field_components(levels: &[HierarchyLevel], j: usize, k: &CurvatureProfile) -> Result<[Vec<f64>; 3]> {
    let l = level(levels, j)?;
    Ok([eval_on(&l.n, k), eval_on(&l.m, k), eval_on(&l.l, k)])
}

/// `(q, r) = (k_s, 2k)` of the Hamiltonian field of arclength.
pub fn hamiltonian_length_field(k: &CurvatureProfile) -> (Vec<f64>, Vec<f64>) {
    (k.grid().derivative(&k.values, 1), k.values.iter().map(|v| 2.0 * v).collect())
}
