use serde::Serialize;

use super::pairing::conserved_integrals;
use super::pde::{CurvatureFlow, FlowConfig, FlowState};
use crate::diffalg::generate_hierarchy;
use crate::error::{Error, Result};
use crate::geom::CurvatureProfile;

/// `(t, ∫ρ_1, ∫ρ_2, ∫ρ_3, max|k|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservationRecord {
    pub t: f64,
    pub integrals: [f64; 3],
    pub max_abs: f64,
}

#[derive(Debug, Clone)]
pub struct EvolutionRun {
    pub snapshots: Vec<FlowState>,
    pub conservation: Vec<ConservationRecord>,
}

impl EvolutionRun {
    /// Largest relative change of each conserved integral over the run.
    pub fn relative_drift(&self) -> [f64; 3] {
        let first = self.conservation[0].integrals;
        std::array::from_fn(|j| {
            let scale = first[j].abs().max(f64::MIN_POSITIVE);
            self.conservation.iter().map(|r| (r.integrals[j] - first[j]).abs() / scale).fold(0.0, f64::max)
        })
    }
}

/// Evolves under `k_t = M_{n+1}` and records `intervals + 1` equally spaced snapshots.
pub fn evolve_with_snapshots(state: &FlowState, n: usize, t_end: f64, intervals: usize, cfg: &FlowConfig) -> Result<EvolutionRun> {
    if intervals == 0 {
        return Err(Error::InvalidInput("at least one snapshot interval is needed".into()));
    }
    let levels = generate_hierarchy(3)?;
    let flow = CurvatureFlow::mkdv(n, state.k.len(), state.k.period)?;
    let record = |t: f64, k: &CurvatureProfile| {
        let c = conserved_integrals(&levels, k);
        ConservationRecord { t, integrals: [c[0], c[1], c[2]], max_abs: k.max_abs() }
    };
    let dt = (t_end - state.t) / intervals as f64;
    let mut snapshots = vec![state.clone()];
    let mut conservation = vec![record(state.t, &state.k)];
    let mut k = state.k.values.clone();
    for i in 1..=intervals {
        k = flow.advance(&k, dt, cfg)?;
        let t = state.t + dt * i as f64;
        let profile = CurvatureProfile::new(k.clone(), state.k.period)?;
        conservation.push(record(t, &profile));
        snapshots.push(FlowState { k: profile, t, frame0: None });
    }
    Ok(EvolutionRun { snapshots, conservation })
}
