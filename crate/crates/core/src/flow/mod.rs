//! Curvature flows of the mKdV hierarchy and the induced frame evolution.

mod frame;
mod monitor;
mod pairing;
mod pde;

pub use frame::{z1_frame_evolution, z1_generator, FrameEvolution, COMPATIBILITY_TOLERANCE};
pub use monitor::{evolve_with_snapshots, ConservationRecord, EvolutionRun};
pub use pairing::{conserved_integrals, hamiltonian_length_field, symplectic_pairing, vector_field_components, Pairing};
pub use pde::{evolve_curvature, CurvatureFlow, EtdStepper, FlowConfig, FlowState};
