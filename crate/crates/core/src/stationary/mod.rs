//! Stationary curves of the `Z_1` flow.

mod closure;
mod evolution;
mod modulus;
mod profile;
mod quadrature;
mod scan;

pub use closure::{
    closure_quanta, matrix_order, monodromy, phi2_by_quadrature, phi2_closed_form, phi2_regularized, phi2_regularized_at,
    regularization_shift, standard_frame, standard_phi_loop, ClosureConfig, ClosureReport, PhiLoop, EXCEPTIONAL_BRANCH_LIMIT,
};
pub use evolution::{rigid_motion, time_evolution, time_period};
pub use modulus::{momentum_eigenvalue, quartic_from_modulus, Modulus, ModulusCase, QuarticData};
pub use profile::{
    curvature_profile, first_integral_residual, hamiltonian, momentum_field, second_order_residual, MomentumFrame, FIRST_INTEGRAL_TOLERANCE,
};
pub use quadrature::{
    diagonalizing_frame, eigenvectors, is_exceptional, lambda_density, reconstruct_frame_by_quadrature, QuadratureFrame,
    EXCEPTIONAL_TOLERANCE,
};
pub use scan::{
    axis_limits, exceptional_point, minimize_period_function, scan_modular_curve, snap_to_modular_curve, time_periodicity_function,
    ModularPoint, ModularTrace, ScanConfig,
};
