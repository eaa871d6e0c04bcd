//! Legendrian curves in S³: frames, curvature, projections and lifts.

mod curve;
mod frenet;
mod lift;
mod projection;
pub mod sphere;
mod torus;

pub use curve::{curvature_of, curvature_with, CurvatureProfile, Differentiation, Frame, SampledCurve};
pub use frenet::{frenet_frames, frenet_generator, frenet_reconstruct, integrate_unitary_flow};
pub use lift::{legendrian_lift, Lift};
pub use projection::{
    clifford_point, clifford_projection, heisenberg_point, heisenberg_projection, lagrangian_projection, sigma, su2_from_rotation,
    su2_matrix, POLE_TOLERANCE,
};
pub use torus::{epicycloid_point, torus_knot_curvature, torus_knot_curve, torus_knot_frame, torus_knot_period};
