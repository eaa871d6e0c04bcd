//! Discrete invariants of closed Legendrian curves.

mod maslov;
mod planar;
mod report;

pub use crate::rational::{detect_rational, Rational, RationalDetect};
pub use maslov::{maslov_index, maslov_with_residual, total_curvature_turns, INTEGRALITY_TOLERANCE};
pub use planar::{crossings, turning_number, Crossing, Sweep, MIN_CROSSING_ANGLE};
pub use report::{bennequin_number, clifford_index_and_spin, invariant_report, InvariantReport, Spin, PERIOD_TOLERANCE};
