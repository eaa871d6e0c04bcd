pub mod diffalg;
pub mod ellip;
pub mod error;
pub mod flow;
pub mod geom;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod spectral;
pub mod stationary;

pub use error::{Error, Result};
