//! Exact computer algebra for Hopf structures on the minimal Hopf quivers:
//! the basic n-cycle and the linear chain.

pub mod error;
pub mod graded_hopf;
pub mod hopf_quiver;
pub mod linear;
pub mod path_coalgebra;
pub mod presentations;
pub mod report;
pub mod scalars;
pub mod verifier;

pub use error::{Error, Result};
