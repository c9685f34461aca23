//! Exact invariant-form Hodge theory on compact complex surfaces modelled by
//! four-dimensional Lie algebras: cohomologies and harmonic forms, Chern
//! curvature, Chern-Ricci flow and geometric formality.

pub mod alphabet;
pub mod catalog;
pub mod cli;
pub mod curvature;
pub mod error;
pub mod flow;
pub mod formality;
pub mod forms;
pub mod harmonic;
pub mod hodge;
pub mod linalg;
pub mod scalar;

pub use alphabet::Idx;
pub use catalog::{load_surface, AlgebraSpec, Surface};
pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
