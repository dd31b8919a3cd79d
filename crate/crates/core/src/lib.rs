//! Numerical toolkit for the quantum SWITCH acting on noisy channels:
//! channel algebra, switched-channel decompositions, correctability tests,
//! capacity estimates and entanglement-breaking certificates.

pub mod capacity;
pub mod channels;
pub mod cli;
pub mod correctability;
pub mod ebcert;
pub mod error;
pub mod json;
pub mod linalg;
pub mod optim;
pub mod paths;
pub mod random;
pub mod switch;
pub mod tolerance;

pub use error::{Error, Result};
