//! Symbolic and numeric verification of the quantum instanton bundle
//! over the quantum 4-sphere.

pub mod classical;
pub mod coaction;
pub mod coeffring;
pub mod error;
pub mod linsolve;
pub mod ncalg;
pub mod parse;
pub mod report;
pub mod representation;
pub mod rmatrix;
pub mod spheres;
pub mod verify;

pub use error::{Error, Result};
