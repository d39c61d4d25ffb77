pub mod aut;
pub mod cones;
pub mod error;
pub mod lattice;
pub mod report;
pub mod pell;
mod bigstr;

pub use error::{Error, Result};
pub use lattice::{MukaiVector, NSClass, Params};
pub use pell::{PellSolution, TwoCoeffSolution};
