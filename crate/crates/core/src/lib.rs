pub mod braid;
pub mod cli;
pub mod cloning;
pub mod complexes;
pub mod error;
pub mod forest;
pub mod grigsolver;
pub mod recursion;
pub mod thompson;

pub use error::{Error, Result};
