pub mod analysis;
pub mod arith;
pub mod bqf;
pub mod checks;
pub mod classical;
pub mod cli;
pub mod error;
pub mod halfint;
pub mod jacobi;
pub mod qseries;
pub mod siegel;
pub mod table;

pub use error::{Error, Result};
