pub mod algebra;
pub mod arrangement;
pub mod cli;
pub mod derivation;
pub mod error;
pub mod extension;
pub mod x3;
pub mod yoshinaga;

pub use error::{Error, Result};
