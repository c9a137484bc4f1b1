//! Skew products on the Berkovich projective line over the field of Puiseux
//! series, with exact arithmetic throughout.

pub mod berktree;
pub mod dynclass;
pub mod error;
pub mod ratcalc;
pub mod shell;
pub mod skewmap;
pub mod valcore;

pub use error::{Error, Result};
