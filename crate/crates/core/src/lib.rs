//! Admissible specifications of subshifts of finite type, certified
//! embeddings into them, and finite-depth multiscale constructions.

pub mod cli;
pub mod embedder;
pub mod error;
pub mod metric;
pub mod multiscale;
pub mod shift;
pub mod spec_builder;
pub mod spec_props;

pub use error::{Error, Result};
