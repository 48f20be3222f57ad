//! Dyadic metric, dynamical balls, separated sets and entropy.

pub mod cycle_mean;
pub mod entropy;
pub mod scale;
pub mod separated;

pub use entropy::{entropy, flower_entropy, growth_entropy, ln_big};
pub use scale::{metric_dist, Distance, DynBall, Pattern, Scale};
pub use separated::{covering_number, extract_separated, SeparatedSet};
