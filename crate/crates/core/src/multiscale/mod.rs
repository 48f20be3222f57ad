//! Finite-depth admissible inverse limits.

pub mod budget;
pub mod flower;
pub mod marker_block;
pub mod ocap;
pub mod phi;
pub mod plan;
pub mod run;
pub mod stage;
pub mod stage0;
pub mod theta;
pub mod tower;

pub use budget::ScaleBudget;
pub use flower::Family;
pub use ocap::{ocap, ocap_bound, OcapReport};
pub use phi::{evaluate_phi, PhiReport, PhiWindow};
pub use plan::{plan_stage, PlanInput, StagePlan};
pub use run::{build_multiscale, MultiscaleOptions, MultiscaleReport, MAX_DEPTH};
pub use stage::{EntropyChain, LevelElement, Stage, StageOptions};
pub use stage0::{Base, Letter, StageZeroOptions};
pub use tower::{eta, tower_membership};
