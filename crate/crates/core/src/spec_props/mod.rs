//! Specification-type hypotheses on the target: mixing gap, synchronizer and
//! coded weak specification.

pub mod coded;
pub mod sublinear;

pub use coded::{build_coded_spec, find_synchronizer, weak_spec_gap, CodedSpec};
pub use sublinear::SublinearL;
