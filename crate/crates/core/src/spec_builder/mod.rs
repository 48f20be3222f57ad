pub mod admissible;
pub mod builder;
pub mod certificate;
pub mod dfa;
pub mod entropy_cert;
pub mod elements;
pub mod marker;
pub mod mutate;
pub mod sieve;
pub mod spec;

pub use certificate::{Certificate, CertificateKind, Check};
pub use dfa::LayeredDfa;
pub use marker::{find_marker, marker_ball, self_overlap};
pub use spec::{Element, ElementSet, RegularPart, SpecLetter, Specification, STAR};
pub use elements::{element_automaton, Exclusions};
pub use sieve::{marker_exclusions, sieve_exclusions, sieve_separated, SieveOutcome};
pub use admissible::{marker_meets, verify_admissible};
pub use builder::{build_at, build_simple_spec, choose_parameters, BuildOptions, BuildReport, Built, Parameters};
pub use entropy_cert::entropy_certificate;
pub use mutate::Mutation;
