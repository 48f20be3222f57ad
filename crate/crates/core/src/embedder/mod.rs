//! From specifications to embeddings into the target.

pub mod covering;
pub mod delta;
pub mod dense;
pub mod pairs;
pub mod selector;
pub mod table;

pub use covering::find_covering_word;
pub use delta::{delta_nonempty, DeltaConstraint};
pub use dense::insert_dense_segment;
pub use pairs::{verify_injectivity_pairs, PAIR_LIMIT};
pub use selector::{build_selector, selector_image, verify_code_injective, verify_selector, SelectorCode};
pub use table::parse_code_table;
