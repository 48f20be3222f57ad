//! Subshifts of finite type, words, text format and block codes.

pub mod block_code;
pub mod sft;
pub mod text;
pub mod transducer;
pub mod word;

pub use block_code::BlockCode;
pub use sft::{MixingStatus, Sft};
pub use word::{Alphabet, Symbol, Word};
