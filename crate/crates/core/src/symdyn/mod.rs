//! Words, forbidden sets, admissibility and language enumeration.

mod admissible;
mod blocks;
mod forbidden;
mod presentation;
mod word;

use thiserror::Error;

pub use admissible::{is_admissible, is_admissible_periodic, Verdict, Violation, ViolationRule};
pub use blocks::{count_words, enumerate_words, higher_block, WordList};
pub use forbidden::{alternating, forbidden_set, Exclusion, ForbiddenFile, ForbiddenSet, SubshiftSpec};
pub use presentation::{Presentation, StateSet};
pub use word::{letters_to_string, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymdynError {
    #[error("empty word")]
    EmptyWord,
    #[error("letter {letter} outside the alphabet 1..={k}")]
    AlphabetMismatch { letter: Letter, k: Letter },
    #[error("parse error: {0}")]
    Parse(String),
    /// Enumeration would produce more words than allowed.
    #[error("length {length}: {count} words exceed the budget {budget}")]
    BudgetExceeded { length: usize, count: u128, budget: usize },
    /// Higher-block recoding below the memory of the SFT.
    #[error("block length {block} does not exceed the memory {memory}")]
    BlockTooShort { block: usize, memory: usize },
}
