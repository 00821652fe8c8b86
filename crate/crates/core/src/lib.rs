//! Synchronous rational relations and their algebraic recognizers.

pub mod algebra;
pub mod automata;
pub mod decide;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod profinite;
pub mod semigroup;
pub mod syntactic;
pub mod words;

pub use algebra::{AlgebraMorphism, SyncAlgebra, Variant};
pub use automata::{Dfa, Mode, Relation, SyncAutomaton};
pub use error::{Error, Result};
pub use semigroup::FiniteSemigroup;
pub use words::{Alphabet, ClosedSubset, DependentSet, LetterType, PairedLetter, PairedWord, Tag, TypedWord};
