//! Non-uniform one-dimensional cellular automata over finite alphabets.

pub mod budget;
pub mod config;
pub mod conjugacy;
pub mod debruijn;
pub mod dynamics;
pub mod engine;
pub mod error;
pub mod random;
pub mod rules;
pub mod spec_file;
pub mod word;
pub mod zoo;

pub use budget::Budget;
pub use config::{Distance, EpConfig};
pub use error::{Error, Result};
pub use rules::{LocalRule, NuCaClass, NuCaSpec};
pub use word::{Alphabet, Symbol, Word};
