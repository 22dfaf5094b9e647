//! Block-gluing subshifts over finite alphabets.
//!
//! Subshifts are given by forbidden words ([`spec`]). For subshifts of finite
//! type the crate computes exact languages through trimmed Rauzy graphs
//! ([`rauzy`]), decides c-block-gluing ([`gluing`]), encloses the topological
//! entropy ([`entropy`]), checks maximality ([`maximality`]) and runs the
//! search for the minimal positive entropy of c-block-gluing subshifts
//! ([`spectrum`]).

pub mod automaton;
pub mod candidate;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod gluing;
pub mod language;
pub mod maximality;
pub mod numfmt;
pub mod rauzy;
pub mod spec;
pub mod spectrum;
pub mod word;

pub use error::{Error, Result};
pub use spec::{parse_spec, SubshiftSpec};
pub use word::{Alphabet, Word};
