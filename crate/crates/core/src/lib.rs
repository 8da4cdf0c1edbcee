//! Categories of F-Mealy and F-Moore machines over finite base categories.

pub mod adjunction;
pub mod algebra;
pub mod base;
pub mod behavior;
pub mod cli;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod functor;
pub mod guard;
pub mod limits;
pub mod machine;
pub mod oracle;

pub use error::{Error, Result};
