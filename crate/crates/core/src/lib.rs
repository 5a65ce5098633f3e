//! Symbolic computation with forest-skein categories and the groups of fractions they define.

pub mod abelian;
pub mod actions;
pub mod cli;
pub mod error;
pub mod families;
pub mod forest;
pub mod fraction;
pub mod germ;
pub mod kernel;
pub mod rewriting;
pub mod skein_dsl;
pub mod symmetric;

pub use error::{Error, Result};
