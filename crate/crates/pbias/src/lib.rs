//! File formats, the acceptance suite and the command-line front end for
//! [`pbias_core`].

pub mod cli;
pub mod format;
pub mod suite;

pub use pbias_core;
