//! File formats, the parameter-sweep harness and the command line for
//! `dahaw-core`.

pub use dahaw_core as core;

pub mod cli;
pub mod formats;
pub mod harness;
