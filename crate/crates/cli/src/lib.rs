//! Command-line front end for `shannon-core`: problem files, the prove
//! pipeline with equality handling, JSON proof documents and the `shannon`
//! binary's [`run`] entry point.

mod app;
pub mod json;
pub mod problem;
pub mod prove;

pub use app::{run, EXIT_INPUT_ERROR, EXIT_NOT_PROVABLE, EXIT_PROVEN};
