//! Test-side oracles. Nothing here calls into `shannon_core` except where a
//! function says so; canonical forms, elemental rows and rays are all
//! recomputed from scratch so they can be compared against the library.
#![allow(dead_code)]

pub mod checker;
pub mod corpus;
pub mod expr;
pub mod oracle;
