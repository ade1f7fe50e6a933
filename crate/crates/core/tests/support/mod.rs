//! Test-only helpers shared with the command line crate's acceptance suite.

#![allow(dead_code)]

pub mod corpus;
pub mod groups;
pub mod oracle;
pub mod terms;
