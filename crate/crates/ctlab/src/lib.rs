//! Command-line front end, file formats and the seeded check suite.

pub mod ast;
pub mod cli;
pub mod gen;
pub mod input;
pub mod oracle;
pub mod report;
pub mod suite;
