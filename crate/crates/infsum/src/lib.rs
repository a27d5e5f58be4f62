//! Command-line front end for `infsum-core`: an expression evaluator, the
//! integer-set morphism file format, and the seeded law-suite runner.

pub mod check;
pub mod expr;
pub mod morphism_file;
