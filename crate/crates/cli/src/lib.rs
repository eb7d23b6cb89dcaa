//! Command-line front end and benchmark harness for `par-eclat`.

pub mod bench;
pub mod datasets;
