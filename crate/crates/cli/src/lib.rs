//! Library surface of the subshift-lab CLI: configuration parsing, analysis
//! orchestration and report assembly. The binary in `main.rs` is a thin
//! argument-parsing wrapper around [`run`].

pub mod config;
pub mod report;
pub mod run;
