//! Command-line and HTTP front ends for the `matchstick` crate.
//!
//! Both front ends go through [`ops::run`], so a report printed by the CLI
//! with `--format json` is byte-identical to the service response for the
//! same input.

pub mod cli;
pub mod ops;
pub mod service;
