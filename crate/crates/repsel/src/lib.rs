//! Representative validation-subset selection for labeled tabular datasets.
//!
//! Given an existing dataset, `repsel` extracts a validation (test) subset
//! that is statistically representative of the full sample, instead of
//! relying on a plain random draw. The pipeline:
//!
//! 1. standardize features and partition rows by class ([`dataset`]),
//! 2. minimize the two-sample energy distance over a set of free points
//!    with a majorize-minimize scheme ([`energy`], [`sp_optimizer`]),
//! 3. snap each optimized point to its nearest distinct dataset row,
//!    allocating the subset size per class proportionally ([`spnn`]),
//! 4. judge the resulting split with a naive logistic classifier,
//!    leave-one-out estimates, and random-selection baseline confidence
//!    intervals ([`eval`]).
//!
//! The `repsel` binary exposes the same pipeline as subcommands
//! (`select`, `evaluate`, `compare`, `gen-toy`); the `examples/` directory
//! has one runnable walkthrough per capability.

pub mod cli;
pub mod dataset;
pub mod energy;
pub mod error;
pub mod eval;
pub mod sp_optimizer;
pub mod spnn;

pub use error::{Error, Result};
