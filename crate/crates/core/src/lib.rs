//! Distributed greedy submodular maximization under information graphs.
//!
//! Agents `1..n` decide in order; agent `i` sees only the decisions of its
//! in-neighbours in an ordered DAG and greedily maximizes its marginal
//! contribution. This crate computes exact worst-case efficiencies, the
//! fractional graph numbers that bound them, instances that attain the
//! bounds, and edge-budget-optimal graph designs.

pub mod bounds;
pub mod design;
pub mod error;
pub mod graph;
pub mod greedy;
pub mod io;
pub mod lp;
pub mod par;
pub mod rational;
pub mod sample;
pub mod submodular;
pub mod verify;

pub use error::{Error, ErrorKind, Result};
pub use graph::InfoGraph;
pub use par::Execution;
pub use rational::Rational;
