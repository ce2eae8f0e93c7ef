//! k-metric generators, bases and dimensions of finite connected graphs.

pub mod bitset;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod expr;
pub mod formulas;
pub mod harness;
pub mod metric_sets;
pub mod solver;

pub use bitset::Bitset;
pub use error::{Error, Result};
pub use graph::{DistanceMatrix, Graph, MAX_ORDER};
