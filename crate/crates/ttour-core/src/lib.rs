//! Exact-arithmetic toolkit for shortest T-tours.
//!
//! Given a connected graph, an even terminal set T and nonnegative rational
//! edge lengths, this crate solves the cut/partition relaxation exactly,
//! writes the optimum as a convex combination dominated by spanning trees,
//! runs the best-of-many parity-correction heuristic over that combination,
//! and mechanically certifies every inequality of the accompanying ratio
//! analysis with zero tolerance.

pub mod analysis;
pub mod bom;
pub mod caps;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod lp;
pub mod rat;
pub mod simplex;
pub mod tjoin;

pub use caps::Caps;
pub use error::Error;
pub use graph::{Cut, EdgeMultiset, EdgeVector, Graph, Instance, Partition};
pub use rat::Rat;
