//! Liar's vertex-edge domination: graphs, verification, exact search and
//! polynomial solvers for block graphs and proper interval graphs.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod block;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod interval;
pub mod labels;
pub mod reduction;
pub mod verify;

pub use graph::{Graph, GraphError, VertexSet};
pub use labels::{LabelError, LabeledBlockGraph, Tag};
pub use verify::{is_lved_set, is_mlve_set, Verdict, VerifyError, Witness};
