//! Block graphs: decomposition and the labelling solver.

pub mod decompose;
pub mod solver;

pub use decompose::{block_cut_decompose, BlockDecomposition, BlockError};
pub use solver::{
    lved_block, lved_block_observed, solve_labeled, BlockEvent, BlockObserver, BlockSolveError, BlockWorkState,
    Snapshot, StepKind,
};
