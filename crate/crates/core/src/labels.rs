//! Vertex and edge labels for the labelled domination problem on block graphs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Vertex tag: `R` vertices are forced into every solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    B,
    R,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::B => "B",
            Tag::R => "R",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("expected {expected} vertex labels, got {got}")]
    VertexLabelCount { expected: usize, got: usize },
    #[error("expected {expected} edge labels, got {got}")]
    EdgeLabelCount { expected: usize, got: usize },
    #[error("edge {edge} has k-label {k}, expected 0, 1 or 2")]
    EdgeLabelRange { edge: usize, k: u8 },
}

/// A graph carrying `(t(v), s(v))` on every vertex and `k(e)` on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledBlockGraph {
    pub base: Graph,
    pub t: Vec<Tag>,
    pub s: Vec<u32>,
    pub k: Vec<u8>,
}

impl LabeledBlockGraph {
    pub fn new(base: Graph, t: Vec<Tag>, s: Vec<u32>, k: Vec<u8>) -> Result<Self, LabelError> {
        let n = base.vertex_count();
        let m = base.edge_count();
        if t.len() != n {
            return Err(LabelError::VertexLabelCount { expected: n, got: t.len() });
        }
        if s.len() != n {
            return Err(LabelError::VertexLabelCount { expected: n, got: s.len() });
        }
        if k.len() != m {
            return Err(LabelError::EdgeLabelCount { expected: m, got: k.len() });
        }
        if let Some((edge, &k)) = k.iter().enumerate().find(|(_, &k)| k > 2) {
            return Err(LabelError::EdgeLabelRange { edge, k });
        }
        Ok(LabeledBlockGraph { base, t, s, k })
    }

    /// `t ≡ B`, `s ≡ 0`, `k ≡ 2`: the labelling under which the labelled
    /// problem coincides with plain liar's ve-domination.
    pub fn fresh(base: Graph) -> Self {
        let n = base.vertex_count();
        let m = base.edge_count();
        LabeledBlockGraph { base, t: vec![Tag::B; n], s: vec![0; n], k: vec![2; m] }
    }

    /// Vertices tagged `R`.
    pub fn forced(&self) -> VertexSet {
        self.t
            .iter()
            .enumerate()
            .filter(|(_, &t)| t == Tag::R)
            .map(|(v, _)| v)
            .collect()
    }
}
