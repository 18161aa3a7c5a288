//! Immutable simple undirected graphs with dense vertex and edge ids.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Errors raised while constructing a graph or addressing into one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("vertex {0} does not exist")]
    InvalidVertex(usize),
    #[error("edge {0} does not exist")]
    InvalidEdge(usize),
    #[error("graph too large: ids must fit in 32 bits")]
    TooLarge,
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edge ids are `0..m` and follow the order of the input list after
/// duplicates are dropped. Every adjacency list is sorted by neighbour id and
/// carries the id of the connecting edge.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `adj[offsets[v]..offsets[v + 1]]` is the adjacency list of `v`.
    offsets: Vec<usize>,
    adj: Vec<(u32, u32)>,
}

impl Graph {
    /// Builds a graph, collapsing repeated pairs (in either orientation) onto
    /// the first occurrence.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > u32::MAX as usize || edge_list.len() > u32::MAX as usize {
            return Err(GraphError::TooLarge);
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            edges.push((a, b));
        }
        // Dedup while keeping first-occurrence order: sort a parallel index.
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_unstable_by_key(|&i| (edges[i], i));
        let mut keep = vec![false; edges.len()];
        for (pos, &i) in order.iter().enumerate() {
            if pos == 0 || edges[order[pos - 1]] != edges[i] {
                keep[i] = true;
            }
        }
        let edges: Vec<(usize, usize)> = edges
            .into_iter()
            .zip(keep)
            .filter_map(|(e, k)| k.then_some(e))
            .collect();
        let mut offsets = vec![0usize; n + 1];
        for &(a, b) in &edges {
            offsets[a + 1] += 1;
            offsets[b + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut adj = vec![(0, 0); 2 * edges.len()];
        for (id, &(a, b)) in edges.iter().enumerate() {
            adj[fill[a]] = (b as u32, id as u32);
            fill[a] += 1;
            adj[fill[b]] = (a as u32, id as u32);
            fill[b] += 1;
        }
        for v in 0..n {
            adj[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Ok(Graph { n, edges, offsets, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints `(u, v)` of edge `e` with `u < v`.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbour, edge id)` pairs sorted by neighbour.
    pub fn incident(&self, v: usize) -> impl DoubleEndedIterator<Item = (usize, usize)> + ExactSizeIterator + Clone + '_ {
        self.adj_of(v).iter().map(|&(u, e)| (u as usize, e as usize))
    }

    /// The `i`-th entry of [`Graph::incident`].
    pub fn incident_at(&self, v: usize, i: usize) -> (usize, usize) {
        let (u, e) = self.adj_of(v)[i];
        (u as usize, e as usize)
    }

    fn adj_of(&self, v: usize) -> &[(u32, u32)] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident(v).map(|(u, _)| u)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let list = self.adj_of(u);
        let v = u32::try_from(v).ok()?;
        list.binary_search_by_key(&v, |&(w, _)| w).ok().map(|pos| list[pos].1 as usize)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// `N[v]`, sorted.
    pub fn closed_vertex_neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        if v >= self.n {
            return Err(GraphError::InvalidVertex(v));
        }
        let mut members: Vec<usize> = self.neighbors(v).collect();
        let pos = members.partition_point(|&u| u < v);
        members.insert(pos, v);
        Ok(VertexSet { members })
    }

    /// `N[e] = N[x] ∪ N[y]` for `e = xy`, sorted.
    pub fn closed_edge_neighborhood(&self, e: usize) -> Result<VertexSet, GraphError> {
        if e >= self.edges.len() {
            return Err(GraphError::InvalidEdge(e));
        }
        let (x, y) = self.edges[e];
        let a = self.closed_vertex_neighborhood(x)?;
        let b = self.closed_vertex_neighborhood(y)?;
        Ok(a.union(&b))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        reached == self.n
    }

    /// Subgraph induced by `vertices` (sorted, distinct), relabelled to
    /// `0..vertices.len()` in the given order. Edge ids follow the parent's
    /// edge order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let list: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]))
            .collect();
        Graph::new(vertices.len(), &list).expect("induced subgraph of a simple graph is simple")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// A set of vertex ids, stored sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_slice(items: &[usize]) -> Self {
        items.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.members.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, v);
                true
            }
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let (a, b) = (&self.members, &other.members);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        VertexSet { members: out }
    }

    pub fn is_superset(&self, other: &VertexSet) -> bool {
        other.iter().all(|v| self.contains(v))
    }

    /// Membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.members {
            if v < n {
                m[v] = true;
            }
        }
        m
    }

    /// First member that is not a vertex of a graph on `n` vertices.
    pub fn first_out_of_range(&self, n: usize) -> Option<usize> {
        self.members.iter().copied().find(|&v| v >= n)
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.members
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        self.members.extend(iter);
        self.members.sort_unstable();
        self.members.dedup();
    }
}
