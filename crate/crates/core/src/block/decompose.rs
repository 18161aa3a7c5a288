//! Blocks, cut vertices and the rooted cut tree of a connected block graph.

use core::ops::Range;

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("not a block graph: block {block:?} is not a clique")]
    NotBlockGraph { block: Vec<usize> },
}

/// Block structure of a connected block graph.
///
/// When the graph has at least one cut vertex, the cut tree is rooted at the
/// smallest cut vertex; the parent cut vertex of a block is its cut vertex
/// nearest the root and its child cut vertices are the others. Per-block and
/// per-vertex lists live in flat arrays addressed by ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    verts: Vec<usize>,
    vert_range: Vec<Range<usize>>,
    edges: Vec<usize>,
    edge_range: Vec<Range<usize>>,
    child_cut_list: Vec<usize>,
    child_cut_range: Vec<Range<usize>>,
    child_block_list: Vec<usize>,
    child_block_range: Vec<Range<usize>>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<usize>,
    pub is_cut: Vec<bool>,
    /// Root of the cut tree, `None` when the graph is a single block.
    pub root: Option<usize>,
    pub parent_cut: Vec<Option<usize>>,
    /// Depth of each block in the cut tree counted in block levels (blocks at
    /// the root are at level 1).
    pub level: Vec<usize>,
    /// Blocks in reverse breadth-first order of the rooted cut tree, which
    /// is decreasing block number.
    pub sigma: Vec<usize>,
    /// The block of each vertex nearest the root (`None` for the root cut
    /// vertex). A neighbour `u` of `c` lies in a child block of `c` exactly
    /// when `parent_cut[home[u]] == Some(c)`.
    pub home: Vec<Option<usize>>,
    /// `parent_cut[home[v]]`, or `usize::MAX`.
    above: Vec<usize>,
}

impl BlockDecomposition {
    /// Blocks are numbered in breadth-first order of the cut tree.
    pub fn block_count(&self) -> usize {
        self.vert_range.len()
    }

    /// Vertices of block `b`, sorted.
    pub fn block(&self, b: usize) -> &[usize] {
        &self.verts[self.vert_range[b].clone()]
    }

    /// Edge ids of block `b`, sorted.
    pub fn block_edges(&self, b: usize) -> &[usize] {
        &self.edges[self.edge_range[b].clone()]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[usize]> + '_ {
        (0..self.block_count()).map(|b| self.block(b))
    }

    /// Cut vertices of block `b` other than its parent, sorted.
    pub fn child_cuts(&self, b: usize) -> &[usize] {
        &self.child_cut_list[self.child_cut_range[b].clone()]
    }

    /// Child blocks of vertex `c` in the cut tree (empty for non-cut vertices).
    pub fn child_blocks(&self, c: usize) -> &[usize] {
        &self.child_block_list[self.child_block_range[c].clone()]
    }

    /// The cut vertex whose child block holds `v` as a non-parent member.
    pub fn hangs_from(&self, v: usize) -> Option<usize> {
        Some(self.above[v]).filter(|&c| c != usize::MAX)
    }

    /// Whether block `b` has no child cut vertex.
    pub fn is_end_block(&self, b: usize) -> bool {
        self.child_cut_range[b].is_empty()
    }
}

/// Biconnected components found by one DFS.
struct Components {
    /// Edge ids and vertex ids of every component, back to back.
    edges: Vec<usize>,
    verts: Vec<usize>,
    edge_bounds: Vec<usize>,
    vert_bounds: Vec<usize>,
    is_cut: Vec<bool>,
    connected: bool,
}

const UNSEEN: u32 = u32::MAX;

/// Iterative Hopcroft–Tarjan DFS keeping both an edge stack and a vertex
/// stack, so that components come out with their vertex sets.
fn biconnected(g: &Graph) -> Components {
    let n = g.vertex_count();
    // (discovery time, low point).
    let mut time = vec![(UNSEEN, 0u32); n];
    let mut is_cut = vec![false; n];
    let mut edges = Vec::with_capacity(g.edge_count());
    let mut verts = Vec::with_capacity(n + n / 2);
    let mut edge_bounds = vec![0];
    let mut vert_bounds = vec![0];
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut vert_stack: Vec<usize> = Vec::new();
    let mut timer = 0u32;
    let mut trees = 0;
    // Frames: (vertex, parent edge, next adjacency position).
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if time[root].0 != UNSEEN {
            continue;
        }
        trees += 1;
        if g.degree(root) == 0 {
            continue;
        }
        time[root] = (timer, timer);
        timer += 1;
        let mut root_children = 0;
        stack.push((root, usize::MAX, 0));
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, pe, pos) = stack[top];
            if pos < g.degree(v) {
                let (u, e) = g.incident_at(v, pos);
                stack[top].2 += 1;
                if e == pe {
                    continue;
                }
                if time[u].0 == UNSEEN {
                    edge_stack.push(e);
                    vert_stack.push(u);
                    time[u] = (timer, timer);
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((u, e, 0));
                } else if time[u].0 < time[v].0 {
                    edge_stack.push(e);
                    time[v].1 = time[v].1.min(time[u].0);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    let low_v = time[v].1;
                    time[p].1 = time[p].1.min(low_v);
                    if low_v >= time[p].0 {
                        if p != root {
                            is_cut[p] = true;
                        }
                        while let Some(e) = edge_stack.pop() {
                            edges.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        verts.push(p);
                        while let Some(x) = vert_stack.pop() {
                            verts.push(x);
                            if x == v {
                                break;
                            }
                        }
                        edge_bounds.push(edges.len());
                        vert_bounds.push(verts.len());
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    Components { edges, verts, edge_bounds, vert_bounds, is_cut, connected: trees <= 1 }
}

/// Stable sort of `items` by `key[item] < buckets`.
fn counting_sort(items: &[usize], key: &[usize], buckets: usize) -> Vec<usize> {
    let mut start = vec![0usize; buckets + 1];
    for &i in items {
        start[key[i] + 1] += 1;
    }
    for b in 0..buckets {
        start[b + 1] += start[b];
    }
    let mut out = vec![0; items.len()];
    for &i in items {
        out[start[key[i]]] = i;
        start[key[i]] += 1;
    }
    out
}

/// Blocks and rooted cut tree of a connected block graph.
pub fn block_cut_decompose(g: &Graph) -> Result<BlockDecomposition, BlockError> {
    let n = g.vertex_count();
    let Components { edges: mut comp_edges, verts: mut comp_verts, edge_bounds, vert_bounds, is_cut, connected } =
        biconnected(g);
    if !connected {
        return Err(BlockError::Disconnected);
    }
    let nc = edge_bounds.len() - 1;
    let mut comp_vert_range = Vec::with_capacity(nc);
    for ci in 0..nc {
        let edges = &mut comp_edges[edge_bounds[ci]..edge_bounds[ci + 1]];
        let verts = &mut comp_verts[vert_bounds[ci]..vert_bounds[ci + 1]];
        verts.sort_unstable();
        edges.sort_unstable();
        let k = verts.len();
        if edges.len() != k * (k - 1) / 2 {
            return Err(BlockError::NotBlockGraph { block: verts.to_vec() });
        }
        comp_vert_range.push(vert_bounds[ci]..vert_bounds[ci + 1]);
    }
    let mut comp_edge_range: Vec<Range<usize>> = edge_bounds.windows(2).map(|w| w[0]..w[1]).collect();
    if n == 1 {
        comp_vert_range.push(comp_verts.len()..comp_verts.len() + 1);
        comp_verts.push(0);
        comp_edge_range.push(0..0);
    }

    // Blocks through a cut vertex are listed by their two smallest members
    // (distinct pairs, since two blocks share at most one vertex).
    let second: Vec<usize> =
        comp_vert_range.iter().map(|r| if r.len() > 1 { comp_verts[r.start + 1] } else { n }).collect();
    let smallest: Vec<usize> = comp_vert_range.iter().map(|r| comp_verts[r.start]).collect();
    let sorted = counting_sort(&counting_sort(&(0..second.len()).collect::<Vec<_>>(), &second, n + 1), &smallest, n);
    let nb = sorted.len();
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| is_cut[v]).collect();

    let mut through_start = vec![0usize; n + 1];
    for r in &comp_vert_range {
        for &v in &comp_verts[r.clone()] {
            if is_cut[v] {
                through_start[v + 1] += 1;
            }
        }
    }
    for v in 0..n {
        through_start[v + 1] += through_start[v];
    }
    let mut fill = through_start.clone();
    let mut through = vec![0usize; through_start[n]];
    for &c in &sorted {
        for &v in &comp_verts[comp_vert_range[c].clone()] {
            if is_cut[v] {
                through[fill[v]] = c;
                fill[v] += 1;
            }
        }
    }
    drop(fill);

    // Breadth-first search over the cut tree. Blocks are numbered in the
    // order they are reached, so everything below is indexed by that number.
    let mut parent_cut = vec![None; nb];
    let mut level = vec![1; nb];
    let mut child_cut_list = Vec::with_capacity(cut_vertices.len());
    let mut child_cut_range = vec![0..0; nb];
    let mut child_block_list = Vec::with_capacity(nb);
    let mut child_block_range = vec![0..0; n];
    let mut bfs: Vec<usize> = Vec::with_capacity(nb);
    let root = cut_vertices.first().copied();
    if let Some(root) = root {
        let mut visited = vec![false; nb];
        for &c in &through[through_start[root]..through_start[root + 1]] {
            visited[c] = true;
            parent_cut[bfs.len()] = Some(root);
            child_block_list.push(bfs.len());
            bfs.push(c);
        }
        child_block_range[root] = 0..child_block_list.len();
        let mut b = 0;
        while b < bfs.len() {
            let cut_from = child_cut_list.len();
            for &x in &comp_verts[comp_vert_range[bfs[b]].clone()] {
                if !is_cut[x] || Some(x) == parent_cut[b] {
                    continue;
                }
                child_cut_list.push(x);
                let from = child_block_list.len();
                for &c in &through[through_start[x]..through_start[x + 1]] {
                    if !visited[c] {
                        visited[c] = true;
                        parent_cut[bfs.len()] = Some(x);
                        level[bfs.len()] = level[b] + 1;
                        child_block_list.push(bfs.len());
                        bfs.push(c);
                    }
                }
                child_block_range[x] = from..child_block_list.len();
            }
            child_cut_range[b] = cut_from..child_cut_list.len();
            b += 1;
        }
    } else {
        bfs = sorted;
    }
    drop(through);

    let mut verts = Vec::with_capacity(comp_verts.len());
    let mut vert_range = Vec::with_capacity(nb);
    let mut edges = Vec::with_capacity(comp_edges.len());
    let mut edge_range = Vec::with_capacity(nb);
    for &c in &bfs {
        let from = verts.len();
        verts.extend_from_slice(&comp_verts[comp_vert_range[c].clone()]);
        vert_range.push(from..verts.len());
        let from = edges.len();
        edges.extend_from_slice(&comp_edges[comp_edge_range[c].clone()]);
        edge_range.push(from..edges.len());
    }
    drop((comp_verts, comp_edges));
    let mut home = vec![None; n];
    for (b, r) in vert_range.iter().enumerate() {
        for &v in &verts[r.clone()] {
            if parent_cut[b] != Some(v) {
                home[v] = Some(b);
            }
        }
    }
    let above = home.iter().map(|h| h.and_then(|b| parent_cut[b]).unwrap_or(usize::MAX)).collect();
    Ok(BlockDecomposition {
        verts,
        vert_range,
        edges,
        edge_range,
        child_cut_list,
        child_cut_range,
        child_block_list,
        child_block_range,
        cut_vertices,
        is_cut,
        root,
        parent_cut,
        level,
        sigma: (0..nb).rev().collect(),
        home,
        above,
    })
}
