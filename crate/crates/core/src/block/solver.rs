//! Labelling-based greedy for minimum liar's ve-domination on block graphs.
//!
//! The graph is consumed bottom-up along the rooted cut tree. For every
//! block `B'` whose child blocks are all end blocks, the end blocks are
//! settled (vertices retagged `R` where every solution must spend them),
//! the demands they place on `B'` are folded into the labels of `B'`, and
//! the end blocks are deleted. What remains at the root is a star of end
//! blocks around one cut vertex, which is settled the same way.

use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use super::decompose::{block_cut_decompose, BlockDecomposition, BlockError};
use crate::graph::{Graph, VertexSet};
use crate::labels::{LabeledBlockGraph, Tag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockSolveError {
    #[error(transparent)]
    Structure(#[from] BlockError),
    #[error("relabelling wanted {wanted} more R vertices but only {available} B vertices were left ({step:?})")]
    PoolExhausted { step: StepKind, wanted: usize, available: usize },
}

/// The individual label-changing steps, in the order a support-block
/// iteration performs them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Edges of an end block away from its cut vertex.
    EndBlockEdges,
    /// Vertex demands `s` inside an end block.
    EndBlockVertices,
    /// Edges between a cut vertex and its end blocks.
    CutVertexEdges,
    /// Two cut vertices each carrying a single `k = 2` end-block edge and no
    /// `R` vertex in their end blocks.
    SupportPair,
    /// The cheapest cut vertex with one `k = 2` end-block edge, paid for
    /// inside `B'`.
    SupportMinimum,
    /// Same demand pushed onto the `s` label of another cut vertex of `B'`.
    CutDemand,
    /// Same demand pushed onto the `s` label of the parent cut vertex.
    ShallowDemand,
    /// End blocks of one cut vertex deleted; their `R` vertices moved to
    /// the solution.
    Prune,
    /// Vertex demand of the star centre.
    CentreDemand,
}

/// Progress notifications from [`solve_labeled`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockEvent {
    /// Labels changed; the domination number of the labelled graph is
    /// unchanged by this step.
    Step { kind: StepKind, block: usize, vertex: usize },
    /// The end blocks hanging off `cut` were deleted and `removed` `R`
    /// vertices moved into the solution.
    Prune { block: usize, cut: usize, removed: usize },
    /// A support block has been fully processed and is now an end block.
    IterationDone { block: usize },
}

/// Receives every [`BlockEvent`] together with the state right after it.
pub trait BlockObserver {
    fn on_event(&mut self, event: BlockEvent, state: &BlockWorkState<'_>);
}

impl BlockObserver for () {
    fn on_event(&mut self, _: BlockEvent, _: &BlockWorkState<'_>) {}
}

impl<F: FnMut(BlockEvent, &BlockWorkState<'_>)> BlockObserver for F {
    fn on_event(&mut self, event: BlockEvent, state: &BlockWorkState<'_>) {
        self(event, state)
    }
}

/// The labelled graph that is still alive, compacted to `0..n'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snapshot {
    pub graph: LabeledBlockGraph,
    /// Original id of each compacted vertex.
    pub ids: Vec<usize>,
}

/// Mutable state of one solve.
pub struct BlockWorkState<'g> {
    g: &'g Graph,
    dec: Rc<BlockDecomposition>,
    alive: Vec<bool>,
    t: Vec<Tag>,
    s: Vec<u32>,
    k: Vec<u8>,
    solution: Vec<usize>,
}

impl<'g> BlockWorkState<'g> {
    fn new(lg: &'g LabeledBlockGraph) -> Result<Self, BlockSolveError> {
        Self::with_labels(&lg.base, lg.t.clone(), lg.s.clone(), lg.k.clone())
    }

    fn with_labels(g: &'g Graph, t: Vec<Tag>, s: Vec<u32>, k: Vec<u8>) -> Result<Self, BlockSolveError> {
        let dec = block_cut_decompose(g)?;
        Ok(BlockWorkState { g, dec: Rc::new(dec), alive: vec![true; g.vertex_count()], t, s, k, solution: Vec::new() })
    }

    fn fresh(g: &'g Graph) -> Result<Self, BlockSolveError> {
        Self::with_labels(g, vec![Tag::B; g.vertex_count()], vec![0; g.vertex_count()], vec![2; g.edge_count()])
    }

    pub fn decomposition(&self) -> &BlockDecomposition {
        &self.dec
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive[v]
    }

    pub fn tag(&self, v: usize) -> Tag {
        self.t[v]
    }

    pub fn demand(&self, v: usize) -> u32 {
        self.s[v]
    }

    pub fn edge_label(&self, e: usize) -> u8 {
        self.k[e]
    }

    /// Vertices already committed to the solution (removed `R` vertices).
    pub fn committed(&self) -> &[usize] {
        &self.solution
    }

    /// The live part of the labelled graph.
    pub fn snapshot(&self) -> Snapshot {
        let ids: Vec<usize> = (0..self.g.vertex_count()).filter(|&v| self.alive[v]).collect();
        let base = self.g.induced(&ids);
        let t = ids.iter().map(|&v| self.t[v]).collect();
        let s = ids.iter().map(|&v| self.s[v]).collect();
        let k = base
            .edges()
            .iter()
            .map(|&(a, b)| self.k[self.g.edge_between(ids[a], ids[b]).expect("induced edge exists")])
            .collect();
        Snapshot { graph: LabeledBlockGraph { base, t, s, k }, ids }
    }

    fn r_count(&self, vs: impl IntoIterator<Item = usize>) -> usize {
        vs.into_iter().filter(|&v| self.t[v] == Tag::R).count()
    }

    fn r_closed(&self, v: usize) -> usize {
        usize::from(self.t[v] == Tag::R) + self.g.neighbors(v).filter(|&u| self.alive[u] && self.t[u] == Tag::R).count()
    }

    /// Edges from `cut` into its child blocks: `(k = 2 count, max1, max2)`.
    fn cut_edge_stats(&self, cut: usize) -> (usize, u8, u8) {
        let mut l2 = 0;
        let (mut max1, mut max2) = (0u8, 0u8);
        for (u, e) in self.g.incident(cut) {
            if !self.alive[u] || !self.in_child_block(cut, u) {
                continue;
            }
            let k = self.k[e];
            if k == 2 {
                l2 += 1;
            }
            if k > max1 {
                max2 = max1;
                max1 = k;
            } else if k > max2 {
                max2 = k;
            }
        }
        (l2, max1, max2)
    }

    /// Whether neighbour `u` of cut vertex `cut` lies in one of its child blocks.
    fn in_child_block(&self, cut: usize, u: usize) -> bool {
        self.dec.hangs_from(u) == Some(cut)
    }

    /// Non-cut vertices of the child blocks of `cut`.
    fn hanging(&self, cut: usize) -> impl Iterator<Item = usize> + '_ {
        self.dec.child_blocks(cut).iter().flat_map(|&b| self.dec.block(b)).copied().filter(move |&v| v != cut)
    }

    /// Settles the edges and vertex demands of end block `b` hanging at `cut`.
    fn settle_end_block(&mut self, b: usize, cut: usize, obs: &mut dyn BlockObserver) -> Result<(), BlockSolveError> {
        let dec = Rc::clone(&self.dec);
        let verts = dec.block(b);
        let (mut l2, mut l1) = (0, 0);
        // Every live neighbour of a non-cut member lies in this block.
        for &x in verts {
            if x == cut {
                continue;
            }
            for (w, e) in self.g.incident(x) {
                if w < x || w == cut || !self.alive[w] {
                    continue;
                }
                match self.k[e] {
                    2 => l2 += 1,
                    1 => l1 += 1,
                    _ => {}
                }
            }
        }
        let target: usize = match (l2, l1) {
            (2.., _) => 3,
            (1, _) => 2,
            (0, 1..) => 1,
            _ => 0,
        };
        let r = self.r_count(verts.iter().copied());
        if retag(&mut self.t, &[cut], verts.iter().copied(), target.saturating_sub(r), StepKind::EndBlockEdges)? {
            obs.on_event(BlockEvent::Step { kind: StepKind::EndBlockEdges, block: b, vertex: cut }, self);
        }
        let s_max = verts.iter().filter(|&&v| v != cut).map(|&v| self.s[v] as usize).max().unwrap_or(0);
        let r = self.r_count(verts.iter().copied());
        if retag(&mut self.t, &[cut], verts.iter().copied(), s_max.saturating_sub(r), StepKind::EndBlockVertices)? {
            obs.on_event(BlockEvent::Step { kind: StepKind::EndBlockVertices, block: b, vertex: cut }, self);
        }
        Ok(())
    }

    /// `w(c)` for the edges between `cut` and its end blocks, paid inside
    /// `N[cut]` with the vertices in `preferred` first.
    fn settle_cut_edges(
        &mut self,
        block: usize,
        cut: usize,
        preferred: &[usize],
        obs: &mut dyn BlockObserver,
    ) -> Result<(), BlockSolveError> {
        let (_, max1, max2) = self.cut_edge_stats(cut);
        let r = self.r_closed(cut) as i64;
        let single = i64::from(max1) - r;
        let pair = (i64::from(max1) + i64::from(max2) - 1).max(0) - r;
        let w = single.max(pair);
        if w > 0 {
            retag(&mut self.t, preferred, closed_alive(self.g, &self.alive, cut), w as usize, StepKind::CutVertexEdges)?;
            obs.on_event(BlockEvent::Step { kind: StepKind::CutVertexEdges, block, vertex: cut }, self);
        }
        Ok(())
    }

    fn process_support_block(&mut self, bp: usize, obs: &mut dyn BlockObserver) -> Result<(), BlockSolveError> {
        let ch = self.dec.parent_cut[bp].expect("support blocks sit below the root");
        let dec = Rc::clone(&self.dec);
        let children = dec.child_cuts(bp);
        let verts = dec.block(bp);

        // Round one: end blocks.
        for &c in children {
            for &b in dec.child_blocks(c) {
                self.settle_end_block(b, c, obs)?;
            }
        }

        // Round two: edges at each cut vertex, paid inside B' when possible.
        let mut preferred = Vec::with_capacity(verts.len());
        preferred.push(ch);
        preferred.extend(verts.iter().copied().filter(|&v| v != ch));
        for &c in children {
                self.settle_cut_edges(bp, c, &preferred, obs)?;
        }

        let l2: Vec<usize> = children.iter().map(|&c| self.cut_edge_stats(c).0).collect();
        let outside_r = |st: &Self, c: usize| st.r_count(st.hanging(c));

        // Two cut vertices that each need a third vertex for their single
        // k = 2 edge, with nothing tagged below them.
        let bare = children
            .iter()
            .zip(&l2)
            .filter(|&(&c, &l)| l == 1 && outside_r(self, c) == 0)
            .count();
        if bare >= 2 {
            let r = self.r_count(verts.iter().copied());
            if retag(&mut self.t, &preferred, verts.iter().copied(), 3usize.saturating_sub(r), StepKind::SupportPair)? {
                obs.on_event(BlockEvent::Step { kind: StepKind::SupportPair, block: bp, vertex: ch }, self);
            }
        }

        let cq = children
            .iter()
            .zip(&l2)
            .filter(|&(_, &l)| l == 1)
            .map(|(&c, _)| (self.r_closed(c), c))
            .min()
            .map(|(_, c)| c);
        if let Some(cq) = cq {
            let has_plain = verts.iter().any(|&v| v != ch && !children.contains(&v));
            let r = self.r_closed(cq);
            if has_plain {
                if retag(&mut self.t, &[ch], verts.iter().copied(), 3usize.saturating_sub(r), StepKind::SupportMinimum)? {
                    obs.on_event(BlockEvent::Step { kind: StepKind::SupportMinimum, block: bp, vertex: cq }, self);
                }
            } else {
                // The B' part of N[c_q] also lies in N[c_i], so only the R
                // vertices hanging below c_q count towards the pair.
                let need = 3u32.saturating_sub(outside_r(self, cq) as u32);
                for &c in children {
                    if c == cq || outside_r(self, c) != 0 {
                        continue;
                    }
                    if need > self.s[c] {
                        self.s[c] = need;
                        obs.on_event(BlockEvent::Step { kind: StepKind::CutDemand, block: bp, vertex: c }, self);
                    }
                }
            }
            let need = 3u32.saturating_sub(outside_r(self, cq) as u32);
            if need > self.s[ch] {
                self.s[ch] = need;
                obs.on_event(BlockEvent::Step { kind: StepKind::ShallowDemand, block: bp, vertex: ch }, self);
            }
        }

        // Commit the tagged end-block vertices and delete the end blocks.
        for &c in children {
            let mut removed = 0;
            for &b in dec.child_blocks(c) {
                for &v in dec.block(b) {
                    if v == c {
                        continue;
                    }
                    if self.t[v] == Tag::R {
                        self.solution.push(v);
                        removed += 1;
                    }
                    self.alive[v] = false;
                }
            }
            let x = removed as u8;
            for (u, e) in self.g.incident(c) {
                if self.alive[u] {
                    self.k[e] = self.k[e].saturating_sub(x);
                }
            }
            self.s[c] = self.s[c].saturating_sub(removed as u32);
            obs.on_event(BlockEvent::Prune { block: bp, cut: c, removed }, self);
        }
        obs.on_event(BlockEvent::IterationDone { block: bp }, self);
        Ok(())
    }

    /// Settles a star of end blocks around `centre` and returns its `R` vertices.
    fn solve_star(&mut self, centre: usize, blocks: &[usize], obs: &mut dyn BlockObserver) -> Result<(), BlockSolveError> {
        for &b in blocks {
            self.settle_end_block(b, centre, obs)?;
        }
        let (_, max1, max2) = {
            let mut max1 = 0u8;
            let mut max2 = 0u8;
            for (u, e) in self.g.incident(centre) {
                if !self.alive[u] {
                    continue;
                }
                let k = self.k[e];
                if k > max1 {
                    max2 = max1;
                    max1 = k;
                } else if k > max2 {
                    max2 = k;
                }
            }
            (0, max1, max2)
        };
        let r = self.r_closed(centre) as i64;
        let w = (i64::from(max1) - r).max((i64::from(max1) + i64::from(max2) - 1).max(0) - r);
        if w > 0 {
            retag(&mut self.t, &[centre], closed_alive(self.g, &self.alive, centre), w as usize, StepKind::CutVertexEdges)?;
            obs.on_event(BlockEvent::Step { kind: StepKind::CutVertexEdges, block: blocks[0], vertex: centre }, self);
        }
        let r = self.r_closed(centre);
        let need = (self.s[centre] as usize).saturating_sub(r);
        if retag(&mut self.t, &[], closed_alive(self.g, &self.alive, centre), need, StepKind::CentreDemand)? {
            obs.on_event(BlockEvent::Step { kind: StepKind::CentreDemand, block: blocks[0], vertex: centre }, self);
        }
        for v in 0..self.g.vertex_count() {
            if self.alive[v] && self.t[v] == Tag::R {
                self.solution.push(v);
            }
        }
        Ok(())
    }

    fn run(&mut self, obs: &mut dyn BlockObserver) -> Result<(), BlockSolveError> {
        if self.g.edge_count() == 0 {
            // A single vertex: only its own demand applies.
            for v in 0..self.g.vertex_count() {
                if self.t[v] == Tag::R || self.s[v] > 0 {
                    if self.s[v] > 1 {
                        return Err(BlockSolveError::PoolExhausted {
                            step: StepKind::CentreDemand,
                            wanted: self.s[v] as usize,
                            available: 1,
                        });
                    }
                    self.t[v] = Tag::R;
                    self.solution.push(v);
                }
            }
            return Ok(());
        }
        match self.dec.root {
            None => self.solve_star(0, &[0], obs),
            Some(root) => {
                let dec = Rc::clone(&self.dec);
                for &bp in &dec.sigma {
                    if !self.dec.is_end_block(bp) {
                        self.process_support_block(bp, obs)?;
                    }
                }
                self.solve_star(root, dec.child_blocks(root), obs)
            }
        }
    }
}

/// Retags `count` `B` vertices as `R`: first the members of `priority` (in
/// the given order, all of them inside the pool), then the rest of `pool`
/// in its order. Returns whether anything changed.
fn retag(
    t: &mut [Tag],
    priority: &[usize],
    pool: impl Iterator<Item = usize>,
    count: usize,
    step: StepKind,
) -> Result<bool, BlockSolveError> {
    if count == 0 {
        return Ok(false);
    }
    let mut left = count;
    for v in priority.iter().copied().chain(pool) {
        if left == 0 {
            break;
        }
        if t[v] == Tag::B {
            t[v] = Tag::R;
            left -= 1;
        }
    }
    if left > 0 {
        return Err(BlockSolveError::PoolExhausted { step, wanted: count, available: count - left });
    }
    Ok(true)
}

/// Live members of `N[v]`, increasing.
fn closed_alive<'a>(g: &'a Graph, alive: &'a [bool], v: usize) -> impl Iterator<Item = usize> + 'a {
    let below = g.neighbors(v).take_while(move |&u| u < v);
    let above = g.neighbors(v).skip_while(move |&u| u < v);
    below.chain(core::iter::once(v)).chain(above).filter(move |&u| alive[u])
}

/// Runs the relabelling rules on a connected labelled block graph,
/// reporting every intermediate step to `obs`. The result is a minimum
/// M_LVE-dominating set for the plain start `t ≡ B, s ≡ 0, k ≡ 2` and the
/// states the solver reaches from it; the rules only look at pairs of edges
/// that those states can make tight, so other labellings may come back
/// infeasible. Check the result with [`crate::is_mlve_set`].
pub fn solve_labeled(lg: &LabeledBlockGraph, obs: &mut dyn BlockObserver) -> Result<VertexSet, BlockSolveError> {
    let mut state = BlockWorkState::new(lg)?;
    state.run(obs)?;
    Ok(state.solution.iter().copied().collect())
}

/// A minimum liar's ve-dominating set of a block graph. Components are solved
/// independently; isolated vertices are never needed.
pub fn lved_block(g: &Graph) -> Result<VertexSet, BlockSolveError> {
    lved_block_observed(g, &mut ())
}

/// [`lved_block`] with an observer attached to every connected component
/// (component-local vertex ids are reported through the snapshots' `ids`).
pub fn lved_block_observed(g: &Graph, obs: &mut dyn BlockObserver) -> Result<VertexSet, BlockSolveError> {
    if g.edge_count() == 0 {
        return Ok(VertexSet::new());
    }
    match BlockWorkState::fresh(g) {
        Ok(mut state) => {
            state.run(obs)?;
            return Ok(state.solution.iter().copied().collect());
        }
        Err(BlockSolveError::Structure(BlockError::Disconnected)) => {}
        Err(e) => return Err(e),
    }
    let mut out = Vec::new();
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = g.induced(&comp);
        let mut state = BlockWorkState::fresh(&sub)?;
        state.run(obs)?;
        let local: VertexSet = state.solution.iter().copied().collect();
        out.extend(local.iter().map(|v| comp[v]));
    }
    Ok(out.into_iter().collect())
}
