//! Exhaustive and branch-and-bound ground truth for small instances, and a
//! backtracking decider for 3-dimensional matching.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::labels::{LabeledBlockGraph, Tag};
use crate::verify::is_lved_set;

/// Largest vertex count handled by subset enumeration.
pub const ENUMERATION_LIMIT: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("search budget exhausted after {nodes} nodes; minimum unknown")]
    CapExceeded { nodes: u64 },
}

/// Limits for the exponential searches. `max_nodes` counts candidate subsets
/// (enumeration) or search-tree nodes (branch and bound); `interrupt` is
/// polled periodically and aborts the search when it returns `true`.
#[derive(Default)]
pub struct Budget<'a> {
    pub max_nodes: Option<u64>,
    pub interrupt: Option<&'a mut dyn FnMut() -> bool>,
}

impl<'a> Budget<'a> {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), interrupt: None }
    }

    fn spend(&mut self, used: &mut u64) -> Result<(), ExactError> {
        *used += 1;
        if self.max_nodes.is_some_and(|cap| *used > cap) {
            return Err(ExactError::CapExceeded { nodes: *used - 1 });
        }
        if used.is_multiple_of(1024) {
            if let Some(stop) = self.interrupt.as_mut() {
                if stop() {
                    return Err(ExactError::CapExceeded { nodes: *used });
                }
            }
        }
        Ok(())
    }
}

/// Bitmask checker for the labelled conditions on graphs with at most 64
/// vertices. Plain liar's ve-domination is the labelling `t ≡ B, s ≡ 0, k ≡ 2`.
struct MaskChecker {
    forced: u64,
    vertex_hoods: Vec<(u64, u32)>,
    edge_hoods: Vec<(u64, u8)>,
}

impl MaskChecker {
    fn new(g: &Graph, t: &[Tag], s: &[u32], k: &[u8]) -> Self {
        assert!(g.vertex_count() <= 64);
        let closed = |v: usize| g.neighbors(v).fold(1u64 << v, |acc, u| acc | 1 << u);
        let vhood: Vec<u64> = (0..g.vertex_count()).map(closed).collect();
        let forced = (0..g.vertex_count()).filter(|&v| t[v] == Tag::R).fold(0, |acc, v| acc | 1 << v);
        let vertex_hoods = (0..g.vertex_count()).filter(|&v| s[v] > 0).map(|v| (vhood[v], s[v])).collect();
        let edge_hoods = g
            .edges()
            .iter()
            .zip(k)
            .map(|(&(x, y), &k)| (vhood[x] | vhood[y], k))
            .collect();
        MaskChecker { forced, vertex_hoods, edge_hoods }
    }

    fn accepts(&self, l: u64, scratch: &mut Vec<u64>) -> bool {
        if self.forced & !l != 0 {
            return false;
        }
        if self.vertex_hoods.iter().any(|&(h, s)| (h & l).count_ones() < s) {
            return false;
        }
        scratch.clear();
        for &(h, k) in &self.edge_hoods {
            let seen = h & l;
            let c = seen.count_ones();
            if c < u32::from(k) {
                return false;
            }
            if k == 2 && c == 2 {
                scratch.push(seen);
            }
        }
        scratch.sort_unstable();
        scratch.windows(2).all(|w| w[0] != w[1])
    }
}

/// Calls `visit` on every `size`-subset of `pool` (a sorted list) in
/// lexicographic order until it returns `true`.
fn for_each_combination(
    pool: &[usize],
    size: usize,
    visit: &mut dyn FnMut(&[usize]) -> Result<bool, ExactError>,
) -> Result<bool, ExactError> {
    if size > pool.len() {
        return Ok(false);
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut pick: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
    loop {
        if visit(&pick)? {
            return Ok(true);
        }
        // Advance to the next combination.
        let mut i = size;
        loop {
            if i == 0 {
                return Ok(false);
            }
            i -= 1;
            if idx[i] != i + pool.len() - size {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..size {
            pick[j] = pool[idx[j]];
        }
    }
}

fn enumerate_min(
    n: usize,
    checker: &MaskChecker,
    forced: &[usize],
    first_size: usize,
    budget: &mut Budget<'_>,
) -> Result<Option<VertexSet>, ExactError> {
    let forced_mask = forced.iter().fold(0u64, |acc, &v| acc | 1 << v);
    let pool: Vec<usize> = (0..n).filter(|v| forced_mask >> v & 1 == 0).collect();
    let mut used = 0u64;
    let mut scratch = Vec::new();
    for size in first_size.saturating_sub(forced.len())..=pool.len() {
        let mut found: Option<u64> = None;
        for_each_combination(&pool, size, &mut |pick| {
            budget.spend(&mut used)?;
            let l = pick.iter().fold(forced_mask, |acc, &v| acc | 1 << v);
            if checker.accepts(l, &mut scratch) {
                found = Some(l);
                return Ok(true);
            }
            Ok(false)
        })?;
        if let Some(l) = found {
            return Ok(Some((0..n).filter(|v| l >> v & 1 == 1).collect()));
        }
    }
    Ok(None)
}

fn lved_lower_bound(g: &Graph) -> usize {
    match g.edge_count() {
        0 => 0,
        1 => 2,
        _ => 3,
    }
}

/// A minimum liar's ve-dominating set of `g`.
///
/// Up to [`ENUMERATION_LIMIT`] vertices the answer is the lexicographically
/// smallest among the minimum-size sets, found by enumerating subsets by
/// increasing size. Larger graphs go through [`branch_and_bound_min`], whose
/// answer is deterministic but not necessarily lexicographically smallest.
pub fn min_lved_exact(g: &Graph, budget: &mut Budget<'_>) -> Result<VertexSet, ExactError> {
    if g.edge_count() == 0 {
        return Ok(VertexSet::new());
    }
    if g.vertex_count() > ENUMERATION_LIMIT {
        return branch_and_bound_min(g, budget);
    }
    let n = g.vertex_count();
    let checker = MaskChecker::new(g, &vec![Tag::B; n], &vec![0; n], &vec![2; g.edge_count()]);
    Ok(enumerate_min(n, &checker, &[], lved_lower_bound(g), budget)?.expect("the full vertex set is always feasible"))
}

/// A minimum M_LVE-dominating set of a labelled graph with at most
/// [`ENUMERATION_LIMIT`] vertices, lexicographically smallest among the
/// minimum-size sets. `None` when no set satisfies the labels.
pub fn min_mlve_exact(lg: &LabeledBlockGraph, budget: &mut Budget<'_>) -> Result<Option<VertexSet>, ExactError> {
    let n = lg.base.vertex_count();
    assert!(n <= ENUMERATION_LIMIT, "min_mlve_exact enumerates subsets; {n} vertices is too many");
    let checker = MaskChecker::new(&lg.base, &lg.t, &lg.s, &lg.k);
    let forced: Vec<usize> = lg.forced().into_vec();
    enumerate_min(n, &checker, &forced, forced.len(), budget)
}

/// Depth-first search for a liar's ve-dominating set, with inclusion and
/// exclusion branching on the first unmet constraint.
struct Search<'g> {
    g: &'g Graph,
    /// `hoods[e]` = `N[e]`, sorted.
    hoods: Vec<Vec<usize>>,
    /// `seen_by[v]` = edges whose neighbourhood contains `v`.
    seen_by: Vec<Vec<usize>>,
    chosen: Vec<bool>,
    excluded: Vec<bool>,
    count: Vec<usize>,
    size: usize,
    used: u64,
}

enum Need {
    Done,
    Edge { edge: usize, deficit: usize },
    Pair { first: usize, second: usize },
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.vertex_count();
        let hoods: Vec<Vec<usize>> = (0..g.edge_count())
            .map(|e| g.closed_edge_neighborhood(e).expect("edge id in range").into_vec())
            .collect();
        let mut seen_by = vec![Vec::new(); n];
        for (e, h) in hoods.iter().enumerate() {
            for &v in h {
                seen_by[v].push(e);
            }
        }
        Search {
            g,
            hoods,
            seen_by,
            chosen: vec![false; n],
            excluded: vec![false; n],
            count: vec![0; g.edge_count()],
            size: 0,
            used: 0,
        }
    }

    fn add(&mut self, v: usize) {
        self.chosen[v] = true;
        self.size += 1;
        for &e in &self.seen_by[v] {
            self.count[e] += 1;
        }
    }

    fn remove(&mut self, v: usize) {
        self.chosen[v] = false;
        self.size -= 1;
        for &e in &self.seen_by[v] {
            self.count[e] -= 1;
        }
    }

    fn need(&self) -> Need {
        // Most constrained edge first: fewest free candidates per unit of deficit.
        let mut best: Option<(usize, usize, usize)> = None;
        for (e, &c) in self.count.iter().enumerate() {
            if c >= 2 {
                continue;
            }
            let free = self.hoods[e].iter().filter(|&&v| !self.chosen[v] && !self.excluded[v]).count();
            let key = (free, e);
            if best.is_none_or(|(bf, be, _)| key < (bf, be)) {
                best = Some((free, e, 2 - c));
            }
        }
        if let Some((_, edge, deficit)) = best {
            return Need::Edge { edge, deficit };
        }
        let mut twins: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (e, &c) in self.count.iter().enumerate() {
            if c != 2 {
                continue;
            }
            let mut it = self.hoods[e].iter().copied().filter(|&v| self.chosen[v]);
            let key = (it.next().unwrap(), it.next().unwrap());
            if let Some(&f) = twins.get(&key) {
                return Need::Pair { first: f, second: e };
            }
            twins.insert(key, e);
        }
        Need::Done
    }

    /// Sum of deficits over unmet edges whose free candidate sets are pairwise
    /// disjoint, picked greedily.
    fn packing_bound(&self) -> usize {
        let mut taken = vec![false; self.g.vertex_count()];
        let mut bound = 0;
        for (e, &c) in self.count.iter().enumerate() {
            if c >= 2 {
                continue;
            }
            let free: Vec<usize> =
                self.hoods[e].iter().copied().filter(|&v| !self.chosen[v] && !self.excluded[v]).collect();
            if free.iter().any(|&v| taken[v]) {
                continue;
            }
            for v in free {
                taken[v] = true;
            }
            bound += 2 - c;
        }
        bound
    }

    fn candidates(&self, pool: impl Iterator<Item = usize>) -> Vec<usize> {
        let mut c: Vec<usize> = pool.filter(|&v| !self.chosen[v] && !self.excluded[v]).collect();
        c.sort_unstable();
        c.dedup();
        // Vertices helping the most still-unmet edges first.
        c.sort_by_key(|&v| core::cmp::Reverse(self.seen_by[v].iter().filter(|&&e| self.count[e] < 2).count()));
        c
    }

    /// Looks for a completion with at most `limit` vertices in total.
    fn dfs(&mut self, limit: usize, budget: &mut Budget<'_>) -> Result<bool, ExactError> {
        budget.spend(&mut self.used)?;
        let (cands, deficit) = match self.need() {
            Need::Done => return Ok(true),
            Need::Edge { edge, deficit } => (self.candidates(self.hoods[edge].clone().into_iter()), deficit),
            Need::Pair { first, second } => {
                let pool: Vec<usize> = self.hoods[first].iter().chain(&self.hoods[second]).copied().collect();
                (self.candidates(pool.into_iter()), 1)
            }
        };
        if cands.len() < deficit || self.size + deficit.max(self.packing_bound()) > limit {
            return Ok(false);
        }
        let mut banned = Vec::new();
        let mut found = false;
        for v in cands {
            self.add(v);
            let ok = self.dfs(limit, budget);
            if matches!(ok, Ok(true)) {
                found = true;
                break;
            }
            self.remove(v);
            if let Err(e) = ok {
                for b in banned {
                    self.excluded[b] = false;
                }
                return Err(e);
            }
            self.excluded[v] = true;
            banned.push(v);
        }
        for b in banned {
            self.excluded[b] = false;
        }
        Ok(found)
    }

    fn solution(&self) -> VertexSet {
        (0..self.g.vertex_count()).filter(|&v| self.chosen[v]).collect()
    }
}

/// Whether `g` has a liar's ve-dominating set with at most `limit` vertices.
/// Returns one such set, `None` when the search proves there is none, or
/// [`ExactError::CapExceeded`] when the budget runs out first.
pub fn lved_within(g: &Graph, limit: usize, budget: &mut Budget<'_>) -> Result<Option<VertexSet>, ExactError> {
    if g.edge_count() == 0 {
        return Ok(Some(VertexSet::new()));
    }
    let mut search = Search::new(g);
    if search.dfs(limit, budget)? {
        let l = search.solution();
        debug_assert!(is_lved_set(g, &l).map(|v| v.ok()).unwrap_or(false));
        Ok(Some(l))
    } else {
        Ok(None)
    }
}

/// Minimum liar's ve-dominating set by iterative deepening over the size
/// bound, sharing one budget across all rounds.
pub fn branch_and_bound_min(g: &Graph, budget: &mut Budget<'_>) -> Result<VertexSet, ExactError> {
    if g.edge_count() == 0 {
        return Ok(VertexSet::new());
    }
    for limit in lved_lower_bound(g)..=g.vertex_count() {
        if let Some(l) = lved_within(g, limit, budget)? {
            return Ok(l);
        }
    }
    unreachable!("the full vertex set is always feasible")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThreeDmError {
    #[error("triple {index} has a coordinate outside 0..{q}")]
    OutOfRange { index: usize, q: usize },
    #[error("triple {index} repeats triple {earlier}")]
    Duplicate { index: usize, earlier: usize },
}

/// A 3-dimensional matching instance over `U = V = W = 0..q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeDmInstance {
    q: usize,
    triples: Vec<(usize, usize, usize)>,
}

impl ThreeDmInstance {
    pub fn new(q: usize, triples: Vec<(usize, usize, usize)>) -> Result<Self, ThreeDmError> {
        let mut seen = BTreeMap::new();
        for (index, &(u, v, w)) in triples.iter().enumerate() {
            if u >= q || v >= q || w >= q {
                return Err(ThreeDmError::OutOfRange { index, q });
            }
            if let Some(&earlier) = seen.get(&(u, v, w)) {
                return Err(ThreeDmError::Duplicate { index, earlier });
            }
            seen.insert((u, v, w), index);
        }
        Ok(ThreeDmInstance { q, triples })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of triples, `p`.
    pub fn p(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[(usize, usize, usize)] {
        &self.triples
    }

    /// Whether `matching` lists `q` distinct triple indices that pairwise
    /// disagree in every coordinate.
    pub fn is_perfect_matching(&self, matching: &[usize]) -> bool {
        if matching.len() != self.q {
            return false;
        }
        let mut used = [vec![false; self.q], vec![false; self.q], vec![false; self.q], vec![false; self.p()]];
        for &i in matching {
            if i >= self.p() || used[3][i] {
                return false;
            }
            used[3][i] = true;
            let (u, v, w) = self.triples[i];
            if used[0][u] || used[1][v] || used[2][w] {
                return false;
            }
            used[0][u] = true;
            used[1][v] = true;
            used[2][w] = true;
        }
        true
    }
}

/// A perfect 3-dimensional matching as sorted triple indices, or `None`.
///
/// Backtracks over the elements of `U` in order, trying each triple that
/// covers the current element and clashes with nothing chosen so far.
pub fn solve_3dm(inst: &ThreeDmInstance) -> Option<Vec<usize>> {
    let q = inst.q();
    let mut by_u: Vec<Vec<usize>> = vec![Vec::new(); q];
    for (i, &(u, _, _)) in inst.triples().iter().enumerate() {
        by_u[u].push(i);
    }
    fn go(
        u: usize,
        inst: &ThreeDmInstance,
        by_u: &[Vec<usize>],
        used_v: &mut [bool],
        used_w: &mut [bool],
        picked: &mut Vec<usize>,
    ) -> bool {
        if u == by_u.len() {
            return true;
        }
        for &i in &by_u[u] {
            let (_, v, w) = inst.triples()[i];
            if used_v[v] || used_w[w] {
                continue;
            }
            used_v[v] = true;
            used_w[w] = true;
            picked.push(i);
            if go(u + 1, inst, by_u, used_v, used_w, picked) {
                return true;
            }
            picked.pop();
            used_v[v] = false;
            used_w[w] = false;
        }
        false
    }
    let mut picked = Vec::new();
    if go(0, inst, &by_u, &mut vec![false; q], &mut vec![false; q], &mut picked) {
        picked.sort_unstable();
        Some(picked)
    } else {
        None
    }
}
