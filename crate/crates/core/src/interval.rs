//! Minimum liar's ve-domination on proper interval graphs.
//!
//! Edges are swept in edge interval order. Each edge that is not yet
//! covered three times is topped up to two with the rightmost available
//! vertices; the sweep then jumps to the next edge that is either under
//! two or shares its exact two-element intersection with the current edge.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

pub type Endpoint = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("expected {expected} intervals, got {got}")]
    Count { expected: usize, got: usize },
    #[error("interval of vertex {vertex} is empty or reversed")]
    Empty { vertex: usize },
    #[error("vertices {u} and {v} share an endpoint")]
    Collision { u: usize, v: usize },
    #[error("interval of {outer} contains the interval of {inner}")]
    Containment { outer: usize, inner: usize },
    #[error("edge {u}-{v} disagrees with the intervals")]
    Inconsistent { u: usize, v: usize },
    #[error("ordering is not a permutation of the vertices")]
    BadOrdering,
    #[error("asked for {wanted} vertices out of {available}")]
    TooFew { wanted: usize, available: usize },
    #[error("invariant violated after edge {edge}: {what}")]
    Invariant { edge: usize, what: &'static str },
}

/// Closed intervals `[l(u), r(u)]` with pairwise distinct endpoints and no
/// containment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalRepresentation {
    l: Vec<Endpoint>,
    r: Vec<Endpoint>,
    /// Vertices by increasing left (equivalently right) endpoint.
    order: Vec<usize>,
    /// Positions of the endpoints among all `2n` sorted endpoints.
    l_pos: Vec<u32>,
    r_pos: Vec<u32>,
}

impl IntervalRepresentation {
    pub fn new(l: Vec<Endpoint>, r: Vec<Endpoint>) -> Result<Self, IntervalError> {
        let n = l.len();
        if r.len() != n {
            return Err(IntervalError::Count { expected: n, got: r.len() });
        }
        if let Some(vertex) = (0..n).find(|&v| l[v] >= r[v]) {
            return Err(IntervalError::Empty { vertex });
        }
        let mut ends: Vec<(Endpoint, usize, bool)> = (0..n).flat_map(|v| [(l[v], v, false), (r[v], v, true)]).collect();
        ends.sort_unstable();
        if let Some(w) = ends.windows(2).find(|w| w[0].0 == w[1].0) {
            let (u, v) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
            return Err(IntervalError::Collision { u, v });
        }
        let mut l_pos = vec![0u32; n];
        let mut r_pos = vec![0u32; n];
        let mut order = Vec::with_capacity(n);
        for (i, &(_, v, right)) in ends.iter().enumerate() {
            if right {
                r_pos[v] = i as u32;
            } else {
                l_pos[v] = i as u32;
                order.push(v);
            }
        }
        if let Some(w) = order.windows(2).find(|w| r_pos[w[1]] < r_pos[w[0]]) {
            return Err(IntervalError::Containment { outer: w[0], inner: w[1] });
        }
        Ok(IntervalRepresentation { l, r, order, l_pos, r_pos })
    }

    /// Intervals for `g` read off a vertex ordering in which every closed
    /// neighbourhood is consecutive (a proper interval ordering).
    pub fn from_ordering(g: &Graph, ordering: &[usize]) -> Result<Self, IntervalError> {
        let n = g.vertex_count();
        let mut pos = vec![usize::MAX; n];
        if ordering.len() != n {
            return Err(IntervalError::BadOrdering);
        }
        for (i, &v) in ordering.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(IntervalError::BadOrdering);
            }
            pos[v] = i;
        }
        // Left endpoint of the i-th vertex sits at slot (i, 0); its right
        // endpoint just after the left endpoint of its last neighbour.
        let mut keys: Vec<((usize, usize, usize), usize, bool)> = Vec::with_capacity(2 * n);
        for (i, &v) in ordering.iter().enumerate() {
            let far = g.neighbors(v).map(|u| pos[u]).max().unwrap_or(i).max(i);
            keys.push(((i, 0, 0), v, false));
            keys.push(((far, 1, i), v, true));
        }
        keys.sort_unstable();
        let mut l = vec![Endpoint::from_integer(0); n];
        let mut r = vec![Endpoint::from_integer(0); n];
        for (rank, &(_, v, right)) in keys.iter().enumerate() {
            let x = Endpoint::from_integer(rank as i64);
            if right {
                r[v] = x;
            } else {
                l[v] = x;
            }
        }
        let iv = Self::new(l, r)?;
        iv.check_graph(g)?;
        Ok(iv)
    }

    pub fn len(&self) -> usize {
        self.l.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l.is_empty()
    }

    pub fn left(&self, v: usize) -> Endpoint {
        self.l[v]
    }

    pub fn right(&self, v: usize) -> Endpoint {
        self.r[v]
    }

    /// Vertices sorted by endpoint.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn intersects(&self, u: usize, v: usize) -> bool {
        self.l[u] <= self.r[v] && self.l[v] <= self.r[u]
    }

    /// Restriction to `vertices` (renumbered `0..vertices.len()`).
    pub fn restrict(&self, vertices: &[usize]) -> Self {
        let l = vertices.iter().map(|&v| self.l[v]).collect();
        let r = vertices.iter().map(|&v| self.r[v]).collect();
        Self::new(l, r).expect("restriction keeps distinct endpoints")
    }

    /// Checks that `g` is exactly the intersection graph of the intervals.
    pub fn check_graph(&self, g: &Graph) -> Result<(), IntervalError> {
        let n = g.vertex_count();
        if self.len() != n {
            return Err(IntervalError::Count { expected: n, got: self.len() });
        }
        // The intervals meeting rank i are ranks lo..=hi. The graph is simple,
        // so a window that holds every neighbour and matches the degree is the
        // neighbourhood. Vertices are scanned by id to read adjacency in order.
        let last = last_neighbours(self);
        let mut window = vec![(0u32, 0u32, 0u32); n];
        let mut lo = 0;
        for (i, &v) in self.order.iter().enumerate() {
            while last[lo] < i {
                lo += 1;
            }
            window[v] = (i as u32, lo as u32, last[i] as u32);
        }
        for v in 0..n {
            let (_, lo, hi) = window[v];
            for u in g.neighbors(v) {
                let p = window[u].0;
                if p < lo || p > hi {
                    return Err(IntervalError::Inconsistent { u: v.min(u), v: v.max(u) });
                }
            }
            if g.degree(v) != (hi - lo) as usize {
                let missing = (lo..=hi).map(|j| self.order[j as usize]).find(|&u| u != v && !g.has_edge(u, v)).unwrap_or(v);
                return Err(IntervalError::Inconsistent { u: v.min(missing), v: v.max(missing) });
            }
        }
        Ok(())
    }
}

/// Edges oriented as `(u, v)` with `r(u) < r(v)` and listed in edge interval
/// order: by `r(v)`, then by `r(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrder {
    pub sigma: Vec<usize>,
    pub oriented: Vec<(usize, usize)>,
}

pub fn edge_interval_order(g: &Graph, iv: &IntervalRepresentation) -> Result<EdgeOrder, IntervalError> {
    iv.check_graph(g)?;
    Ok(edge_order_of(g, iv))
}

fn edge_order_of(g: &Graph, iv: &IntervalRepresentation) -> EdgeOrder {
    let rank = ranks(iv);
    let sigma = ranked_order(g, &rank, iv.order());
    let oriented = g.edges().iter().map(|&(a, b)| if rank[a] < rank[b] { (a, b) } else { (b, a) }).collect();
    EdgeOrder { sigma, oriented }
}

fn ranks(iv: &IntervalRepresentation) -> Vec<usize> {
    let mut rank = vec![0; iv.len()];
    for (i, &v) in iv.order().iter().enumerate() {
        rank[v] = i;
    }
    rank
}

/// σ_E by one counting pass: scanning lower endpoints in rank order fills
/// each upper-endpoint bucket already sorted.
fn ranked_order(g: &Graph, rank: &[usize], by_rank: &[usize]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut start = vec![0usize; n + 1];
    for (rv, &v) in by_rank.iter().enumerate() {
        start[rv + 1] = g.neighbors(v).filter(|&w| rank[w] < rv).count();
    }
    for r in 0..n {
        start[r + 1] += start[r];
    }
    let mut sigma = vec![0; g.edge_count()];
    for (ru, &u) in by_rank.iter().enumerate() {
        for (w, e) in g.incident(u) {
            let rw = rank[w];
            if rw > ru {
                sigma[start[rw]] = e;
                start[rw] += 1;
            }
        }
    }
    sigma
}

/// For each rank, the largest rank whose interval meets it.
fn last_neighbours(iv: &IntervalRepresentation) -> Vec<usize> {
    let order = iv.order();
    let n = order.len();
    let mut last = Vec::with_capacity(n);
    let mut j = 0;
    for (i, &v) in order.iter().enumerate() {
        j = j.max(i);
        while j + 1 < n && iv.l_pos[order[j + 1]] < iv.r_pos[v] {
            j += 1;
        }
        last.push(j);
    }
    last
}

/// The `q` members of `s` with the largest right endpoints, largest first.
pub fn top_q(s: &VertexSet, q: usize, iv: &IntervalRepresentation) -> Result<Vec<usize>, IntervalError> {
    if s.len() < q {
        return Err(IntervalError::TooFew { wanted: q, available: s.len() });
    }
    let mut v: Vec<usize> = s.iter().collect();
    v.sort_unstable_by_key(|&v| core::cmp::Reverse(iv.right(v)));
    v.truncate(q);
    Ok(v)
}

/// How `|N[e] ∩ L|` is evaluated during the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    /// Inspect only the three members of `L` with the largest right endpoints.
    Local,
    /// Inspect every vertex of `N[e]`.
    Full,
}

#[derive(Clone, Copy, Debug)]
pub struct IntervalOptions {
    pub count: CountMode,
    /// Re-verify the sweep invariants after every iteration (quadratic).
    pub check_invariants: bool,
}

impl Default for IntervalOptions {
    fn default() -> Self {
        IntervalOptions { count: CountMode::Local, check_invariants: false }
    }
}

/// Sweep state. Vertices are addressed by interval rank; an edge is the
/// rank pair `(u, v)` with `u < v`.
struct Sweep<'a> {
    g: &'a Graph,
    /// Edge ids in sweep order, kept only when checking invariants.
    sigma: Vec<usize>,
    rank: Vec<usize>,
    by_rank: &'a [usize],
    /// `first[x]`, `last[x]`: rank range of `N[x]`.
    first: Vec<usize>,
    last: Vec<usize>,
    in_l: Vec<bool>,
    /// Members of `L`, increasing.
    l: Vec<usize>,
    mode: CountMode,
}

/// Position in `σ_E` together with the ranks of the edge there.
#[derive(Clone, Copy, Debug)]
struct Cursor {
    pos: usize,
    u: usize,
    v: usize,
}

/// Up to three members of `N[e] ∩ L` and whether there are more.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Meet {
    len: usize,
    items: [usize; 3],
}

impl Meet {
    fn set(&self) -> &[usize] {
        &self.items[..self.len.min(3)]
    }
}

impl<'a> Sweep<'a> {
    /// `iv` must already be checked against `g`; `last` comes from
    /// [`last_neighbours`].
    fn new(g: &'a Graph, iv: &'a IntervalRepresentation, last: Vec<usize>, opts: IntervalOptions) -> Self {
        let n = g.vertex_count();
        let rank = ranks(iv);
        let mut first = Vec::with_capacity(n);
        let mut u = 0;
        for v in 0..n {
            while last[u] < v {
                u += 1;
            }
            first.push(u);
        }
        let sigma = if opts.check_invariants { ranked_order(g, &rank, iv.order()) } else { Vec::new() };
        Sweep { g, sigma, rank, by_rank: iv.order(), first, last, in_l: vec![false; n], l: Vec::new(), mode: opts.count }
    }

    fn first_edge(&self) -> Option<Cursor> {
        self.edge_from(0, 0)
    }

    fn advance(&self, c: Cursor) -> Option<Cursor> {
        if c.u + 1 < c.v {
            Some(Cursor { pos: c.pos + 1, u: c.u + 1, v: c.v })
        } else {
            self.edge_from(c.pos + 1, c.v + 1)
        }
    }

    /// The first edge whose upper rank is at least `v`.
    fn edge_from(&self, pos: usize, mut v: usize) -> Option<Cursor> {
        while v < self.first.len() {
            if self.first[v] < v {
                return Some(Cursor { pos, u: self.first[v], v });
            }
            v += 1;
        }
        None
    }

    fn edge_id(&self, c: Cursor) -> usize {
        self.g.edge_between(self.by_rank[c.u], self.by_rank[c.v]).expect("cursor edges exist")
    }

    /// Rank range of `N[e]`.
    fn range(&self, c: Cursor) -> (usize, usize) {
        (self.first[c.u], self.last[c.v])
    }

    fn meet(&self, c: Cursor) -> Meet {
        let (lo, hi) = self.range(c);
        let mut m = Meet { len: 0, items: [0; 3] };
        let mut push = |x: usize| {
            if m.len < 3 {
                m.items[m.len] = x;
            }
            m.len += 1;
        };
        match self.mode {
            CountMode::Local => {
                for &x in self.l.iter().rev().take(3) {
                    if (lo..=hi).contains(&x) {
                        push(x);
                    }
                }
            }
            CountMode::Full => {
                for x in (lo..=hi).rev() {
                    if self.in_l[x] {
                        push(x);
                    }
                }
            }
        }
        m.len = m.len.min(3);
        m
    }

    /// `T^q[N[e_i] \ L]`, added to `L`.
    fn add_top(&mut self, c: Cursor, q: usize) -> Result<(), IntervalError> {
        let (lo, hi) = self.range(c);
        let mut picked = 0;
        let mut x = hi + 1;
        while picked < q && x > lo {
            x -= 1;
            if !self.in_l[x] {
                self.insert(x);
                picked += 1;
            }
        }
        if picked < q {
            return Err(IntervalError::TooFew { wanted: q, available: picked });
        }
        Ok(())
    }

    fn insert(&mut self, x: usize) {
        self.in_l[x] = true;
        let mut at = self.l.len();
        while at > 0 && self.l[at - 1] > x {
            at -= 1;
        }
        debug_assert!(self.l.len() - at < 3, "insertion beyond the third position");
        self.l.insert(at, x);
    }

    fn chosen(&self, v: usize) -> bool {
        self.in_l[self.rank[v]]
    }

    fn full_count(&self, e: usize) -> usize {
        let (a, b) = self.g.endpoints(e);
        let mut c = usize::from(self.chosen(a)) + usize::from(self.chosen(b));
        let nb: VertexSet = self.g.neighbors(a).chain(self.g.neighbors(b)).filter(|&x| x != a && x != b).collect();
        c += nb.iter().filter(|&x| self.chosen(x)).count();
        c
    }

    fn pair_count(&self, e: usize, f: usize) -> usize {
        let mut s: VertexSet = VertexSet::new();
        for x in [self.g.endpoints(e), self.g.endpoints(f)] {
            s.insert(x.0);
            s.insert(x.1);
            s.extend(self.g.neighbors(x.0));
            s.extend(self.g.neighbors(x.1));
        }
        s.iter().filter(|&x| self.chosen(x)).count()
    }

    fn shares(&self, e: usize, f: usize) -> bool {
        let ne = self.g.closed_edge_neighborhood(e).expect("edge id in range");
        let nf = self.g.closed_edge_neighborhood(f).expect("edge id in range");
        let hit = ne.iter().any(|x| nf.contains(x));
        hit
    }

    /// The prefix invariants after edge `i` has been handled and the sweep is
    /// about to continue from `next` (exclusive upper end of the checked pairs).
    fn check_prefix(&self, i: usize, next: Option<usize>) -> Result<(), IntervalError> {
        let sigma = &self.sigma;
        let ei = sigma[i];
        let fail = |what| Err(IntervalError::Invariant { edge: ei, what });
        for &e in &sigma[..=i] {
            if self.full_count(e) < 2 {
                return fail("prefix edge covered fewer than twice");
            }
        }
        for (a, &e) in sigma[..=i].iter().enumerate() {
            for &f in &sigma[a + 1..=i] {
                if self.pair_count(e, f) < 3 {
                    return fail("prefix pair covered fewer than three times");
                }
            }
        }
        let bound = next.unwrap_or(sigma.len() - 1);
        for (a, &fa) in sigma.iter().enumerate().skip(i + 1) {
            if a > bound && !self.shares(ei, fa) {
                continue;
            }
            for &e in &sigma[..=i] {
                if self.pair_count(e, fa) < 3 {
                    return fail("prefix edge paired with a later edge covered fewer than three times");
                }
            }
        }
        Ok(())
    }
}

/// A minimum liar's ve-dominating set of a proper interval graph given by
/// its intervals. Components are solved independently.
pub fn lved_proper_interval(g: &Graph, iv: &IntervalRepresentation) -> Result<VertexSet, IntervalError> {
    lved_proper_interval_with(g, iv, IntervalOptions::default())
}

pub fn lved_proper_interval_with(
    g: &Graph,
    iv: &IntervalRepresentation,
    opts: IntervalOptions,
) -> Result<VertexSet, IntervalError> {
    iv.check_graph(g)?;
    let last = last_neighbours(iv);
    let n = last.len();
    // Components are the rank runs split wherever no interval reaches past.
    if (0..n.saturating_sub(1)).all(|r| last[r] > r) {
        return sweep(g, iv, last, opts);
    }
    let mut out = Vec::new();
    let mut from = 0;
    for r in 0..n {
        if last[r] > r {
            continue;
        }
        if r > from {
            let mut comp = iv.order()[from..=r].to_vec();
            comp.sort_unstable();
            let sub = g.induced(&comp);
            let sub_iv = iv.restrict(&comp);
            let sub_last = last_neighbours(&sub_iv);
            out.extend(sweep(&sub, &sub_iv, sub_last, opts)?.iter().map(|v| comp[v]));
        }
        from = r + 1;
    }
    Ok(out.into_iter().collect())
}

fn sweep(g: &Graph, iv: &IntervalRepresentation, last: Vec<usize>, opts: IntervalOptions) -> Result<VertexSet, IntervalError> {
    let mut st = Sweep::new(g, iv, last, opts);
    let mut at = st.first_edge();
    while let Some(i) = at {
        let here = st.meet(i);
        if here.len > 2 {
            at = st.advance(i);
            continue;
        }
        st.add_top(i, 2 - here.len)?;
        let here = st.meet(i);
        let mut next = None;
        let mut probe = st.advance(i);
        while let Some(k) = probe {
            let there = st.meet(k);
            if there.len < 2 {
                next = Some((k, 2 - there.len));
                break;
            }
            if there.len == 2 && same_pair(there.set(), here.set()) {
                next = Some((k, 1));
                break;
            }
            if opts.check_invariants && there.len < 3 {
                return Err(IntervalError::Invariant { edge: st.edge_id(k), what: "skipped edge covered fewer than three times" });
            }
            probe = st.advance(k);
        }
        if let Some((k, q)) = next {
            st.add_top(k, q)?;
        }
        if opts.check_invariants {
            st.check_prefix(i.pos, next.map(|(k, _)| k.pos))?;
        }
        at = next.map(|(k, _)| k);
    }
    Ok(st.l.iter().map(|&x| st.by_rank[x]).collect())
}

fn same_pair(a: &[usize], b: &[usize]) -> bool {
    a.len() == 2 && b.len() == 2 && ((a[0] == b[0] && a[1] == b[1]) || (a[0] == b[1] && a[1] == b[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_lved_set;

    fn iv(pairs: &[(i64, i64)]) -> IntervalRepresentation {
        IntervalRepresentation::new(
            pairs.iter().map(|&(a, _)| Endpoint::from_integer(a)).collect(),
            pairs.iter().map(|&(_, b)| Endpoint::from_integer(b)).collect(),
        )
        .unwrap()
    }

    fn path(n: usize) -> (Graph, IntervalRepresentation) {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let g = Graph::new(n, &edges).unwrap();
        let intervals: Vec<_> = (0..n as i64).map(|i| (3 * i, 3 * i + 4)).collect();
        (g, iv(&intervals))
    }

    #[test]
    fn edge_order_examples() {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let o = edge_interval_order(&g, &iv(&[(1, 4), (2, 5), (3, 6)])).unwrap();
        assert_eq!(o.sigma, vec![0, 1, 2]);
        let (p, piv) = path(3);
        assert_eq!(edge_interval_order(&p, &piv).unwrap().sigma, vec![0, 1]);
    }

    #[test]
    fn rejects_bad_intervals() {
        let e = |v: &[(i64, i64)]| {
            IntervalRepresentation::new(
                v.iter().map(|&(a, _)| Endpoint::from_integer(a)).collect(),
                v.iter().map(|&(_, b)| Endpoint::from_integer(b)).collect(),
            )
        };
        assert_eq!(e(&[(0, 3), (1, 2)]), Err(IntervalError::Containment { outer: 0, inner: 1 }));
        assert_eq!(e(&[(0, 3), (3, 5)]), Err(IntervalError::Collision { u: 0, v: 1 }));
        assert_eq!(e(&[(2, 2)]), Err(IntervalError::Empty { vertex: 0 }));
        let g = Graph::new(2, &[]).unwrap();
        assert!(matches!(iv(&[(0, 3), (1, 4)]).check_graph(&g), Err(IntervalError::Inconsistent { .. })));
    }

    #[test]
    fn top_q_examples() {
        let r = iv(&[(1, 4), (2, 5), (3, 6)]);
        let s = VertexSet::from_slice(&[0, 1, 2]);
        assert_eq!(top_q(&s, 2, &r).unwrap(), vec![2, 1]);
        assert!(top_q(&s, 0, &r).unwrap().is_empty());
        assert_eq!(top_q(&s, 3, &r).unwrap(), vec![2, 1, 0]);
        assert!(top_q(&s, 4, &r).is_err());
    }

    #[test]
    fn small_graphs() {
        let (p4, iv4) = path(4);
        let l = lved_proper_interval(&p4, &iv4).unwrap();
        assert_eq!(l.len(), 3);
        assert!(is_lved_set(&p4, &l).unwrap().ok());
        let k3 = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(lved_proper_interval(&k3, &iv(&[(1, 4), (2, 5), (3, 6)])).unwrap().len(), 3);
    }

    #[test]
    fn from_ordering_round_trip() {
        let (p5, _) = path(5);
        let r = IntervalRepresentation::from_ordering(&p5, &[0, 1, 2, 3, 4]).unwrap();
        r.check_graph(&p5).unwrap();
        assert!(IntervalRepresentation::from_ordering(&p5, &[0, 2, 1, 3, 4]).is_err());
    }
}
