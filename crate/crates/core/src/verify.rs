//! Checkers for liar's ve-dominating sets and their labelled generalisation.
//!
//! Two routes are provided for each property. The default route never looks
//! at pairs of edges explicitly: once every edge sees at least two members of
//! `L`, a pair `(e, f)` can only fall short of three when `N[e] ∩ L` and
//! `N[f] ∩ L` are the same two-element set, so grouping edges by that set
//! finds every violation in `O(n + m)` time. The `_naive` route enumerates
//! all pairs and exists to cross-check the first one.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::labels::{LabeledBlockGraph, Tag};

/// The first constraint a candidate set violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `|N[e] ∩ L| < required`.
    SingleEdge { edge: usize, required: usize, actual: usize },
    /// `|(N[e] ∪ N[f]) ∩ L| < required` for the distinct edges `first < second`.
    Pair { first: usize, second: usize, required: usize, actual: usize },
    /// An `R`-tagged vertex is missing from `L`.
    ForcedVertex { vertex: usize },
    /// `|N[v] ∩ L| < s(v)`.
    VertexCount { vertex: usize, required: usize, actual: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Witness::SingleEdge { edge, required, actual } => {
                write!(f, "edge {edge}: |N[e] ∩ L| = {actual} < {required}")
            }
            Witness::Pair { first, second, required, actual } => write!(
                f,
                "edges {first},{second}: |(N[e] ∪ N[f]) ∩ L| = {actual} < {required}"
            ),
            Witness::ForcedVertex { vertex } => write!(f, "vertex {vertex} is tagged R but not in L"),
            Witness::VertexCount { vertex, required, actual } => {
                write!(f, "vertex {vertex}: |N[v] ∩ L| = {actual} < {required}")
            }
        }
    }
}

/// Outcome of a check. `ok()` holds exactly when there is no witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub witness: Option<Witness>,
}

impl Verdict {
    pub const OK: Verdict = Verdict { witness: None };

    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }

    fn fail(w: Witness) -> Self {
        Verdict { witness: Some(w) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("vertex {0} in the candidate set is not a vertex of the graph")]
    InvalidVertex(usize),
}

fn check_range(g: &Graph, l: &VertexSet) -> Result<Vec<bool>, VerifyError> {
    if let Some(v) = l.first_out_of_range(g.vertex_count()) {
        return Err(VerifyError::InvalidVertex(v));
    }
    Ok(l.mask(g.vertex_count()))
}

/// The first three members of `N[v] ∩ L` found, together with
/// `min(|N[v] ∩ L|, 3)`.
#[derive(Clone, Copy, Default)]
struct Head {
    len: u8,
    items: [usize; 3],
}

impl Head {
    fn push(&mut self, v: usize) {
        if (self.len as usize) < 3 {
            self.items[self.len as usize] = v;
            self.len += 1;
        }
    }

    fn full(&self) -> bool {
        self.len == 3
    }

    fn as_slice(&self) -> &[usize] {
        &self.items[..self.len as usize]
    }
}

fn heads(g: &Graph, mask: &[bool]) -> Vec<Head> {
    (0..g.vertex_count())
        .map(|v| {
            let mut h = Head::default();
            for u in core::iter::once(v).chain(g.neighbors(v)) {
                if mask[u] {
                    h.push(u);
                    if h.full() {
                        break;
                    }
                }
            }
            h
        })
        .collect()
}

/// `N[e] ∩ L` when it has at most two members, `None` when it has three or
/// more. For every edge.
fn small_edge_sets(g: &Graph, mask: &[bool]) -> Vec<Option<Head>> {
    let hv = heads(g, mask);
    g.edges()
        .iter()
        .map(|&(x, y)| {
            let (a, b) = (&hv[x], &hv[y]);
            if a.full() || b.full() {
                return None;
            }
            let mut out = Head::default();
            for &v in a.as_slice().iter().chain(b.as_slice()) {
                if !out.as_slice().contains(&v) {
                    if out.full() {
                        return None;
                    }
                    out.push(v);
                }
            }
            if out.full() {
                None
            } else {
                out.items[..out.len as usize].sort_unstable();
                Some(out)
            }
        })
        .collect()
}

fn edge_hood_count(g: &Graph, mask: &[bool], e: usize) -> usize {
    let (x, y) = g.endpoints(e);
    let mut seen: Vec<usize> = Vec::new();
    for v in core::iter::once(x).chain(g.neighbors(x)).chain(core::iter::once(y)).chain(g.neighbors(y)) {
        if mask[v] && !seen.contains(&v) {
            seen.push(v);
        }
    }
    seen.len()
}

/// Lexicographically first pair of distinct eligible edges whose small
/// neighbourhood intersections coincide as two-element sets.
fn first_twin_pair(sets: &[Option<Head>], eligible: impl Fn(usize) -> bool) -> Option<(usize, usize)> {
    let mut first_seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut best: Option<(usize, usize)> = None;
    for (e, set) in sets.iter().enumerate() {
        let Some(h) = set else { continue };
        if h.len != 2 || !eligible(e) {
            continue;
        }
        let key = (h.items[0], h.items[1]);
        match first_seen.get(&key) {
            Some(&f) => {
                // Scanning in increasing edge id: the first partner found for
                // a key is the smallest second element for that first edge.
                if best.is_none_or(|(bf, bs)| (f, e) < (bf, bs)) {
                    best = Some((f, e));
                }
            }
            None => {
                first_seen.insert(key, e);
            }
        }
    }
    best
}

/// Whether `l` is a liar's ve-dominating set of `g`: every edge sees two
/// members of `l` and every two distinct edges together see three.
pub fn is_lved_set(g: &Graph, l: &VertexSet) -> Result<Verdict, VerifyError> {
    let mask = check_range(g, l)?;
    let sets = small_edge_sets(g, &mask);
    for (e, set) in sets.iter().enumerate() {
        if let Some(h) = set {
            if h.len < 2 {
                return Ok(Verdict::fail(Witness::SingleEdge { edge: e, required: 2, actual: h.len as usize }));
            }
        }
    }
    Ok(match first_twin_pair(&sets, |_| true) {
        Some((first, second)) => Verdict::fail(Witness::Pair { first, second, required: 3, actual: 2 }),
        None => Verdict::OK,
    })
}

/// All-pairs reference implementation of [`is_lved_set`].
pub fn is_lved_set_naive(g: &Graph, l: &VertexSet) -> Result<Verdict, VerifyError> {
    let mask = check_range(g, l)?;
    let hoods: Vec<Vec<bool>> = (0..g.edge_count())
        .map(|e| g.closed_edge_neighborhood(e).expect("edge id in range").mask(g.vertex_count()))
        .collect();
    let count = |a: &[bool]| a.iter().zip(&mask).filter(|(x, y)| **x && **y).count();
    for (e, hood) in hoods.iter().enumerate() {
        let c = count(hood);
        if c < 2 {
            return Ok(Verdict::fail(Witness::SingleEdge { edge: e, required: 2, actual: c }));
        }
    }
    for i in 0..hoods.len() {
        for j in i + 1..hoods.len() {
            let c = (0..g.vertex_count()).filter(|&v| mask[v] && (hoods[i][v] || hoods[j][v])).count();
            if c < 3 {
                return Ok(Verdict::fail(Witness::Pair { first: i, second: j, required: 3, actual: c }));
            }
        }
    }
    Ok(Verdict::OK)
}

fn mlve_prefix(lg: &LabeledBlockGraph, mask: &[bool]) -> Option<Witness> {
    let g = &lg.base;
    if let Some(v) = (0..g.vertex_count()).find(|&v| lg.t[v] == Tag::R && !mask[v]) {
        return Some(Witness::ForcedVertex { vertex: v });
    }
    for v in 0..g.vertex_count() {
        let need = lg.s[v] as usize;
        if need == 0 {
            continue;
        }
        let have = usize::from(mask[v]) + g.neighbors(v).filter(|&u| mask[u]).count();
        if have < need {
            return Some(Witness::VertexCount { vertex: v, required: need, actual: have });
        }
    }
    None
}

/// Whether `l` is an M_LVE-dominating set of the labelled graph: it
/// contains every `R` vertex, meets every `s(v)` on `N[v]`, every `k(e)` on
/// `N[e]`, and `max(k(e) + k(f) - 1, 0)` on `N[e] ∪ N[f]` for distinct edges.
pub fn is_mlve_set(lg: &LabeledBlockGraph, l: &VertexSet) -> Result<Verdict, VerifyError> {
    let g = &lg.base;
    let mask = check_range(g, l)?;
    if let Some(w) = mlve_prefix(lg, &mask) {
        return Ok(Verdict::fail(w));
    }
    let sets = small_edge_sets(g, &mask);
    for (e, set) in sets.iter().enumerate() {
        if let Some(h) = set {
            let need = lg.k[e] as usize;
            if (h.len as usize) < need {
                return Ok(Verdict::fail(Witness::SingleEdge { edge: e, required: need, actual: h.len as usize }));
            }
        }
    }
    // With every edge meeting k(e) <= 2, only two k = 2 edges can demand more
    // than either of them already sees.
    Ok(match first_twin_pair(&sets, |e| lg.k[e] == 2) {
        Some((first, second)) => Verdict::fail(Witness::Pair { first, second, required: 3, actual: 2 }),
        None => Verdict::OK,
    })
}

/// All-pairs reference implementation of [`is_mlve_set`].
pub fn is_mlve_set_naive(lg: &LabeledBlockGraph, l: &VertexSet) -> Result<Verdict, VerifyError> {
    let g = &lg.base;
    let mask = check_range(g, l)?;
    if let Some(w) = mlve_prefix(lg, &mask) {
        return Ok(Verdict::fail(w));
    }
    let n = g.vertex_count();
    let hoods: Vec<Vec<bool>> = (0..g.edge_count())
        .map(|e| g.closed_edge_neighborhood(e).expect("edge id in range").mask(n))
        .collect();
    for e in 0..hoods.len() {
        let c = edge_hood_count(g, &mask, e);
        let need = lg.k[e] as usize;
        if c < need {
            return Ok(Verdict::fail(Witness::SingleEdge { edge: e, required: need, actual: c }));
        }
    }
    for i in 0..hoods.len() {
        for j in i + 1..hoods.len() {
            let need = (lg.k[i] as usize + lg.k[j] as usize).saturating_sub(1);
            if need == 0 {
                continue;
            }
            let c = (0..n).filter(|&v| mask[v] && (hoods[i][v] || hoods[j][v])).count();
            if c < need {
                return Ok(Verdict::fail(Witness::Pair { first: i, second: j, required: need, actual: c }));
            }
        }
    }
    Ok(Verdict::OK)
}

/// Vertex counts seen by each edge, exact. Used by reports and tests.
pub fn edge_coverage(g: &Graph, l: &VertexSet) -> Vec<usize> {
    let mask = l.mask(g.vertex_count());
    (0..g.edge_count()).map(|e| edge_hood_count(g, &mask, e)).collect()
}
