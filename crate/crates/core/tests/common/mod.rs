//! Bitmask brute force shared by the integration tests. Written against the
//! problem definition only, without touching the library's checkers.

#![allow(dead_code)]

use lved_core::{Graph, LabeledBlockGraph, Tag, VertexSet};

pub fn vertex_hoods(g: &Graph) -> Vec<u64> {
    (0..g.vertex_count()).map(|v| g.neighbors(v).fold(1u64 << v, |m, u| m | 1 << u)).collect()
}

pub fn edge_hoods(g: &Graph) -> Vec<u64> {
    let nv = vertex_hoods(g);
    g.edges().iter().map(|&(u, v)| nv[u] | nv[v]).collect()
}

pub fn mask_of(l: &VertexSet) -> u64 {
    l.iter().fold(0, |m, v| m | 1 << v)
}

pub fn set_of(mask: u64) -> VertexSet {
    VertexSet::from_slice(&(0..64).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>())
}

fn pop(x: u64) -> u32 {
    x.count_ones()
}

/// The labelled conditions, checked over every vertex, edge and edge pair.
pub fn brute_labeled_ok(lg: &LabeledBlockGraph, l: u64) -> bool {
    let g = &lg.base;
    let nv = vertex_hoods(g);
    let ne = edge_hoods(g);
    for v in 0..g.vertex_count() {
        if lg.t[v] == Tag::R && l >> v & 1 == 0 {
            return false;
        }
        if pop(nv[v] & l) < lg.s[v] {
            return false;
        }
    }
    for (e, &he) in ne.iter().enumerate() {
        if pop(he & l) < lg.k[e] as u32 {
            return false;
        }
        for (f, &hf) in ne.iter().enumerate().skip(e + 1) {
            let need = (lg.k[e] as u32 + lg.k[f] as u32).saturating_sub(1);
            if pop((he | hf) & l) < need {
                return false;
            }
        }
    }
    true
}

pub fn brute_ok(g: &Graph, l: u64) -> bool {
    brute_labeled_ok(&LabeledBlockGraph::fresh(g.clone()), l)
}

/// Subsets of `0..n` with exactly `k` members, in increasing order.
fn subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut cur = if k == 0 { Some(0u64) } else if k <= n { Some((1u64 << k) - 1) } else { None };
    core::iter::from_fn(move || {
        let x = cur?;
        cur = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            let next = (((r ^ x) >> 2) / c) | r;
            (next < limit).then_some(next)
        };
        Some(x)
    })
}

/// Minimum size of a set meeting the labelled conditions, or `None`.
pub fn brute_labeled_min(lg: &LabeledBlockGraph) -> Option<usize> {
    let n = lg.base.vertex_count();
    assert!(n <= 20, "brute force is for tiny graphs");
    (0..=n).find(|&k| subsets(n, k).any(|l| brute_labeled_ok(lg, l)))
}

pub fn brute_min(g: &Graph) -> Option<usize> {
    brute_labeled_min(&LabeledBlockGraph::fresh(g.clone()))
}

#[test]
fn subsets_count() {
    assert_eq!(subsets(5, 2).count(), 10);
    assert_eq!(subsets(4, 0).count(), 1);
    assert_eq!(subsets(4, 4).collect::<Vec<_>>(), vec![15]);
    assert_eq!(subsets(3, 4).count(), 0);
}
