mod common;

use common::{brute_labeled_ok, brute_ok, mask_of, set_of};
use lved_core::generate::{gen_block_graph, gen_proper_interval, gen_random_graph, GenConfig};
use lved_core::verify::{edge_coverage, is_lved_set_naive, is_mlve_set_naive};
use lved_core::{is_lved_set, is_mlve_set, Graph, LabeledBlockGraph, Tag, VerifyError, VertexSet, Witness};
use proptest::prelude::*;

/// Random, block and interval graphs on at most 12 vertices.
fn any_graph() -> impl Strategy<Value = Graph> {
    (any::<u64>(), 1usize..=12, 0u8..3, 0.05f64..0.9).prop_map(|(seed, n, kind, p)| {
        let cfg = GenConfig { p, ..GenConfig::new(seed, n) };
        match kind {
            0 => gen_random_graph(&cfg),
            1 => gen_block_graph(&cfg),
            _ => gen_proper_interval(&cfg).0,
        }
    })
}

fn graph_and_set() -> impl Strategy<Value = (Graph, u64)> {
    any_graph().prop_flat_map(|g| {
        let full = (1u64 << g.vertex_count()) - 1;
        (Just(g), any::<u64>().prop_map(move |m| m & full))
    })
}

#[test]
fn witnesses_name_the_failure() {
    let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
    let v = is_lved_set(&p3, &VertexSet::from_slice(&[1])).unwrap();
    assert!(matches!(v.witness, Some(Witness::SingleEdge { required: 2, actual: 1, .. })));
    let v = is_lved_set(&p3, &VertexSet::from_slice(&[0, 1])).unwrap();
    assert_eq!(v.witness, Some(Witness::Pair { first: 0, second: 1, required: 3, actual: 2 }));
    assert!(is_lved_set(&p3, &VertexSet::from_slice(&[0, 1, 2])).unwrap().ok());
    assert_eq!(is_lved_set(&p3, &VertexSet::from_slice(&[3])), Err(VerifyError::InvalidVertex(3)));
}

#[test]
fn coverage_counts() {
    let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(edge_coverage(&p4, &VertexSet::from_slice(&[0])), vec![1, 1, 0]);
    assert_eq!(edge_coverage(&p4, &VertexSet::from_slice(&[0, 3])), vec![1, 2, 1]);
}

#[test]
fn labelled_witnesses() {
    let k2 = Graph::new(2, &[(0, 1)]).unwrap();
    let lg = LabeledBlockGraph::new(k2.clone(), vec![Tag::R, Tag::B], vec![0, 2], vec![1]).unwrap();
    let v = is_mlve_set(&lg, &VertexSet::from_slice(&[1])).unwrap();
    assert_eq!(v.witness, Some(Witness::ForcedVertex { vertex: 0 }));
    let v = is_mlve_set(&lg, &VertexSet::from_slice(&[0])).unwrap();
    assert_eq!(v.witness, Some(Witness::VertexCount { vertex: 1, required: 2, actual: 1 }));
    assert!(LabeledBlockGraph::new(k2, vec![Tag::B; 2], vec![0; 2], vec![3]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn agrees_with_brute_force((g, m) in graph_and_set()) {
        let l = set_of(m);
        prop_assert_eq!(is_lved_set(&g, &l).unwrap().ok(), brute_ok(&g, m));
    }

    #[test]
    fn local_matches_naive((g, m) in graph_and_set()) {
        let l = set_of(m);
        prop_assert_eq!(is_lved_set(&g, &l).unwrap().ok(), is_lved_set_naive(&g, &l).unwrap().ok());
    }

    #[test]
    fn superset_monotone((g, m) in graph_and_set(), extra in any::<u64>()) {
        let full = (1u64 << g.vertex_count()) - 1;
        if is_lved_set(&g, &set_of(m)).unwrap().ok() {
            prop_assert!(is_lved_set(&g, &set_of((m | extra) & full)).unwrap().ok());
        }
    }

    #[test]
    fn whole_vertex_set_always_works(g in any_graph()) {
        let all = VertexSet::from_slice(&(0..g.vertex_count()).collect::<Vec<_>>());
        prop_assert!(is_lved_set(&g, &all).unwrap().ok());
    }

    #[test]
    fn fresh_labels_are_plain((g, m) in graph_and_set()) {
        let l = set_of(m);
        let lg = LabeledBlockGraph::fresh(g.clone());
        prop_assert_eq!(is_mlve_set(&lg, &l).unwrap().ok(), is_lved_set(&g, &l).unwrap().ok());
    }

    #[test]
    fn labelled_local_matches_naive(
        (g, m) in graph_and_set(),
        tags in prop::collection::vec(any::<bool>(), 12),
        demands in prop::collection::vec(0u32..3, 12),
        ks in prop::collection::vec(0u8..3, 66),
    ) {
        let n = g.vertex_count();
        let t = tags[..n].iter().map(|&r| if r { Tag::R } else { Tag::B }).collect();
        let lg = LabeledBlockGraph::new(g.clone(), t, demands[..n].to_vec(), ks[..g.edge_count()].to_vec()).unwrap();
        let l = set_of(m);
        let fast = is_mlve_set(&lg, &l).unwrap().ok();
        prop_assert_eq!(fast, is_mlve_set_naive(&lg, &l).unwrap().ok());
        prop_assert_eq!(fast, brute_labeled_ok(&lg, mask_of(&l)));
    }
}
