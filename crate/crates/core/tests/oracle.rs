mod common;

use common::{brute_min, mask_of};
use lved_core::block::{lved_block, BlockError, BlockSolveError};
use lved_core::exact::{branch_and_bound_min, lved_within, min_lved_exact, Budget, ExactError};
use lved_core::generate::{gen_block_graph, gen_proper_interval, gen_random_graph, GenConfig};
use lved_core::interval::lved_proper_interval;
use lved_core::{is_lved_set, Graph};
use proptest::prelude::*;

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).unwrap()
}

fn exact(g: &Graph) -> usize {
    min_lved_exact(g, &mut Budget::unlimited()).unwrap().len()
}

#[test]
fn goldens() {
    let k2 = graph(2, &[(0, 1)]);
    let k3 = graph(3, &[(0, 1), (0, 2), (1, 2)]);
    let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
    let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
    let bowtie = graph(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]);
    for (g, want) in [(&k2, 2), (&k3, 3), (&p4, 3), (&star, 3), (&bowtie, 3)] {
        assert_eq!(brute_min(g), Some(want), "{g:?}");
        assert_eq!(exact(g), want);
        assert_eq!(lved_block(g).unwrap().len(), want);
    }
}

#[test]
fn graphs_without_edges_need_nothing() {
    for n in 0..4 {
        let g = graph(n, &[]);
        assert_eq!(brute_min(&g), Some(0));
        assert_eq!(exact(&g), 0);
        assert!(lved_block(&g).unwrap().is_empty());
    }
}

#[test]
fn disconnected_block_graph_is_solved_per_component() {
    let g = graph(7, &[(0, 1), (2, 3), (3, 4), (4, 2), (5, 6)]);
    let l = lved_block(&g).unwrap();
    assert_eq!(l.len(), brute_min(&g).unwrap());
    assert!(is_lved_set(&g, &l).unwrap().ok());
}

#[test]
fn cycle_is_rejected_by_block_solver() {
    let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    match lved_block(&c4) {
        Err(BlockSolveError::Structure(BlockError::NotBlockGraph { .. })) => {}
        other => panic!("expected NotBlockGraph, got {other:?}"),
    }
}

#[test]
fn node_cap_is_reported() {
    let g = gen_random_graph(&GenConfig { p: 0.5, ..GenConfig::new(3, 16) });
    assert!(matches!(min_lved_exact(&g, &mut Budget::nodes(10)), Err(ExactError::CapExceeded { .. })));
}

#[test]
fn decider_brackets_the_minimum() {
    for seed in 0..40 {
        let g = gen_random_graph(&GenConfig { p: 0.4, ..GenConfig::new(seed, 3 + (seed % 7) as usize) });
        let best = brute_min(&g).unwrap();
        let mut b = Budget::unlimited();
        let found = lved_within(&g, best, &mut b).unwrap().expect("minimum fits");
        assert!(found.len() <= best && is_lved_set(&g, &found).unwrap().ok());
        if best > 0 {
            assert!(lved_within(&g, best - 1, &mut Budget::unlimited()).unwrap().is_none());
        }
        assert_eq!(branch_and_bound_min(&g, &mut Budget::unlimited()).unwrap().len(), best);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn exact_matches_brute_force(seed in any::<u64>(), n in 1usize..10, p in 0.1f64..0.9) {
        let g = gen_random_graph(&GenConfig { p, ..GenConfig::new(seed, n) });
        let l = min_lved_exact(&g, &mut Budget::unlimited()).unwrap();
        prop_assert_eq!(Some(l.len()), brute_min(&g));
        prop_assert!(common::brute_ok(&g, mask_of(&l)));
    }

    #[test]
    fn block_solver_is_optimal(seed in any::<u64>(), n in 2usize..13, max_block in 2usize..6) {
        let g = gen_block_graph(&GenConfig { max_block, ..GenConfig::new(seed, n) });
        let l = lved_block(&g).unwrap();
        prop_assert!(common::brute_ok(&g, mask_of(&l)));
        prop_assert_eq!(Some(l.len()), brute_min(&g));
    }

    #[test]
    fn interval_solver_is_optimal(seed in any::<u64>(), n in 2usize..13, spacing in 100i64..900) {
        let (g, iv) = gen_proper_interval(&GenConfig { spacing, ..GenConfig::new(seed, n) });
        let l = lved_proper_interval(&g, &iv).unwrap();
        prop_assert!(common::brute_ok(&g, mask_of(&l)));
        prop_assert_eq!(Some(l.len()), brute_min(&g));
    }
}
