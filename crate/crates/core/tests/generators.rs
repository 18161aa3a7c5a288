use lved_core::block::block_cut_decompose;
use lved_core::generate::{gen_3dm, gen_block_graph, gen_proper_interval, gen_random_graph, unit_interval_graph, GenConfig};
use proptest::prelude::*;

#[test]
fn unit_intervals_follow_the_grid() {
    let (g, iv) = unit_interval_graph(&[0, 999, 1998]);
    assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    iv.check_graph(&g).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn seeded_output_is_reproducible(seed in any::<u64>(), n in 1usize..60) {
        let cfg = GenConfig::new(seed, n);
        prop_assert_eq!(gen_block_graph(&cfg), gen_block_graph(&cfg));
        prop_assert_eq!(gen_proper_interval(&cfg), gen_proper_interval(&cfg));
        prop_assert_eq!(gen_random_graph(&cfg), gen_random_graph(&cfg));
        prop_assert_eq!(gen_3dm(seed, 3, 5, true), gen_3dm(seed, 3, 5, true));
    }

    #[test]
    fn block_graphs_are_connected_block_graphs(seed in any::<u64>(), n in 1usize..80, max_block in 2usize..7) {
        let g = gen_block_graph(&GenConfig { max_block, ..GenConfig::new(seed, n) });
        prop_assert_eq!(g.vertex_count(), n);
        prop_assert!(g.is_connected());
        prop_assert!(block_cut_decompose(&g).is_ok());
    }

    #[test]
    fn interval_graphs_are_connected_and_proper(seed in any::<u64>(), n in 1usize..80, spacing in 50i64..900) {
        let (g, iv) = gen_proper_interval(&GenConfig { spacing, ..GenConfig::new(seed, n) });
        prop_assert_eq!(g.vertex_count(), n);
        prop_assert!(g.is_connected());
        iv.check_graph(&g).unwrap();
        for u in 0..n {
            prop_assert!(iv.left(u) < iv.right(u));
            for v in 0..n {
                prop_assert!(u == v || !(iv.left(u) < iv.left(v) && iv.right(v) < iv.right(u)));
                prop_assert_eq!(u != v && iv.intersects(u, v), g.has_edge(u, v));
            }
        }
    }
}
