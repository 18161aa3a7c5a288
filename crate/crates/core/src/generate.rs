//! Seeded instance generators.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::ThreeDmInstance;
use crate::graph::Graph;
use crate::interval::{Endpoint, IntervalRepresentation};

/// Unit interval length in grid steps.
pub const UNIT: i64 = 1000;

const CONNECT_ATTEMPTS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    pub n: usize,
    /// Largest clique attached by [`gen_block_graph`].
    pub max_block: usize,
    /// Mean gap between consecutive left endpoints in [`gen_proper_interval`],
    /// in grid steps.
    pub spacing: i64,
    /// Edge probability for [`gen_random_graph`].
    pub p: f64,
}

impl GenConfig {
    pub fn new(seed: u64, n: usize) -> Self {
        GenConfig { seed, n, max_block: 4, spacing: 400, p: 0.3 }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// A connected block graph grown by attaching cliques at existing vertices.
pub fn gen_block_graph(cfg: &GenConfig) -> Graph {
    let mut rng = cfg.rng();
    let n = cfg.n.max(1);
    let max_block = cfg.max_block.max(2);
    let mut edges = Vec::new();
    let mut count = 1;
    while count < n {
        let size = rng.gen_range(2..=max_block).min(n - count + 1);
        let at = rng.gen_range(0..count);
        let mut members = Vec::with_capacity(size);
        members.push(at);
        members.extend(count..count + size - 1);
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                edges.push((a, b));
            }
        }
        count += size - 1;
    }
    Graph::new(n, &edges).expect("generated edges are valid")
}

/// A connected unit interval graph together with its intervals. Left
/// endpoints lie on a grid of `UNIT` steps per unit length.
pub fn gen_proper_interval(cfg: &GenConfig) -> (Graph, IntervalRepresentation) {
    let mut rng = cfg.rng();
    let n = cfg.n.max(1);
    let floor = 4 * n as i64;
    let mut span = (cfg.spacing.max(1) * n as i64).max(floor);
    let mut attempts = 0;
    loop {
        let lefts = sample_lefts(&mut rng, n, span);
        if gaps_closed(&lefts) {
            return unit_interval_graph(&lefts);
        }
        attempts += 1;
        if attempts >= CONNECT_ATTEMPTS {
            span = (span / 2).max(floor);
        }
    }
}

fn gaps_closed(lefts: &[i64]) -> bool {
    let mut sorted = lefts.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[1] - w[0] < UNIT)
}

fn sample_lefts(rng: &mut ChaCha8Rng, n: usize, span: i64) -> Vec<i64> {
    let mut taken = BTreeSet::new();
    let mut lefts = Vec::with_capacity(n);
    while lefts.len() < n {
        let x = rng.gen_range(0..span);
        // Distinct endpoints: no shared left end and no left end on a right end.
        if taken.contains(&x) || taken.contains(&(x - UNIT)) || taken.contains(&(x + UNIT)) {
            continue;
        }
        taken.insert(x);
        lefts.push(x);
    }
    lefts
}

/// Intersection graph of the unit intervals `[x, x + UNIT]`.
pub fn unit_interval_graph(lefts: &[i64]) -> (Graph, IntervalRepresentation) {
    let n = lefts.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| lefts[v]);
    let mut edges = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            if lefts[b] - lefts[a] > UNIT {
                break;
            }
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    let l = lefts.iter().map(|&x| Endpoint::new(x, UNIT)).collect();
    let r = lefts.iter().map(|&x| Endpoint::new(x + UNIT, UNIT)).collect();
    let iv = IntervalRepresentation::new(l, r).expect("sampled endpoints are distinct");
    (Graph::new(n, &edges).expect("generated edges are valid"), iv)
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn gen_random_graph(cfg: &GenConfig) -> Graph {
    let mut rng = cfg.rng();
    let p = cfg.p.clamp(0.0, 1.0);
    let mut edges = Vec::new();
    for a in 0..cfg.n {
        for b in a + 1..cfg.n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(cfg.n, &edges).expect("generated edges are valid")
}

/// A 3-DM instance over `q` elements per class with `p` distinct triples
/// (capped at `q^3`). With `planted`, a perfect matching is hidden among them.
pub fn gen_3dm(seed: u64, q: usize, p: usize, planted: bool) -> ThreeDmInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = p.min(q * q * q);
    let mut chosen = BTreeSet::new();
    let mut triples = Vec::with_capacity(p);
    if planted && q > 0 {
        let mut vs: Vec<usize> = (0..q).collect();
        let mut ws: Vec<usize> = (0..q).collect();
        vs.shuffle(&mut rng);
        ws.shuffle(&mut rng);
        for u in 0..q {
            chosen.insert((u, vs[u], ws[u]));
            triples.push((u, vs[u], ws[u]));
        }
    }
    while triples.len() < p.max(if planted { q } else { 0 }) {
        let t = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
        if chosen.insert(t) {
            triples.push(t);
        }
    }
    triples.shuffle(&mut rng);
    ThreeDmInstance::new(q, triples).expect("generated triples are distinct and in range")
}
