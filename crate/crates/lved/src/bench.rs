//! Wall-clock timing of the linear-time solvers over a size ladder.

use std::io;
use std::time::Instant;

use lved_core::block::lved_block;
use lved_core::generate::{gen_block_graph, gen_proper_interval, GenConfig};
use lved_core::graph::Graph;
use lved_core::interval::{lved_proper_interval, IntervalRepresentation};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BenchKind {
    Block,
    Pig,
}

impl BenchKind {
    pub fn algo(self) -> &'static str {
        match self {
            BenchKind::Block => "block",
            BenchKind::Pig => "proper-interval",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub algo: &'static str,
    pub rep: usize,
    pub time_ns: u64,
    pub median_ns: u64,
}

/// A generated benchmark instance.
pub enum Instance {
    Block(Graph),
    Pig(Graph, IntervalRepresentation),
}

impl Instance {
    /// Interval graphs use a tight spacing so that large instances come out
    /// connected on the first draw.
    pub fn generate(kind: BenchKind, n: usize, seed: u64) -> Self {
        match kind {
            BenchKind::Block => Instance::Block(gen_block_graph(&GenConfig::new(seed, n))),
            BenchKind::Pig => {
                let (g, iv) = gen_proper_interval(&GenConfig { spacing: 50, ..GenConfig::new(seed, n) });
                Instance::Pig(g, iv)
            }
        }
    }

    pub fn graph(&self) -> &Graph {
        match self {
            Instance::Block(g) | Instance::Pig(g, _) => g,
        }
    }

    /// Solves once and returns the elapsed nanoseconds.
    pub fn time_solve(&self) -> u64 {
        let start = Instant::now();
        let size = match self {
            Instance::Block(g) => lved_block(g).expect("generated block graph").len(),
            Instance::Pig(g, iv) => lved_proper_interval(g, iv).expect("generated interval graph").len(),
        };
        let ns = start.elapsed().as_nanos() as u64;
        std::hint::black_box(size);
        ns
    }
}

pub fn median(times: &[u64]) -> u64 {
    let mut t = times.to_vec();
    t.sort_unstable();
    match t.len() {
        0 => 0,
        k if k % 2 == 1 => t[k / 2],
        k => (t[k / 2 - 1] + t[k / 2]) / 2,
    }
}

pub fn run_ladder(kind: BenchKind, sizes: &[usize], reps: usize, seed: u64) -> Vec<BenchRow> {
    let mut rows = Vec::with_capacity(sizes.len() * reps);
    for &n in sizes {
        let inst = Instance::generate(kind, n, seed);
        let times: Vec<u64> = (0..reps).map(|_| inst.time_solve()).collect();
        let med = median(&times);
        let m = inst.graph().edge_count();
        rows.extend(times.iter().enumerate().map(|(rep, &time_ns)| BenchRow {
            n,
            m,
            algo: kind.algo(),
            rep,
            time_ns,
            median_ns: med,
        }));
    }
    rows
}

pub fn write_csv<W: io::Write>(rows: &[BenchRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(["n", "m", "algo", "rep", "time_ns", "median_ns"])?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
