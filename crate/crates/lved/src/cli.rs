use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use lved_core::block::{lved_block, lved_block_observed, solve_labeled, BlockError, BlockEvent, BlockSolveError, BlockWorkState};
use lved_core::exact::{min_lved_exact, min_mlve_exact, Budget, ExactError, ENUMERATION_LIMIT};
use lved_core::generate::{gen_3dm, gen_block_graph, gen_proper_interval, gen_random_graph, GenConfig};
use lved_core::graph::VertexSet;
use lved_core::interval::{lved_proper_interval_with, CountMode, IntervalOptions};
use lved_core::reduction::{build_witness, reduce_3dm, verify_clique_tree};
use lved_core::verify::{is_lved_set, is_mlve_set, Verdict};
use thiserror::Error;

use crate::bench::{run_ladder, write_csv, BenchKind};
use crate::io::{self, GraphFile};
use crate::report::RunReport;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "lved", version, about = "Minimum liar's vertex-edge dominating sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    Exact,
    Block,
    ProperInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Block,
    Pig,
    Random,
    #[value(name = "3dm")]
    ThreeDm,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a minimum liar's ve-dominating set and verify it.
    Solve {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the labelled graph after every support-block iteration.
        #[arg(long)]
        dump_labels: Option<PathBuf>,
        /// Check the interval sweep invariants after every iteration.
        #[arg(long)]
        debug_invariants: bool,
        /// Node budget for the exact search.
        #[arg(long)]
        cap: Option<u64>,
        /// Wall-clock budget for the exact search, in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Also write the solution as a set file.
        #[arg(long)]
        set_out: Option<PathBuf>,
    },
    /// Check a vertex set against a graph.
    Verify { graph: PathBuf, set: PathBuf },
    /// Write a seeded random instance.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Vertex count (element count per class for 3dm).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_block: usize,
        /// Mean left-endpoint gap for interval graphs (1000 = unit length).
        #[arg(long, default_value_t = 400)]
        spacing: i64,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Triple count for 3dm.
        #[arg(long)]
        triples: Option<usize>,
        /// Hide a perfect matching among the 3dm triples.
        #[arg(long)]
        planted: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the 3-DM gadget graph and its clique tree.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        /// Matching (triple indices) to turn into a dominating set.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Where to write the witness set; stdout when absent.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Time the linear-time solvers over a size ladder and print CSV.
    Bench {
        #[arg(long, value_enum, default_value_t = BenchKind::Block)]
        kind: BenchKind,
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { graph, algo, format, dump_labels, debug_invariants, cap, time_limit, set_out } => {
            let file = io::parse_graph(&read(&graph)?).map_err(input)?;
            let opts = SolveOptions { algo, dump_labels, debug_invariants, cap, time_limit };
            let report = solve(&file, &graph.display().to_string(), &opts)?;
            match format {
                Format::Text => println!("{report}"),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).map_err(input)?),
            }
            if let Some(p) = set_out {
                write(Some(&p), &io::write_set(&report.solution.iter().copied().collect()))?;
            }
            if report.ok {
                Ok(())
            } else {
                Err(CliError::Verification(report.verdict))
            }
        }
        Command::Verify { graph, set } => {
            let file = io::parse_graph(&read(&graph)?).map_err(input)?;
            let l = io::parse_set(&read(&set)?).map_err(input)?;
            let verdict = check(&file, &l)?;
            match verdict.witness {
                None => {
                    println!("ok");
                    Ok(())
                }
                Some(w) => {
                    println!("fail {w}");
                    Err(CliError::Verification(w.to_string()))
                }
            }
        }
        Command::Generate { kind, seed, n, max_block, spacing, p, triples, planted, out } => {
            let cfg = GenConfig { seed, n, max_block, spacing, p };
            let text = match kind {
                Kind::Block => io::write_graph(&GraphFile::plain(gen_block_graph(&cfg))),
                Kind::Random => io::write_graph(&GraphFile::plain(gen_random_graph(&cfg))),
                Kind::Pig => {
                    let (g, iv) = gen_proper_interval(&cfg);
                    io::write_graph(&GraphFile { graph: g, intervals: Some(iv), labels: None })
                }
                Kind::ThreeDm => io::write_3dm(&gen_3dm(seed, n, triples.unwrap_or(2 * n), planted)),
            };
            write(out.as_deref(), &text)
        }
        Command::Reduce { input: inp, out, tree, witness, witness_out } => {
            let inst = io::parse_3dm(&read(&inp)?).map_err(input)?;
            let red = reduce_3dm(&inst);
            verify_clique_tree(&red.graph, &red.tree).map_err(|e| CliError::Verification(e.to_string()))?;
            write(Some(&out), &io::write_reduction_graph(&red))?;
            write(Some(&tree), &io::write_tree(&red.tree, &red.names))?;
            if let Some(m) = witness {
                let matching = io::parse_matching(&read(&m)?).map_err(input)?;
                let l = build_witness(&red, &inst, &matching).map_err(input)?;
                let verdict = is_lved_set(&red.graph, &l).map_err(input)?;
                write(witness_out.as_deref(), &io::write_set(&l))?;
                if let Some(w) = verdict.witness {
                    return Err(CliError::Verification(w.to_string()));
                }
                eprintln!("witness size {} (target {}) verified", l.len(), red.target_k);
            }
            Ok(())
        }
        Command::Bench { kind, sizes, reps, seed, out } => {
            let rows = run_ladder(kind, &sizes, reps, seed);
            match out {
                Some(p) => {
                    let f = fs::File::create(&p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
                    write_csv(&rows, f).map_err(input)
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    write_csv(&rows, &mut lock).map_err(input)?;
                    lock.flush().map_err(input)
                }
            }
        }
    }
}

/// Options of the `solve` subcommand.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub algo: Algo,
    pub dump_labels: Option<PathBuf>,
    pub debug_invariants: bool,
    pub cap: Option<u64>,
    pub time_limit: Option<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { algo: Algo::Auto, dump_labels: None, debug_invariants: false, cap: None, time_limit: None }
    }
}

/// Liar's ve-domination for plain files, M_LVE-domination for labelled ones.
pub fn check(file: &GraphFile, l: &VertexSet) -> Result<Verdict, CliError> {
    match &file.labels {
        Some(lg) => is_mlve_set(lg, l),
        None => is_lved_set(&file.graph, l),
    }
    .map_err(input)
}

pub fn solve(file: &GraphFile, name: &str, opts: &SolveOptions) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let (algo, l) = match opts.algo {
        Algo::Auto => match run_block(file, opts) {
            Ok(l) => ("block", l),
            Err(CliError::Input(_)) if file.intervals.is_some() && file.labels.is_none() => {
                ("proper-interval", run_interval(file, opts)?)
            }
            Err(CliError::Input(_)) => ("exact", run_exact(file, opts)?),
            Err(e) => return Err(e),
        },
        Algo::Block => ("block", run_block(file, opts)?),
        Algo::ProperInterval => ("proper-interval", run_interval(file, opts)?),
        Algo::Exact => ("exact", run_exact(file, opts)?),
    };
    let time_ns = start.elapsed().as_nanos() as u64;
    let verdict = check(file, &l)?;
    Ok(RunReport {
        instance: name.to_string(),
        algo: algo.to_string(),
        n: file.graph.vertex_count(),
        m: file.graph.edge_count(),
        size: l.len(),
        solution: l.into_vec(),
        time_ns,
        ok: verdict.ok(),
        verdict: verdict.witness.map_or_else(|| "ok".to_string(), |w| w.to_string()),
    })
}

fn block_error(e: BlockSolveError) -> CliError {
    match e {
        BlockSolveError::Structure(BlockError::NotBlockGraph { block }) => {
            CliError::Input(format!("not a block graph: block {block:?} is not a clique"))
        }
        other => CliError::Input(other.to_string()),
    }
}

fn run_block(file: &GraphFile, opts: &SolveOptions) -> Result<VertexSet, CliError> {
    let mut dump = String::new();
    let mut obs = |ev: BlockEvent, st: &BlockWorkState<'_>| {
        if let BlockEvent::IterationDone { block } = ev {
            let snap = st.snapshot();
            dump.push_str(&format!("c after block {block}\n"));
            dump.push_str(&io::write_labels(&snap.graph, &snap.ids));
        }
    };
    let l = match &file.labels {
        Some(lg) => {
            if !lg.base.is_connected() {
                return Err(CliError::Input("labelled inputs must be connected".to_string()));
            }
            solve_labeled(lg, &mut obs).map_err(block_error)?
        }
        None if opts.dump_labels.is_some() => lved_block_observed(&file.graph, &mut obs).map_err(block_error)?,
        None => lved_block(&file.graph).map_err(block_error)?,
    };
    if let Some(p) = &opts.dump_labels {
        write(Some(p), &dump)?;
    }
    Ok(l)
}

fn run_interval(file: &GraphFile, opts: &SolveOptions) -> Result<VertexSet, CliError> {
    if file.labels.is_some() {
        return Err(CliError::Input("the interval solver does not take labels".to_string()));
    }
    let iv = file.intervals.as_ref().ok_or_else(|| CliError::Input("graph file has no interval section".to_string()))?;
    let o = IntervalOptions { count: CountMode::Local, check_invariants: opts.debug_invariants };
    lved_proper_interval_with(&file.graph, iv, o).map_err(input)
}

fn run_exact(file: &GraphFile, opts: &SolveOptions) -> Result<VertexSet, CliError> {
    let deadline = opts.time_limit.map(|s| Instant::now() + Duration::from_secs_f64(s));
    let mut stop = move || deadline.is_some_and(|d| Instant::now() >= d);
    let mut budget = Budget { max_nodes: opts.cap, interrupt: Some(&mut stop) };
    let cap = |e: ExactError| CliError::Cap(e.to_string());
    match &file.labels {
        Some(lg) => {
            if lg.base.vertex_count() > ENUMERATION_LIMIT {
                return Err(CliError::Input(format!("labelled exact search is limited to {ENUMERATION_LIMIT} vertices")));
            }
            min_mlve_exact(lg, &mut budget)
                .map_err(cap)?
                .ok_or_else(|| CliError::Verification("no vertex set satisfies the labels".to_string()))
        }
        None => min_lved_exact(&file.graph, &mut budget).map_err(cap),
    }
}
