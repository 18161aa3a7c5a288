//! The 3-DM gadget: an undirected path graph with its clique tree, whose
//! liar's ve-domination number reaches `4p + 10q` exactly when the instance
//! has a perfect matching.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::exact::ThreeDmInstance;
use crate::graph::{Graph, VertexSet};

/// Per-triple vertex families, in id order within a triple.
pub const TRIPLE_FAMILIES: [&str; 16] = ["A", "B", "C", "D", "E", "F", "G", "H", "J", "K", "O", "P", "Q", "N", "Y", "Z"];

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;
const E: usize = 4;
const F: usize = 5;
const G: usize = 6;
const H: usize = 7;
const J: usize = 8;
const K: usize = 9;
const O: usize = 10;
const P: usize = 11;
const Q: usize = 12;
const N: usize = 13;
const Y: usize = 14;
const Z: usize = 15;

/// The eight cliques of a triple gadget.
const TRIPLE_CLIQUES: [&[usize]; 8] = [
    &[A, B, C, D, E, F],
    &[A, B, D, E, F, N, P, Q],
    &[C, D, E, H, J],
    &[A, B, E, F, G],
    &[A, E, G, Y],
    &[B, F, G, Z],
    &[E, Y, O],
    &[F, Z, K],
];

/// Tree edges between the cliques of one triple gadget.
const TRIPLE_TREE: [(usize, usize); 7] = [(0, 2), (0, 1), (1, 3), (3, 4), (3, 5), (4, 6), (5, 7)];

/// A tree whose nodes are vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueTree {
    /// Sorted member lists.
    pub nodes: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub tree: CliqueTree,
    pub target_k: usize,
    /// Name of every vertex, indexed by id.
    pub names: Vec<String>,
    p: usize,
    q: usize,
}

impl ReductionOutput {
    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Id of family member `family` (index into [`TRIPLE_FAMILIES`]) of triple `i`.
    pub fn triple_vertex(&self, i: usize, family: usize) -> usize {
        16 * i + family
    }

    /// Id of the `step`-th chain vertex (`0` is the head) of element `e`
    /// in class `class` (`0`, `1`, `2` for U, V, W).
    pub fn chain_vertex(&self, class: usize, e: usize, step: usize) -> usize {
        16 * self.p + 6 * (class * self.q + e) + step
    }
}

/// Builds the gadget for `inst`.
pub fn reduce_3dm(inst: &ThreeDmInstance) -> ReductionOutput {
    let (p, q) = (inst.p(), inst.q());
    let n = 16 * p + 18 * q;
    let mut names = Vec::with_capacity(n);
    for i in 0..p {
        for f in TRIPLE_FAMILIES {
            names.push(format!("{f}_{i}"));
        }
    }
    for class in ["R", "S", "T"] {
        for e in 0..q {
            names.push(format!("{class}_{e}"));
            for step in 1..=5 {
                names.push(format!("{class}{step}_{e}"));
            }
        }
    }
    let chain = |class: usize, e: usize, step: usize| 16 * p + 6 * (class * q + e) + step;

    let mut nodes: Vec<Vec<usize>> = Vec::with_capacity(8 * p + 18 * q + 1);
    let mut tree_edges = Vec::with_capacity(8 * p + 18 * q);
    for i in 0..p {
        let base = nodes.len();
        for clique in TRIPLE_CLIQUES {
            let mut members: Vec<usize> = clique.iter().map(|&f| 16 * i + f).collect();
            members.sort_unstable();
            nodes.push(members);
        }
        tree_edges.extend(TRIPLE_TREE.iter().map(|&(a, b)| (base + a, base + b)));
    }
    let hub = 8 * p + 18 * q;
    for class in 0..3 {
        for e in 0..q {
            let mut head: Vec<usize> = inst
                .triples()
                .iter()
                .enumerate()
                .filter(|(_, t)| [t.0, t.1, t.2][class] == e)
                .map(|(i, _)| 16 * i + class)
                .collect();
            head.push(chain(class, e, 0));
            head.sort_unstable();
            let base = nodes.len();
            nodes.push(head);
            tree_edges.push((hub, base));
            for step in 0..5 {
                nodes.push(vec![chain(class, e, step), chain(class, e, step + 1)]);
                tree_edges.push((base + step, base + step + 1));
            }
        }
    }
    let mut top: Vec<usize> = (0..p).flat_map(|i| [16 * i + A, 16 * i + B, 16 * i + C]).collect();
    top.sort_unstable();
    nodes.push(top);
    tree_edges.extend((0..p).map(|i| (hub, 8 * i)));

    let mut edges = Vec::new();
    for node in &nodes {
        for (a, &u) in node.iter().enumerate() {
            for &v in &node[a + 1..] {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(n, &edges).expect("clique members are valid vertices");
    ReductionOutput { graph, tree: CliqueTree { nodes, edges: tree_edges }, target_k: 4 * p + 10 * q, names, p, q }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CliqueTreeError {
    #[error("tree edges do not form a tree on {nodes} nodes")]
    NotATree { nodes: usize },
    #[error("node {node} lists vertex {vertex}, which is out of range")]
    BadVertex { node: usize, vertex: usize },
    #[error("node {node} is not a clique: {u} and {v} are not adjacent")]
    NotClique { node: usize, u: usize, v: usize },
    #[error("edge {u}-{v} lies in no node")]
    Uncovered { u: usize, v: usize },
    #[error("nodes containing vertex {vertex} do not form a path")]
    NotPath { vertex: usize },
}

/// Checks that `tree` is a clique tree of `g` in which the nodes containing
/// any one vertex form a path.
pub fn verify_clique_tree(g: &Graph, tree: &CliqueTree) -> Result<(), CliqueTreeError> {
    let k = tree.nodes.len();
    let n = g.vertex_count();
    if tree.edges.len() + 1 != k && !(k == 0 && tree.edges.is_empty()) {
        return Err(CliqueTreeError::NotATree { nodes: k });
    }
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in &tree.edges {
        if a >= k || b >= k {
            return Err(CliqueTreeError::NotATree { nodes: k });
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(CliqueTreeError::NotATree { nodes: k });
        }
        parent[ra] = rb;
    }

    let mut covered = vec![false; g.edge_count()];
    let mut occurrences = vec![0usize; n];
    for (node, members) in tree.nodes.iter().enumerate() {
        if let Some(&vertex) = members.iter().find(|&&u| u >= n) {
            return Err(CliqueTreeError::BadVertex { node, vertex });
        }
        for (a, &u) in members.iter().enumerate() {
            occurrences[u] += 1;
            for &v in &members[a + 1..] {
                match g.edge_between(u, v) {
                    Some(e) => covered[e] = true,
                    None => return Err(CliqueTreeError::NotClique { node, u, v }),
                }
            }
        }
    }
    if let Some(e) = covered.iter().position(|&c| !c) {
        let (u, v) = g.endpoints(e);
        return Err(CliqueTreeError::Uncovered { u, v });
    }

    // Within a tree, the nodes holding v form a path iff they span
    // occurrences - 1 tree edges and no node meets more than two of them.
    let mut spanned = vec![0usize; n];
    let mut hold_degree: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
    for &(a, b) in &tree.edges {
        for v in sorted_intersection(&tree.nodes[a], &tree.nodes[b]) {
            spanned[v] += 1;
            for node in [a, b] {
                let slot = &mut hold_degree[v];
                match slot.iter_mut().find(|(x, _)| *x == node) {
                    Some((_, d)) => *d += 1,
                    None => slot.push((node, 1)),
                }
            }
        }
    }
    for v in 0..n {
        if occurrences[v] == 0 {
            continue;
        }
        if spanned[v] + 1 != occurrences[v] || hold_degree[v].iter().any(|&(_, d)| d > 2) {
            return Err(CliqueTreeError::NotPath { vertex: v });
        }
    }
    Ok(())
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("triples {0:?} are not a perfect matching")]
    NotAMatching(Vec<usize>),
}

/// The size-`4p + 10q` liar's ve-dominating set induced by a perfect matching.
pub fn build_witness(out: &ReductionOutput, inst: &ThreeDmInstance, matching: &[usize]) -> Result<VertexSet, WitnessError> {
    if !inst.is_perfect_matching(matching) {
        return Err(WitnessError::NotAMatching(matching.to_vec()));
    }
    let mut l = VertexSet::new();
    for i in 0..out.p {
        let fams: &[usize] = if matching.contains(&i) { &[A, B, C, E, G] } else { &[D, E, F, G] };
        l.extend(fams.iter().map(|&f| out.triple_vertex(i, f)));
    }
    for class in 0..3 {
        for e in 0..out.q {
            l.extend((2..=4).map(|step| out.chain_vertex(class, e, step)));
        }
    }
    Ok(l)
}
