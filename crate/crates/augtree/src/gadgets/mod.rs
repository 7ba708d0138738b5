//! Derived gadget constructions and their violation witnesses.
//!
//! All tree-backed gadgets share one assembly scheme: a reduced girth-4 base
//! with grouped aug mates (see [`crate::aligned`]), one copy of the previous
//! gadget per leaf, and the leaf's aug edges re-homed onto the copy's
//! vertices. The witness engine is likewise shared: scan the tree edges for
//! an improper pair, otherwise follow the descent path to a leaf, catch an
//! aug edge whose copy endpoint uses its added color, and otherwise recurse
//! into the copy. Every witness is re-verified against the coloring before
//! it is returned.

pub mod choice;
pub mod hyper;
pub mod lists;
pub mod sparse;

use crate::aligned::AlignedBase;
use crate::error::WitnessError;
use crate::graph::{
    Coloring, EdgeTag, Graph, Hypergraph, ListAssignment, Orientation,
};
use crate::tree::AugmentedTree;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Which construction a bundle came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    /// t-uniform non-k-colorable hypergraph.
    Hypergraph { t: u32, k: u32 },
    /// Sparse non-k-colorable graph (average-degree bounded).
    Sparse { k: u32, g: u32 },
    /// Non-k-choosable bipartite graph with its hard list assignment.
    Choice { k: u32, g: u32 },
    /// The same graph with lists intersecting in exactly one color per edge.
    ListCap { k: u32, g: u32 },
    /// Non-colorable k-lists whose union has only 2k-1 colors.
    SmallUnion { k: u32, g: u32 },
}

impl GadgetKind {
    pub fn k(&self) -> u32 {
        match *self {
            GadgetKind::Hypergraph { k, .. }
            | GadgetKind::Sparse { k, .. }
            | GadgetKind::Choice { k, .. }
            | GadgetKind::ListCap { k, .. }
            | GadgetKind::SmallUnion { k, .. } => k,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GadgetKind::Hypergraph { .. } => "hypergraph",
            GadgetKind::Sparse { .. } => "jk",
            GadgetKind::Choice { .. } => "gk",
            GadgetKind::ListCap { .. } => "listcap",
            GadgetKind::SmallUnion { .. } => "hk",
        }
    }
}

#[derive(Clone, Debug)]
pub enum GadgetBody {
    Graph(Graph),
    Hypergraph(Hypergraph),
}

impl GadgetBody {
    pub fn graph(&self) -> Option<&Graph> {
        match self {
            GadgetBody::Graph(g) => Some(g),
            GadgetBody::Hypergraph(_) => None,
        }
    }

    pub fn hypergraph(&self) -> Option<&Hypergraph> {
        match self {
            GadgetBody::Hypergraph(h) => Some(h),
            GadgetBody::Graph(_) => None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            GadgetBody::Graph(g) => g.vertex_count(),
            GadgetBody::Hypergraph(h) => h.vertex_count,
        }
    }
}

/// One leaf's copy of the previous gadget inside an assembled graph.
#[derive(Clone, Debug)]
pub struct CopyInfo {
    pub leaf: u32,
    /// Graph id of each child-bundle vertex.
    pub vertices: Vec<u32>,
    /// Graph id of the tree mate re-homed onto each child vertex (None for a
    /// merged copy root, whose tree edge plays that role).
    pub mates: Vec<Option<u32>>,
    /// Edge index of the aug edge onto each child vertex.
    pub aug_edge: Vec<Option<u32>>,
    /// Parent-graph edge index of each child-graph edge.
    pub edge_map: Vec<u32>,
    /// The color added to each copy vertex's list (None where not
    /// applicable). On the descent path this color provably appears on the
    /// vertex's tree neighbor.
    pub added_color: Vec<Option<u32>>,
    /// Child-canonical color to global color, sorted by child color. Empty
    /// when the child coloring uses the same palette.
    pub color_map: Vec<(u32, u32)>,
}

impl CopyInfo {
    pub fn child_color_of(&self, global: u32) -> Option<u32> {
        if self.color_map.is_empty() {
            return Some(global);
        }
        self.color_map
            .iter()
            .find(|&&(_, g)| g == global)
            .map(|&(c, _)| c)
    }

    pub fn global_color_of(&self, child: u32) -> Option<u32> {
        if self.color_map.is_empty() {
            return Some(child);
        }
        self.color_map
            .iter()
            .find(|&&(c, _)| c == child)
            .map(|&(_, g)| g)
    }
}

/// The underlying tree of an assembled gadget plus the bijection between
/// tree/copy positions and graph vertices.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub tree: AugmentedTree,
    /// Graph id per tree vertex; None for leaves that were replaced.
    pub tree_to_graph: Vec<Option<u32>>,
    pub copies: Vec<CopyInfo>,
    pub first_leaf: u32,
    /// Alternative descent edge coloring (per tree vertex, the color of its
    /// incoming tree edge); None means the canonical child-slot coloring.
    pub descent_colors: Option<Vec<u32>>,
}

impl Skeleton {
    pub fn copy_of(&self, leaf: u32) -> &CopyInfo {
        &self.copies[(leaf - self.first_leaf) as usize]
    }
}

#[derive(Clone, Debug)]
pub struct GadgetBundle {
    pub kind: GadgetKind,
    pub body: GadgetBody,
    pub lists: Option<ListAssignment>,
    pub orientation: Option<Orientation>,
    pub skeleton: Option<Skeleton>,
    pub child: Option<Box<GadgetBundle>>,
}

impl GadgetBundle {
    pub fn k(&self) -> u32 {
        self.kind.k()
    }

    pub fn graph(&self) -> &Graph {
        self.body.graph().expect("graph-backed gadget")
    }

    /// Recursion depth: k - 1 for the tree-backed constructions.
    pub fn recursion_depth(&self) -> u32 {
        1 + self.child.as_ref().map_or(0, |c| c.recursion_depth())
    }
}

/// How a witness edge was located.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessVia {
    /// The coloring was already improper on a tree edge.
    TreeScan,
    /// Found through descent into the copy at this leaf.
    Descent { leaf: u32 },
    /// Base-case gadget: located by a full edge scan.
    Scan,
}

/// A verified violation: an edge (or hyperedge) monochromatic under the
/// offending coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub edge: usize,
    pub via: WitnessVia,
}

fn validate_graph_coloring(b: &GadgetBundle, g: &Graph, f: &Coloring) -> Result<(), WitnessError> {
    if f.color_of.len() != g.vertex_count() {
        return Err(WitnessError::Partial {
            vertex: f.color_of.len().min(g.vertex_count()) as u32,
        });
    }
    for v in 0..g.vertex_count() as u32 {
        let c = f.get(v).ok_or(WitnessError::Partial { vertex: v })?;
        match &b.lists {
            Some(lists) => {
                if !lists.contains(v, c) {
                    return Err(WitnessError::NotInList { vertex: v, color: c });
                }
            }
            None => {
                let k = b.k();
                if c < 1 || c > k {
                    return Err(WitnessError::ColorOutOfRange {
                        vertex: v,
                        color: c,
                        k,
                    });
                }
            }
        }
    }
    Ok(())
}

fn color(f: &Coloring, v: u32) -> u32 {
    f.color_of[v as usize].expect("validated total coloring")
}

/// Follows the descent path on the skeleton tree under the graph coloring
/// and returns the reached leaf. Callers must have established that `f` is
/// proper on the graph's tree edges.
fn descend(sk: &Skeleton, f: &Coloring) -> Result<u32, WitnessError> {
    let t = &sk.tree;
    let mut v = 0u32;
    while !t.is_leaf(v) {
        let gid = sk.tree_to_graph[v as usize].ok_or_else(|| {
            WitnessError::SelfCheck(format!("internal tree vertex {v} missing from graph"))
        })?;
        let c = color(f, gid);
        let next = match &sk.descent_colors {
            None => t.child_with_color(v, c),
            Some(dc) => t
                .children_of(v)
                .iter()
                .copied()
                .find(|&ch| dc[ch as usize] == c),
        };
        v = next.ok_or_else(|| {
            WitnessError::SelfCheck(format!(
                "descent stuck at tree vertex {v} on color {c} despite proper tree edges"
            ))
        })?;
    }
    Ok(v)
}

/// Extracts a verified violation witness from any coloring of the bundle.
/// The existence of a witness for *every* coloring is the executable form of
/// the gadget's impossibility claim; failing to find one is reported as a
/// self-check error, never papered over.
pub fn gadget_witness(b: &GadgetBundle, f: &Coloring) -> Result<Witness, WitnessError> {
    let w = match &b.body {
        GadgetBody::Hypergraph(h) => hyper::hypergraph_witness(b, h, f)?,
        GadgetBody::Graph(g) => graph_witness(b, g, f)?,
    };
    // Central re-verification.
    match &b.body {
        GadgetBody::Graph(g) => {
            let e = g.edge(w.edge);
            if color(f, e.u) != color(f, e.v) {
                return Err(WitnessError::SelfCheck(format!(
                    "witness edge {} not monochromatic",
                    w.edge
                )));
            }
        }
        GadgetBody::Hypergraph(h) => {
            let e = &h.edges[w.edge];
            let c0 = color(f, e[0]);
            if !e.iter().all(|&v| color(f, v) == c0) {
                return Err(WitnessError::SelfCheck(format!(
                    "witness hyperedge {} not monochromatic",
                    w.edge
                )));
            }
        }
    }
    Ok(w)
}

fn graph_witness(b: &GadgetBundle, g: &Graph, f: &Coloring) -> Result<Witness, WitnessError> {
    validate_graph_coloring(b, g, f)?;
    let Some(sk) = &b.skeleton else {
        // Base gadget: the impossibility proof guarantees a violated edge.
        return match g
            .edges()
            .iter()
            .position(|e| color(f, e.u) == color(f, e.v))
        {
            Some(edge) => Ok(Witness {
                edge,
                via: WitnessVia::Scan,
            }),
            None => Err(WitnessError::SelfCheck(
                "base gadget admitted a proper coloring".into(),
            )),
        };
    };

    // Tree edges first, in insertion (BFS) order.
    for (i, e) in g.edges().iter().enumerate() {
        if e.tag == EdgeTag::Tree && color(f, e.u) == color(f, e.v) {
            return Ok(Witness {
                edge: i,
                via: WitnessVia::TreeScan,
            });
        }
    }

    let leaf = descend(sk, f)?;
    let copy = sk.copy_of(leaf);

    // On the descent path every re-homed mate carries the copy vertex's
    // added color, so a copy vertex using it closes a monochromatic aug edge.
    for i in 0..copy.vertices.len() {
        if let (Some(m), Some(edge)) = (copy.mates[i], copy.aug_edge[i]) {
            if color(f, copy.vertices[i]) == color(f, m) {
                return Ok(Witness {
                    edge: edge as usize,
                    via: WitnessVia::Descent { leaf },
                });
            }
        }
    }

    // Otherwise the copy is colored from the child gadget's own palette.
    let child = b
        .child
        .as_ref()
        .ok_or_else(|| WitnessError::SelfCheck("tree-backed gadget without child".into()))?;
    let mut child_colors = Vec::with_capacity(copy.vertices.len());
    for (i, &gv) in copy.vertices.iter().enumerate() {
        let global = color(f, gv);
        let c = copy.child_color_of(global).ok_or_else(|| {
            WitnessError::SelfCheck(format!(
                "color {global} on copy vertex {i} has no child preimage"
            ))
        })?;
        child_colors.push(c);
    }
    let child_f = Coloring::total(child_colors);
    let cw = gadget_witness(child, &child_f)?;
    Ok(Witness {
        edge: copy.edge_map[cw.edge] as usize,
        via: WitnessVia::Descent { leaf },
    })
}

// ---------------------------------------------------------------------------
// Shared assembly.
// ---------------------------------------------------------------------------

/// How the child gadget replaces each leaf of the base.
pub(crate) enum LeafSurgery {
    /// The leaf becomes the given child vertex (its tree edge survives).
    MergeRoot { child_root: u32 },
    /// The leaf disappears; the copy stands free of the tree.
    ReplaceLeaf,
}

pub(crate) struct AssemblySpec<'a> {
    pub base: &'a AlignedBase,
    pub child_graph: &'a Graph,
    pub child_orientation: Option<&'a Orientation>,
    pub surgery: LeafSurgery,
    /// For each child vertex, the index of the split group providing its aug
    /// edge; None exactly for the merged root.
    pub vertex_group: Vec<Option<usize>>,
}

pub(crate) struct Assembled {
    pub graph: Graph,
    pub orientation: Option<Orientation>,
    pub skeleton: Skeleton,
}

pub(crate) fn assemble(spec: AssemblySpec<'_>) -> Assembled {
    let t = &spec.base.tree;
    let tree_n = t.vertex_count();
    let first_leaf = spec.base.first_leaf();
    let nc = spec.child_graph.vertex_count();
    let leaves: Vec<u32> = (first_leaf..tree_n as u32).collect();
    let merge_root = match spec.surgery {
        LeafSurgery::MergeRoot { child_root } => Some(child_root),
        LeafSurgery::ReplaceLeaf => None,
    };

    let (n, tree_to_graph): (usize, Vec<Option<u32>>) = match merge_root {
        Some(_) => (
            tree_n + leaves.len() * (nc - 1),
            (0..tree_n as u32).map(Some).collect(),
        ),
        None => (
            first_leaf as usize + leaves.len() * nc,
            (0..tree_n as u32)
                .map(|v| if v < first_leaf { Some(v) } else { None })
                .collect(),
        ),
    };

    let copy_vertex = |j: usize, i: u32| -> u32 {
        match merge_root {
            Some(root) => {
                if i == root {
                    leaves[j]
                } else {
                    let rank = if i > root { i - 1 } else { i };
                    (tree_n + j * (nc - 1)) as u32 + rank
                }
            }
            None => first_leaf + (j * nc) as u32 + i,
        }
    };

    let mut graph = Graph::new(n);
    let mut arcs: Vec<(u32, u32)> = Vec::new();
    let want_orientation = spec.child_orientation.is_some();

    // Tree edges in BFS order, oriented away from the root.
    let tree_edge_limit = match merge_root {
        Some(_) => tree_n as u32,
        None => first_leaf,
    };
    for v in 1..tree_edge_limit {
        graph
            .add_edge(t.parent_of(v), v, EdgeTag::Tree)
            .expect("tree edge");
        arcs.push((t.parent_of(v), v));
    }

    let mut copies = Vec::with_capacity(leaves.len());
    for (j, &leaf) in leaves.iter().enumerate() {
        let vertices: Vec<u32> = (0..nc as u32).map(|i| copy_vertex(j, i)).collect();
        let mut edge_map = Vec::with_capacity(spec.child_graph.edge_count());
        for (ei, e) in spec.child_graph.edges().iter().enumerate() {
            let (u, v) = (vertices[e.u as usize], vertices[e.v as usize]);
            edge_map.push(graph.edge_count() as u32);
            graph.add_edge(u, v, EdgeTag::Gadget).expect("copy edge");
            if let Some(o) = spec.child_orientation {
                let (ct, ch) = o.arcs[ei];
                arcs.push((vertices[ct as usize], vertices[ch as usize]));
            }
        }
        // Aug edges: each group's mates are consumed in level order by the
        // child vertices assigned to it, in child vertex order.
        let groups = spec.base.groups_of(leaf);
        let mut cursor = vec![0usize; groups.len()];
        let mut mates: Vec<Option<u32>> = vec![None; nc];
        let mut aug_edge: Vec<Option<u32>> = vec![None; nc];
        for i in 0..nc as u32 {
            if let Some(gi) = spec.vertex_group[i as usize] {
                let mate = groups[gi].mates[cursor[gi]];
                cursor[gi] += 1;
                mates[i as usize] = Some(mate);
                aug_edge[i as usize] = Some(graph.edge_count() as u32);
                graph
                    .add_edge(vertices[i as usize], mate, EdgeTag::Aug)
                    .expect("aug edge");
                arcs.push((vertices[i as usize], mate));
            }
        }
        for (gi, g) in groups.iter().enumerate() {
            debug_assert_eq!(cursor[gi], g.mates.len(), "all mates consumed");
        }
        copies.push(CopyInfo {
            leaf,
            vertices,
            mates,
            aug_edge,
            edge_map,
            added_color: vec![None; nc],
            color_map: Vec::new(),
        });
    }

    let orientation = want_orientation.then(|| Orientation { arcs, root: 0 });
    Assembled {
        graph,
        orientation,
        skeleton: Skeleton {
            tree: t.clone(),
            tree_to_graph,
            copies,
            first_leaf,
            descent_colors: None,
        },
    }
}

// ---------------------------------------------------------------------------
// Seeded witness trials.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct TrialReport {
    pub trials: u64,
    pub failures: u64,
    pub sample: Option<Witness>,
}

fn random_coloring(b: &GadgetBundle, seed: u64, stream: u64) -> Coloring {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let n = b.body.vertex_count();
    let colors = match &b.lists {
        Some(lists) => (0..n as u32)
            .map(|v| {
                let l = lists.list(v);
                l[rng.gen_range(0..l.len())]
            })
            .collect(),
        None => {
            let k = b.k();
            (0..n).map(|_| rng.gen_range(1..=k)).collect()
        }
    };
    Coloring::total(colors)
}

/// Runs `trials` seeded random choice-function colorings, extracts and
/// re-verifies a witness for each, and reports the failure count (which the
/// impossibility claims say must be zero). Deterministic for a fixed seed;
/// trials run in parallel under the `parallel` feature with one independent
/// random stream per trial.
pub fn run_witness_trials(b: &GadgetBundle, trials: u64, seed: u64) -> TrialReport {
    let run_one = |i: u64| -> (u64, Option<Witness>) {
        let f = random_coloring(b, seed, i);
        match gadget_witness(b, &f) {
            Ok(w) => (0, Some(w)),
            Err(_) => (1, None),
        }
    };
    let (failures, sample);
    #[cfg(feature = "parallel")]
    {
        let results: Vec<(u64, Option<Witness>)> =
            (0..trials).into_par_iter().map(run_one).collect();
        failures = results.iter().map(|r| r.0).sum();
        sample = results.first().and_then(|r| r.1);
    }
    #[cfg(not(feature = "parallel"))]
    {
        let results: Vec<(u64, Option<Witness>)> = (0..trials).map(run_one).collect();
        failures = results.iter().map(|r| r.0).sum();
        sample = results.first().and_then(|r| r.1);
    }
    TrialReport {
        trials,
        failures,
        sample,
    }
}

/// Sequential variant kept for benchmarking against the parallel sweep.
pub fn run_witness_trials_sequential(b: &GadgetBundle, trials: u64, seed: u64) -> TrialReport {
    let mut failures = 0;
    let mut sample = None;
    for i in 0..trials {
        let f = random_coloring(b, seed, i);
        match gadget_witness(b, &f) {
            Ok(w) => {
                if sample.is_none() {
                    sample = Some(w);
                }
            }
            Err(_) => failures += 1,
        }
    }
    TrialReport {
        trials,
        failures,
        sample,
    }
}
