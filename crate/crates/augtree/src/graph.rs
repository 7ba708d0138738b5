//! Plain graph, hypergraph, list-assignment, coloring, and orientation types.
//!
//! Vertices are dense integers `0..n`. Graphs are simple: no loops, no
//! parallel edges. Every edge carries a provenance tag so verifiers and
//! exporters can tell tree edges from augmenting edges from gadget-internal
//! edges.

use crate::error::ModelError;
use std::collections::HashSet;

/// Where an edge of a flattened or assembled graph came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeTag {
    Tree,
    Aug,
    Gadget,
}

impl EdgeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeTag::Tree => "tree",
            EdgeTag::Aug => "aug",
            EdgeTag::Gadget => "gadget",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub tag: EdgeTag,
}

impl Edge {
    pub fn endpoints(&self) -> (u32, u32) {
        (self.u, self.v)
    }

    pub fn other(&self, x: u32) -> u32 {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected simple graph over dense integer vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { n, edges: Vec::new() }
    }

    pub fn from_edges<I>(n: usize, iter: I) -> Result<Graph, ModelError>
    where
        I: IntoIterator<Item = (u32, u32, EdgeTag)>,
    {
        let mut g = Graph::new(n);
        for (u, v, tag) in iter {
            g.add_edge(u, v, tag)?;
        }
        g.check_simple()?;
        Ok(g)
    }

    pub fn add_edge(&mut self, u: u32, v: u32, tag: EdgeTag) -> Result<(), ModelError> {
        if u == v {
            return Err(ModelError::Loop { v: u });
        }
        if u as usize >= self.n || v as usize >= self.n {
            return Err(ModelError::VertexOutOfRange {
                v: u.max(v),
                n: self.n,
            });
        }
        self.edges.push(Edge { u, v, tag });
        Ok(())
    }

    /// Rejects parallel edges; loops and range errors were rejected on insert.
    pub fn check_simple(&self) -> Result<(), ModelError> {
        let mut seen = HashSet::with_capacity(self.edges.len());
        for e in &self.edges {
            let key = (e.u.min(e.v), e.u.max(e.v));
            if !seen.insert(key) {
                return Err(ModelError::ParallelEdge { u: key.0, v: key.1 });
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    /// Adjacency lists annotated with the index of the connecting edge.
    pub fn adjacency(&self) -> Vec<Vec<(u32, u32)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u as usize].push((e.v, i as u32));
            adj[e.v as usize].push((e.u, i as u32));
        }
        adj
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for e in &self.edges {
            deg[e.u as usize] += 1;
            deg[e.v as usize] += 1;
        }
        deg
    }

    /// The same graph with one edge removed (used for edge-deleted density
    /// sharpness checks).
    pub fn without_edge(&self, idx: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Graph { n: self.n, edges }
    }
}

/// Two color classes covering all vertices, no intra-class edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    /// `side[v]` is false for the class containing vertex 0 of each component.
    pub side: Vec<bool>,
}

impl Bipartition {
    pub fn class(&self, which: bool) -> Vec<u32> {
        (0..self.side.len() as u32)
            .filter(|&v| self.side[v as usize] == which)
            .collect()
    }
}

/// An odd closed walk certifying non-bipartiteness: a cyclic vertex sequence
/// of odd length whose consecutive pairs are edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCycle {
    pub vertices: Vec<u32>,
}

/// BFS two-coloring. Returns the classes, or an odd cycle as certificate.
pub fn bipartition(g: &Graph) -> Result<Bipartition, OddCycle> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut side = vec![false; n];
    let mut parent = vec![u32::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n as u32 {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adj[u as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    side[v as usize] = !side[u as usize];
                    parent[v as usize] = u;
                    queue.push_back(v);
                } else if side[v as usize] == side[u as usize] {
                    return Err(extract_odd_cycle(&parent, u, v));
                }
            }
        }
    }
    Ok(Bipartition { side })
}

fn extract_odd_cycle(parent: &[u32], u: u32, v: u32) -> OddCycle {
    // Walk both vertices up the BFS forest until the paths meet.
    let path_to_root = |mut x: u32| {
        let mut path = vec![x];
        while parent[x as usize] != u32::MAX {
            x = parent[x as usize];
            path.push(x);
        }
        path
    };
    let pu = path_to_root(u);
    let pv = path_to_root(v);
    // Trim the common suffix, keeping the meeting vertex once.
    let mut iu = pu.len();
    let mut iv = pv.len();
    while iu > 1 && iv > 1 && pu[iu - 2] == pv[iv - 2] {
        iu -= 1;
        iv -= 1;
    }
    let mut cycle: Vec<u32> = pu[..iu].to_vec();
    cycle.extend(pv[..iv - 1].iter().rev());
    OddCycle { vertices: cycle }
}

/// Uniform hypergraph: every edge is a set of `t` distinct vertices.
/// `provenance[i]` records the originating leaf of edge `i` in the source
/// tree; originating leaves are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub vertex_count: usize,
    pub uniformity: usize,
    pub edges: Vec<Vec<u32>>,
    pub provenance: Vec<u32>,
}

impl Hypergraph {
    pub fn validate(&self) -> Result<(), ModelError> {
        for e in &self.edges {
            if e.len() != self.uniformity {
                return Err(ModelError::HyperedgeSize {
                    got: e.len(),
                    want: self.uniformity,
                });
            }
            let set: HashSet<_> = e.iter().collect();
            if set.len() != e.len() {
                return Err(ModelError::HyperedgeRepeatedVertex);
            }
            for &v in e {
                if v as usize >= self.vertex_count {
                    return Err(ModelError::VertexOutOfRange {
                        v,
                        n: self.vertex_count,
                    });
                }
            }
        }
        let leaves: HashSet<_> = self.provenance.iter().collect();
        if leaves.len() != self.provenance.len() {
            return Err(ModelError::DuplicateProvenance);
        }
        Ok(())
    }

    /// View a 2-uniform hypergraph as a plain graph.
    pub fn to_graph(&self) -> Result<Graph, ModelError> {
        if self.uniformity != 2 {
            return Err(ModelError::NotTwoUniform {
                t: self.uniformity,
            });
        }
        Graph::from_edges(
            self.vertex_count,
            self.edges.iter().map(|e| (e[0], e[1], EdgeTag::Gadget)),
        )
    }
}

/// Per-vertex finite color sets over a global integer color universe.
///
/// Stored in compressed form; the allocator hands out blocks of fresh color
/// ids and never reissues one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    offsets: Vec<u32>,
    colors: Vec<u32>,
    allocator_next: u32,
}

impl ListAssignment {
    pub fn new(n: usize) -> ListAssignment {
        ListAssignment {
            offsets: vec![0; n + 1],
            colors: Vec::new(),
            allocator_next: 1,
        }
    }

    /// Builds from explicit lists; the allocator starts above every used id.
    pub fn from_lists(lists: Vec<Vec<u32>>) -> ListAssignment {
        let mut la = ListAssignment::new(lists.len());
        let mut next = 1;
        la.offsets.clear();
        la.offsets.push(0);
        for mut l in lists {
            l.sort_unstable();
            l.dedup();
            for &c in &l {
                next = next.max(c + 1);
            }
            la.colors.extend_from_slice(&l);
            la.offsets.push(la.colors.len() as u32);
        }
        la.allocator_next = next;
        la
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn list(&self, v: u32) -> &[u32] {
        &self.colors[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    pub fn contains(&self, v: u32, c: u32) -> bool {
        self.list(v).binary_search(&c).is_ok()
    }

    /// Appends the list for the next vertex. Lists must be appended in vertex
    /// order by builders that start from `new`.
    pub fn push_list(&mut self, v: u32, mut list: Vec<u32>) {
        debug_assert_eq!(self.offsets[v as usize], self.offsets[v as usize + 1]);
        debug_assert!(self
            .offsets
            .iter()
            .skip(v as usize + 1)
            .all(|&o| o == *self.offsets.last().unwrap()));
        list.sort_unstable();
        list.dedup();
        for &c in &list {
            self.allocator_next = self.allocator_next.max(c + 1);
        }
        self.colors.extend_from_slice(&list);
        for o in self.offsets.iter_mut().skip(v as usize + 1) {
            *o = self.colors.len() as u32;
        }
    }

    /// Reserves `count` fresh color ids and returns the first one.
    pub fn alloc_fresh(&mut self, count: u32) -> u32 {
        let start = self.allocator_next;
        self.allocator_next += count;
        start
    }

    pub fn allocator_next(&self) -> u32 {
        self.allocator_next
    }

    /// Union of all lists, ascending.
    pub fn universe(&self) -> Vec<u32> {
        let mut u: Vec<u32> = self.colors.clone();
        u.sort_unstable();
        u.dedup();
        u
    }

    pub fn min_list_len(&self) -> usize {
        (0..self.vertex_count() as u32)
            .map(|v| self.list(v).len())
            .min()
            .unwrap_or(0)
    }

    pub fn product_of_list_sizes_capped(&self, cap: u128) -> u128 {
        let mut p: u128 = 1;
        for v in 0..self.vertex_count() as u32 {
            p = p.saturating_mul(self.list(v).len() as u128);
            if p > cap {
                return cap + 1;
            }
        }
        p
    }
}

/// A total or partial vertex coloring. `None` means uncolored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub color_of: Vec<Option<u32>>,
}

impl Coloring {
    pub fn total(colors: Vec<u32>) -> Coloring {
        Coloring {
            color_of: colors.into_iter().map(Some).collect(),
        }
    }

    pub fn is_total(&self) -> bool {
        self.color_of.iter().all(|c| c.is_some())
    }

    pub fn get(&self, v: u32) -> Option<u32> {
        self.color_of[v as usize]
    }
}

/// A direction for every edge of a companion graph, plus a designated root.
/// `arcs[i]` orients `graph.edges()[i]` as (tail, head).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub arcs: Vec<(u32, u32)>,
    pub root: u32,
}

impl Orientation {
    /// Checks that the arcs cover exactly the companion graph's edges.
    pub fn covers(&self, g: &Graph) -> bool {
        self.arcs.len() == g.edge_count()
            && self.arcs.iter().zip(g.edges()).all(|(&(t, h), e)| {
                (t, h) == (e.u, e.v) || (t, h) == (e.v, e.u)
            })
    }

    pub fn out_degrees(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0u32; n];
        for &(t, _) in &self.arcs {
            out[t as usize] += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> Graph {
        Graph::from_edges(
            n,
            (0..n as u32 - 1).map(|i| (i, i + 1, EdgeTag::Gadget)),
        )
        .unwrap()
    }

    fn cycle_graph(n: usize) -> Graph {
        Graph::from_edges(
            n,
            (0..n as u32).map(|i| (i, (i + 1) % n as u32, EdgeTag::Gadget)),
        )
        .unwrap()
    }

    #[test]
    fn rejects_loops_and_parallels() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(1, 1, EdgeTag::Gadget).is_err());
        g.add_edge(0, 1, EdgeTag::Gadget).unwrap();
        g.add_edge(1, 0, EdgeTag::Gadget).unwrap();
        assert!(g.check_simple().is_err());
    }

    #[test]
    fn single_edge_bipartition() {
        let g = path_graph(2);
        let b = bipartition(&g).unwrap();
        assert_eq!(b.class(false), vec![0]);
        assert_eq!(b.class(true), vec![1]);
    }

    #[test]
    fn five_cycle_certificate() {
        let g = cycle_graph(5);
        let err = bipartition(&g).unwrap_err();
        assert_eq!(err.vertices.len(), 5);
        // Certificate really is a closed walk over edges of the graph.
        let m = err.vertices.len();
        for i in 0..m {
            let (a, b) = (err.vertices[i], err.vertices[(i + 1) % m]);
            assert!(g
                .edges()
                .iter()
                .any(|e| (e.u, e.v) == (a, b) || (e.u, e.v) == (b, a)));
        }
    }

    #[test]
    fn even_cycles_are_bipartite() {
        for n in [4usize, 6, 8] {
            assert!(bipartition(&cycle_graph(n)).is_ok());
        }
        for n in [3usize, 5, 7, 9] {
            let c = bipartition(&cycle_graph(n)).unwrap_err();
            assert_eq!(c.vertices.len() % 2, 1);
        }
    }

    #[test]
    fn list_assignment_storage() {
        let la = ListAssignment::from_lists(vec![vec![2, 1], vec![3, 3, 4]]);
        assert_eq!(la.list(0), &[1, 2]);
        assert_eq!(la.list(1), &[3, 4]);
        assert_eq!(la.universe(), vec![1, 2, 3, 4]);
        assert_eq!(la.allocator_next(), 5);
        let mut la2 = la.clone();
        let f = la2.alloc_fresh(3);
        assert_eq!(f, 5);
        assert_eq!(la2.alloc_fresh(1), 8);
    }
}
