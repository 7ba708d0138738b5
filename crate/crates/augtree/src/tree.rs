//! Rooted augmented trees: a d-ary tree (complete, or reduced so that the
//! edge coloring is proper) plus extra edges from each leaf to `r` of its
//! ancestors.
//!
//! Vertex ids are dense integers assigned in breadth-first order with the
//! root at 0, so levels are monotone in id and serialization is canonical.
//! Every tree edge carries the color of the child slot it occupies (1-based);
//! in a reduced tree the descending colors at a non-root vertex are exactly
//! `[d]` minus the color of its parent edge.

use crate::error::ModelError;
use crate::graph::{EdgeTag, Graph};
use std::collections::VecDeque;
use std::fmt;

/// Target parameters of an augmented tree: arity, aug edges per leaf, and the
/// girth its construction guarantees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeParams {
    pub d: u32,
    pub r: u32,
    pub girth_target: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedTree {
    params: TreeParams,
    reduced: bool,
    parent: Vec<u32>,
    children: Vec<Vec<u32>>,
    /// Color of the edge from `parent[v]` to `v`; 0 for the root.
    edge_color: Vec<u32>,
    level: Vec<u32>,
    /// (leaf, ancestor), sorted by leaf id then ancestor level.
    aug: Vec<(u32, u32)>,
}

impl AugmentedTree {
    /// Rebuilds a tree from parent pointers and edge colors. Only hard
    /// well-formedness is enforced here (single root 0, acyclic, colors
    /// ordered); the type invariants are checked by [`AugmentedTree::validate`]
    /// so that defective trees can still be constructed and reported on.
    pub fn from_parts(
        params: TreeParams,
        reduced: bool,
        parent: Vec<u32>,
        edge_color: Vec<u32>,
        mut aug: Vec<(u32, u32)>,
    ) -> Result<AugmentedTree, ModelError> {
        let n = parent.len();
        if n == 0 || parent[0] != 0 {
            return Err(ModelError::MalformedTree(
                "root must be vertex 0 with parent 0".into(),
            ));
        }
        if edge_color.len() != n {
            return Err(ModelError::MalformedTree("edge color array length".into()));
        }
        let mut children = vec![Vec::new(); n];
        for v in 1..n as u32 {
            let p = parent[v as usize];
            if p as usize >= n || p >= v {
                // BFS order puts parents before children.
                return Err(ModelError::MalformedTree(format!(
                    "parent of {v} is {p}, not an earlier vertex"
                )));
            }
            children[p as usize].push(v);
        }
        for ch in &mut children {
            ch.sort_by_key(|&c| edge_color[c as usize]);
            if ch.windows(2).any(|w| edge_color[w[0] as usize] == edge_color[w[1] as usize]) {
                return Err(ModelError::MalformedTree(
                    "two children share an edge color".into(),
                ));
            }
        }
        let mut level = vec![0u32; n];
        for v in 1..n {
            level[v] = level[parent[v] as usize] + 1;
        }
        for (leaf, anc) in &aug {
            if *leaf as usize >= n || *anc as usize >= n {
                return Err(ModelError::VertexOutOfRange {
                    v: (*leaf).max(*anc),
                    n,
                });
            }
        }
        aug.sort_by_key(|&(leaf, anc)| (leaf, level[anc as usize]));
        Ok(AugmentedTree {
            params,
            reduced,
            parent,
            children,
            edge_color,
            level,
            aug,
        })
    }

    pub fn params(&self) -> TreeParams {
        self.params
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn height(&self) -> u32 {
        *self.level.last().unwrap_or(&0)
    }

    pub fn parent_of(&self, v: u32) -> u32 {
        self.parent[v as usize]
    }

    pub fn parents(&self) -> &[u32] {
        &self.parent
    }

    pub fn children_of(&self, v: u32) -> &[u32] {
        &self.children[v as usize]
    }

    pub fn level_of(&self, v: u32) -> u32 {
        self.level[v as usize]
    }

    /// Color of the tree edge from `parent(v)` to `v`.
    pub fn edge_color_of(&self, v: u32) -> u32 {
        self.edge_color[v as usize]
    }

    pub fn is_leaf(&self, v: u32) -> bool {
        self.children[v as usize].is_empty()
    }

    pub fn leaves(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.vertex_count() as u32).filter(|&v| self.is_leaf(v))
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    pub fn aug_edges(&self) -> &[(u32, u32)] {
        &self.aug
    }

    /// Aug edges of one leaf, sorted by ancestor level.
    pub fn aug_of(&self, leaf: u32) -> &[(u32, u32)] {
        let lo = self.aug.partition_point(|&(l, _)| l < leaf);
        let hi = self.aug.partition_point(|&(l, _)| l <= leaf);
        &self.aug[lo..hi]
    }

    /// Child of `v` whose edge has the given color.
    pub fn child_with_color(&self, v: u32, color: u32) -> Option<u32> {
        self.children[v as usize]
            .iter()
            .copied()
            .find(|&c| self.edge_color[c as usize] == color)
    }

    pub fn is_strict_ancestor(&self, anc: u32, v: u32) -> bool {
        if self.level[anc as usize] >= self.level[v as usize] {
            return false;
        }
        let mut x = v;
        while self.level[x as usize] > self.level[anc as usize] {
            x = self.parent[x as usize];
        }
        x == anc
    }

    /// Root-to-vertex path, inclusive.
    pub fn path_from_root(&self, v: u32) -> Vec<u32> {
        let mut path = Vec::with_capacity(self.level[v as usize] as usize + 1);
        let mut x = v;
        path.push(x);
        while x != 0 {
            x = self.parent[x as usize];
            path.push(x);
        }
        path.reverse();
        path
    }

    /// Tree edges + aug edges as a plain tagged graph. Fails on a tree that
    /// violates its own invariants.
    pub fn flatten(&self) -> Result<Graph, String> {
        let report = self.validate();
        if !report.is_ok() {
            return Err(report.to_string());
        }
        let mut g = Graph::new(self.vertex_count());
        for v in 1..self.vertex_count() as u32 {
            g.add_edge(self.parent[v as usize], v, EdgeTag::Tree)
                .expect("tree edge");
        }
        for &(leaf, anc) in &self.aug {
            g.add_edge(leaf, anc, EdgeTag::Aug).expect("aug edge");
        }
        g.check_simple().map_err(|e| e.to_string())?;
        Ok(g)
    }

    /// Checks every type invariant and reports all violations found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let d = self.params.d;
        let r = self.params.r;

        // Edge colors are in [d] and, for a reduced tree, proper.
        for v in 1..self.vertex_count() as u32 {
            let c = self.edge_color[v as usize];
            if c < 1 || c > d {
                violations.push(Violation::EdgeColorRange { v, color: c });
            }
            if self.reduced && self.parent[v as usize] != 0 {
                let pc = self.edge_color[self.parent[v as usize] as usize];
                if c == pc {
                    violations.push(Violation::EdgeColorNotProper { v });
                }
            }
        }

        // Child counts and descending color sets.
        let height = self.height();
        for v in 0..self.vertex_count() as u32 {
            let ch = &self.children[v as usize];
            if ch.is_empty() {
                if self.level[v as usize] != height {
                    violations.push(Violation::LeafLevel {
                        leaf: v,
                        got: self.level[v as usize],
                        want: height,
                    });
                }
                continue;
            }
            let want = if !self.reduced || v == 0 { d } else { d - 1 };
            if ch.len() != want as usize {
                violations.push(Violation::ChildCount {
                    v,
                    got: ch.len(),
                    want,
                });
            }
            let mut colors: Vec<u32> =
                ch.iter().map(|&c| self.edge_color[c as usize]).collect();
            colors.sort_unstable();
            colors.dedup();
            if colors.len() != ch.len() {
                violations.push(Violation::ChildColorClash { v });
            }
        }

        // Aug edges: leaf endpoint, strict ancestor at distance >= 2, no
        // parallels, exactly r per leaf.
        let mut per_leaf = vec![0u32; self.vertex_count()];
        for &(leaf, anc) in &self.aug {
            if !self.is_leaf(leaf) {
                violations.push(Violation::AugFromNonLeaf { v: leaf });
                continue;
            }
            per_leaf[leaf as usize] += 1;
            if !self.is_strict_ancestor(anc, leaf) {
                violations.push(Violation::AugNotAncestor { leaf, anc });
            } else if self.level[leaf as usize] - self.level[anc as usize] < 2 {
                violations.push(Violation::AugTooClose { leaf, anc });
            }
        }
        for w in self.aug.windows(2) {
            if w[0] == w[1] {
                violations.push(Violation::AugParallel {
                    leaf: w[0].0,
                    anc: w[0].1,
                });
            }
        }
        for leaf in self.leaves() {
            if per_leaf[leaf as usize] != r {
                violations.push(Violation::LeafAugCount {
                    leaf,
                    got: per_leaf[leaf as usize],
                    want: r,
                });
            }
        }

        ValidationReport { violations }
    }

    /// Test- and io-level mutators; the result is revalidated by consumers.
    pub fn with_aug_edges(&self, mut aug: Vec<(u32, u32)>) -> AugmentedTree {
        let mut t = self.clone();
        aug.sort_by_key(|&(leaf, anc)| (leaf, self.level[anc as usize]));
        t.aug = aug;
        t
    }
}

/// One violated invariant of [`AugmentedTree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EdgeColorRange { v: u32, color: u32 },
    EdgeColorNotProper { v: u32 },
    ChildCount { v: u32, got: usize, want: u32 },
    ChildColorClash { v: u32 },
    LeafLevel { leaf: u32, got: u32, want: u32 },
    AugFromNonLeaf { v: u32 },
    AugNotAncestor { leaf: u32, anc: u32 },
    AugTooClose { leaf: u32, anc: u32 },
    AugParallel { leaf: u32, anc: u32 },
    LeafAugCount { leaf: u32, got: u32, want: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeColorRange { v, color } => {
                write!(f, "edge into {v} has color {color} outside [d]")
            }
            Violation::EdgeColorNotProper { v } => {
                write!(f, "edge into {v} repeats its parent edge color")
            }
            Violation::ChildCount { v, got, want } => {
                write!(f, "vertex {v} has {got} != {want} children")
            }
            Violation::ChildColorClash { v } => {
                write!(f, "vertex {v} has two children with the same edge color")
            }
            Violation::LeafLevel { leaf, got, want } => {
                write!(f, "leaf {leaf} at level {got} != {want}")
            }
            Violation::AugFromNonLeaf { v } => {
                write!(f, "aug edge leaves non-leaf vertex {v}")
            }
            Violation::AugNotAncestor { leaf, anc } => {
                write!(f, "aug mate {anc} of leaf {leaf} is not an ancestor")
            }
            Violation::AugTooClose { leaf, anc } => {
                write!(f, "aug mate {anc} of leaf {leaf} is at distance < 2")
            }
            Violation::AugParallel { leaf, anc } => {
                write!(f, "parallel aug edge {leaf}-{anc}")
            }
            Violation::LeafAugCount { leaf, got, want } => {
                write!(f, "leaf {leaf} has {got} != r={want} aug edges")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Arena for assembling trees out of surgery steps; `finalize` renumbers
/// into canonical BFS order (children visited in edge-color order).
pub struct TreeBuilder {
    children: Vec<Vec<(u32, usize)>>,
    aug: Vec<(usize, usize)>,
}

impl TreeBuilder {
    /// Creates a builder holding just the root (provisional id 0).
    pub fn new() -> TreeBuilder {
        TreeBuilder {
            children: vec![Vec::new()],
            aug: Vec::new(),
        }
    }

    pub fn add_child(&mut self, parent: usize, color: u32) -> usize {
        let id = self.children.len();
        self.children.push(Vec::new());
        self.children[parent].push((color, id));
        id
    }

    pub fn add_aug(&mut self, leaf: usize, anc: usize) {
        self.aug.push((leaf, anc));
    }

    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    pub fn finalize(
        mut self,
        params: TreeParams,
        reduced: bool,
    ) -> Result<AugmentedTree, ModelError> {
        let n = self.children.len();
        for ch in &mut self.children {
            ch.sort_by_key(|&(color, _)| color);
        }
        let mut new_id = vec![u32::MAX; n];
        let mut parent = Vec::with_capacity(n);
        let mut edge_color = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        new_id[0] = 0;
        parent.push(0);
        edge_color.push(0);
        queue.push_back(0usize);
        while let Some(old) = queue.pop_front() {
            for &(color, child) in &self.children[old] {
                new_id[child] = parent.len() as u32;
                parent.push(new_id[old]);
                edge_color.push(color);
                queue.push_back(child);
            }
        }
        if new_id.iter().any(|&x| x == u32::MAX) {
            return Err(ModelError::MalformedTree("unreachable builder node".into()));
        }
        let aug = self
            .aug
            .iter()
            .map(|&(l, a)| (new_id[l], new_id[a]))
            .collect();
        AugmentedTree::from_parts(params, reduced, parent, edge_color, aug)
    }
}

impl Default for TreeBuilder {
    fn default() -> Self {
        TreeBuilder::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_base;

    #[test]
    fn builder_assigns_bfs_ids() {
        let mut b = TreeBuilder::new();
        // Insert children out of color order on purpose.
        let c2 = b.add_child(0, 2);
        let c1 = b.add_child(0, 1);
        let g1 = b.add_child(c2, 1);
        let g2 = b.add_child(c1, 1);
        b.add_aug(g1, 0);
        b.add_aug(g2, 0);
        let t = b
            .finalize(
                TreeParams {
                    d: 2,
                    r: 1,
                    girth_target: 4,
                },
                true,
            )
            .unwrap();
        // BFS order: root, color-1 child, color-2 child, then grandchildren.
        assert_eq!(t.edge_color_of(1), 1);
        assert_eq!(t.edge_color_of(2), 2);
        assert_eq!(t.level_of(3), 2);
        assert_eq!(t.parent_of(3), 1);
        assert_eq!(t.aug_edges(), &[(3, 0), (4, 0)]);
    }

    #[test]
    fn validate_accepts_base_and_reports_planted_defects() {
        let t = build_base(2, 1).unwrap();
        assert!(t.validate().is_ok());

        // Reroute one aug edge to a non-ancestor.
        let mut aug = t.aug_edges().to_vec();
        let (leaf, _) = aug[0];
        let non_ancestor = t
            .leaves()
            .find(|&l| l != leaf)
            .expect("another leaf exists");
        aug[0] = (leaf, non_ancestor);
        let bad = t.with_aug_edges(aug);
        let report = bad.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::AugNotAncestor { .. })));

        // Delete one aug edge from a (2,2)-base.
        let t2 = build_base(2, 2).unwrap();
        let mut aug2 = t2.aug_edges().to_vec();
        let (dropped_leaf, _) = aug2.remove(0);
        let bad2 = t2.with_aug_edges(aug2);
        let report2 = bad2.validate();
        assert!(report2.violations.iter().any(|v| matches!(
            v,
            Violation::LeafAugCount { leaf, got: 1, want: 2 } if *leaf == dropped_leaf
        )));
    }

    #[test]
    fn ancestor_queries() {
        let t = build_base(2, 1).unwrap();
        let leaf = t.leaves().next().unwrap();
        assert!(t.is_strict_ancestor(0, leaf));
        assert!(!t.is_strict_ancestor(leaf, 0));
        assert!(!t.is_strict_ancestor(leaf, leaf));
        let path = t.path_from_root(leaf);
        assert_eq!(path[0], 0);
        assert_eq!(*path.last().unwrap(), leaf);
        assert_eq!(path.len() as u32, t.level_of(leaf) + 1);
    }
}
