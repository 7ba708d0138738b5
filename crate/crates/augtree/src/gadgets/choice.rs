//! The non-k-choosable bipartite gadget with its orientation certificate.
//!
//! At k = 2: two even cycles sharing a root, oriented consistently along
//! each cycle, with a hard 2-list assignment over three colors. Above that:
//! a reduced k-ary base whose leaves each merge with the root of a copy of
//! the previous gadget. Copy vertices on the root's side of the child
//! bipartition inherit odd-distance aug edges, the others inherit the
//! shifted even-distance edges, which keeps the whole graph bipartite. Each
//! copy vertex's list is its child list (on fresh colors) plus the color of
//! the edge descending from its tree mate along the leaf's full path; on the
//! descent path that color is spent on the mate.

use super::{
    assemble, AssemblySpec, GadgetBody, GadgetBundle, GadgetKind, LeafSurgery, Witness,
};
use crate::aligned::{build_reduced_color_aligned, AlignedBase, MateParity, SplitGroup};
use crate::error::{BuildError, WitnessError};
use crate::graph::{bipartition, Coloring, EdgeTag, Graph, ListAssignment, Orientation};

/// Two cycles of length `g` sharing vertex 0, plus the consistent
/// orientation (root outdegree 2, all other outdegrees 1).
pub(super) fn two_shared_cycles(g: u32) -> (Graph, Orientation) {
    let g = g as usize;
    let n = 2 * g - 1;
    let mut graph = Graph::new(n);
    let mut arcs = Vec::with_capacity(2 * g);
    let mut add_cycle = |verts: Vec<u32>| {
        for w in verts.windows(2) {
            graph
                .add_edge(w[0], w[1], EdgeTag::Gadget)
                .expect("cycle edge");
            arcs.push((w[0], w[1]));
        }
    };
    let mut c1: Vec<u32> = vec![0];
    c1.extend(1..g as u32);
    c1.push(0);
    add_cycle(c1);
    let mut c2: Vec<u32> = vec![0];
    c2.extend(g as u32..n as u32);
    c2.push(0);
    add_cycle(c2);
    (graph, Orientation { arcs, root: 0 })
}

/// The union-of-three-colors hard assignment: {1,2} at the root; on one
/// cycle {1,3} and {1,2} at the root's neighbors and {2,3} elsewhere; colors
/// 1 and 2 interchanged on the other cycle. Forces color 1 onto a neighbor
/// of the root on the first cycle and color 2 on the second, for every even
/// cycle length.
pub(super) fn hard_two_lists(g: u32) -> ListAssignment {
    let g = g as usize;
    let n = 2 * g - 1;
    let mut lists: Vec<Vec<u32>> = Vec::with_capacity(n);
    lists.push(vec![1, 2]);
    // Cycle 1: vertices 1..g-1 along the cycle; 1 and g-1 touch the root.
    for v in 1..g {
        lists.push(if v == 1 {
            vec![1, 3]
        } else if v == g - 1 {
            vec![1, 2]
        } else {
            vec![2, 3]
        });
    }
    // Cycle 2: vertices g..2g-2, colors 1 and 2 interchanged.
    for v in g..n {
        lists.push(if v == g {
            vec![2, 3]
        } else if v == n - 1 {
            vec![1, 2]
        } else {
            vec![1, 3]
        });
    }
    ListAssignment::from_lists(lists)
}

/// The split of the child gadget's vertices by its bipartition: the class
/// containing the root (minus the root itself) inherits odd-distance edges,
/// the opposite class the shifted even-distance edges.
pub(super) struct ChildSplit {
    pub root: u32,
    pub a_count: u32,
    pub b_count: u32,
    /// Per child vertex: group 0 (root side) or 1; None for the root.
    pub vertex_group: Vec<Option<usize>>,
}

pub(super) fn child_split(child: &GadgetBundle) -> Result<ChildSplit, BuildError> {
    let g = child.graph();
    let root = child
        .orientation
        .as_ref()
        .map(|o| o.root)
        .unwrap_or(0);
    let bip = bipartition(g).map_err(|_| {
        BuildError::ProviderMismatch("child gadget is not bipartite".into())
    })?;
    let root_side = bip.side[root as usize];
    let mut vertex_group = Vec::with_capacity(g.vertex_count());
    let (mut a_count, mut b_count) = (0, 0);
    for v in 0..g.vertex_count() as u32 {
        if v == root {
            vertex_group.push(None);
        } else if bip.side[v as usize] == root_side {
            vertex_group.push(Some(0));
            a_count += 1;
        } else {
            vertex_group.push(Some(1));
            b_count += 1;
        }
    }
    Ok(ChildSplit {
        root,
        a_count,
        b_count,
        vertex_group,
    })
}

/// The ancestors of a leaf along its full path, indexed by level, and the
/// descending edge colors (level l holds the color of the edge from the
/// level-l ancestor toward the leaf).
pub(super) fn leaf_path(
    base: &AlignedBase,
    leaf: u32,
) -> (Vec<u32>, Vec<u32>) {
    let t = &base.tree;
    let h = t.height() as usize;
    let mut anc = vec![0u32; h + 1];
    let mut desc = vec![0u32; h];
    let mut x = leaf;
    for l in (0..=h).rev() {
        anc[l] = x;
        if l > 0 {
            desc[l - 1] = t.edge_color_of(x);
            x = t.parent_of(x);
        }
    }
    (anc, desc)
}

/// Builds the choice gadget bundle with graph, lists, orientation, skeleton,
/// and the child bundle.
pub fn build_gk(k: u32, g: u32, budget: u64) -> Result<GadgetBundle, BuildError> {
    crate::bounds::validate_params(2, 1, g as u64)?;
    if k < 2 {
        return Err(BuildError::BadParameter(format!("k = {k} < 2")));
    }
    if k == 2 {
        let (graph, orientation) = two_shared_cycles(g);
        return Ok(GadgetBundle {
            kind: GadgetKind::Choice { k, g },
            body: GadgetBody::Graph(graph),
            lists: Some(hard_two_lists(g)),
            orientation: Some(orientation),
            skeleton: None,
            child: None,
        });
    }
    let child = build_gk(k - 1, g, budget)?;
    let split = child_split(&child)?;
    let splits = [
        SplitGroup::unaligned(split.a_count, MateParity::Odd),
        SplitGroup::unaligned(split.b_count, MateParity::EvenShifted),
    ];
    let base = build_reduced_color_aligned(k, &splits, budget)?;
    let child_graph = child.graph().clone();
    let child_orientation = child.orientation.clone();
    let mut asm = assemble(AssemblySpec {
        base: &base,
        child_graph: &child_graph,
        child_orientation: child_orientation.as_ref(),
        surgery: LeafSurgery::MergeRoot {
            child_root: split.root,
        },
        vertex_group: split.vertex_group.clone(),
    });

    // Lists: [k] on the internal tree vertices; per copy, the child lists on
    // a fresh color block plus one added tree color per vertex.
    let child_lists = child
        .lists
        .as_ref()
        .expect("choice child carries its hard lists");
    let child_universe = child_lists.universe();
    let block = child_universe.len() as u32;
    let t = &base.tree;
    let n = asm.graph.vertex_count();
    let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in 0..base.first_leaf() {
        lists[v as usize] = (1..=k).collect();
    }
    for (j, copy) in asm.skeleton.copies.iter_mut().enumerate() {
        let leaf = copy.leaf;
        let (_, desc) = leaf_path(&base, leaf);
        let fresh = k + 1 + j as u32 * block;
        copy.color_map = child_universe
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, fresh + i as u32))
            .collect();
        for i in 0..child_graph.vertex_count() {
            let added = if i as u32 == split.root {
                // The merged root's added color is the color of the tree
                // edge reaching the leaf; the tree edge itself enforces it.
                t.edge_color_of(leaf)
            } else {
                let mate = copy.mates[i].expect("non-root copy vertices carry an aug edge");
                desc[t.level_of(mate) as usize]
            };
            copy.added_color[i] = Some(added);
            let mut l: Vec<u32> = child_lists
                .list(i as u32)
                .iter()
                .map(|c| copy.global_color_of(*c).expect("universe color"))
                .collect();
            l.push(added);
            lists[copy.vertices[i] as usize] = l;
        }
    }
    let lists = ListAssignment::from_lists(lists);

    Ok(GadgetBundle {
        kind: GadgetKind::Choice { k, g },
        body: GadgetBody::Graph(asm.graph),
        lists: Some(lists),
        orientation: asm.orientation,
        skeleton: Some(asm.skeleton),
        child: Some(Box::new(child)),
    })
}

/// Witness for a coloring chosen from the bundle's lists.
pub fn gk_witness(b: &GadgetBundle, f: &Coloring) -> Result<Witness, WitnessError> {
    super::gadget_witness(b, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{
        check_orientation, girth, list_color_search, mad_exact, oracle, SearchOutcome,
    };
    use crate::rational::Rational;

    #[test]
    fn g2_shape_orientation_and_girth() {
        let b = build_gk(2, 4, 1_000).unwrap();
        let g = b.graph();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 8, "(k-1)|V| + 1");
        assert_eq!(girth(g).length(), Some(4));
        assert_eq!(
            check_orientation(g, b.orientation.as_ref().unwrap(), 2),
            Ok(())
        );
        assert!(check_orientation(g, b.orientation.as_ref().unwrap(), 3).is_err());
    }

    #[test]
    fn g2_lists_exhaustively_unsat() {
        let b = build_gk(2, 4, 1_000).unwrap();
        let lists = b.lists.as_ref().unwrap();
        assert_eq!(
            list_color_search(b.graph(), lists, 1_000_000),
            SearchOutcome::Unsat
        );
        assert_eq!(
            oracle::choice_functions_unsat(b.graph(), lists, 1 << 20),
            Some(true),
            "all 2^7 choice functions violate"
        );
        // Union of the hard lists is three colors.
        assert_eq!(lists.universe(), vec![1, 2, 3]);
    }

    #[test]
    fn g2_edge_deleted_mad_is_two() {
        let b = build_gk(2, 4, 1_000).unwrap();
        let g = b.graph();
        assert_eq!(mad_exact(g), Rational::new(16, 7), "the full gadget exceeds 2");
        for e in 0..g.edge_count() {
            assert!(mad_exact(&g.without_edge(e)) <= Rational::from_int(2));
        }
    }

    #[test]
    fn g2_every_choice_function_yields_a_witness() {
        let b = build_gk(2, 4, 1_000).unwrap();
        let lists = b.lists.as_ref().unwrap();
        let g = b.graph();
        let n = g.vertex_count();
        // Walk all choice functions (2^7).
        let mut idx = vec![0usize; n];
        loop {
            let f = Coloring::total(
                (0..n as u32)
                    .map(|v| lists.list(v)[idx[v as usize]])
                    .collect(),
            );
            let w = gk_witness(&b, &f).expect("witness exists");
            let e = g.edge(w.edge);
            assert_eq!(f.get(e.u), f.get(e.v));
            let mut v = 0;
            loop {
                if v == n {
                    return;
                }
                idx[v] += 1;
                if idx[v] < lists.list(v as u32).len() {
                    break;
                }
                idx[v] = 0;
                v += 1;
            }
        }
    }

    #[test]
    fn g3_structure_certificates() {
        let b = build_gk(3, 4, 500_000).unwrap();
        let g = b.graph();
        assert_eq!(
            g.edge_count(),
            2 * g.vertex_count() + 1,
            "|E| = (k-1)|V| + 1"
        );
        assert!(bipartition(g).is_ok(), "parity split keeps it bipartite");
        assert_eq!(
            check_orientation(g, b.orientation.as_ref().unwrap(), 3),
            Ok(())
        );
        // Fresh colors never escape their copy.
        let lists = b.lists.as_ref().unwrap();
        let sk = b.skeleton.as_ref().unwrap();
        let mut owner: std::collections::HashMap<u32, usize> = std::collections::HashMap::new();
        for (j, copy) in sk.copies.iter().enumerate() {
            for &(_, global) in &copy.color_map {
                owner.insert(global, j);
            }
        }
        for (j, copy) in sk.copies.iter().enumerate() {
            for &gv in &copy.vertices {
                for &c in lists.list(gv) {
                    if let Some(&o) = owner.get(&c) {
                        assert_eq!(o, j, "fresh color escaped its copy");
                    } else {
                        assert!(c <= 3, "tree colors are the only shared ones");
                    }
                }
            }
        }
    }

    #[test]
    fn g3_witness_trials() {
        let b = build_gk(3, 4, 500_000).unwrap();
        let report = super::super::run_witness_trials(&b, 200, 99);
        assert_eq!(report.failures, 0);
        // Out-of-list colorings are rejected.
        let n = b.graph().vertex_count();
        let err = gk_witness(&b, &Coloring::total(vec![10_000_000; n]));
        assert!(matches!(err, Err(WitnessError::NotInList { .. })));
    }
}
