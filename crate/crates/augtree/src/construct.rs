//! Builders for augmented trees with girth guarantees: the direct girth-4
//! base, girth raising by leaf replacement, composition raising the
//! augmentation count, root padding, reduction, and the recursive planner
//! that ties them together under a node budget.

use crate::bounds::{
    big, checked_pow, complete_tree_size, height_bound, make_plan, ConstructionPlan, NodeBound,
};
use crate::error::BuildError;
use crate::tree::{AugmentedTree, TreeBuilder, TreeParams};
use num_traits::ToPrimitive;

/// Default cap on materialized vertices; keeps desk-scale runs fast.
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

fn check_valid(t: &AugmentedTree) -> Result<(), BuildError> {
    let report = t.validate();
    if report.is_ok() {
        Ok(())
    } else {
        Err(BuildError::InvalidTree(report.to_string()))
    }
}

fn check_budget(d: u64, height: u64, budget: u64) -> Result<u64, BuildError> {
    let need = complete_tree_size(d, &big(height))?;
    match need.to_u64() {
        Some(n) if n <= budget => Ok(n),
        _ => Err(BuildError::BudgetExceeded {
            need: need.to_string(),
            budget,
        }),
    }
}

/// Complete `d`-ary tree of height `2r + 1` with each leaf augmented to its
/// `r` non-parent ancestors at odd distance (3, 5, ..., 2r + 1). The result
/// is bipartite with girth exactly 4 for `d >= 2`.
pub fn build_base(d: u32, r: u32) -> Result<AugmentedTree, BuildError> {
    build_base_with_budget(d, r, DEFAULT_NODE_BUDGET)
}

pub fn build_base_with_budget(d: u32, r: u32, budget: u64) -> Result<AugmentedTree, BuildError> {
    crate::bounds::validate_params(d as u64, r as u64, 4)?;
    let height = 2 * r as u64 + 1;
    let n = check_budget(d as u64, height, budget)? as usize;

    // Complete d-ary trees in BFS order have closed-form parents.
    let d_us = d as usize;
    let mut parent = vec![0u32; n];
    let mut edge_color = vec![0u32; n];
    let mut level_start = vec![0usize; height as usize + 2];
    for l in 0..=height as usize {
        level_start[l + 1] = level_start[l] + d_us.pow(l as u32);
    }
    for l in 1..=height as usize {
        for p in 0..d_us.pow(l as u32) {
            let v = level_start[l] + p;
            parent[v] = (level_start[l - 1] + p / d_us) as u32;
            edge_color[v] = (p % d_us) as u32 + 1;
        }
    }

    let mut aug = Vec::with_capacity(d_us.pow(height as u32) * r as usize);
    for v in level_start[height as usize]..n {
        let mut anc = parent[v] as usize;
        for dist in 2..=height {
            anc = parent[anc] as usize;
            if dist % 2 == 1 {
                aug.push((v as u32, anc as u32));
            }
        }
    }

    let t = AugmentedTree::from_parts(
        TreeParams {
            d,
            r,
            girth_target: 4,
        },
        false,
        parent,
        edge_color,
        aug,
    )
    .map_err(|e| BuildError::InvalidTree(e.to_string()))?;
    debug_assert!(t.validate().is_ok());
    Ok(t)
}

/// Raises girth by two: replaces each leaf `v` of a `(d, d^2, g)` tree with a
/// complete d-ary tree of height 2 and redistributes the `d^2` aug edges of
/// `v`, one to each new leaf. The i-th new leaf in child-color order takes
/// the i-th aug edge in ancestor-level order.
pub fn expand_girth(t: &AugmentedTree) -> Result<AugmentedTree, BuildError> {
    expand_girth_with_budget(t, DEFAULT_NODE_BUDGET)
}

pub fn expand_girth_with_budget(
    t: &AugmentedTree,
    budget: u64,
) -> Result<AugmentedTree, BuildError> {
    if t.is_reduced() {
        return Err(BuildError::ExpectedNonReduced);
    }
    check_valid(t)?;
    let p = t.params();
    let d = p.d as u64;
    if p.r as u64 != d * d {
        return Err(BuildError::AugCountNotDSquared {
            r: p.r as u64,
            d,
        });
    }
    let leaves: Vec<u32> = t.leaves().collect();
    let need = t.vertex_count() as u64 + leaves.len() as u64 * (d + d * d);
    if need > budget {
        return Err(BuildError::BudgetExceeded {
            need: need.to_string(),
            budget,
        });
    }

    let mut b = TreeBuilder::new();
    let mut map = vec![usize::MAX; t.vertex_count()];
    map[0] = 0;
    for v in 1..t.vertex_count() as u32 {
        map[v as usize] = b.add_child(map[t.parent_of(v) as usize], t.edge_color_of(v));
    }
    for &v in &leaves {
        let mates = t.aug_of(v);
        let mut new_leaves = Vec::with_capacity((d * d) as usize);
        for c1 in 1..=p.d {
            let mid = b.add_child(map[v as usize], c1);
            for c2 in 1..=p.d {
                new_leaves.push(b.add_child(mid, c2));
            }
        }
        debug_assert_eq!(new_leaves.len(), mates.len());
        for (leaf, &(_, anc)) in new_leaves.iter().zip(mates) {
            b.add_aug(*leaf, map[anc as usize]);
        }
    }
    let out = b
        .finalize(
            TreeParams {
                d: p.d,
                r: 1,
                girth_target: p.girth_target + 2,
            },
            false,
        )
        .map_err(|e| BuildError::InvalidTree(e.to_string()))?;
    debug_assert!(out.validate().is_ok());
    Ok(out)
}

/// Joins `copies` disjoint copies of `t` under a fresh root. Aug edges stay
/// within their copies; the copy count must match the arity so the result
/// remains a complete `d`-ary tree.
pub fn pad_with_root(copies: u32, t: &AugmentedTree) -> Result<AugmentedTree, BuildError> {
    pad_with_root_with_budget(copies, t, DEFAULT_NODE_BUDGET)
}

pub fn pad_with_root_with_budget(
    copies: u32,
    t: &AugmentedTree,
    budget: u64,
) -> Result<AugmentedTree, BuildError> {
    check_valid(t)?;
    let p = t.params();
    if copies != p.d {
        return Err(BuildError::CopyCountMismatch {
            copies: copies as u64,
            d: p.d as u64,
        });
    }
    let need = 1 + copies as u64 * t.vertex_count() as u64;
    if need > budget {
        return Err(BuildError::BudgetExceeded {
            need: need.to_string(),
            budget,
        });
    }
    let mut b = TreeBuilder::new();
    for c in 1..=copies {
        let mut map = vec![usize::MAX; t.vertex_count()];
        map[0] = b.add_child(0, c);
        for v in 1..t.vertex_count() as u32 {
            map[v as usize] = b.add_child(map[t.parent_of(v) as usize], t.edge_color_of(v));
        }
        for &(leaf, anc) in t.aug_edges() {
            b.add_aug(map[leaf as usize], map[anc as usize]);
        }
    }
    b.finalize(p, t.is_reduced())
        .map_err(|e| BuildError::InvalidTree(e.to_string()))
}

/// Composition raising the augmentation count: replaces each bottom star of a
/// pruned `(d^m1, r, g)` tree with a copy of a `(d, 1, g)` tree of odd height
/// `m1`. Each leaf of the result carries one short aug edge from its copy and
/// `r` long edges inherited from the star leaf it replaced.
pub fn compose(g1: &AugmentedTree, g2: &AugmentedTree) -> Result<AugmentedTree, BuildError> {
    compose_with_budget(g1, g2, DEFAULT_NODE_BUDGET)
}

pub fn compose_with_budget(
    g1: &AugmentedTree,
    g2: &AugmentedTree,
    budget: u64,
) -> Result<AugmentedTree, BuildError> {
    if g1.is_reduced() || g2.is_reduced() {
        return Err(BuildError::ExpectedNonReduced);
    }
    check_valid(g1)?;
    check_valid(g2)?;
    let p1 = g1.params();
    let p2 = g2.params();
    let m1 = g1.height() as u64;
    if m1 % 2 == 0 {
        return Err(BuildError::HeightNotOdd { height: m1 });
    }
    if p1.r != 1 {
        return Err(BuildError::ProviderMismatch(format!(
            "first component must be 1-augmented, has r = {}",
            p1.r
        )));
    }
    if p1.girth_target != p2.girth_target {
        return Err(BuildError::ProviderMismatch(format!(
            "girth targets differ: {} vs {}",
            p1.girth_target, p2.girth_target
        )));
    }
    let branching = checked_pow(&big(p1.d as u64), &big(m1), 64)
        .ok()
        .and_then(|x| x.to_u64());
    match branching {
        Some(x) if x == p2.d as u64 => {}
        _ => {
            return Err(BuildError::BranchingMismatch {
                expected: branching.map_or_else(|| format!("{}^{}", p1.d, m1), |x| x.to_string()),
                got: p2.d as u64,
            })
        }
    }

    let d = p1.d;
    let m2 = g2.height();
    // Pruned top: complete d-ary of height m2 - 1; each level-(m2-1) vertex u
    // keeps all d^m1 leaf children, which become the leaves of the copy at u.
    let top_size: u64 = (0..m2 as u64).map(|l| (d as u64).pow(l as u32)).sum();
    let star_count = (d as u64).pow((m2 - 1) as u32);
    let need = top_size + star_count * (g1.vertex_count() as u64 - 1);
    if need > budget {
        return Err(BuildError::BudgetExceeded {
            need: need.to_string(),
            budget,
        });
    }

    let g1_leaves: Vec<u32> = g1.leaves().collect();
    let mut b = TreeBuilder::new();
    // map2: pruned g2 vertex -> builder node, built by BFS keeping the first
    // d children (in color order) above the last level.
    let mut map2 = vec![usize::MAX; g2.vertex_count()];
    map2[0] = 0;
    let mut frontier = vec![0u32];
    for _level in 0..m2 - 1 {
        let mut next = Vec::with_capacity(frontier.len() * d as usize);
        for &v in &frontier {
            for &c in g2.children_of(v).iter().take(d as usize) {
                map2[c as usize] = b.add_child(map2[v as usize], g2.edge_color_of(c));
                next.push(c);
            }
        }
        frontier = next;
    }
    // frontier now holds the star centers at level m2 - 1.
    for &u in &frontier {
        let star_leaves = g2.children_of(u);
        debug_assert_eq!(star_leaves.len(), g1_leaves.len());
        let mut map1 = vec![usize::MAX; g1.vertex_count()];
        map1[0] = map2[u as usize];
        for v in 1..g1.vertex_count() as u32 {
            map1[v as usize] = b.add_child(map1[g1.parent_of(v) as usize], g1.edge_color_of(v));
        }
        // Short edges: g1's own aug edges, relocated into the copy.
        for &(leaf, anc) in g1.aug_edges() {
            b.add_aug(map1[leaf as usize], map1[anc as usize]);
        }
        // Long edges: the i-th leaf of the copy inherits the aug edges of the
        // i-th star leaf. Ancestors of star leaves all survive the pruning.
        for (i, &star_leaf) in star_leaves.iter().enumerate() {
            for &(_, anc) in g2.aug_of(star_leaf) {
                b.add_aug(map1[g1_leaves[i] as usize], map2[anc as usize]);
            }
        }
    }

    let out = b
        .finalize(
            TreeParams {
                d,
                r: p2.r + 1,
                girth_target: p1.girth_target,
            },
            false,
        )
        .map_err(|e| BuildError::InvalidTree(e.to_string()))?;
    debug_assert!(out.validate().is_ok());
    Ok(out)
}

/// Deletes, at each non-root internal vertex, the child subtree whose edge
/// color repeats the parent edge color. The edge coloring becomes proper on
/// the surviving tree; every surviving leaf keeps all its aug edges.
pub fn reduce(t: &AugmentedTree) -> Result<AugmentedTree, BuildError> {
    if t.is_reduced() {
        return Err(BuildError::ExpectedNonReduced);
    }
    check_valid(t)?;
    let mut b = TreeBuilder::new();
    let mut map = vec![usize::MAX; t.vertex_count()];
    map[0] = 0;
    let mut stack = vec![0u32];
    while let Some(v) = stack.pop() {
        let incoming = t.edge_color_of(v);
        for &c in t.children_of(v) {
            if v != 0 && t.edge_color_of(c) == incoming {
                continue;
            }
            map[c as usize] = b.add_child(map[v as usize], t.edge_color_of(c));
            stack.push(c);
        }
    }
    for &(leaf, anc) in t.aug_edges() {
        if map[leaf as usize] != usize::MAX {
            debug_assert!(map[anc as usize] != usize::MAX, "ancestors survive");
            b.add_aug(map[leaf as usize], map[anc as usize]);
        }
    }
    let out = b
        .finalize(t.params(), true)
        .map_err(|e| BuildError::InvalidTree(e.to_string()))?;
    debug_assert!(out.validate().is_ok());
    Ok(out)
}

/// Outcome of [`plan_and_build`]: the plan always, the tree when it fits.
#[derive(Clone, Debug)]
pub enum PlanOutcome {
    Built {
        plan: ConstructionPlan,
        tree: AugmentedTree,
    },
    PlanOnly(ConstructionPlan),
}

impl PlanOutcome {
    pub fn plan(&self) -> &ConstructionPlan {
        match self {
            PlanOutcome::Built { plan, .. } => plan,
            PlanOutcome::PlanOnly(plan) => plan,
        }
    }

    pub fn tree(&self) -> Option<&AugmentedTree> {
        match self {
            PlanOutcome::Built { tree, .. } => Some(tree),
            PlanOutcome::PlanOnly(_) => None,
        }
    }
}

/// Computes the exact plan for a `(d, r, g)` construction and materializes
/// the tree when its node bound fits the budget.
pub fn plan_and_build(d: u64, r: u64, g: u64, node_budget: u64) -> Result<PlanOutcome, BuildError> {
    let plan = make_plan(d, r, g)?;
    if !plan.node_bound.fits_budget(node_budget) {
        return Ok(PlanOutcome::PlanOnly(plan));
    }
    let tree = materialize(d, r, g, node_budget)?;
    debug_assert_eq!(big(tree.height() as u64), plan.height_bound);
    if let NodeBound::Exact(n) = &plan.node_bound {
        debug_assert_eq!(big(tree.vertex_count() as u64), *n);
    }
    Ok(PlanOutcome::Built { plan, tree })
}

fn materialize(d: u64, r: u64, g: u64, budget: u64) -> Result<AugmentedTree, BuildError> {
    let to_u32 = |x: u64, what: &str| -> Result<u32, BuildError> {
        x.to_u32()
            .ok_or_else(|| BuildError::BadParameter(format!("{what} = {x} too large")))
    };
    if g == 4 {
        return build_base_with_budget(to_u32(d, "d")?, to_u32(r, "r")?, budget);
    }
    if r == 1 {
        let base = materialize(d, d * d, g - 2, budget)?;
        return expand_girth_with_budget(&base, budget);
    }
    // Unreachable under any u64 budget (heights tower immediately), but kept
    // faithful to the recursion.
    let mut g1 = materialize(d, 1, g, budget)?;
    if g1.height() % 2 == 0 {
        g1 = pad_with_root_with_budget(to_u32(d, "d")?, &g1, budget)?;
    }
    let m1 = g1.height() as u64;
    let dp = checked_pow(&big(d), &big(m1), 64)
        .ok()
        .and_then(|x| x.to_u64())
        .ok_or_else(|| BuildError::BudgetExceeded {
            need: format!("{d}^{m1}"),
            budget,
        })?;
    let g2 = materialize(dp, r - 1, g, budget)?;
    compose_with_budget(&g1, &g2, budget)
}

/// Convenience: the height bound as a plain integer where it fits.
pub fn height_bound_u64(d: u64, r: u64, g: u64) -> Result<Option<u64>, BuildError> {
    Ok(height_bound(d, r, g)?.to_u64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bipartition;

    #[test]
    fn base_2_1_counts() {
        let t = build_base(2, 1).unwrap();
        assert_eq!(t.height(), 3);
        assert_eq!(t.vertex_count(), 15);
        assert_eq!(t.leaf_count(), 8);
        let g = t.flatten().unwrap();
        assert_eq!(g.vertex_count(), 15);
        assert_eq!(g.edge_count(), 14 + 8);
    }

    #[test]
    fn base_3_1_counts_and_bipartite() {
        let t = build_base(3, 1).unwrap();
        assert_eq!(t.vertex_count(), 40);
        let g = t.flatten().unwrap();
        assert_eq!(g.edge_count(), 39 + 27);
        let classes = bipartition(&g).expect("bipartite");
        // Aug edges span odd distances, so classes are the level parities.
        for v in 0..t.vertex_count() as u32 {
            assert_eq!(
                classes.side[v as usize] != classes.side[0],
                t.level_of(v) % 2 == 1
            );
        }
    }

    #[test]
    fn base_2_2_leaf_degrees() {
        let t = build_base(2, 2).unwrap();
        assert_eq!(t.height(), 5);
        assert_eq!(t.vertex_count(), 63);
        let g = t.flatten().unwrap();
        let deg = g.degrees();
        for leaf in t.leaves() {
            assert_eq!(deg[leaf as usize], 3, "1 tree + 2 aug");
        }
    }

    #[test]
    fn base_heights_match_bound() {
        for d in 2..=4u32 {
            for r in 1..=3u32 {
                let t = build_base(d, r).unwrap();
                assert_eq!(t.height(), 2 * r + 1);
                assert_eq!(
                    big(t.height() as u64),
                    height_bound(d as u64, r as u64, 4).unwrap()
                );
            }
        }
    }

    #[test]
    fn expand_girth_shape() {
        let base = build_base(2, 4).unwrap();
        assert_eq!(base.height(), 9);
        let t = expand_girth(&base).unwrap();
        assert_eq!(t.height(), 11);
        assert_eq!(t.vertex_count(), 4095);
        assert_eq!(t.leaf_count(), 2048);
        assert_eq!(t.params().r, 1);
        assert_eq!(t.params().girth_target, 6);
        assert!(t.validate().is_ok());
        assert!(bipartition(&t.flatten().unwrap()).is_ok());
    }

    #[test]
    fn expand_girth_contraction_recovers_base_aug_pattern() {
        // Old vertices keep their ids (the BFS prefix is unchanged), so
        // contracting each added height-2 tree back to its root leaf must
        // recover the base's aug incidence exactly.
        let base = build_base(2, 4).unwrap();
        let t = expand_girth(&base).unwrap();
        let mut contracted: Vec<(u32, u32)> = t
            .aug_edges()
            .iter()
            .map(|&(leaf, anc)| {
                let v = t.parent_of(t.parent_of(leaf));
                assert!(base.is_leaf(v));
                (v, anc)
            })
            .collect();
        contracted.sort_unstable();
        let mut want = base.aug_edges().to_vec();
        want.sort_unstable();
        assert_eq!(contracted, want);
    }

    #[test]
    fn expand_girth_rejects_wrong_r() {
        let base = build_base(2, 3).unwrap();
        assert_eq!(
            expand_girth(&base).unwrap_err(),
            BuildError::AugCountNotDSquared { r: 3, d: 2 }
        );
    }

    #[test]
    fn pad_with_root_shape() {
        let t = build_base(2, 1).unwrap();
        let p = pad_with_root(2, &t).unwrap();
        assert_eq!(p.height(), 4);
        assert_eq!(p.vertex_count(), 31);
        assert!(p.validate().is_ok());
        // Leaf aug degree unchanged; copies are disjoint.
        for leaf in p.leaves() {
            assert_eq!(p.aug_of(leaf).len(), 1);
        }
        assert!(pad_with_root(3, &t).is_err());
    }

    #[test]
    fn compose_2_2_4() {
        let g1 = build_base(2, 1).unwrap();
        let g2 = build_base(8, 1).unwrap();
        let t = compose(&g1, &g2).unwrap();
        assert_eq!(t.height(), 5);
        assert_eq!(t.params(), TreeParams { d: 2, r: 2, girth_target: 4 });
        assert_eq!(t.vertex_count(), 63);
        for leaf in t.leaves() {
            assert_eq!(t.aug_of(leaf).len(), 2, "one short + one long");
        }
        assert!(t.validate().is_ok());
        assert!(bipartition(&t.flatten().unwrap()).is_ok());
    }

    #[test]
    fn compose_2_3_4() {
        let g1 = build_base(2, 1).unwrap();
        let g2 = build_base(8, 2).unwrap();
        let t = compose(&g1, &g2).unwrap();
        assert_eq!(t.height(), 7);
        assert_eq!(t.params().r, 3);
        assert_eq!(big(7u64), height_bound(2, 3, 4).unwrap());
        assert!(t.validate().is_ok());
    }

    #[test]
    fn compose_rejects_even_height_and_mismatched_branching() {
        let g1 = build_base(2, 1).unwrap();
        let padded = pad_with_root(2, &g1).unwrap(); // height 4
        let g2_16 = build_base(16, 1).unwrap();
        assert_eq!(
            compose(&padded, &g2_16).unwrap_err(),
            BuildError::HeightNotOdd { height: 4 }
        );
        let g2 = build_base(4, 1).unwrap();
        assert!(matches!(
            compose(&g1, &g2).unwrap_err(),
            BuildError::BranchingMismatch { .. }
        ));
    }

    #[test]
    fn compose_contraction_recovers_star_aug_pattern() {
        let g1 = build_base(2, 1).unwrap();
        let g2 = build_base(8, 1).unwrap();
        let t = compose(&g1, &g2).unwrap();
        // Contract each copy to its star: every composed leaf's long edges
        // (ancestor level < m2 - 1 = 2) must match the aug edges of the star
        // leaf it replaced, after an independent re-pruning of g2.
        let m2 = g2.height();
        // Independent pruning oracle: walk g2 keeping the first 2 children.
        let mut kept = vec![0u32];
        let mut star_leaves_by_center: Vec<(u32, Vec<u32>)> = Vec::new();
        for _ in 0..m2 - 1 {
            let mut next = Vec::new();
            for &v in &kept {
                next.extend(g2.children_of(v).iter().take(2).copied());
            }
            kept = next;
        }
        for &u in &kept {
            star_leaves_by_center.push((u, g2.children_of(u).to_vec()));
        }
        // Composed copies appear in BFS order of their roots, matching `kept`.
        let copy_roots: Vec<u32> = (0..t.vertex_count() as u32)
            .filter(|&v| t.level_of(v) == m2 - 1)
            .collect();
        assert_eq!(copy_roots.len(), star_leaves_by_center.len());
        for (&root, (_, star_leaves)) in copy_roots.iter().zip(&star_leaves_by_center) {
            // Leaves of this copy, in BFS order.
            let leaves: Vec<u32> = t
                .leaves()
                .filter(|&l| {
                    let mut x = l;
                    while t.level_of(x) > m2 - 1 {
                        x = t.parent_of(x);
                    }
                    x == root
                })
                .collect();
            assert_eq!(leaves.len(), star_leaves.len());
            for (&leaf, &star_leaf) in leaves.iter().zip(star_leaves) {
                let long_dists: Vec<u32> = t
                    .aug_of(leaf)
                    .iter()
                    .filter(|&&(_, anc)| t.level_of(anc) < m2 - 1)
                    .map(|&(_, anc)| t.level_of(leaf) - t.level_of(anc))
                    .collect();
                let want: Vec<u32> = g2
                    .aug_of(star_leaf)
                    .iter()
                    .map(|&(_, anc)| {
                        g2.level_of(star_leaf) - g2.level_of(anc) + (g1.height() - 1)
                    })
                    .collect();
                assert_eq!(long_dists, want);
            }
        }
    }

    #[test]
    fn reduce_shapes() {
        let t = reduce(&build_base(3, 1).unwrap()).unwrap();
        assert_eq!(t.vertex_count(), 22, "1 + 3 + 6 + 12");
        assert!(t.is_reduced());
        assert!(t.validate().is_ok());
        for leaf in t.leaves() {
            assert_eq!(t.aug_of(leaf).len(), 1);
        }

        let t2 = reduce(&build_base(2, 1).unwrap()).unwrap();
        assert_eq!(t2.children_of(0).len(), 2);
        for v in 1..t2.vertex_count() as u32 {
            if !t2.is_leaf(v) {
                assert_eq!(t2.children_of(v).len(), 1, "paths below the root");
            }
        }
    }

    #[test]
    fn reduce_coloring_is_proper() {
        let t = reduce(&build_base(3, 2).unwrap()).unwrap();
        for v in 1..t.vertex_count() as u32 {
            if t.parent_of(v) != 0 {
                assert_ne!(
                    t.edge_color_of(v),
                    t.edge_color_of(t.parent_of(v)),
                    "proper edge coloring on the reduced tree"
                );
            }
        }
    }

    #[test]
    fn plan_and_build_outcomes() {
        match plan_and_build(2, 1, 6, 1_000_000).unwrap() {
            PlanOutcome::Built { tree, plan } => {
                assert_eq!(tree.height(), 11);
                assert_eq!(tree.vertex_count(), 4095);
                assert_eq!(plan.height_bound, big(11));
            }
            PlanOutcome::PlanOnly(_) => panic!("should build"),
        }
        match plan_and_build(2, 2, 6, 1_000_000).unwrap() {
            PlanOutcome::PlanOnly(plan) => {
                assert_eq!(plan.height_bound, big(8_388_621));
                match plan.node_bound {
                    NodeBound::Exact(ref n) => assert_eq!(n.bits(), 8_388_622),
                    NodeBound::ExceedsCap => panic!("representable"),
                }
            }
            PlanOutcome::Built { .. } => panic!("over budget"),
        }
        match plan_and_build(2, 3, 4, 1_000_000).unwrap() {
            PlanOutcome::Built { tree, .. } => {
                assert_eq!(tree.height(), 7);
                assert_eq!(tree.vertex_count(), 255);
            }
            PlanOutcome::PlanOnly(_) => panic!("should build"),
        }
        // Structure-only request over budget: (3,1,6) has height bound 21.
        match plan_and_build(3, 1, 6, 1_000_000).unwrap() {
            PlanOutcome::PlanOnly(plan) => assert_eq!(plan.height_bound, big(21)),
            PlanOutcome::Built { .. } => panic!("3^22-scale, over budget"),
        }
    }
}
