//! The tree edge coloring, root-to-leaf descent, and pigeonhole selection of
//! equal-colored aug mates. Every derived gadget is built on these three.
//!
//! The color of a tree edge is the child's slot among its parent's ordered
//! children. Given a vertex coloring `f` of the non-leaf vertices with colors
//! in `[d]`, descending from the root along the edge matching the current
//! vertex's color traces a unique root-to-leaf path. On a reduced tree the
//! descent needs `f` to be proper along tree edges: the color equal to the
//! incoming edge color is exactly the one missing below.

use crate::error::PathError;
use crate::tree::AugmentedTree;

/// Color of the tree edge from `parent` to `child` (1-based child slot).
pub fn phi(t: &AugmentedTree, parent: u32, child: u32) -> Result<u32, PathError> {
    if (child as usize) < t.vertex_count() && child != 0 && t.parent_of(child) == parent {
        Ok(t.edge_color_of(child))
    } else {
        Err(PathError::NotATreeEdge { parent, child })
    }
}

/// A root-to-leaf path with its edge color sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullPath {
    /// root, ..., leaf
    pub vertices: Vec<u32>,
    /// colors[i] is the color of the edge vertices[i] -> vertices[i+1]
    pub colors: Vec<u32>,
}

impl FullPath {
    pub fn leaf(&self) -> u32 {
        *self.vertices.last().unwrap()
    }

    pub fn of_leaf(t: &AugmentedTree, leaf: u32) -> Result<FullPath, PathError> {
        if !t.is_leaf(leaf) {
            return Err(PathError::NotALeaf(leaf));
        }
        let vertices = t.path_from_root(leaf);
        let colors = vertices[1..].iter().map(|&v| t.edge_color_of(v)).collect();
        Ok(FullPath { vertices, colors })
    }

    /// Color of the edge descending from the path vertex at `level`.
    pub fn descending_color_at(&self, level: u32) -> u32 {
        self.colors[level as usize]
    }
}

/// Reads `f(v)` for a non-leaf vertex and validates its range.
fn color_at(
    t: &AugmentedTree,
    f: &dyn Fn(u32) -> Option<u32>,
    v: u32,
) -> Result<u32, PathError> {
    let d = t.params().d;
    match f(v) {
        None => Err(PathError::Uncolored { vertex: v }),
        Some(c) if c >= 1 && c <= d => Ok(c),
        Some(c) => Err(PathError::ColorOutOfRange {
            vertex: v,
            color: c,
            d,
        }),
    }
}

/// Follows the unique full path whose edge colors match `f` on the non-leaf
/// vertices. Leaf colors are never read. On a reduced tree an `f` that is not
/// proper along tree edges can ask for the one missing branch; that surfaces
/// as [`PathError::MissingBranch`] naming the stuck vertex.
pub fn f_path(
    t: &AugmentedTree,
    f: impl Fn(u32) -> Option<u32>,
) -> Result<FullPath, PathError> {
    let mut vertices = vec![0u32];
    let mut colors = Vec::new();
    let mut v = 0u32;
    while !t.is_leaf(v) {
        let c = color_at(t, &f, v)?;
        match t.child_with_color(v, c) {
            Some(next) => {
                vertices.push(next);
                colors.push(c);
                v = next;
            }
            None => return Err(PathError::MissingBranch { vertex: v, color: c }),
        }
    }
    Ok(FullPath { vertices, colors })
}

/// A set of aug mates of one leaf whose descending edges along the full path
/// share one color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MateGroup {
    pub color: u32,
    /// Mates sorted by level, ascending (root end first).
    pub mates: Vec<u32>,
}

/// Groups the aug mates of `leaf` by the color of their descending edge along
/// the full path to `leaf`, and returns the first color class reaching
/// `group_size`. Ties break to the smallest color; the class is returned in
/// full, lowest levels first.
pub fn pigeonhole_select(
    t: &AugmentedTree,
    leaf: u32,
    group_size: usize,
) -> Result<MateGroup, PathError> {
    let path = FullPath::of_leaf(t, leaf)?;
    let mates = t.aug_of(leaf);
    let d = t.params().d as usize;
    let mut classes: Vec<Vec<u32>> = vec![Vec::new(); d + 1];
    for &(_, anc) in mates {
        let c = path.descending_color_at(t.level_of(anc));
        classes[c as usize].push(anc);
    }
    for (color, class) in classes.iter().enumerate().skip(1) {
        if class.len() >= group_size {
            let mut mates = class.clone();
            mates.sort_by_key(|&a| t.level_of(a));
            return Ok(MateGroup {
                color: color as u32,
                mates,
            });
        }
    }
    Err(PathError::PigeonholeFailed {
        leaf,
        want: group_size,
        have: mates.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_base, reduce};
    use crate::tree::{TreeBuilder, TreeParams};
    use proptest::prelude::*;

    #[test]
    fn phi_is_the_child_slot() {
        let t = build_base(3, 1).unwrap();
        let first = t.children_of(0)[0];
        let last = t.children_of(0)[2];
        assert_eq!(phi(&t, 0, first).unwrap(), 1);
        assert_eq!(phi(&t, 0, last).unwrap(), 3);
        assert!(phi(&t, first, 0).is_err());
        assert!(phi(&t, 0, t.children_of(first)[0]).is_err());
    }

    #[test]
    fn phi_proper_after_reduction() {
        let t = reduce(&build_base(3, 1).unwrap()).unwrap();
        for v in 1..t.vertex_count() as u32 {
            if t.parent_of(v) == 0 {
                continue;
            }
            let parent_color = t.edge_color_of(v);
            for &c in t.children_of(v) {
                assert_ne!(phi(&t, v, c).unwrap(), parent_color);
            }
        }
    }

    #[test]
    fn all_ones_descends_leftmost() {
        let t = build_base(2, 2).unwrap();
        let p = f_path(&t, |_| Some(1)).unwrap();
        let mut v = 0;
        for &x in &p.vertices[1..] {
            v = t.children_of(v)[0];
            assert_eq!(x, v);
        }
        assert_eq!(p.colors, vec![1; 5]);
    }

    #[test]
    fn descent_ignores_off_path_colors() {
        let t = build_base(2, 1).unwrap();
        let f1 = |v: u32| Some(if v == 0 { 1 } else { 2 });
        let p1 = f_path(&t, f1).unwrap();
        // Change a vertex not on the path; the path cannot move.
        let off = (0..t.vertex_count() as u32)
            .find(|v| !t.is_leaf(*v) && !p1.vertices.contains(v))
            .unwrap();
        let p2 = f_path(&t, |v| if v == off { Some(1) } else { f1(v) }).unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn uniqueness_exhaustive_on_small_tree() {
        // Every [2]-coloring of the 7 internal vertices of the (2,1) base
        // admits exactly one full path matching the descent condition.
        let t = build_base(2, 1).unwrap();
        let internals: Vec<u32> = (0..t.vertex_count() as u32)
            .filter(|&v| !t.is_leaf(v))
            .collect();
        assert_eq!(internals.len(), 7);
        let leaves: Vec<u32> = t.leaves().collect();
        for mask in 0..(1u32 << internals.len()) {
            let f = |v: u32| {
                internals
                    .iter()
                    .position(|&x| x == v)
                    .map(|i| 1 + ((mask >> i) & 1))
            };
            let path = f_path(&t, f).unwrap();
            let matching = leaves
                .iter()
                .filter(|&&leaf| {
                    let p = FullPath::of_leaf(&t, leaf).unwrap();
                    p.vertices[..p.vertices.len() - 1]
                        .iter()
                        .zip(&p.colors)
                        .all(|(&x, &c)| f(x) == Some(c))
                })
                .count();
            assert_eq!(matching, 1);
            assert!(leaves.contains(&path.leaf()));
        }
    }

    #[test]
    fn every_full_path_is_an_f_path() {
        let t = reduce(&build_base(3, 1).unwrap()).unwrap();
        for leaf in t.leaves() {
            let p = FullPath::of_leaf(&t, leaf).unwrap();
            // Color each path vertex with its descending edge color.
            let f = |v: u32| {
                p.vertices
                    .iter()
                    .position(|&x| x == v)
                    .and_then(|i| p.colors.get(i).copied())
                    .or(Some(1))
            };
            assert_eq!(f_path(&t, f).unwrap().leaf(), leaf);
        }
    }

    #[test]
    fn pigeonhole_on_aligned_mates() {
        // d = 2: colors along any path alternate, so all odd-distance mates
        // share one descending color and the full class comes back.
        let t = build_base(2, 3).unwrap();
        let leaf = t.leaves().next().unwrap();
        let g = pigeonhole_select(&t, leaf, 2).unwrap();
        assert_eq!(g.mates.len(), 3);
        let path = FullPath::of_leaf(&t, leaf).unwrap();
        for &m in &g.mates {
            assert_eq!(path.descending_color_at(t.level_of(m)), g.color);
        }
        assert!(g
            .mates
            .windows(2)
            .all(|w| t.level_of(w[0]) < t.level_of(w[1])));
    }

    #[test]
    fn pigeonhole_fails_on_distinct_colors() {
        // Hand-build a 3-ary path tree whose leaf has 3 mates with pairwise
        // distinct descending colors.
        let mut b = TreeBuilder::new();
        let v1 = b.add_child(0, 1);
        let v2 = b.add_child(v1, 2);
        let v3 = b.add_child(v2, 3);
        let v4 = b.add_child(v3, 1);
        let v5 = b.add_child(v4, 2);
        let v6 = b.add_child(v5, 3);
        b.add_aug(v6, 0); // descending color 1
        b.add_aug(v6, v1); // descending color 2
        b.add_aug(v6, v2); // descending color 3
        let t = b
            .finalize(
                TreeParams {
                    d: 3,
                    r: 3,
                    girth_target: 4,
                },
                false,
            )
            .unwrap();
        let leaf = t.leaves().next().unwrap();
        assert!(pigeonhole_select(&t, leaf, 1).is_ok());
        assert_eq!(
            pigeonhole_select(&t, leaf, 2).unwrap_err(),
            PathError::PigeonholeFailed {
                leaf,
                want: 2,
                have: 3
            }
        );
    }

    proptest! {
        // On a reduced tree, descent never sticks for a proper coloring.
        #[test]
        fn proper_colorings_never_stick(seed in 0u64..1000) {
            let t = reduce(&build_base(3, 2).unwrap()).unwrap();
            // Cheap deterministic proper coloring driven by the seed.
            let mut colors = vec![0u32; t.vertex_count()];
            let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(1);
            for v in 0..t.vertex_count() as u32 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let mut c = 1 + (state >> 33) as u32 % 3;
                if v != 0 && c == colors[t.parent_of(v) as usize] {
                    c = 1 + c % 3;
                }
                colors[v as usize] = c;
            }
            let path = f_path(&t, |v| Some(colors[v as usize])).unwrap();
            prop_assert!(t.is_leaf(path.leaf()));
        }
    }
}
