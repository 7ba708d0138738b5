//! The t-uniform non-k-colorable hypergraph: vertices are the internal
//! vertices of a complete k-ary base with (t-1)k + 1 aug edges per leaf; one
//! hyperedge per leaf, formed from t aug mates whose descending edges along
//! the leaf's full path share a color (which the pigeonhole principle always
//! supplies). Any k-coloring of the vertices descends to some leaf and makes
//! that leaf's hyperedge monochromatic.

use super::{GadgetBody, GadgetBundle, GadgetKind, Skeleton, Witness, WitnessError, WitnessVia};
use crate::error::BuildError;
use crate::graph::{Coloring, Hypergraph};
use crate::paths::pigeonhole_select;
use crate::tree::AugmentedTree;

/// Builds the hypergraph bundle over a non-reduced `(k, (t-1)k + 1, g)` base.
pub fn build_hypergraph(base: &AugmentedTree, t: u32, k: u32) -> Result<GadgetBundle, BuildError> {
    if base.is_reduced() {
        return Err(BuildError::ExpectedNonReduced);
    }
    let report = base.validate();
    if !report.is_ok() {
        return Err(BuildError::InvalidTree(report.to_string()));
    }
    let p = base.params();
    if p.d != k {
        return Err(BuildError::ProviderMismatch(format!(
            "base arity {} != k = {k}",
            p.d
        )));
    }
    if t < 2 {
        return Err(BuildError::BadParameter(format!("uniformity {t} < 2")));
    }
    let want_r = (t - 1) * k + 1;
    if p.r != want_r {
        return Err(BuildError::ProviderMismatch(format!(
            "base has r = {}, needs (t-1)k + 1 = {want_r}",
            p.r
        )));
    }

    let first_leaf = base
        .leaves()
        .next()
        .expect("tree has leaves");
    let mut edges = Vec::with_capacity(base.vertex_count() - first_leaf as usize);
    let mut provenance = Vec::with_capacity(edges.capacity());
    for leaf in base.leaves() {
        let group = pigeonhole_select(base, leaf, t as usize)
            .map_err(|e| BuildError::ProviderMismatch(e.to_string()))?;
        // Truncate the class to exactly t mates, lowest levels first.
        edges.push(group.mates[..t as usize].to_vec());
        provenance.push(leaf);
    }
    let h = Hypergraph {
        vertex_count: first_leaf as usize,
        uniformity: t as usize,
        edges,
        provenance,
    };
    h.validate()
        .map_err(|e| BuildError::InvalidTree(e.to_string()))?;

    let tree_to_graph = (0..base.vertex_count() as u32)
        .map(|v| if v < first_leaf { Some(v) } else { None })
        .collect();
    Ok(GadgetBundle {
        kind: GadgetKind::Hypergraph { t, k },
        body: GadgetBody::Hypergraph(h),
        lists: None,
        orientation: None,
        skeleton: Some(Skeleton {
            tree: base.clone(),
            tree_to_graph,
            copies: Vec::new(),
            first_leaf,
            descent_colors: None,
        }),
        child: None,
    })
}

pub(super) fn hypergraph_witness(
    b: &GadgetBundle,
    h: &Hypergraph,
    f: &Coloring,
) -> Result<Witness, WitnessError> {
    let k = b.k();
    if f.color_of.len() != h.vertex_count {
        return Err(WitnessError::Partial {
            vertex: f.color_of.len().min(h.vertex_count) as u32,
        });
    }
    for v in 0..h.vertex_count as u32 {
        match f.get(v) {
            None => return Err(WitnessError::Partial { vertex: v }),
            Some(c) if c < 1 || c > k => {
                return Err(WitnessError::ColorOutOfRange {
                    vertex: v,
                    color: c,
                    k,
                })
            }
            _ => {}
        }
    }
    let sk = b
        .skeleton
        .as_ref()
        .ok_or_else(|| WitnessError::SelfCheck("hypergraph bundle without skeleton".into()))?;
    let leaf = super::descend(sk, f)?;
    // Hyperedges are stored in leaf order.
    Ok(Witness {
        edge: (leaf - sk.first_leaf) as usize,
        via: WitnessVia::Descent { leaf },
    })
}

/// Thin wrapper with the operation's own name.
pub fn hyper_witness(b: &GadgetBundle, f: &Coloring) -> Result<Witness, WitnessError> {
    super::gadget_witness(b, f)
}
