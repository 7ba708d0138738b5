//! Augmented trees with girth guarantees, the derived non-colorable graph,
//! hypergraph, and list-assignment gadgets, and independent verifiers for
//! every claimed property.
//!
//! The crate is organized around four layers:
//!
//! * [`tree`] / [`graph`] — the data model: rooted augmented trees with
//!   ordered, colored children, plus plain graphs, hypergraphs, list
//!   assignments, and orientations;
//! * [`bounds`] / [`construct`] — exact height/node bounds and the recursive
//!   builders (girth-4 base, girth raising, composition, reduction);
//! * [`paths`] / [`gadgets`] — the edge-coloring descent engine and the
//!   derived constructions with their violation witnesses;
//! * [`verify`] — independent checkers: BFS girth, bipartiteness, exact
//!   maximum average degree, orientation certificates, and list-coloring
//!   search.
//!
//! With the default `parallel` feature the girth sweep and witness batches
//! fan out over a rayon pool; disable default features for a fully
//! sequential build.

pub mod aligned;
pub mod bounds;
pub mod maxflow;
pub mod verify;
pub mod construct;
pub mod error;
pub mod graph;
pub mod paths;
pub mod rational;
pub mod tree;

pub use aligned::{build_reduced_color_aligned, AlignedBase, MateParity, SplitGroup};
pub use bounds::{height_bound, make_plan, ConstructionPlan, NodeBound, PlanStep};
pub use construct::{
    build_base, compose, expand_girth, pad_with_root, plan_and_build, reduce, PlanOutcome,
    DEFAULT_NODE_BUDGET,
};
pub use error::{BuildError, ModelError, PathError, WitnessError};
pub use graph::{
    bipartition, Bipartition, Coloring, Edge, EdgeTag, Graph, Hypergraph, ListAssignment,
    OddCycle, Orientation,
};
pub use paths::{f_path, phi, pigeonhole_select, FullPath, MateGroup};
pub use rational::Rational;
pub use tree::{AugmentedTree, TreeBuilder, TreeParams, ValidationReport, Violation};
