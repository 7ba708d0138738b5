//! Error types shared across the crate.

use thiserror::Error;

/// Structural errors in the plain data model.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("loop at vertex {v}")]
    Loop { v: u32 },
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: u32, n: usize },
    #[error("parallel edge {u}-{v}")]
    ParallelEdge { u: u32, v: u32 },
    #[error("hyperedge has {got} vertices, expected uniformity {want}")]
    HyperedgeSize { got: usize, want: usize },
    #[error("hyperedge repeats a vertex")]
    HyperedgeRepeatedVertex,
    #[error("duplicate provenance leaf id")]
    DuplicateProvenance,
    #[error("hypergraph is {t}-uniform, not 2-uniform")]
    NotTwoUniform { t: usize },
    #[error("malformed tree: {0}")]
    MalformedTree(String),
}

/// Errors from constructors and bound arithmetic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("girth target {g} must be even and at least 4")]
    BadGirth { g: u64 },
    #[error("arity {d} must be at least 2")]
    BadArity { d: u64 },
    #[error("augmentation count {r} must be at least 1")]
    BadAugCount { r: u64 },
    #[error("node budget exceeded: need {need} > budget {budget}")]
    BudgetExceeded { need: String, budget: u64 },
    #[error("bound exceeds the representable size cap")]
    BoundTooLarge,
    #[error("r must equal d^2 (r = {r}, d = {d})")]
    AugCountNotDSquared { r: u64, d: u64 },
    #[error("height must be odd (got {height})")]
    HeightNotOdd { height: u64 },
    #[error("branching mismatch: expected {expected}, got {got}")]
    BranchingMismatch { expected: String, got: u64 },
    #[error("copy count {copies} must equal the tree arity {d}")]
    CopyCountMismatch { copies: u64, d: u64 },
    #[error("expected a non-reduced tree")]
    ExpectedNonReduced,
    #[error("expected a reduced tree")]
    ExpectedReduced,
    #[error("invalid input tree: {0}")]
    InvalidTree(String),
    #[error("infeasible split: {0}")]
    InfeasibleSplit(String),
    #[error("girth {g} is not congruent to 4 mod 6")]
    BadGirthModSix { g: u64 },
    #[error("base provider mismatch: {0}")]
    ProviderMismatch(String),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
}

/// Errors from the edge-coloring and path-descent engine.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("({parent}, {child}) is not a tree edge")]
    NotATreeEdge { parent: u32, child: u32 },
    #[error("descent stuck at vertex {vertex}: no child edge colored {color}")]
    MissingBranch { vertex: u32, color: u32 },
    #[error("vertex {vertex} has color {color} outside 1..={d}")]
    ColorOutOfRange { vertex: u32, color: u32, d: u32 },
    #[error("vertex {vertex} is not colored")]
    Uncolored { vertex: u32 },
    #[error("no color class of size {want} among {have} mates of leaf {leaf}")]
    PigeonholeFailed { leaf: u32, want: usize, have: usize },
    #[error("{0} is not a leaf")]
    NotALeaf(u32),
}

/// Errors from witness extraction on gadget bundles.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("coloring is missing vertex {vertex}")]
    Partial { vertex: u32 },
    #[error("vertex {vertex} colored {color}, outside 1..={k}")]
    ColorOutOfRange { vertex: u32, color: u32, k: u32 },
    #[error("vertex {vertex} colored {color}, not in its list")]
    NotInList { vertex: u32, color: u32 },
    #[error("internal witness check failed: {0}")]
    SelfCheck(String),
}
