//! Exact-arithmetic computational backend for coloring complexes of graph
//! sequences: chain complexes and Betti numbers, Hodge decompositions via
//! Eulerian idempotents, (sequence) chromatic polynomials, and executable
//! verification of the identities tying them together. Every computation
//! is over arbitrary-precision integers and rationals; nothing is ever
//! rounded.

pub mod chromatic;
pub mod cli;
pub mod complex;
pub mod error;
pub mod eulerian;
pub mod exactla;
pub mod graphs;
pub mod hodge;
pub mod verify;

/// Default size guards; each is overridable at every entry point that
/// enforces it.
pub mod defaults {
    /// Complex construction: vertex-count bound.
    pub const MAX_N: usize = 7;
    /// Eulerian idempotents: symmetric-group degree bound.
    pub const MAX_K: usize = 8;
    /// Acyclic-orientation enumeration: edge-count bound.
    pub const MAX_ORIENT_EDGES: usize = 24;
    /// Brute-force coloring counts: n·λ^n operation bound.
    pub const MAX_COLORING_OPS: u64 = 100_000_000;
}

/// Size guards threaded through the verification and CLI entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
    pub max_k: usize,
    pub max_orient_edges: usize,
    pub max_coloring_ops: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: defaults::MAX_N,
            max_k: defaults::MAX_K,
            max_orient_edges: defaults::MAX_ORIENT_EDGES,
            max_coloring_ops: defaults::MAX_COLORING_OPS,
        }
    }
}
