//! Exact spanning-tree counting for line graphs of subdivided graphs.
//!
//! The crate evaluates the closed forms relating `t(L(S_r(G)))` to the
//! spanning-subgraph structure of `G`, and checks each of them against
//! independent counters: Matrix-Tree with fraction-free elimination,
//! explicit enumeration, and deletion-contraction. It also carries the
//! constructive partition machinery (the boundary-edge selector, the
//! neighbour exchange and the clique-contraction labelling) in executable
//! form so the partition sizes can be audited tree by tree.
//!
//! Everything is exact: counts are [`BigCount`] and intermediate values are
//! [`ExactRational`].

pub mod error;
pub mod formulas;
pub mod graph;
pub mod harness;
pub mod par;
pub mod partition;
pub mod transforms;
pub mod treecount;

pub use error::{Error, Result};
pub use graph::{EdgeId, EdgeSet, MultiGraph, SpanningSubset, SubsetRole, VertexId, VertexSet};
pub use par::Exec;

/// Arbitrary-precision spanning-tree count.
pub type BigCount = num_bigint::BigUint;

/// Arbitrary-precision rational used by the closed forms.
pub type ExactRational = num_rational::BigRational;
