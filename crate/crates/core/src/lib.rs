//! Proximity drawings of high-degree trees.
//!
//! Given a tree together with a partition or covering of its edges into
//! bounded-degree subtrees, the constructions in [`construct`] produce a
//! straight-line drawing in which every subtree is the relative
//! neighbourhood graph (and therefore the Euclidean minimum spanning tree)
//! of its own vertex set. The [`verify`] module re-checks those guarantees
//! from the coordinates alone, using the brute-force oracles in
//! [`proximity`].
//!
//! All coordinates are arbitrary-precision binary floats (MPFR through
//! `rug`); predicates are evaluated exactly on the stored values.

pub mod construct;
pub mod error;
pub mod gen;
pub mod geometry;
pub mod io;
pub mod proximity;
pub mod tree;
pub mod verify;

pub use construct::{Construction, Drawing, DrawingMeta};
pub use error::{Error, Result};
pub use geometry::{ConstructionFrame, LensRegion, LuneRegion, Point};
pub use proximity::{GeometricGraph, PointSet};
pub use tree::{
    BoundMode, Decomposition, DecompositionKind, DegreeBound, EdgeId, Embedding, Instance, Part, RootedTree, Tree,
    VertexId,
};

/// Smallest mantissa width accepted anywhere in the crate.
pub const MIN_PRECISION: u32 = 64;
