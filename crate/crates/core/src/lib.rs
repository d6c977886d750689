//! Combinatorial computation of 2-realisation numbers of minimally rigid
//! graphs.
//!
//! The realisation number `c2(G)` of a minimally 2-rigid graph is obtained by
//! counting intersecting arboreal pairs of maximal chains of flats of the
//! graphic matroid `M(G)`. Around that core the crate provides graph parsing
//! and generation, a small matroid toolkit (flats, chains, circuits, nbc-bases,
//! Tutte and chromatic polynomials), bounds derived from nbc-bases, and an
//! independent exact-rational oracle that recounts every product by solving
//! for the intersection points directly.

pub mod arboreal;
pub mod bitset;
pub mod bounds;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod matroid;
pub mod oracle;

pub use bitset::EdgeSet;
pub use error::{Error, Result};
pub use graph::{EdgeOrder, LabelledGraph};
