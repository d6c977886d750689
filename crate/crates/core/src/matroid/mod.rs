//! Graphic and uniform matroids over bit-vector ground sets.

mod bases;
mod chain;
mod graphic;
mod lattice;
mod poly;
mod uniform;

pub use bases::{bases, broken_circuits, chain_of_basis, enumerate_nbc_bases, is_nbc_basis, nbc_count};
pub use chain::Chain;
pub use graphic::GraphicMatroid;
pub use lattice::{enumerate_maximal_chains, flats_by_rank, Flat, FlatLattice};
pub use poly::{
    characteristic_and_chromatic, characteristic_polynomial, chromatic_polynomial, tutte_by_subsets,
    CharacteristicReport, OneVarPoly, TwoVarPoly,
};
pub use uniform::UniformMatroid;

use serde::Serialize;

use crate::bitset::EdgeSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatroidKind {
    Graphic,
    Uniform,
}

/// A matroid given by a rank oracle on subsets of `{0, .., m-1}`.
pub trait Matroid: Send + Sync {
    fn ground_size(&self) -> usize;

    fn rank(&self, set: EdgeSet) -> usize;

    fn kind(&self) -> MatroidKind;

    /// All minimal dependent sets.
    fn circuits(&self) -> Vec<EdgeSet>;

    fn tutte_polynomial(&self) -> TwoVarPoly;

    /// `cl(A) = { e : r(A ∪ e) = r(A) }`.
    fn closure(&self, set: EdgeSet) -> EdgeSet {
        let r = self.rank(set);
        (0..self.ground_size())
            .filter(|&e| set.contains(e) || self.rank(set.with(e)) == r)
            .collect()
    }

    fn ground(&self) -> EdgeSet {
        EdgeSet::full(self.ground_size())
    }

    fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    fn is_independent(&self, set: EdgeSet) -> bool {
        self.rank(set) == set.len()
    }

    fn is_basis(&self, set: EdgeSet) -> bool {
        set.is_subset(self.ground()) && set.len() == self.full_rank() && self.is_independent(set)
    }

    fn is_flat(&self, set: EdgeSet) -> bool {
        self.closure(set) == set
    }

    fn loops(&self) -> EdgeSet {
        (0..self.ground_size())
            .filter(|&e| self.rank(EdgeSet::singleton(e)) == 0)
            .collect()
    }

    fn check_loopless(&self) -> Result<()> {
        match self.loops().first() {
            Some(e) => Err(Error::Loop(e)),
            None => Ok(()),
        }
    }
}
