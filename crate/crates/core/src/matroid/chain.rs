use serde::Serialize;

use super::Matroid;
use crate::bitset::EdgeSet;
use crate::error::{Error, Result};

/// A strictly increasing chain of proper flats `F_1 < .. < F_k`, with
/// `F_0 = ∅` and `F_{k+1} = E` implied, together with its reduced flats
/// `F̃_i = F_i \ F_{i-1}` for `i = 1, .., k+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Chain {
    flats: Vec<EdgeSet>,
    reduced: Vec<EdgeSet>,
    #[serde(skip)]
    part: Vec<u8>,
}

impl Chain {
    /// Builds the chain on the ground set `{0, .., m-1}`. The flats must be
    /// nonempty, proper and strictly nested; closedness is not checked here.
    pub fn new(m: usize, flats: Vec<EdgeSet>) -> Result<Chain> {
        let ground = EdgeSet::full(m);
        let mut prev = EdgeSet::EMPTY;
        let mut reduced = Vec::with_capacity(flats.len() + 1);
        for &f in flats.iter().chain(std::iter::once(&ground)) {
            if !prev.is_subset(f) || prev == f || !f.is_subset(ground) {
                return Err(Error::NonMaximalChain);
            }
            reduced.push(f - prev);
            prev = f;
        }
        let mut part = vec![0u8; m];
        for (i, r) in reduced.iter().enumerate() {
            for e in *r {
                part[e] = i as u8;
            }
        }
        Ok(Chain { flats, reduced, part })
    }

    /// Like [`Chain::new`], and additionally requires `rank(F_i) = i`,
    /// closed flats, and length `rank(M) - 1`.
    pub fn maximal(matroid: &dyn Matroid, flats: Vec<EdgeSet>) -> Result<Chain> {
        let chain = Chain::new(matroid.ground_size(), flats)?;
        if !chain.is_maximal_in(matroid) {
            return Err(Error::NonMaximalChain);
        }
        Ok(chain)
    }

    pub fn is_maximal_in(&self, matroid: &dyn Matroid) -> bool {
        self.flats.len() + 1 == matroid.full_rank()
            && self
                .flats
                .iter()
                .enumerate()
                .all(|(i, &f)| matroid.rank(f) == i + 1 && matroid.is_flat(f))
    }

    pub fn flats(&self) -> &[EdgeSet] {
        &self.flats
    }

    /// Reduced flats `F̃_1, .., F̃_{k+1}` (0-based in the slice).
    pub fn reduced(&self) -> &[EdgeSet] {
        &self.reduced
    }

    pub fn parts(&self) -> usize {
        self.reduced.len()
    }

    /// Index of the reduced flat containing `e`.
    #[inline]
    pub fn part_of(&self, e: usize) -> usize {
        self.part[e] as usize
    }

    pub fn ground_size(&self) -> usize {
        self.part.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matroid::GraphicMatroid;

    fn s(v: &[usize]) -> EdgeSet {
        EdgeSet::from_elements(v.iter().map(|x| x - 1))
    }

    #[test]
    fn reduced_flats_partition_ground() {
        let c = Chain::new(5, vec![s(&[1]), s(&[1, 2, 5])]).unwrap();
        assert_eq!(c.reduced(), &[s(&[1]), s(&[2, 5]), s(&[3, 4])]);
        assert_eq!(c.part_of(4), 1);
        assert_eq!(c.part_of(3), 2);
    }

    #[test]
    fn rejects_bad_chains() {
        let m = GraphicMatroid::new(&fixtures::k4_minus()).unwrap();
        assert!(Chain::new(5, vec![s(&[1, 2]), s(&[1])]).is_err());
        assert!(Chain::new(5, vec![s(&[1]), s(&[1])]).is_err());
        assert!(Chain::new(5, vec![s(&[1, 2, 3, 4, 5])]).is_err());
        // {1,2} is not closed
        assert!(Chain::maximal(&m, vec![s(&[1]), s(&[1, 2])]).is_err());
        // too short
        assert!(Chain::maximal(&m, vec![s(&[1])]).is_err());
        assert!(Chain::maximal(&m, vec![s(&[1]), s(&[1, 2, 5])]).is_ok());
    }
}
