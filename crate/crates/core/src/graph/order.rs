use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bitset::EdgeSet;
use crate::error::{Error, Result};

/// A total order `≺` on edge indices.
///
/// `rank[e]` is the position of `e` counted from the bottom: rank 0 is
/// `min(E)`, rank `m - 1` the `≺`-maximum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeOrder {
    rank: Vec<usize>,
}

impl EdgeOrder {
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        let m = rank.len();
        let mut seen = vec![false; m];
        for &r in &rank {
            if r >= m || std::mem::replace(&mut seen[r], true) {
                return Err(Error::InvalidOrder(format!("{rank:?} is not a permutation")));
            }
        }
        Ok(EdgeOrder { rank })
    }

    /// Order given as a sequence of edges from the `≺`-maximum down to the
    /// minimum.
    pub fn from_descending(seq: &[usize]) -> Result<Self> {
        let m = seq.len();
        let mut rank = vec![usize::MAX; m];
        for (pos, &e) in seq.iter().enumerate() {
            if e >= m || rank[e] != usize::MAX {
                return Err(Error::InvalidOrder(format!("{seq:?} is not a permutation")));
            }
            rank[e] = m - 1 - pos;
        }
        Ok(EdgeOrder { rank })
    }

    /// Edge 0 is the maximum and edge `m - 1` the minimum, matching fixtures
    /// whose labels read `1 > 2 > ... > m`.
    pub fn label_order(m: usize) -> Self {
        EdgeOrder {
            rank: (0..m).rev().collect(),
        }
    }

    /// Edge 0 is the minimum.
    pub fn identity(m: usize) -> Self {
        EdgeOrder { rank: (0..m).collect() }
    }

    pub fn random(m: usize, seed: u64) -> Self {
        let mut rank: Vec<usize> = (0..m).collect();
        rank.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        EdgeOrder { rank }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    #[inline]
    pub fn rank(&self, e: usize) -> usize {
        self.rank[e]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    #[inline]
    pub fn cmp(&self, a: usize, b: usize) -> Ordering {
        self.rank[a].cmp(&self.rank[b])
    }

    /// Edge of the given rank.
    pub fn element_at(&self, rank: usize) -> usize {
        self.rank.iter().position(|&r| r == rank).expect("rank in range")
    }

    pub fn min_element(&self) -> usize {
        self.element_at(0)
    }

    pub fn max_element(&self) -> usize {
        self.element_at(self.rank.len() - 1)
    }

    /// `≺`-minimum of a non-empty set.
    pub fn min_of(&self, set: EdgeSet) -> Option<usize> {
        set.iter().min_by_key(|&e| self.rank[e])
    }

    pub fn max_of(&self, set: EdgeSet) -> Option<usize> {
        set.iter().max_by_key(|&e| self.rank[e])
    }

    /// Edges listed from the maximum down to the minimum.
    pub fn descending(&self) -> Vec<usize> {
        let mut seq = vec![0; self.rank.len()];
        for (e, &r) in self.rank.iter().enumerate() {
            seq[self.rank.len() - 1 - r] = e;
        }
        seq
    }

    /// Set elements sorted from the maximum down.
    pub fn sorted_desc(&self, set: EdgeSet) -> Vec<usize> {
        let mut v = set.to_vec();
        v.sort_by(|&a, &b| self.cmp(b, a));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_order_puts_first_edge_on_top() {
        let o = EdgeOrder::label_order(5);
        assert_eq!(o.max_element(), 0);
        assert_eq!(o.min_element(), 4);
        assert_eq!(o.descending(), vec![0, 1, 2, 3, 4]);
        assert_eq!(o.cmp(0, 1), Ordering::Greater);
    }

    #[test]
    fn descending_round_trip() {
        let o = EdgeOrder::from_descending(&[2, 0, 1]).unwrap();
        assert_eq!(o.rank(2), 2);
        assert_eq!(o.rank(1), 0);
        assert_eq!(o.descending(), vec![2, 0, 1]);
        assert!(EdgeOrder::from_descending(&[0, 0, 1]).is_err());
        assert!(EdgeOrder::from_ranks(vec![0, 2]).is_err());
    }

    #[test]
    fn random_is_a_permutation_and_deterministic() {
        let a = EdgeOrder::random(9, 42);
        let b = EdgeOrder::random(9, 42);
        assert_eq!(a, b);
        assert!(EdgeOrder::from_ranks(a.ranks().to_vec()).is_ok());
    }

    #[test]
    fn min_of_set() {
        let o = EdgeOrder::label_order(5);
        let s = EdgeSet::from_elements([0, 2, 3]);
        assert_eq!(o.min_of(s), Some(3));
        assert_eq!(o.max_of(s), Some(0));
        assert_eq!(o.sorted_desc(s), vec![0, 2, 3]);
    }
}
