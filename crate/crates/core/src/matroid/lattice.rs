use std::collections::HashMap;

use serde::Serialize;

use super::{Chain, Matroid};
use crate::bitset::EdgeSet;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flat {
    pub set: EdgeSet,
    pub rank: usize,
}

/// The lattice of flats, stored level by level. Flats within a level and
/// cover lists are sorted by bit value.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    m: usize,
    levels: Vec<Vec<EdgeSet>>,
    covers: Vec<Vec<Vec<u32>>>,
}

/// Builds the lattice of flats of a loopless matroid by closing each flat
/// against every element outside it.
pub fn flats_by_rank<M: Matroid + ?Sized>(matroid: &M) -> Result<FlatLattice> {
    matroid.check_loopless()?;
    let m = matroid.ground_size();
    let ground = matroid.ground();
    let rank = matroid.full_rank();
    let mut levels = vec![vec![EdgeSet::EMPTY]];
    let mut covers = Vec::with_capacity(rank);
    for _ in 0..rank {
        let current = levels.last().unwrap();
        let mut index: HashMap<EdgeSet, u32> = HashMap::new();
        let mut next: Vec<EdgeSet> = Vec::new();
        let mut up: Vec<Vec<u32>> = Vec::with_capacity(current.len());
        for &f in current {
            let mut seen = f;
            let mut list = Vec::new();
            for e in ground - f {
                if seen.contains(e) {
                    continue;
                }
                let g = matroid.closure(f.with(e));
                seen |= g;
                let id = *index.entry(g).or_insert_with(|| {
                    next.push(g);
                    (next.len() - 1) as u32
                });
                list.push(id);
            }
            up.push(list);
        }
        // Renumber the new level in bit order.
        let mut order: Vec<u32> = (0..next.len() as u32).collect();
        order.sort_by_key(|&i| next[i as usize]);
        let mut relabel = vec![0u32; next.len()];
        for (new, &old) in order.iter().enumerate() {
            relabel[old as usize] = new as u32;
        }
        for list in &mut up {
            for id in list.iter_mut() {
                *id = relabel[*id as usize];
            }
            list.sort_unstable();
        }
        next.sort_unstable();
        covers.push(up);
        levels.push(next);
    }
    Ok(FlatLattice { m, levels, covers })
}

impl FlatLattice {
    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, r: usize) -> &[EdgeSet] {
        &self.levels[r]
    }

    pub fn flat_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn flats(&self) -> impl Iterator<Item = Flat> + '_ {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(rank, l)| l.iter().map(move |&set| Flat { set, rank }))
    }

    /// Indices into level `r + 1` of the flats covering `level(r)[i]`.
    pub fn cover_ids(&self, r: usize, i: usize) -> &[u32] {
        &self.covers[r][i]
    }

    pub fn covers(&self, flat: Flat) -> Vec<Flat> {
        if flat.rank >= self.rank() {
            return Vec::new();
        }
        match self.levels[flat.rank].binary_search(&flat.set) {
            Ok(i) => self.covers[flat.rank][i]
                .iter()
                .map(|&j| Flat {
                    set: self.levels[flat.rank + 1][j as usize],
                    rank: flat.rank + 1,
                })
                .collect(),
            Err(_) => Vec::new(),
        }
    }

    /// Visits every maximal chain as the list of its proper nonempty flats,
    /// in lexicographic order of cover indices.
    pub fn for_each_maximal_chain(&self, mut visit: impl FnMut(&[EdgeSet])) {
        let r = self.rank();
        if r == 0 {
            return;
        }
        let mut stack: Vec<EdgeSet> = Vec::with_capacity(r);
        self.walk(0, 0, &mut stack, &mut visit);
    }

    fn walk(&self, r: usize, i: usize, stack: &mut Vec<EdgeSet>, visit: &mut impl FnMut(&[EdgeSet])) {
        if r + 1 == self.rank() {
            visit(stack);
            return;
        }
        for &j in &self.covers[r][i] {
            stack.push(self.levels[r + 1][j as usize]);
            self.walk(r + 1, j as usize, stack, visit);
            stack.pop();
        }
    }

    /// Maximal chains starting at a given rank-1 flat.
    pub fn chains_through_atom(&self, atom: usize) -> Vec<Chain> {
        let mut out = Vec::new();
        if self.rank() == 0 {
            return out;
        }
        let mut stack = vec![self.levels[1][atom]];
        self.walk(1, atom, &mut stack, &mut |flats| {
            out.push(Chain::new(self.m, flats.to_vec()).expect("lattice chains are proper"));
        });
        out
    }

    pub fn maximal_chains(&self) -> Vec<Chain> {
        let mut out = Vec::new();
        self.for_each_maximal_chain(|flats| {
            out.push(Chain::new(self.m, flats.to_vec()).expect("lattice chains are proper"));
        });
        out
    }

    pub fn count_maximal_chains(&self) -> u64 {
        // Paths from the bottom, counted level by level.
        let mut paths = vec![1u64];
        for r in 0..self.rank() {
            let mut next = vec![0u64; self.levels[r + 1].len()];
            for (i, list) in self.covers[r].iter().enumerate() {
                for &j in list {
                    next[j as usize] += paths[i];
                }
            }
            paths = next;
        }
        paths.iter().sum()
    }
}

pub fn enumerate_maximal_chains<M: Matroid + ?Sized>(matroid: &M) -> Result<Vec<Chain>> {
    Ok(flats_by_rank(matroid)?.maximal_chains())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matroid::{GraphicMatroid, UniformMatroid};

    fn s(v: &[usize]) -> EdgeSet {
        EdgeSet::from_elements(v.iter().map(|x| x - 1))
    }

    #[test]
    fn k4_minus_lattice() {
        let m = GraphicMatroid::new(&fixtures::k4_minus()).unwrap();
        let l = flats_by_rank(&m).unwrap();
        assert_eq!(l.rank(), 3);
        assert_eq!(l.level(1).len(), 5);
        // two triangles and the four pairs not inside a triangle
        assert_eq!(l.level(2).len(), 6);
        for &f in l.level(2) {
            assert_eq!(m.rank(f), 2);
            assert!(m.is_flat(f));
        }
        assert!(l.level(2).contains(&s(&[1, 2, 5])));
        assert!(l.level(2).contains(&s(&[3, 4, 5])));
        let chains = l.maximal_chains();
        assert_eq!(chains.len(), 14);
        assert_eq!(l.count_maximal_chains(), 14);
        for c in &chains {
            assert!(c.is_maximal_in(&m));
        }
        assert_eq!(chains[0].flats()[0], s(&[1]));
    }

    #[test]
    fn uniform_chain_counts() {
        // U_{5,3}: choose an ordered pair of distinct atoms.
        let u = UniformMatroid::new(5, 3).unwrap();
        assert_eq!(enumerate_maximal_chains(&u).unwrap().len(), 20);
        let u = UniformMatroid::new(6, 6).unwrap();
        assert_eq!(flats_by_rank(&u).unwrap().count_maximal_chains(), 720);
    }

    #[test]
    fn covers_match_closure() {
        let m = GraphicMatroid::new(&fixtures::prism3()).unwrap();
        let l = flats_by_rank(&m).unwrap();
        for f in l.flats() {
            for g in l.covers(f) {
                assert_eq!(g.rank, f.rank + 1);
                assert!(f.set.is_subset(g.set));
                let e = (g.set - f.set).first().unwrap();
                assert_eq!(m.closure(f.set.with(e)), g.set);
            }
        }
        assert_eq!(l.level(l.rank()), &[m.ground()]);
    }

    #[test]
    fn loops_are_rejected() {
        let g = crate::graph::LabelledGraph::new(2, vec![(0, 1), (1, 1)]).unwrap();
        let m = GraphicMatroid::new(&g).unwrap();
        assert!(flats_by_rank(&m).is_err());
    }

    #[test]
    fn atoms_split_chains() {
        let m = GraphicMatroid::new(&fixtures::prism3()).unwrap();
        let l = flats_by_rank(&m).unwrap();
        let split: usize = (0..l.level(1).len()).map(|a| l.chains_through_atom(a).len()).sum();
        assert_eq!(split as u64, l.count_maximal_chains());
    }
}
