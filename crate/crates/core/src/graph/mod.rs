//! Graph representation, input formats, sparsity checks and catalog
//! generation.

mod canon;
mod graph6;
mod henneberg;
mod order;
mod parse;
mod sparsity;

pub use canon::{canonical_form, canonical_multigraph_key, CanonicalForm, MAX_CANONICAL_VERTICES};
pub use graph6::{encode_graph6, parse_graph6, parse_graph6_lines};
pub use henneberg::{henneberg_generate, MAX_HENNEBERG_VERTICES};
pub use order::EdgeOrder;
pub use parse::parse_edge_list;
pub use sparsity::{is_minimally_rigid_2d, is_sparse, is_tight, is_tight_brute_force};

use std::collections::HashSet;

use crate::bitset::MAX_ELEMENTS;
use crate::error::{Error, Result};

/// A multigraph on vertices `0..n` whose edges carry dense, stable indices
/// `0..m`. Edge indices form the ground set of the graphic matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl LabelledGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::with_labels(n, edges, None)
    }

    pub fn with_labels(n: usize, edges: Vec<(usize, usize)>, labels: Option<Vec<String>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Unsupported("graph must have at least one vertex".into()));
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::Unsupported(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{n}"
            )));
        }
        if let Some(l) = &labels {
            if l.len() != edges.len() {
                return Err(Error::Unsupported("one label per edge required".into()));
            }
        }
        Ok(LabelledGraph { n, edges, labels })
    }

    /// Builds a graph from 1-based vertex pairs, as written in the fixtures.
    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.iter().any(|&(u, v)| u == 0 || v == 0) {
            return Err(Error::Unsupported("vertex ids are 1-based".into()));
        }
        Self::new(n, edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of edge `e`: its label if present, else `e + 1`.
    pub fn edge_name(&self, e: usize) -> String {
        match &self.labels {
            Some(l) => l[e].clone(),
            None => (e + 1).to_string(),
        }
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().any(|&(u, v)| !seen.insert((u.min(v), u.max(v))))
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loops() && !self.has_parallel_edges()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let mut dsu = Dsu::new(self.n);
        for &(u, v) in &self.edges {
            dsu.union(u, v);
        }
        dsu.components() == 1
    }

    /// Rejects graphs whose edge set does not fit the bit-vector ground set.
    pub fn check_ground_size(&self) -> Result<()> {
        if self.edges.len() > MAX_ELEMENTS {
            return Err(Error::Unsupported(format!(
                "{} edges exceed the {MAX_ELEMENTS}-element ground set limit",
                self.edges.len()
            )));
        }
        Ok(())
    }

    /// Applies a vertex relabelling `perm[old] = new`; edge indices are kept.
    pub fn relabel_vertices(&self, perm: &[usize]) -> LabelledGraph {
        LabelledGraph {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Index of the edge with the given display label.
    pub fn edge_by_label(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label
                .parse::<usize>()
                .ok()
                .filter(|&i| i >= 1 && i <= self.edges.len())
                .map(|i| i - 1),
        }
    }
}

/// Disjoint-set forest with union by size and path halving.
#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_endpoint() {
        assert!(LabelledGraph::new(2, vec![(0, 2)]).is_err());
        assert!(LabelledGraph::from_one_based(2, &[(0, 1)]).is_err());
    }

    #[test]
    fn simplicity_flags() {
        let g = LabelledGraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert!(g.has_parallel_edges());
        assert!(!g.is_simple());
        let g = LabelledGraph::new(2, vec![(0, 0)]).unwrap();
        assert!(g.has_loops());
        let g = LabelledGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(g.is_simple());
        assert!(g.is_connected());
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn labels_resolve_to_indices() {
        let g = LabelledGraph::with_labels(3, vec![(0, 1), (1, 2)], Some(vec!["b".into(), "a".into()])).unwrap();
        assert_eq!(g.edge_by_label("a"), Some(1));
        let h = LabelledGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(h.edge_by_label("2"), Some(1));
        assert_eq!(h.edge_by_label("3"), None);
    }
}
