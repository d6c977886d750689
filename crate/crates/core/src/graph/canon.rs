//! Canonical labelling by individualisation and refinement.
//!
//! The search refines an ordered vertex partition to an equitable one,
//! branches on every vertex of the first non-singleton cell, and keeps the
//! lexicographically least adjacency string over all discrete leaves. The
//! refinement only looks at isomorphism-invariant data, so isomorphic graphs
//! explore the same set of strings.

use serde::Serialize;

use super::LabelledGraph;
use crate::error::{Error, Result};

pub const MAX_CANONICAL_VERTICES: usize = 12;

/// Isomorphism-invariant form of a simple graph: the sorted edge list of its
/// canonical labelling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> LabelledGraph {
        LabelledGraph::new(self.n, self.edges.clone()).expect("canonical edges are in range")
    }
}

struct Multigraph {
    n: usize,
    mult: Vec<u8>,
}

impl Multigraph {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut mult = vec![0u8; n * n];
        for &(u, v) in edges {
            mult[u * n + v] += 1;
            if u != v {
                mult[v * n + u] += 1;
            }
        }
        Multigraph { n, mult }
    }

    #[inline]
    fn m(&self, u: usize, v: usize) -> u8 {
        self.mult[u * self.n + v]
    }
}

fn refine(g: &Multigraph, cells: &mut Vec<Vec<usize>>) {
    let n = g.n;
    let mut cell_of = vec![0usize; n];
    loop {
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let signature = |v: usize| -> Vec<(usize, u8)> {
            let mut s: Vec<(usize, u8)> = (0..n)
                .filter(|&w| g.m(v, w) > 0)
                .map(|w| {
                    if w == v {
                        (usize::MAX, g.m(v, v))
                    } else {
                        (cell_of[w], g.m(v, w))
                    }
                })
                .collect();
            s.sort_unstable();
            s
        };
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(usize, u8)>, usize)> = cell.iter().map(|&v| (signature(v), v)).collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

fn leaf_key(g: &Multigraph, cells: &[Vec<usize>]) -> (Vec<u8>, Vec<usize>) {
    let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
    let n = g.n;
    let mut key = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            key.push(g.m(order[i], order[j]));
        }
    }
    (key, order)
}

fn search(g: &Multigraph, mut cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    refine(g, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let leaf = leaf_key(g, &cells);
        if best.as_ref().is_none_or(|b| leaf.0 < b.0) {
            *best = Some(leaf);
        }
        return;
    };
    for &v in &cells[target] {
        let mut branch = Vec::with_capacity(cells.len() + 1);
        branch.extend_from_slice(&cells[..target]);
        branch.push(vec![v]);
        branch.push(cells[target].iter().copied().filter(|&w| w != v).collect());
        branch.extend_from_slice(&cells[target + 1..]);
        search(g, branch, best);
    }
}

/// Returns the canonical adjacency string and the vertex order realising it
/// (`order[i]` is the original vertex placed at position `i`).
fn canonical_labelling(n: usize, edges: &[(usize, usize)]) -> (Vec<u8>, Vec<usize>) {
    let g = Multigraph::new(n, edges);
    let mut best = None;
    search(&g, vec![(0..n).collect()], &mut best);
    best.expect("search visits at least one leaf")
}

/// Canonical key of a multigraph (loops and parallel edges allowed): the
/// least upper-triangular multiplicity string found by the search.
pub fn canonical_multigraph_key(n: usize, edges: &[(usize, usize)]) -> Vec<u8> {
    canonical_labelling(n, edges).0
}

pub fn canonical_form(g: &LabelledGraph) -> Result<CanonicalForm> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let n = g.vertex_count();
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::Unsupported(format!(
            "canonical form limited to {MAX_CANONICAL_VERTICES} vertices, got {n}"
        )));
    }
    let (_, order) = canonical_labelling(n, g.edges());
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
        .collect();
    edges.sort_unstable();
    Ok(CanonicalForm { n, edges })
}
