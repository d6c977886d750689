use std::collections::HashMap;

use super::{Matroid, MatroidKind, TwoVarPoly};
use crate::bitset::EdgeSet;
use crate::error::Result;
use crate::graph::{canonical_multigraph_key, LabelledGraph, MAX_CANONICAL_VERTICES};

/// The cycle matroid of a multigraph: independent sets are forests.
#[derive(Clone, Debug)]
pub struct GraphicMatroid {
    graph: LabelledGraph,
}

impl GraphicMatroid {
    pub fn new(graph: &LabelledGraph) -> Result<Self> {
        graph.check_ground_size()?;
        Ok(GraphicMatroid { graph: graph.clone() })
    }

    pub fn graph(&self) -> &LabelledGraph {
        &self.graph
    }

    /// Component label per vertex of the spanning subgraph `(V, set)`, and
    /// the number of successful unions (the rank).
    fn components(&self, set: EdgeSet) -> (Vec<usize>, usize) {
        let n = self.graph.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut rank = 0;
        for e in set {
            let (u, v) = self.graph.edge(e);
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                rank += 1;
            }
        }
        for v in 0..n {
            parent[v] = find(&mut parent, v);
        }
        (parent, rank)
    }

    fn cycles(&self) -> Vec<EdgeSet> {
        let n = self.graph.vertex_count();
        let edges = self.graph.edges();
        let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u != v {
                incident[u].push((e, v));
                incident[v].push((e, u));
            }
        }
        let mut found: Vec<EdgeSet> = edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| u == v)
            .map(|(e, _)| EdgeSet::singleton(e))
            .collect();
        let mut seen = std::collections::HashSet::new();

        // Each cycle is rooted at its smallest vertex and walked through
        // larger vertices only; it is found once per direction.
        struct Walk<'a> {
            incident: &'a [Vec<(usize, usize)>],
            root: usize,
            on_path: Vec<bool>,
        }
        fn dfs(
            w: &mut Walk,
            at: usize,
            path: EdgeSet,
            last: usize,
            out: &mut Vec<EdgeSet>,
            seen: &mut std::collections::HashSet<EdgeSet>,
        ) {
            for &(e, to) in &w.incident[at] {
                if e == last || path.contains(e) {
                    continue;
                }
                if to == w.root {
                    let cyc = path.with(e);
                    if seen.insert(cyc) {
                        out.push(cyc);
                    }
                } else if to > w.root && !w.on_path[to] {
                    w.on_path[to] = true;
                    dfs(w, to, path.with(e), e, out, seen);
                    w.on_path[to] = false;
                }
            }
        }
        for root in 0..n {
            let mut walk = Walk {
                incident: &incident,
                root,
                on_path: vec![false; n],
            };
            walk.on_path[root] = true;
            dfs(&mut walk, root, EdgeSet::EMPTY, usize::MAX, &mut found, &mut seen);
        }
        found.sort();
        found
    }
}

impl Matroid for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }

    fn rank(&self, set: EdgeSet) -> usize {
        self.components(set).1
    }

    fn kind(&self) -> MatroidKind {
        MatroidKind::Graphic
    }

    fn closure(&self, set: EdgeSet) -> EdgeSet {
        let (comp, _) = self.components(set);
        (0..self.ground_size())
            .filter(|&e| {
                let (u, v) = self.graph.edge(e);
                comp[u] == comp[v]
            })
            .collect()
    }

    fn circuits(&self) -> Vec<EdgeSet> {
        self.cycles()
    }

    fn tutte_polynomial(&self) -> TwoVarPoly {
        let mut memo = HashMap::new();
        tutte_rec(self.graph.vertex_count(), self.graph.edges().to_vec(), &mut memo)
    }
}

type Memo = HashMap<(usize, Vec<u8>), TwoVarPoly>;

/// Drops isolated vertices and renumbers the rest densely.
fn compact(n: usize, edges: &mut [(usize, usize)]) -> usize {
    let mut id = vec![usize::MAX; n];
    let mut next = 0;
    for (u, v) in edges.iter_mut() {
        for x in [u, v] {
            if id[*x] == usize::MAX {
                id[*x] = next;
                next += 1;
            }
            *x = id[*x];
        }
    }
    next
}

fn connected_without(n: usize, edges: &[(usize, usize)], skip: usize) -> bool {
    let (s, t) = edges[skip];
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if i != skip {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(x) = stack.pop() {
        if x == t {
            return true;
        }
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    false
}

/// Deletion-contraction with memoisation on canonical minors.
fn tutte_rec(n: usize, mut edges: Vec<(usize, usize)>, memo: &mut Memo) -> TwoVarPoly {
    let loops = edges.iter().filter(|&&(u, v)| u == v).count();
    edges.retain(|&(u, v)| u != v);
    let n = compact(n, &mut edges);
    let core = if edges.is_empty() {
        TwoVarPoly::one()
    } else {
        let key = (n <= MAX_CANONICAL_VERTICES).then(|| (n, canonical_multigraph_key(n, &edges)));
        if let Some(hit) = key.as_ref().and_then(|k| memo.get(k)) {
            hit.clone()
        } else {
            // Split on an edge at a vertex of least degree.
            let mut deg = vec![0usize; n];
            for &(u, v) in &edges {
                deg[u] += 1;
                deg[v] += 1;
            }
            let pick = (0..edges.len())
                .min_by_key(|&i| deg[edges[i].0].min(deg[edges[i].1]))
                .unwrap();
            let (u, v) = edges[pick];
            let contracted: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != pick)
                .map(|(_, &(a, b))| (if a == v { u } else { a }, if b == v { u } else { b }))
                .collect();
            let result = if connected_without(n, &edges, pick) {
                let mut deleted = edges.clone();
                deleted.swap_remove(pick);
                tutte_rec(n, deleted, memo).add(&tutte_rec(n, contracted, memo))
            } else {
                tutte_rec(n, contracted, memo).times_x()
            };
            if let Some(k) = key {
                memo.insert(k, result.clone());
            }
            result
        }
    };
    (0..loops).fold(core, |p, _| p.times_y())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn k4_minus_rank_and_closure() {
        let m = GraphicMatroid::new(&fixtures::k4_minus()).unwrap();
        let s = |v: &[usize]| EdgeSet::from_elements(v.iter().map(|x| x - 1));
        assert_eq!(m.full_rank(), 3);
        assert_eq!(m.rank(s(&[1, 2, 5])), 2);
        assert_eq!(m.rank(EdgeSet::EMPTY), 0);
        assert_eq!(m.closure(s(&[1, 2])), s(&[1, 2, 5]));
        assert_eq!(m.closure(s(&[1, 3])), s(&[1, 3]));
        assert_eq!(m.closure(EdgeSet::EMPTY), EdgeSet::EMPTY);
    }

    #[test]
    fn rank_counts_components() {
        let g = LabelledGraph::new(5, vec![(0, 1), (1, 2), (3, 4)]).unwrap();
        let m = GraphicMatroid::new(&g).unwrap();
        assert_eq!(m.full_rank(), 5 - 2);
    }

    #[test]
    fn loops_and_parallel_circuits() {
        let g = LabelledGraph::new(2, vec![(0, 1), (0, 1), (1, 1)]).unwrap();
        let m = GraphicMatroid::new(&g).unwrap();
        assert_eq!(m.loops(), EdgeSet::singleton(2));
        let c = m.circuits();
        assert!(c.contains(&EdgeSet::from_elements([0, 1])));
        assert!(c.contains(&EdgeSet::singleton(2)));
        assert_eq!(c.len(), 2);
        assert!(m.check_loopless().is_err());
    }

    #[test]
    fn tree_has_no_circuits() {
        let g = LabelledGraph::new(4, vec![(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(GraphicMatroid::new(&g).unwrap().circuits().is_empty());
    }
}
