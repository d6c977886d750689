//! (k, ℓ)-sparsity via the pebble game.

use super::LabelledGraph;
use crate::error::{Error, Result};

fn check_params(g: &LabelledGraph, k: usize, l: usize) -> Result<()> {
    if k == 0 || l >= 2 * k {
        return Err(Error::Unsupported(format!(
            "pebble game requires 0 <= l < 2k, got (k, l) = ({k}, {l})"
        )));
    }
    if g.has_loops() || ((k, l) == (2, 3) && g.has_parallel_edges()) {
        return Err(Error::NotSimple);
    }
    Ok(())
}

struct PebbleGame {
    l: usize,
    pebbles: Vec<usize>,
    out: Vec<Vec<usize>>,
    seen: Vec<bool>,
    parent: Vec<usize>,
}

impl PebbleGame {
    fn new(n: usize, k: usize, l: usize) -> Self {
        PebbleGame {
            l,
            pebbles: vec![k; n],
            out: vec![Vec::new(); n],
            seen: vec![false; n],
            parent: vec![usize::MAX; n],
        }
    }

    /// Moves one free pebble to `root` along a directed path that avoids
    /// `blocked`, reversing the path.
    fn fetch(&mut self, root: usize, blocked: usize) -> bool {
        self.seen.iter_mut().for_each(|s| *s = false);
        self.seen[root] = true;
        self.seen[blocked] = true;
        let mut stack = vec![root];
        while let Some(a) = stack.pop() {
            for i in 0..self.out[a].len() {
                let b = self.out[a][i];
                if self.seen[b] {
                    continue;
                }
                self.seen[b] = true;
                self.parent[b] = a;
                if self.pebbles[b] > 0 {
                    self.pebbles[b] -= 1;
                    self.pebbles[root] += 1;
                    let mut w = b;
                    while w != root {
                        let p = self.parent[w];
                        let pos = self.out[p].iter().position(|&x| x == w).unwrap();
                        self.out[p].swap_remove(pos);
                        self.out[w].push(p);
                        w = p;
                    }
                    return true;
                }
                stack.push(b);
            }
        }
        false
    }

    /// Inserts `uv` if it is independent of the edges accepted so far.
    fn insert(&mut self, u: usize, v: usize) -> bool {
        while self.pebbles[u] + self.pebbles[v] < self.l + 1 {
            if !(self.fetch(u, v) || self.fetch(v, u)) {
                return false;
            }
        }
        if self.pebbles[u] > 0 {
            self.pebbles[u] -= 1;
            self.out[u].push(v);
        } else {
            self.pebbles[v] -= 1;
            self.out[v].push(u);
        }
        true
    }
}

/// Every subgraph on at least `k` vertices spans at most `k|V'| - l` edges.
pub fn is_sparse(g: &LabelledGraph, k: usize, l: usize) -> Result<bool> {
    check_params(g, k, l)?;
    let mut game = PebbleGame::new(g.vertex_count(), k, l);
    Ok(g.edges().iter().all(|&(u, v)| game.insert(u, v)))
}

/// `|E| = k|V| - l` and the graph is (k, l)-sparse.
pub fn is_tight(g: &LabelledGraph, k: usize, l: usize) -> Result<bool> {
    check_params(g, k, l)?;
    let target = (k * g.vertex_count()) as i64 - l as i64;
    if g.edge_count() as i64 != target {
        return Ok(false);
    }
    is_sparse(g, k, l)
}

/// Definitional check over every vertex subset. Exponential; intended as a
/// test oracle for small graphs.
pub fn is_tight_brute_force(g: &LabelledGraph, k: usize, l: usize) -> bool {
    let n = g.vertex_count();
    assert!(n <= 20, "brute force limited to 20 vertices");
    if g.edge_count() as i64 != (k * n) as i64 - l as i64 {
        return false;
    }
    (1u32..1 << n).filter(|s| s.count_ones() as usize >= k).all(|s| {
        let inside = g
            .edges()
            .iter()
            .filter(|&&(u, v)| s >> u & 1 == 1 && s >> v & 1 == 1)
            .count() as i64;
        inside <= (k * s.count_ones() as usize) as i64 - l as i64
    })
}

/// Minimal rigidity in the plane, i.e. (2,3)-tightness.
pub fn is_minimally_rigid_2d(g: &LabelledGraph) -> Result<bool> {
    is_tight(g, 2, 3)
}
