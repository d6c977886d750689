//! Intersecting arboreal pairs of maximal chains of flats.
//!
//! For chains `F` of `M` and `H` of `N` the intersection graph has one vertex
//! per reduced flat on each side and one edge per ground element. A pair is
//! intersecting arboreal when that graph is a tree and, with edge weights
//! growing fast enough along the order, the unique solution of
//! `y_F + z_H = α_a` (one equation per element `a`) is strictly decreasing
//! along both chains.
//!
//! Weights are `α_a = 4^rank(a)`: every signed sum of distinct weights then
//! has the sign of its largest term, which is exactly the path-maximality
//! rule, and no two solution coordinates can tie.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{is_minimally_rigid_2d, EdgeOrder, LabelledGraph};
use crate::matroid::{flats_by_rank, Chain, FlatLattice, GraphicMatroid, Matroid, UniformMatroid};

mod split;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Vertex {
    F(usize),
    H(usize),
}

/// Bipartite multigraph on the reduced flats of two chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionGraph {
    left: Vec<EdgeSet>,
    right: Vec<EdgeSet>,
    ends: Vec<(usize, usize)>,
}

impl IntersectionGraph {
    pub fn build(f: &Chain, h: &Chain) -> Result<Self> {
        if f.ground_size() != h.ground_size() {
            return Err(Error::GroundMismatch(f.ground_size(), h.ground_size()));
        }
        let ends = (0..f.ground_size()).map(|a| (f.part_of(a), h.part_of(a))).collect();
        Ok(IntersectionGraph {
            left: f.reduced().to_vec(),
            right: h.reduced().to_vec(),
            ends,
        })
    }

    pub fn left(&self) -> &[EdgeSet] {
        &self.left
    }

    pub fn right(&self) -> &[EdgeSet] {
        &self.right
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    /// `(left index, right index)` of the edge labelled by element `a`.
    pub fn edge_of(&self, a: usize) -> (usize, usize) {
        self.ends[a]
    }

    fn id(&self, v: Vertex) -> usize {
        match v {
            Vertex::F(i) => i,
            Vertex::H(j) => self.left.len() + j,
        }
    }

    fn components(&self) -> (usize, bool) {
        let mut dsu = crate::graph::Dsu::new(self.vertex_count());
        let mut cycle = false;
        for &(i, j) in &self.ends {
            if !dsu.union(i, self.left.len() + j) {
                cycle = true;
            }
        }
        (dsu.components(), cycle)
    }

    pub fn has_cycle(&self) -> bool {
        self.components().1
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 == 1
    }

    pub fn is_tree(&self) -> bool {
        let (c, cycle) = self.components();
        c == 1 && !cycle
    }

    /// The unique path between two vertices of a tree as `(element, forward)`
    /// steps, where `forward` means the edge is walked from its `F` end to
    /// its `H` end. `None` if there is no path.
    pub fn path(&self, from: Vertex, to: Vertex) -> Option<Vec<(usize, bool)>> {
        let n = self.vertex_count();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (a, &(i, j)) in self.ends.iter().enumerate() {
            let hj = self.left.len() + j;
            adj[i].push((a, hj));
            adj[hj].push((a, i));
        }
        let (s, t) = (self.id(from), self.id(to));
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(a, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((a, v));
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            return None;
        }
        let mut steps = Vec::new();
        let mut v = t;
        while v != s {
            let (a, p) = prev[v].unwrap();
            steps.push((a, p < self.left.len()));
            v = p;
        }
        steps.reverse();
        Some(steps)
    }

    /// Tree edges as `[element, left index, right index]`.
    pub fn tree_edges(&self) -> Vec<[usize; 3]> {
        self.ends.iter().enumerate().map(|(a, &(i, j))| [a, i, j]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "camelCase")]
pub enum PairVerdict {
    Intersecting,
    NonMaximal,
    Cycle,
    Disconnected,
    /// The path between `F̃_i` and `F̃_j` (i < j) is not `F`-maximal.
    NotFMaximal {
        i: usize,
        j: usize,
    },
    /// The path between `H̃_i` and `H̃_j` (i < j) is not `H`-maximal.
    NotHMaximal {
        i: usize,
        j: usize,
    },
}

impl PairVerdict {
    pub fn is_intersecting(self) -> bool {
        self == PairVerdict::Intersecting
    }
}

fn weights(order: &EdgeOrder) -> Vec<i128> {
    (0..order.len()).map(|a| 1i128 << (2 * order.rank(a))).collect()
}

/// Decides whether `(f, h)` is an intersecting arboreal pair under `order`.
/// Assumes the two matroids have complementary ranks, so that a pair of
/// maximal chains has exactly `m + 1` reduced flats.
pub fn is_intersecting_arboreal_pair(f: &Chain, h: &Chain, order: &EdgeOrder) -> Result<PairVerdict> {
    let g = IntersectionGraph::build(f, h)?;
    if order.len() != g.edge_count() {
        return Err(Error::GroundMismatch(order.len(), g.edge_count()));
    }
    if g.vertex_count() != g.edge_count() + 1 {
        return Ok(PairVerdict::NonMaximal);
    }
    let (components, cycle) = g.components();
    if cycle {
        return Ok(PairVerdict::Cycle);
    }
    if components != 1 {
        return Ok(PairVerdict::Disconnected);
    }
    // Potentials with x_F - x_H = α_a across each edge; x_F = y, x_H = -z.
    let alpha = weights(order);
    let pf = g.left.len();
    let mut x: Vec<Option<i128>> = vec![None; g.vertex_count()];
    x[0] = Some(0);
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for (a, &(i, j)) in g.ends.iter().enumerate() {
            let hj = pf + j;
            if v == i && x[hj].is_none() {
                x[hj] = Some(x[i].unwrap() - alpha[a]);
                stack.push(hj);
            } else if v == hj && x[i].is_none() {
                x[i] = Some(x[hj].unwrap() + alpha[a]);
                stack.push(i);
            }
        }
    }
    let x: Vec<i128> = x.into_iter().map(Option::unwrap).collect();
    for i in 0..pf {
        for j in i + 1..pf {
            if x[i] <= x[j] {
                return Ok(PairVerdict::NotFMaximal { i, j });
            }
        }
    }
    let ph = g.right.len();
    for i in 0..ph {
        for j in i + 1..ph {
            if x[pf + i] >= x[pf + j] {
                return Ok(PairVerdict::NotHMaximal { i, j });
            }
        }
    }
    Ok(PairVerdict::Intersecting)
}

#[derive(Clone, Debug, Default)]
pub struct CountOptions {
    pub witnesses: bool,
    pub deadline: Option<Instant>,
    pub method: CountMethod,
}

/// How pairs are counted. `Enumerate` walks every chain of `M` and grows
/// chains of `N` against it, pruning on cycles and order violations.
/// `Split` cuts each intersection tree at its largest element and counts the
/// two halves on minors, with memoisation; it never lists pairs. `Auto`
/// splits unless witnesses are requested.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CountMethod {
    #[default]
    Auto,
    Enumerate,
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub chain_f: Vec<EdgeSet>,
    pub chain_h: Vec<EdgeSet>,
    pub tree_edges: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchStats {
    pub chains_f: u64,
    pub chains_h: u64,
    pub nodes: u64,
    pub cycle_prunes: u64,
    pub order_prunes: u64,
    pub subproblems: u64,
    pub memo_hits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairCountReport {
    pub ordered: u64,
    /// Half the ordered count: the number of unordered pairs when `M = N`.
    pub unordered: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    pub stats: SearchStats,
}

struct Search<'a> {
    f: &'a Chain,
    lattice: &'a FlatLattice,
    alpha: &'a [i128],
    pf: usize,
    opts: &'a CountOptions,
    expired: &'a AtomicBool,
    count: u64,
    stats: SearchStats,
    witnesses: Vec<Witness>,
    stack: Vec<EdgeSet>,
}

#[derive(Clone)]
struct State {
    comp: Vec<u8>,
    x: Vec<i128>,
}

impl Search<'_> {
    fn run(&mut self, level: usize, idx: usize, state: &State) {
        if self.expired.load(Ordering::Relaxed) {
            return;
        }
        self.stats.nodes += 1;
        if self.stats.nodes.is_multiple_of(4096) {
            if let Some(d) = self.opts.deadline {
                if Instant::now() > d {
                    self.expired.store(true, Ordering::Relaxed);
                    return;
                }
            }
        }
        let prev = self.lattice.level(level)[idx];
        let top = self.lattice.rank();
        for &c in self.lattice.cover_ids(level, idx) {
            let flat = self.lattice.level(level + 1)[c as usize];
            let Some(next) = self.attach(state, level, flat - prev) else {
                continue;
            };
            self.stack.push(flat);
            if level + 1 == top {
                self.count += 1;
                self.stats.chains_h += 1;
                if self.opts.witnesses {
                    self.record();
                }
            } else {
                self.run(level + 1, c as usize, &next);
            }
            self.stack.pop();
        }
    }

    /// Adds `H̃_{level+1} = reduced` to the forest, or `None` if that closes a
    /// cycle or breaks monotonicity inside the merged component.
    fn attach(&mut self, state: &State, level: usize, reduced: EdgeSet) -> Option<State> {
        let h = self.pf + level;
        let mut seen: u128 = 0;
        for a in reduced {
            let c = state.comp[self.f.part_of(a)];
            if seen >> c & 1 == 1 {
                self.stats.cycle_prunes += 1;
                return None;
            }
            seen |= 1 << c;
        }
        let mut next = state.clone();
        next.comp[h] = h as u8;
        next.x[h] = 0;
        let live = h + 1;
        for a in reduced {
            let v = self.f.part_of(a);
            let old = next.comp[v];
            let shift = self.alpha[a] - next.x[v];
            for w in 0..live {
                if w != h && next.comp[w] == old {
                    next.comp[w] = h as u8;
                    next.x[w] += shift;
                }
            }
        }
        let mut last: Option<i128> = None;
        for i in 0..self.pf {
            if next.comp[i] == h as u8 {
                if last.is_some_and(|l| l <= next.x[i]) {
                    self.stats.order_prunes += 1;
                    return None;
                }
                last = Some(next.x[i]);
            }
        }
        let mut last: Option<i128> = None;
        for j in self.pf..live {
            if next.comp[j] == h as u8 {
                if last.is_some_and(|l| l >= next.x[j]) {
                    self.stats.order_prunes += 1;
                    return None;
                }
                last = Some(next.x[j]);
            }
        }
        Some(next)
    }

    fn record(&mut self) {
        let m = self.f.ground_size();
        let flats = self.stack[..self.stack.len() - 1].to_vec();
        let h = Chain::new(m, flats).expect("search chains are proper");
        let g = IntersectionGraph::build(self.f, &h).expect("same ground set");
        self.witnesses.push(Witness {
            chain_f: self.f.flats().to_vec(),
            chain_h: h.flats().to_vec(),
            tree_edges: g.tree_edges(),
        });
    }
}

fn check_pair_input<A: Matroid + ?Sized, B: Matroid + ?Sized>(m: &A, n: &B, order: &EdgeOrder) -> Result<()> {
    if m.ground_size() != n.ground_size() {
        return Err(Error::GroundMismatch(m.ground_size(), n.ground_size()));
    }
    if order.len() != m.ground_size() {
        return Err(Error::GroundMismatch(order.len(), m.ground_size()));
    }
    let rank_sum = m.full_rank() + n.full_rank();
    let expected = m.ground_size() + 1;
    if rank_sum != expected {
        return Err(Error::RankMismatch { rank_sum, expected });
    }
    Ok(())
}

/// Counts ordered pairs `(F, H)` with `F` a maximal chain of `m` and `H` one
/// of `n` that are intersecting arboreal under `order`.
pub fn count_intersecting_pairs<A: Matroid + ?Sized, B: Matroid + ?Sized>(
    m: &A,
    n: &B,
    order: &EdgeOrder,
    opts: &CountOptions,
) -> Result<PairCountReport> {
    check_pair_input(m, n, order)?;
    m.check_loopless()?;
    n.check_loopless()?;
    let split = match opts.method {
        CountMethod::Auto => !opts.witnesses,
        CountMethod::Enumerate => false,
        CountMethod::Split => true,
    };
    if split {
        let (ordered, stats) = split::count(m, n, order, opts.deadline)?;
        return Ok(PairCountReport {
            ordered,
            unordered: ordered / 2,
            witnesses: Vec::new(),
            stats,
        });
    }
    enumerate(m, n, order, opts)
}

fn enumerate<A: Matroid + ?Sized, B: Matroid + ?Sized>(
    m: &A,
    n: &B,
    order: &EdgeOrder,
    opts: &CountOptions,
) -> Result<PairCountReport> {
    let lm = flats_by_rank(m)?;
    let ln = flats_by_rank(n)?;
    if lm.rank() + ln.rank() > 128 {
        return Err(Error::Unsupported("ground set too large for the pair search".into()));
    }
    let alpha = weights(order);
    let expired = AtomicBool::new(false);
    let visited = AtomicU64::new(0);

    let atoms: Vec<usize> = (0..lm.level(1).len()).collect();
    let parts: Vec<(u64, SearchStats, Vec<Witness>)> = atoms
        .par_iter()
        .flat_map_iter(|&atom| lm.chains_through_atom(atom))
        .map(|f| {
            visited.fetch_add(1, Ordering::Relaxed);
            if opts.deadline.is_some_and(|d| Instant::now() > d) {
                expired.store(true, Ordering::Relaxed);
            }
            let pf = f.parts();
            let state = State {
                comp: (0..(pf + ln.rank()) as u8).collect(),
                x: vec![0; pf + ln.rank()],
            };
            let mut s = Search {
                f: &f,
                lattice: &ln,
                alpha: &alpha,
                pf,
                opts,
                expired: &expired,
                count: 0,
                stats: SearchStats::default(),
                witnesses: Vec::new(),
                stack: Vec::new(),
            };
            s.run(0, 0, &state);
            (s.count, s.stats, s.witnesses)
        })
        .collect();
    if expired.load(Ordering::Relaxed) {
        return Err(Error::Timeout);
    }
    let mut ordered = 0;
    let mut stats = SearchStats {
        chains_f: visited.load(Ordering::Relaxed),
        ..SearchStats::default()
    };
    let mut witnesses = Vec::new();
    for (c, s, w) in parts {
        ordered += c;
        stats.chains_h += s.chains_h;
        stats.nodes += s.nodes;
        stats.cycle_prunes += s.cycle_prunes;
        stats.order_prunes += s.order_prunes;
        witnesses.extend(w);
    }
    witnesses.sort_by(|a, b| (&a.chain_f, &a.chain_h).cmp(&(&b.chain_f, &b.chain_h)));
    Ok(PairCountReport {
        ordered,
        unordered: ordered / 2,
        witnesses,
        stats,
    })
}

pub(crate) fn check_laman(graph: &LabelledGraph) -> Result<()> {
    if graph.vertex_count() < 3 {
        return Err(Error::Unsupported(
            "realisation numbers need at least 3 vertices".into(),
        ));
    }
    if !is_minimally_rigid_2d(graph)? {
        return Err(Error::NotMinimallyRigid);
    }
    Ok(())
}

/// Full pair-count report for `(M_G, M_G)`; `unordered` is `c2(G)`.
pub fn realisation_report(graph: &LabelledGraph, order: &EdgeOrder, opts: &CountOptions) -> Result<PairCountReport> {
    check_laman(graph)?;
    let m = GraphicMatroid::new(graph)?;
    let report = count_intersecting_pairs(&m, &m, order, opts)?;
    assert!(report.ordered % 2 == 0, "ordered pair count of (M, M) must be even");
    Ok(report)
}

/// The 2-realisation number `c2(G)` of a minimally rigid graph.
pub fn realisation_number(graph: &LabelledGraph, order: &EdgeOrder) -> Result<u64> {
    Ok(realisation_report(graph, order, &CountOptions::default())?.unordered)
}

/// Laman number of the bigraph `(G, H)`, where edge `i` of `g` is glued to
/// edge `bijection[i]` of `h` (identity when `None`).
pub fn bigraph_laman_number(
    g: &LabelledGraph,
    h: &LabelledGraph,
    bijection: Option<&[usize]>,
    order: &EdgeOrder,
) -> Result<u64> {
    if g.edge_count() != h.edge_count() {
        return Err(Error::GroundMismatch(g.edge_count(), h.edge_count()));
    }
    let h = match bijection {
        None => h.clone(),
        Some(map) => {
            let mut seen = vec![false; h.edge_count()];
            if map.len() != g.edge_count()
                || map
                    .iter()
                    .any(|&j| j >= seen.len() || std::mem::replace(&mut seen[j], true))
            {
                return Err(Error::InvalidOrder("edge bijection is not a permutation".into()));
            }
            LabelledGraph::new(h.vertex_count(), map.iter().map(|&j| h.edge(j)).collect())?
        }
    };
    let mg = GraphicMatroid::new(g)?;
    let mh = GraphicMatroid::new(&h)?;
    mg.check_loopless()?;
    mh.check_loopless()?;
    Ok(count_intersecting_pairs(&mh, &mg, order, &CountOptions::default())?.ordered)
}

/// nbc count of `M` as the number of intersecting arboreal pairs of
/// `U_{m, m-k+1}` and `M`.
pub fn nbc_via_uniform_pairs<M: Matroid + ?Sized>(matroid: &M, order: &EdgeOrder) -> Result<u64> {
    let m = matroid.ground_size();
    let k = matroid.full_rank();
    let u = UniformMatroid::new(m, m + 1 - k)?;
    Ok(count_intersecting_pairs(&u, matroid, order, &CountOptions::default())?.ordered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matroid::enumerate_maximal_chains;

    fn s(v: &[usize]) -> EdgeSet {
        EdgeSet::from_elements(v.iter().map(|x| x - 1))
    }

    fn chain(m: usize, flats: &[&[usize]]) -> Chain {
        Chain::new(m, flats.iter().map(|f| s(f)).collect()).unwrap()
    }

    /// Walks every path explicitly and checks the direction of its largest
    /// edge.
    fn naive_verdict(f: &Chain, h: &Chain, order: &EdgeOrder) -> bool {
        let g = IntersectionGraph::build(f, h).unwrap();
        if g.vertex_count() != g.edge_count() + 1 || !g.is_tree() {
            return false;
        }
        let largest = |p: &[(usize, bool)]| *p.iter().max_by_key(|(a, _)| order.rank(*a)).unwrap();
        for i in 0..f.parts() {
            for j in i + 1..f.parts() {
                let p = g.path(Vertex::F(i), Vertex::F(j)).unwrap();
                if !largest(&p).1 {
                    return false;
                }
            }
        }
        for i in 0..h.parts() {
            for j in i + 1..h.parts() {
                let p = g.path(Vertex::H(i), Vertex::H(j)).unwrap();
                if largest(&p).1 {
                    return false;
                }
            }
        }
        true
    }

    fn brute_force_count<A: Matroid, B: Matroid>(m: &A, n: &B, order: &EdgeOrder) -> u64 {
        let cm = enumerate_maximal_chains(m).unwrap();
        let cn = enumerate_maximal_chains(n).unwrap();
        let mut count = 0;
        for f in &cm {
            for h in &cn {
                let fast = is_intersecting_arboreal_pair(f, h, order).unwrap().is_intersecting();
                assert_eq!(fast, naive_verdict(f, h, order), "{f:?} {h:?}");
                count += fast as u64;
            }
        }
        count
    }

    #[test]
    fn k4_minus_example_graph() {
        let f1 = chain(5, &[&[1], &[1, 3]]);
        let h1 = chain(5, &[&[2], &[2, 4]]);
        let g = IntersectionGraph::build(&f1, &h1).unwrap();
        assert_eq!(g.left(), &[s(&[1]), s(&[3]), s(&[2, 4, 5])]);
        assert_eq!(g.right(), &[s(&[2]), s(&[4]), s(&[1, 3, 5])]);
        assert!(g.is_tree());
        assert_eq!(g.edge_of(0), (0, 2));
        assert_eq!(g.edge_of(2), (1, 2));
        // F̃_1 -> F̃_2 uses edges 1 then 3, and 1 is walked F -> H
        assert_eq!(g.path(Vertex::F(0), Vertex::F(1)).unwrap(), vec![(0, true), (2, false)]);
        let order = EdgeOrder::label_order(5);
        assert_eq!(
            is_intersecting_arboreal_pair(&f1, &h1, &order).unwrap(),
            PairVerdict::Intersecting
        );
        let f2 = chain(5, &[&[1], &[1, 4]]);
        let h2 = chain(5, &[&[2], &[2, 3]]);
        assert!(is_intersecting_arboreal_pair(&f2, &h2, &order)
            .unwrap()
            .is_intersecting());
        assert_eq!(
            is_intersecting_arboreal_pair(&f1, &f1, &order).unwrap(),
            PairVerdict::Cycle
        );
    }

    #[test]
    fn triangle_pairs() {
        let order = EdgeOrder::label_order(3);
        let f = chain(3, &[&[1]]);
        let h = chain(3, &[&[2]]);
        let g = IntersectionGraph::build(&f, &h).unwrap();
        assert!(g.is_tree());
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        let h3 = chain(3, &[&[3]]);
        assert!(matches!(
            is_intersecting_arboreal_pair(&f, &h3, &order).unwrap(),
            PairVerdict::NotHMaximal { .. }
        ));
        assert_eq!(realisation_number(&fixtures::k3(), &order).unwrap(), 1);
    }

    #[test]
    fn non_maximal_and_mismatch() {
        let order = EdgeOrder::label_order(5);
        let short = chain(5, &[&[1, 2, 5]]);
        let h = chain(5, &[&[2], &[2, 4]]);
        assert_eq!(
            is_intersecting_arboreal_pair(&short, &h, &order).unwrap(),
            PairVerdict::NonMaximal
        );
        let other = chain(4, &[&[1]]);
        assert!(IntersectionGraph::build(&short, &other).is_err());
    }

    #[test]
    fn fixture_counts() {
        let order = |g: &LabelledGraph| EdgeOrder::label_order(g.edge_count());
        let k4m = fixtures::k4_minus();
        let m = GraphicMatroid::new(&k4m).unwrap();
        let rep = count_intersecting_pairs(&m, &m, &order(&k4m), &CountOptions::default()).unwrap();
        assert_eq!((rep.ordered, rep.unordered), (4, 2));
        assert_eq!(
            realisation_number(&fixtures::prism3(), &order(&fixtures::prism3())).unwrap(),
            12
        );
        assert_eq!(
            realisation_number(&fixtures::k33(), &order(&fixtures::k33())).unwrap(),
            8
        );
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        for g in [fixtures::k3(), fixtures::k4_minus(), fixtures::prism3()] {
            let m = GraphicMatroid::new(&g).unwrap();
            for seed in 0..3 {
                let order = EdgeOrder::random(g.edge_count(), seed);
                let fast = count_intersecting_pairs(&m, &m, &order, &CountOptions::default()).unwrap();
                assert_eq!(fast.ordered, brute_force_count(&m, &m, &order));
            }
        }
    }

    #[test]
    fn split_count_matches_enumeration() {
        let by = |method| CountOptions {
            method,
            ..CountOptions::default()
        };
        let graphs = [
            fixtures::k3(),
            fixtures::k4_minus(),
            fixtures::prism3(),
            fixtures::k33(),
        ];
        for g in &graphs {
            let m = GraphicMatroid::new(g).unwrap();
            for seed in 0..4 {
                let order = EdgeOrder::random(g.edge_count(), seed);
                let a = count_intersecting_pairs(&m, &m, &order, &by(CountMethod::Split)).unwrap();
                let b = count_intersecting_pairs(&m, &m, &order, &by(CountMethod::Enumerate)).unwrap();
                assert_eq!(a.ordered, b.ordered, "{g:?} seed {seed}");
                let k = m.full_rank();
                let u = UniformMatroid::new(g.edge_count(), g.edge_count() + 1 - k).unwrap();
                let a = count_intersecting_pairs(&u, &m, &order, &by(CountMethod::Split)).unwrap();
                let b = count_intersecting_pairs(&u, &m, &order, &by(CountMethod::Enumerate)).unwrap();
                assert_eq!(a.ordered, b.ordered);
            }
        }
        // unequal graphic matroids
        let k4m = GraphicMatroid::new(&fixtures::k4_minus()).unwrap();
        let other = LabelledGraph::from_one_based(4, &[(1, 2), (1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let other = GraphicMatroid::new(&other).unwrap();
        for seed in 0..6 {
            let order = EdgeOrder::random(5, seed);
            let a = count_intersecting_pairs(&k4m, &other, &order, &by(CountMethod::Split)).unwrap();
            let b = count_intersecting_pairs(&k4m, &other, &order, &by(CountMethod::Enumerate)).unwrap();
            assert_eq!(a.ordered, b.ordered);
        }
    }

    #[test]
    fn witnesses_are_verified_by_path_walking() {
        let g = fixtures::prism3();
        let m = GraphicMatroid::new(&g).unwrap();
        let order = EdgeOrder::label_order(9);
        let opts = CountOptions {
            witnesses: true,
            ..CountOptions::default()
        };
        let rep = count_intersecting_pairs(&m, &m, &order, &opts).unwrap();
        assert_eq!(rep.witnesses.len() as u64, rep.ordered);
        for w in &rep.witnesses {
            let f = Chain::maximal(&m, w.chain_f.clone()).unwrap();
            let h = Chain::maximal(&m, w.chain_h.clone()).unwrap();
            assert!(naive_verdict(&f, &h, &order));
            assert_ne!(f, h);
            assert_eq!(w.tree_edges.len(), 9);
            // the swapped pair is also a witness
            assert!(rep
                .witnesses
                .iter()
                .any(|v| v.chain_f == w.chain_h && v.chain_h == w.chain_f));
        }
        let json = serde_json::to_value(&rep.witnesses[0]).unwrap();
        assert!(json.get("chainF").is_some() && json.get("treeEdges").is_some());
    }

    #[test]
    fn uniform_pairs_give_nbc() {
        let order = |g: &LabelledGraph| EdgeOrder::label_order(g.edge_count());
        for (g, nbc) in [(fixtures::k3(), 2), (fixtures::k4_minus(), 4), (fixtures::prism3(), 26)] {
            let m = GraphicMatroid::new(&g).unwrap();
            assert_eq!(nbc_via_uniform_pairs(&m, &order(&g)).unwrap(), nbc);
        }
        let u = UniformMatroid::new(5, 3).unwrap();
        let m = GraphicMatroid::new(&fixtures::k4_minus()).unwrap();
        let order = EdgeOrder::label_order(5);
        assert_eq!(brute_force_count(&u, &m, &order), 4);
    }

    #[test]
    fn roles_can_be_swapped() {
        let u = UniformMatroid::new(9, 5).unwrap();
        let m = GraphicMatroid::new(&fixtures::k33()).unwrap();
        let order = EdgeOrder::random(9, 5);
        let opts = CountOptions::default();
        assert_eq!(
            count_intersecting_pairs(&u, &m, &order, &opts).unwrap().ordered,
            count_intersecting_pairs(&m, &u, &order, &opts).unwrap().ordered
        );
    }

    #[test]
    fn bigraphs() {
        let order = EdgeOrder::label_order(5);
        let k4m = fixtures::k4_minus();
        assert_eq!(bigraph_laman_number(&k4m, &k4m, None, &order).unwrap(), 4);
        let p = fixtures::prism3();
        assert_eq!(
            bigraph_laman_number(&p, &p, None, &EdgeOrder::label_order(9)).unwrap(),
            24
        );
        let k3 = fixtures::k3();
        let reglued = LabelledGraph::new(3, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(
            bigraph_laman_number(&k3, &reglued, None, &EdgeOrder::label_order(3)),
            Err(Error::RankMismatch {
                rank_sum: 3,
                expected: 4
            })
        );
        let looped = LabelledGraph::new(3, vec![(0, 1), (1, 2), (2, 2)]).unwrap();
        assert_eq!(
            bigraph_laman_number(&k3, &looped, None, &EdgeOrder::label_order(3)),
            Err(Error::Loop(2))
        );
        // gluing along an automorphism changes nothing
        assert_eq!(
            bigraph_laman_number(&k4m, &k4m, Some(&[1, 0, 3, 2, 4]), &order).unwrap(),
            4
        );
    }

    #[test]
    fn errors() {
        let order = EdgeOrder::label_order(4);
        let c4 = LabelledGraph::from_one_based(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert_eq!(realisation_number(&c4, &order), Err(Error::NotMinimallyRigid));
        let m = GraphicMatroid::new(&c4).unwrap();
        assert!(matches!(
            count_intersecting_pairs(&m, &m, &order, &CountOptions::default()),
            Err(Error::RankMismatch { .. })
        ));
        let past = CountOptions {
            deadline: Some(Instant::now()),
            ..CountOptions::default()
        };
        let big = fixtures::fig2();
        assert_eq!(
            realisation_report(&big, &EdgeOrder::label_order(13), &past),
            Err(Error::Timeout)
        );
    }
}
