//! Exact-rational recount of intersecting arboreal pairs.
//!
//! Independently of the combinatorial search, this module draws a concrete
//! rapidly increasing weight vector `α`, solves `y + z = α`, `y_ε = 0` for
//! every pair of maximal chains whose intersection graph is a tree, and
//! tests cone membership directly on the solution.

use std::collections::{BTreeSet, VecDeque};
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::EdgeOrder;
use crate::matroid::{flats_by_rank, Chain, FlatLattice, Matroid};

pub const MAX_RESAMPLES: usize = 8;

/// Per-element weights, increasing along the edge order by a factor of
/// more than 3 at each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaVector {
    values: Vec<BigRational>,
}

impl AlphaVector {
    pub fn from_values(values: Vec<BigRational>) -> Self {
        AlphaVector { values }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        AlphaVector {
            values: values.iter().map(|&v| BigRational::from_integer(v.into())).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, a: usize) -> &BigRational {
        &self.values[a]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `α_{next} > 3 α_{prev} > 0` along the order, checked exactly.
    pub fn is_rapidly_increasing(&self, order: &EdgeOrder) -> bool {
        let three = BigRational::from_integer(3.into());
        let seq: Vec<&BigRational> = (0..order.len()).map(|r| &self.values[order.element_at(r)]).collect();
        seq.first().is_some_and(|v| v.is_positive_value()) && seq.windows(2).all(|w| w[1] > &(&three * w[0]))
    }
}

trait Positive {
    fn is_positive_value(&self) -> bool;
}

impl Positive for BigRational {
    fn is_positive_value(&self) -> bool {
        self > &BigRational::zero()
    }
}

fn draw_alpha(order: &EdgeOrder, rng: &mut ChaCha8Rng) -> AlphaVector {
    let m = order.len();
    // Distinct perturbations, assigned in increasing order so that each
    // ratio exceeds 3 strictly.
    let mut eta = BTreeSet::new();
    while eta.len() < m {
        eta.insert(rng.gen_range(1u32..=100_000));
    }
    let scale = BigInt::from(1_000_000);
    let mut values = vec![BigRational::zero(); m];
    let mut pow = BigInt::one();
    for (rank, e) in eta.into_iter().enumerate() {
        pow *= 3;
        let a = order.element_at(rank);
        values[a] = BigRational::new(&pow * (&scale + BigInt::from(e)), scale.clone());
    }
    AlphaVector { values }
}

/// `α` for the element of rank `i` is `3^{i+1} (1 + η_i / 10^6)` with distinct
/// `η_i ∈ [1, 10^5]` increasing in `i`. Deterministic in `seed`.
pub fn generate_alpha(order: &EdgeOrder, seed: u64) -> AlphaVector {
    draw_alpha(order, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSolution {
    /// Value on each reduced flat of `F`.
    pub y: Vec<BigRational>,
    /// Value on each reduced flat of `H`.
    pub z: Vec<BigRational>,
    /// Elements on the path from each `F̃_i` to the flat holding `ε`.
    pub paths_f: Vec<Vec<usize>>,
    /// Elements on the path from each `H̃_j` to the flat holding `ε`.
    pub paths_h: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairPoint {
    Solution(PairSolution),
    Cycle,
    Disconnected,
}

/// Solves for the unique intersection point of an arboreal pair by
/// alternating sums along tree paths.
pub fn solve_pair_point(f: &Chain, h: &Chain, alpha: &AlphaVector, epsilon: usize) -> Result<PairPoint> {
    let m = f.ground_size();
    if h.ground_size() != m {
        return Err(Error::GroundMismatch(m, h.ground_size()));
    }
    if alpha.len() != m {
        return Err(Error::GroundMismatch(alpha.len(), m));
    }
    if epsilon >= m {
        return Err(Error::InvalidOrder(format!("epsilon {epsilon} is not an element")));
    }
    let fp: Vec<usize> = (0..m).map(|a| f.part_of(a)).collect();
    let hp: Vec<usize> = (0..m).map(|a| h.part_of(a)).collect();
    let (pf, ph) = (f.parts(), h.parts());
    let parent = match tree_shape(&fp, pf, &hp, ph, epsilon) {
        Shape::Cycle => return Ok(PairPoint::Cycle),
        Shape::Disconnected => return Ok(PairPoint::Disconnected),
        Shape::Tree(parent) => parent,
    };
    let path_to_root = |mut v: usize| {
        let mut p = Vec::new();
        while let Some((a, u)) = parent[v] {
            p.push(a);
            v = u;
        }
        p
    };
    let paths_f: Vec<Vec<usize>> = (0..pf).map(path_to_root).collect();
    let paths_h: Vec<Vec<usize>> = (0..ph).map(|j| path_to_root(pf + j)).collect();
    let y = paths_f.iter().map(|p| alternating(p, alpha.values())).collect();
    let z = paths_h.iter().map(|p| alternating(p, alpha.values())).collect();
    Ok(PairPoint::Solution(PairSolution { y, z, paths_f, paths_h }))
}

enum Shape {
    Cycle,
    Disconnected,
    /// Parent links `(element, vertex)` towards the vertex holding `ε`.
    Tree(Vec<Option<(usize, usize)>>),
}

/// Vertices `0..pf` are the reduced flats of `F`, `pf..pf + ph` those of `H`.
fn tree_shape(fp: &[usize], pf: usize, hp: &[usize], ph: usize, epsilon: usize) -> Shape {
    let n = pf + ph;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (a, (&u, &v)) in fp.iter().zip(hp).enumerate() {
        adj[u].push((a, pf + v));
        adj[pf + v].push((a, u));
    }
    // BFS forest, rooted first at the flat holding ε. Any edge left over
    // beyond the forest closes a cycle.
    let root = fp[epsilon];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree_edges = 0;
    let mut components = 0;
    for start in std::iter::once(root).chain(0..n) {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(a, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((a, v));
                    tree_edges += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    if tree_edges < fp.len() {
        Shape::Cycle
    } else if components > 1 {
        Shape::Disconnected
    } else {
        Shape::Tree(parent)
    }
}

/// `α_{a_1} - α_{a_2} + α_{a_3} - ..` along a path.
fn alternating<T: Clone + Num>(path: &[usize], alpha: &[T]) -> T {
    path.iter().enumerate().fold(T::zero(), |acc, (k, &a)| {
        if k % 2 == 0 {
            acc + alpha[a].clone()
        } else {
            acc - alpha[a].clone()
        }
    })
}

enum Membership {
    Inside,
    Outside,
    Tie,
}

fn strictly_decreasing<T: PartialOrd>(values: &[T]) -> Membership {
    let mut tie = false;
    for w in values.windows(2) {
        if w[0] < w[1] {
            return Membership::Outside;
        }
        tie |= w[0] == w[1];
    }
    if tie {
        Membership::Tie
    } else {
        Membership::Inside
    }
}

fn member<T: PartialOrd>(y: &[T], z: &[T]) -> Membership {
    match (strictly_decreasing(y), strictly_decreasing(z)) {
        (Membership::Outside, _) | (_, Membership::Outside) => Membership::Outside,
        (Membership::Tie, _) | (_, Membership::Tie) => Membership::Tie,
        _ => Membership::Inside,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleReport {
    pub alpha_seed: u64,
    pub epsilon: usize,
    pub count: u64,
    pub degenerate_retries: usize,
}

struct Pass<'a, T> {
    fp: Vec<usize>,
    pf: usize,
    hp: Vec<usize>,
    lattice: &'a FlatLattice,
    alpha: &'a [T],
    epsilon: usize,
    tie: &'a AtomicBool,
    count: u64,
}

impl<T: Clone + Num + PartialOrd> Pass<'_, T> {
    /// Grows chains of `N`, dropping any prefix whose intersection graph
    /// already has a cycle; trees are solved and tested at the leaves.
    fn walk(&mut self, level: usize, idx: usize, comp: &[u8]) {
        if self.tie.load(Ordering::Relaxed) {
            return;
        }
        let prev = self.lattice.level(level)[idx];
        for &c in self.lattice.cover_ids(level, idx) {
            let flat = self.lattice.level(level + 1)[c as usize];
            let reduced = flat - prev;
            let mut next = comp.to_vec();
            let h = (self.pf + level) as u8;
            let mut acyclic = true;
            for a in reduced {
                self.hp[a] = level;
                let root = next[self.fp[a]];
                if root == h {
                    acyclic = false;
                    break;
                }
                for label in next.iter_mut() {
                    if *label == root {
                        *label = h;
                    }
                }
            }
            if !acyclic {
                continue;
            }
            if level + 1 == self.lattice.rank() {
                self.leaf();
            } else {
                self.walk(level + 1, c as usize, &next);
            }
        }
    }

    fn leaf(&mut self) {
        let ph = self.lattice.rank();
        let Shape::Tree(parent) = tree_shape(&self.fp, self.pf, &self.hp, ph, self.epsilon) else {
            return;
        };
        let value = |mut v: usize| {
            let mut path = Vec::new();
            while let Some((a, u)) = parent[v] {
                path.push(a);
                v = u;
            }
            alternating(&path, self.alpha)
        };
        let y: Vec<T> = (0..self.pf).map(value).collect();
        let z: Vec<T> = (0..ph).map(|j| value(self.pf + j)).collect();
        match member(&y, &z) {
            Membership::Inside => self.count += 1,
            Membership::Tie => self.tie.store(true, Ordering::Relaxed),
            Membership::Outside => {}
        }
    }
}

/// Rescales `α` to integers by the common denominator when every path sum
/// fits in an `i128`. Scaling by a positive constant preserves every sign
/// and tie, so the verdicts are unchanged.
fn scaled_integers(alpha: &AlphaVector) -> Option<Vec<i128>> {
    let den = alpha.values().iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = alpha.values().iter().map(|v| v.numer() * (&den / v.denom())).collect();
    let total: BigInt = ints.iter().map(|v| v.abs()).sum();
    total.to_i128()?;
    ints.iter().map(|v| v.to_i128()).collect()
}

fn count_pairs<T: Clone + Num + PartialOrd + Sync>(
    lm: &FlatLattice,
    ln: &FlatLattice,
    alpha: &[T],
    epsilon: usize,
    tie: &AtomicBool,
) -> u64 {
    let atoms: Vec<usize> = (0..lm.level(1).len()).collect();
    atoms
        .par_iter()
        .flat_map_iter(|&a| lm.chains_through_atom(a))
        .map(|f| {
            let m = f.ground_size();
            let pf = f.parts();
            let comp: Vec<u8> = (0..(pf + ln.rank()) as u8).collect();
            let mut pass = Pass {
                fp: (0..m).map(|a| f.part_of(a)).collect(),
                pf,
                hp: vec![0; m],
                lattice: ln,
                alpha,
                epsilon,
                tie,
                count: 0,
            };
            pass.walk(0, 0, &comp);
            pass.count
        })
        .sum()
}

/// Counts pairs `(F, H)` whose exact intersection point lies in both cones,
/// for one fixed `α`. `Ok(None)` signals a tie (non-generic `α`).
pub fn oracle_count_with_alpha<A: Matroid + ?Sized, B: Matroid + ?Sized>(
    m: &A,
    n: &B,
    alpha: &AlphaVector,
    epsilon: usize,
) -> Result<Option<u64>> {
    let size = m.ground_size();
    if n.ground_size() != size || alpha.len() != size {
        return Err(Error::GroundMismatch(n.ground_size(), size));
    }
    let rank_sum = m.full_rank() + n.full_rank();
    if rank_sum != size + 1 {
        return Err(Error::RankMismatch {
            rank_sum,
            expected: size + 1,
        });
    }
    if epsilon >= size {
        return Err(Error::InvalidOrder(format!("epsilon {epsilon} is not an element")));
    }
    let lm = flats_by_rank(m)?;
    let ln = flats_by_rank(n)?;
    if lm.rank() + ln.rank() > 255 {
        return Err(Error::Unsupported("ground set too large for the oracle".into()));
    }
    let tie = AtomicBool::new(false);
    let count = match scaled_integers(alpha) {
        Some(ints) => count_pairs(&lm, &ln, &ints, epsilon, &tie),
        None => count_pairs(&lm, &ln, alpha.values(), epsilon, &tie),
    };
    if tie.load(Ordering::Relaxed) {
        return Ok(None);
    }
    Ok(Some(count))
}

/// Draws `α` from `seed`, resampling from the same stream on ties, at most
/// [`MAX_RESAMPLES`] times.
pub fn oracle_count<A: Matroid + ?Sized, B: Matroid + ?Sized>(
    m: &A,
    n: &B,
    order: &EdgeOrder,
    seed: u64,
    epsilon: usize,
) -> Result<OracleReport> {
    if order.len() != m.ground_size() {
        return Err(Error::GroundMismatch(order.len(), m.ground_size()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for retries in 0..=MAX_RESAMPLES {
        let alpha = draw_alpha(order, &mut rng);
        debug_assert!(alpha.is_rapidly_increasing(order));
        if let Some(count) = oracle_count_with_alpha(m, n, &alpha, epsilon)? {
            return Ok(OracleReport {
                alpha_seed: seed,
                epsilon,
                count,
                degenerate_retries: retries,
            });
        }
    }
    Err(Error::Genericity(MAX_RESAMPLES))
}
