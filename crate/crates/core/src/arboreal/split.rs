//! Counting intersecting arboreal pairs by splitting at the largest element.
//!
//! Let `a` be the largest element of the ground set `G`. In the tree of an
//! intersecting arboreal pair the weight of `a` dominates every path through
//! it, so deleting the edge `e(a)` leaves a part holding the first `k`
//! reduced flats of `F` and the last reduced flats of `H`, and a part holding
//! the rest. With `X = F_k` and `Y = H_l` this means `X ∩ Y = {a}` and
//! `X ∪ Y = G`, and the two parts are themselves intersecting arboreal pairs
//! of `(M|X \ a, N/Y)` and `(M/X, N|Y \ a)`. Conversely any two such pairs
//! glue back along `e(a)`, and every path across the glued edge satisfies the
//! maximality rule automatically. Summing over flats `X` of `M` through `a`
//! whose complement-plus-`a` is a flat of `N` gives the count.
//!
//! Minors are kept as `(ground, contracted)` bit sets over the original
//! matroids.

use std::collections::HashMap;
use std::time::Instant;

use super::SearchStats;
use crate::bitset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::EdgeOrder;
use crate::matroid::Matroid;

struct Splitter<'a, A: ?Sized, B: ?Sized> {
    m: &'a A,
    n: &'a B,
    order: &'a EdgeOrder,
    memo: HashMap<(EdgeSet, EdgeSet, EdgeSet), u64>,
    stats: SearchStats,
    deadline: Option<Instant>,
    ticks: u64,
}

impl<A: Matroid + ?Sized, B: Matroid + ?Sized> Splitter<'_, A, B> {
    fn tick(&mut self) -> Result<()> {
        self.ticks += 1;
        if self.ticks.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Error::Timeout);
        }
        Ok(())
    }

    /// Pairs of `(M / cm) | g` and `(N / cn) | g`.
    fn count(&mut self, g: EdgeSet, cm: EdgeSet, cn: EdgeSet) -> Result<u64> {
        if g.is_empty() {
            return Ok(0);
        }
        let rm = self.m.rank(g | cm) - self.m.rank(cm);
        let rn = self.n.rank(g | cn) - self.n.rank(cn);
        if rm + rn != g.len() + 1 {
            return Ok(0);
        }
        let key = (g, cm, cn);
        if let Some(&hit) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(hit);
        }
        self.stats.subproblems += 1;
        let top = self.order.max_of(g).expect("ground is nonempty");
        let rest = g.without(top);
        let mut total = 0u64;
        let mut s = rest.0;
        loop {
            self.tick()?;
            let low = EdgeSet(s);
            let high = rest - low;
            let x = low.with(top);
            let y = high.with(top);
            if self.m.closure(x | cm) & g == x && self.n.closure(y | cn) & g == y {
                let left = if low.is_empty() {
                    1
                } else {
                    self.count(low, cm, cn | y)?
                };
                if left != 0 {
                    let right = if high.is_empty() {
                        1
                    } else {
                        self.count(high, cm | x, cn)?
                    };
                    total += left * right;
                }
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & rest.0;
        }
        self.memo.insert(key, total);
        Ok(total)
    }
}

pub(super) fn count<A: Matroid + ?Sized, B: Matroid + ?Sized>(
    m: &A,
    n: &B,
    order: &EdgeOrder,
    deadline: Option<Instant>,
) -> Result<(u64, SearchStats)> {
    let mut sp = Splitter {
        m,
        n,
        order,
        memo: HashMap::new(),
        stats: SearchStats::default(),
        deadline,
        ticks: 0,
    };
    let total = sp.count(m.ground(), EdgeSet::EMPTY, EdgeSet::EMPTY)?;
    Ok((total, sp.stats))
}
