//! Upper and lower bounds on `c2` from nbc-bases, plus the search for edge
//! orders with many realisation bases.

use std::cmp::Reverse;
use std::collections::HashMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arboreal::{check_laman, realisation_number};
use crate::bitset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{EdgeOrder, LabelledGraph};
use crate::matroid::{bases, enumerate_nbc_bases, GraphicMatroid, Matroid};

/// Largest ground set searched over all `m!` orders.
pub const MAX_EXHAUSTIVE: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NbcBound {
    pub nbc_count: usize,
    pub upper_bound: usize,
    /// The count is expected to be even; an odd value is reported rather
    /// than silently floored.
    pub odd: bool,
}

/// `floor(nbc(M_G) / 2)`, an upper bound on `c2(G)`.
pub fn nbc_upper_bound(graph: &LabelledGraph) -> Result<NbcBound> {
    check_laman(graph)?;
    let m = GraphicMatroid::new(graph)?;
    let nbc = enumerate_nbc_bases(&m, &EdgeOrder::label_order(m.ground_size()))?.len();
    Ok(NbcBound {
        nbc_count: nbc,
        upper_bound: nbc / 2,
        odd: nbc % 2 == 1,
    })
}

/// `(E \ B) ∪ {min(E)}`.
pub fn partner(basis: EdgeSet, ground_size: usize, order: &EdgeOrder) -> EdgeSet {
    (EdgeSet::full(ground_size) - basis).with(order.min_element())
}

/// nbc-bases `B` whose partner `(E \ B) ∪ {min(E)}` is also an nbc-basis,
/// in bit order.
pub fn realisation_bases<M: Matroid + ?Sized>(matroid: &M, order: &EdgeOrder) -> Result<Vec<EdgeSet>> {
    let nbc = enumerate_nbc_bases(matroid, order)?;
    let size = matroid.ground_size();
    Ok(nbc
        .iter()
        .copied()
        .filter(|&b| nbc.binary_search(&partner(b, size, order)).is_ok())
        .collect())
}

/// All bases with their fundamental circuits, so that the nbc property
/// under a new order costs a few rank comparisons.
struct BasisTable {
    /// For each basis, `(e, C(B, e))` for every `e ∉ B`.
    fundamental: Vec<Vec<(usize, EdgeSet)>>,
    /// `partner[b][e]`: index of `(E \ B) ∪ {e}` when that is a basis.
    partner: Vec<Vec<Option<u32>>>,
}

impl BasisTable {
    fn new<M: Matroid + ?Sized>(matroid: &M) -> Self {
        let all = bases(matroid);
        let size = matroid.ground_size();
        let index: HashMap<EdgeSet, u32> = all.iter().enumerate().map(|(i, &b)| (b, i as u32)).collect();
        let full = EdgeSet::full(size);
        let fundamental = all
            .iter()
            .map(|&b| {
                (full - b)
                    .iter()
                    .map(|e| {
                        let circuit = matroid
                            .circuits()
                            .into_iter()
                            .find(|c| c.contains(e) && c.without(e).is_subset(b))
                            .expect("fundamental circuit exists");
                        (e, circuit)
                    })
                    .collect()
            })
            .collect();
        let partner = all
            .iter()
            .map(|&b| (0..size).map(|e| index.get(&(full - b).with(e)).copied()).collect())
            .collect();
        BasisTable { fundamental, partner }
    }

    fn is_nbc(&self, b: usize, rank: &[usize]) -> bool {
        // B contains a broken circuit exactly when some e ∉ B is the minimum
        // of its fundamental circuit.
        self.fundamental[b]
            .iter()
            .all(|&(e, c)| c.without(e).iter().any(|f| rank[f] < rank[e]))
    }

    fn count(&self, rank: &[usize]) -> usize {
        let min = rank.iter().position(|&r| r == 0).expect("nonempty order");
        let nbc: Vec<bool> = (0..self.fundamental.len()).map(|b| self.is_nbc(b, rank)).collect();
        (0..nbc.len())
            .filter(|&b| nbc[b] && self.partner[b][min].is_some_and(|p| nbc[p as usize]))
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrderSearch {
    /// Edges from the `≺`-maximum down.
    pub order: Vec<usize>,
    pub count: usize,
    /// Whether every order was examined.
    pub certified: bool,
    pub orders_examined: u64,
}

impl OrderSearch {
    pub fn edge_order(&self) -> EdgeOrder {
        EdgeOrder::from_descending(&self.order).expect("search yields permutations")
    }
}

#[derive(Clone, Debug)]
pub enum SearchBudget {
    /// All `m!` orders; requires `m ≤ MAX_EXHAUSTIVE`.
    Exhaustive,
    /// Random orders improved by transpositions until no swap helps.
    Random {
        restarts: usize,
        seed: u64,
        deadline: Option<Instant>,
    },
}

impl SearchBudget {
    pub fn for_size(m: usize, seed: u64) -> Self {
        if m <= MAX_EXHAUSTIVE {
            SearchBudget::Exhaustive
        } else {
            SearchBudget::Random {
                restarts: 64,
                seed,
                deadline: None,
            }
        }
    }
}

fn ranks_of(seq: &[usize]) -> Vec<usize> {
    let m = seq.len();
    let mut rank = vec![0; m];
    for (pos, &e) in seq.iter().enumerate() {
        rank[e] = m - 1 - pos;
    }
    rank
}

/// Larger count wins; ties go to the lexicographically smaller sequence.
fn better(a: (usize, &[usize]), b: (usize, &[usize])) -> bool {
    (a.0, Reverse(a.1)) > (b.0, Reverse(b.1))
}

fn exhaustive(table: &BasisTable, m: usize) -> OrderSearch {
    let results: Vec<(usize, Vec<usize>, u64)> = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut seq: Vec<usize> = std::iter::once(first).chain((0..m).filter(|&e| e != first)).collect();
            let mut rank = ranks_of(&seq);
            let mut best = (table.count(&rank), seq.clone());
            let mut examined = 1u64;
            // Heap's algorithm on positions 1..m.
            let k = m - 1;
            let mut c = vec![0usize; k];
            let mut i = 0;
            while i < k {
                if c[i] < i {
                    let j = if i % 2 == 0 { 0 } else { c[i] };
                    let (p, q) = (1 + j, 1 + i);
                    seq.swap(p, q);
                    rank.swap(seq[p], seq[q]);
                    let n = table.count(&rank);
                    examined += 1;
                    if better((n, &seq), (best.0, &best.1)) {
                        best = (n, seq.clone());
                    }
                    c[i] += 1;
                    i = 0;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
            (best.0, best.1, examined)
        })
        .collect();
    let examined = results.iter().map(|r| r.2).sum();
    let (count, order, _) = results
        .into_iter()
        .reduce(|a, b| if better((b.0, &b.1), (a.0, &a.1)) { b } else { a })
        .expect("nonempty ground set");
    OrderSearch {
        order,
        count,
        certified: true,
        orders_examined: examined,
    }
}

fn random_search(table: &BasisTable, m: usize, restarts: usize, seed: u64, deadline: Option<Instant>) -> OrderSearch {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut examined = 0u64;
    'restarts: for _ in 0..restarts.max(1) {
        let mut seq: Vec<usize> = (0..m).collect();
        seq.shuffle(&mut rng);
        let mut cur = table.count(&ranks_of(&seq));
        examined += 1;
        loop {
            let mut improved = false;
            for i in 0..m {
                for j in i + 1..m {
                    if deadline.is_some_and(|d| Instant::now() > d) {
                        break 'restarts;
                    }
                    seq.swap(i, j);
                    let n = table.count(&ranks_of(&seq));
                    examined += 1;
                    if n > cur {
                        cur = n;
                        improved = true;
                    } else {
                        seq.swap(i, j);
                    }
                }
            }
            if !improved {
                break;
            }
        }
        if best.as_ref().is_none_or(|b| better((cur, &seq), (b.0, &b.1))) {
            best = Some((cur, seq));
        }
    }
    let (count, order) = best.unwrap_or_else(|| {
        let seq: Vec<usize> = (0..m).collect();
        (table.count(&ranks_of(&seq)), seq)
    });
    OrderSearch {
        order,
        count,
        certified: false,
        orders_examined: examined,
    }
}

/// Order maximising the number of realisation bases.
pub fn best_order_search<M: Matroid + ?Sized>(matroid: &M, budget: &SearchBudget) -> Result<OrderSearch> {
    matroid.check_loopless()?;
    let m = matroid.ground_size();
    if m == 0 {
        return Err(Error::Unsupported("empty ground set".into()));
    }
    let table = BasisTable::new(matroid);
    match *budget {
        SearchBudget::Exhaustive if m > MAX_EXHAUSTIVE => Err(Error::Unsupported(format!(
            "exhaustive order search is limited to {MAX_EXHAUSTIVE} elements, got {m}"
        ))),
        SearchBudget::Exhaustive => Ok(exhaustive(&table, m)),
        SearchBudget::Random {
            restarts,
            seed,
            deadline,
        } => Ok(random_search(&table, m, restarts, seed, deadline)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JacksonOwen {
    pub c2: u64,
    /// `2^{n-3}`, rounded up to 1 below three vertices.
    pub threshold: u64,
    pub satisfied: bool,
}

pub fn jackson_owen_threshold(n: usize) -> u64 {
    1u64 << n.saturating_sub(3).min(63)
}

/// Compares `c2(G)` with `2^{n-3}`.
pub fn check_jackson_owen(graph: &LabelledGraph) -> Result<JacksonOwen> {
    let c2 = realisation_number(graph, &EdgeOrder::label_order(graph.edge_count()))?;
    Ok(jackson_owen_from(c2, graph.vertex_count()))
}

pub fn jackson_owen_from(c2: u64, n: usize) -> JacksonOwen {
    let threshold = jackson_owen_threshold(n);
    JacksonOwen {
        c2,
        threshold,
        satisfied: c2 >= threshold,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub c2: Option<u64>,
    pub nbc_count: usize,
    pub upper_bound: usize,
    pub nbc_odd: bool,
    /// Edge names from the `≺`-maximum down.
    pub order: Vec<String>,
    pub realisation_basis_count: usize,
    pub lower_bound: usize,
    pub best_order: Option<BestOrder>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BestOrder {
    pub order: Vec<String>,
    pub count: usize,
    pub certified: bool,
}

impl BoundReport {
    /// `lowerBound ≤ c2 ≤ upperBound` when `c2` is known.
    pub fn is_consistent(&self) -> bool {
        self.realisation_basis_count.is_multiple_of(2)
            && self
                .c2
                .is_none_or(|c| self.lower_bound as u64 <= c && c <= self.upper_bound as u64)
    }
}

#[derive(Clone, Debug, Default)]
pub struct BoundOptions {
    pub with_c2: bool,
    pub search: Option<SearchBudget>,
}

pub fn bound_report(graph: &LabelledGraph, id: &str, order: &EdgeOrder, opts: &BoundOptions) -> Result<BoundReport> {
    check_laman(graph)?;
    let m = GraphicMatroid::new(graph)?;
    if order.len() != m.ground_size() {
        return Err(Error::GroundMismatch(order.len(), m.ground_size()));
    }
    let nbc = enumerate_nbc_bases(&m, order)?.len();
    let rb = realisation_bases(&m, order)?.len();
    let names = |seq: &[usize]| seq.iter().map(|&e| graph.edge_name(e)).collect::<Vec<_>>();
    let c2 = if opts.with_c2 {
        Some(realisation_number(graph, order)?)
    } else {
        None
    };
    let best_order = match &opts.search {
        Some(budget) => {
            let found = best_order_search(&m, budget)?;
            Some(BestOrder {
                order: names(&found.order),
                count: found.count,
                certified: found.certified,
            })
        }
        None => None,
    };
    Ok(BoundReport {
        graph: id.to_string(),
        n: graph.vertex_count(),
        m: graph.edge_count(),
        c2,
        nbc_count: nbc,
        upper_bound: nbc / 2,
        nbc_odd: nbc % 2 == 1,
        order: names(&order.descending()),
        realisation_basis_count: rb,
        lower_bound: rb / 2,
        best_order,
    })
}
