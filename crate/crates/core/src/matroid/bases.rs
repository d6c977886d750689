use super::{Chain, Matroid};
use crate::bitset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::EdgeOrder;

fn check_order<M: Matroid + ?Sized>(matroid: &M, order: &EdgeOrder) -> Result<()> {
    if order.len() != matroid.ground_size() {
        return Err(Error::GroundMismatch(order.len(), matroid.ground_size()));
    }
    Ok(())
}

/// Independent sets of size `rank(M)` whose every subset avoids `forbidden`,
/// found by growing sets in index order.
fn grow<M: Matroid + ?Sized>(matroid: &M, forbidden: &[EdgeSet]) -> Vec<EdgeSet> {
    fn rec<M: Matroid + ?Sized>(
        matroid: &M,
        forbidden: &[EdgeSet],
        r: usize,
        start: usize,
        cur: EdgeSet,
        out: &mut Vec<EdgeSet>,
    ) {
        if cur.len() == r {
            out.push(cur);
            return;
        }
        let m = matroid.ground_size();
        for e in start..m {
            if m - e < r - cur.len() {
                break;
            }
            let next = cur.with(e);
            if matroid.rank(next) != next.len() {
                continue;
            }
            if forbidden.iter().any(|&b| b.is_subset(next)) {
                continue;
            }
            rec(matroid, forbidden, r, e + 1, next, out);
        }
    }
    let mut out = Vec::new();
    rec(matroid, forbidden, matroid.full_rank(), 0, EdgeSet::EMPTY, &mut out);
    out.sort_unstable();
    out
}

pub fn bases<M: Matroid + ?Sized>(matroid: &M) -> Vec<EdgeSet> {
    grow(matroid, &[])
}

/// `C \ min(C)` for every circuit `C`, deduplicated, in bit order.
pub fn broken_circuits<M: Matroid + ?Sized>(matroid: &M, order: &EdgeOrder) -> Result<Vec<EdgeSet>> {
    check_order(matroid, order)?;
    let mut out: Vec<EdgeSet> = matroid
        .circuits()
        .into_iter()
        .filter_map(|c| order.min_of(c).map(|e| c.without(e)))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn is_nbc_basis<M: Matroid + ?Sized>(matroid: &M, basis: EdgeSet, order: &EdgeOrder) -> Result<bool> {
    let broken = broken_circuits(matroid, order)?;
    Ok(matroid.is_basis(basis) && !broken.iter().any(|&b| b.is_subset(basis)))
}

/// Bases containing no broken circuit, in bit order.
pub fn enumerate_nbc_bases<M: Matroid + ?Sized>(matroid: &M, order: &EdgeOrder) -> Result<Vec<EdgeSet>> {
    let broken = broken_circuits(matroid, order)?;
    Ok(grow(matroid, &broken))
}

pub fn nbc_count<M: Matroid + ?Sized>(matroid: &M, order: &EdgeOrder) -> Result<usize> {
    Ok(enumerate_nbc_bases(matroid, order)?.len())
}

/// For a basis `b_1 > .. > b_r`, the maximal chain with
/// `F_i = cl{b_1, .., b_i}`.
pub fn chain_of_basis<M: Matroid + ?Sized>(matroid: &M, basis: EdgeSet, order: &EdgeOrder) -> Result<Chain> {
    check_order(matroid, order)?;
    if !matroid.is_basis(basis) {
        return Err(Error::NotABasis);
    }
    let desc = order.sorted_desc(basis);
    let mut prefix = EdgeSet::EMPTY;
    let mut flats = Vec::with_capacity(desc.len().saturating_sub(1));
    for &b in desc.iter().take(desc.len().saturating_sub(1)) {
        prefix = prefix.with(b);
        flats.push(matroid.closure(prefix));
    }
    Chain::new(matroid.ground_size(), flats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matroid::{GraphicMatroid, UniformMatroid};

    fn s(v: &[usize]) -> EdgeSet {
        EdgeSet::from_elements(v.iter().map(|x| x - 1))
    }

    fn sets(v: &[&[usize]]) -> Vec<EdgeSet> {
        let mut out: Vec<EdgeSet> = v.iter().map(|x| s(x)).collect();
        out.sort();
        out
    }

    #[test]
    fn prism_counts() {
        let m = GraphicMatroid::new(&fixtures::prism3()).unwrap();
        assert_eq!(m.circuits().len(), 14);
        assert_eq!(bases(&m).len(), 75);
    }

    #[test]
    fn k4_minus_nbc() {
        let m = GraphicMatroid::new(&fixtures::k4_minus()).unwrap();
        let order = EdgeOrder::label_order(5);
        let nbc = enumerate_nbc_bases(&m, &order).unwrap();
        assert_eq!(nbc, sets(&[&[1, 3, 5], &[1, 4, 5], &[2, 3, 5], &[2, 4, 5]]));
    }

    #[test]
    fn triangle_nbc() {
        let k3 = crate::graph::LabelledGraph::from_one_based(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let m = GraphicMatroid::new(&k3).unwrap();
        let nbc = enumerate_nbc_bases(&m, &EdgeOrder::label_order(3)).unwrap();
        assert_eq!(nbc, sets(&[&[1, 3], &[2, 3]]));
    }

    fn digits(words: &str) -> Vec<EdgeSet> {
        let mut out: Vec<EdgeSet> = words
            .split_whitespace()
            .map(|w| s(&w.bytes().map(|c| (c - b'0') as usize).collect::<Vec<_>>()))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn prism_broken_circuits_and_nbc_listing() {
        let m = GraphicMatroid::new(&fixtures::prism3()).unwrap();
        let order = EdgeOrder::label_order(9);
        let broken = broken_circuits(&m, &order).unwrap();
        assert_eq!(
            broken,
            digits("12 68 147 245 357 1257 1345 1467 2347 2458 3567 12567 13458 23467")
        );
        let nbc = enumerate_nbc_bases(&m, &order).unwrap();
        assert_eq!(
            nbc,
            digits(
                "13469 13489 13569 13589 13679 13789 14569 14589 15679 15789 23469 23489 23569 \
                 23589 23679 23789 24679 24789 25679 25789 34569 34589 34679 34789 45679 45789"
            )
        );
    }

    #[test]
    fn nbc_bases_contain_the_minimum_and_match_chains() {
        for g in [fixtures::prism3(), fixtures::k33(), fixtures::k4_minus()] {
            let m = GraphicMatroid::new(&g).unwrap();
            let order = EdgeOrder::label_order(g.edge_count());
            let nbc = enumerate_nbc_bases(&m, &order).unwrap();
            let least = order.min_element();
            for b in bases(&m) {
                let is_nbc = nbc.contains(&b);
                if is_nbc {
                    assert!(b.contains(least));
                }
                // b is nbc iff each b_i is the least element of F_i
                let chain = chain_of_basis(&m, b, &order).unwrap();
                assert!(chain.is_maximal_in(&m));
                let desc = order.sorted_desc(b);
                let mut flats = chain.flats().to_vec();
                flats.push(m.ground());
                let mins_match = desc.iter().zip(&flats).all(|(&bi, &fi)| order.min_of(fi) == Some(bi));
                assert_eq!(mins_match, is_nbc, "basis {b:?}");
            }
        }
    }

    #[test]
    fn chains_from_bases() {
        let m = GraphicMatroid::new(&fixtures::k4_minus()).unwrap();
        let order = EdgeOrder::label_order(5);
        let c = chain_of_basis(&m, s(&[1, 3, 5]), &order).unwrap();
        assert_eq!(c.flats(), &[s(&[1]), s(&[1, 3])]);
        let c = chain_of_basis(&m, s(&[2, 4, 5]), &order).unwrap();
        assert_eq!(c.flats(), &[s(&[2]), s(&[2, 4])]);
        let k3 = crate::graph::LabelledGraph::from_one_based(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let m3 = GraphicMatroid::new(&k3).unwrap();
        let c = chain_of_basis(&m3, s(&[1, 3]), &EdgeOrder::label_order(3)).unwrap();
        assert_eq!(c.flats(), &[s(&[1])]);
    }

    #[test]
    fn greedy_bases_of_chains_reproduce_them() {
        let m = GraphicMatroid::new(&fixtures::prism3()).unwrap();
        let order = EdgeOrder::label_order(9);
        for chain in crate::matroid::enumerate_maximal_chains(&m).unwrap() {
            let picks: Vec<usize> = chain.reduced().iter().map(|&r| order.min_of(r).unwrap()).collect();
            let basis = EdgeSet::from_elements(picks.iter().copied());
            assert!(m.is_basis(basis));
            let rebuilt = chain_of_basis(&m, basis, &order).unwrap();
            let decreasing = picks.windows(2).all(|w| order.rank(w[0]) > order.rank(w[1]));
            if decreasing {
                assert_eq!(rebuilt, chain);
            }
            for (f, g) in chain.flats().iter().zip(rebuilt.flats()) {
                assert_eq!(m.rank(*f), m.rank(*g));
            }
        }
    }

    #[test]
    fn nbc_count_is_order_invariant() {
        for g in [fixtures::prism3(), fixtures::k33(), fixtures::fig2()] {
            let m = GraphicMatroid::new(&g).unwrap();
            let base = nbc_count(&m, &EdgeOrder::label_order(g.edge_count())).unwrap();
            for seed in 0..20 {
                let order = EdgeOrder::random(g.edge_count(), seed);
                assert_eq!(nbc_count(&m, &order).unwrap(), base);
            }
        }
    }

    #[test]
    fn uniform_nbc() {
        // U_{m,s}: nbc bases are the s-sets containing the least element.
        let u = UniformMatroid::new(6, 3).unwrap();
        assert_eq!(nbc_count(&u, &EdgeOrder::identity(6)).unwrap(), 10);
    }

    #[test]
    fn errors() {
        let m = GraphicMatroid::new(&fixtures::k4_minus()).unwrap();
        let order = EdgeOrder::label_order(5);
        assert_eq!(chain_of_basis(&m, s(&[1, 2, 5]), &order), Err(Error::NotABasis));
        assert_eq!(
            enumerate_nbc_bases(&m, &EdgeOrder::label_order(4)),
            Err(Error::GroundMismatch(4, 5))
        );
    }
}
