//! Generation of minimally 2-rigid graphs by Henneberg moves.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::canon::{canonical_form, CanonicalForm};
use super::LabelledGraph;
use crate::error::{Error, Result};

pub const MAX_HENNEBERG_VERTICES: usize = 10;

fn children(parent: &CanonicalForm) -> BTreeSet<CanonicalForm> {
    let n = parent.n;
    let w = n;
    let mut out = BTreeSet::new();
    let mut push = |edges: Vec<(usize, usize)>| {
        let g = LabelledGraph::new(n + 1, edges).expect("new vertex is in range");
        out.insert(canonical_form(&g).expect("Henneberg moves keep graphs simple"));
    };
    // Type I: a new vertex joined to two existing ones.
    for u in 0..n {
        for v in u + 1..n {
            let mut e = parent.edges.clone();
            e.extend([(u, w), (v, w)]);
            push(e);
        }
    }
    // Type II: subdivide an edge uv and join the new vertex to a third one.
    for (i, &(u, v)) in parent.edges.iter().enumerate() {
        for x in (0..n).filter(|&x| x != u && x != v) {
            let mut e = parent.edges.clone();
            e.swap_remove(i);
            e.extend([(u, w), (v, w), (x, w)]);
            push(e);
        }
    }
    out
}

/// All minimally 2-rigid graphs on `n` vertices up to isomorphism, in
/// canonical-form order.
pub fn henneberg_generate(n: usize) -> Result<Vec<LabelledGraph>> {
    if !(3..=MAX_HENNEBERG_VERTICES).contains(&n) {
        return Err(Error::Unsupported(format!(
            "Henneberg generation supports 3 <= n <= {MAX_HENNEBERG_VERTICES}, got {n}"
        )));
    }
    let k3 = LabelledGraph::new(3, vec![(0, 1), (1, 2), (0, 2)])?;
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::from([canonical_form(&k3)?]);
    for _ in 3..n {
        let parents: Vec<CanonicalForm> = level.into_iter().collect();
        level = parents.par_iter().map(children).reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    }
    Ok(level.iter().map(CanonicalForm::to_graph).collect())
}
