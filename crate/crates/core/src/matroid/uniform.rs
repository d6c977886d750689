use super::{Matroid, MatroidKind, TwoVarPoly};
use crate::bitset::{EdgeSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// `U_{m,s}`: every `s`-subset of `{0, .., m-1}` is a basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniformMatroid {
    m: usize,
    s: usize,
}

impl UniformMatroid {
    pub fn new(m: usize, s: usize) -> Result<Self> {
        if m > MAX_ELEMENTS || s > m {
            return Err(Error::Unsupported(format!("U_{{{m},{s}}} is out of range")));
        }
        Ok(UniformMatroid { m, s })
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn subsets_of_size(m: usize, k: usize, out: &mut Vec<EdgeSet>) {
    fn rec(start: usize, m: usize, left: usize, cur: EdgeSet, out: &mut Vec<EdgeSet>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for e in start..=m - left {
            rec(e + 1, m, left - 1, cur.with(e), out);
        }
    }
    if k <= m {
        rec(0, m, k, EdgeSet::EMPTY, out);
    }
}

impl Matroid for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.m
    }

    fn rank(&self, set: EdgeSet) -> usize {
        set.len().min(self.s)
    }

    fn kind(&self) -> MatroidKind {
        MatroidKind::Uniform
    }

    fn closure(&self, set: EdgeSet) -> EdgeSet {
        if set.len() < self.s {
            set
        } else {
            self.ground()
        }
    }

    fn circuits(&self) -> Vec<EdgeSet> {
        let mut out = Vec::new();
        subsets_of_size(self.m, self.s + 1, &mut out);
        out.sort();
        out
    }

    /// Sum over subset sizes of the corank-nullity generating function.
    fn tutte_polynomial(&self) -> TwoVarPoly {
        let (m, s) = (self.m, self.s);
        let mut t = TwoVarPoly::zero();
        for k in 0..=m {
            let r = k.min(s);
            // (x-1)^(s-r) (y-1)^(k-r)
            let term = TwoVarPoly::x_minus_one_pow(s - r).mul(&TwoVarPoly::y_minus_one_pow(k - r));
            t = t.add(&term.scale(binomial(m, k)));
        }
        t
    }
}
