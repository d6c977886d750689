use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeMap, Serializer};

use super::Matroid;
use crate::bitset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::LabelledGraph;

/// Integer polynomial in `x` and `y`, stored sparsely by exponent pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoVarPoly {
    terms: BTreeMap<(u32, u32), i64>,
}

impl TwoVarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(i: u32, j: u32, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&(i, j));
        }
    }

    /// `(x - 1)^k`.
    pub fn x_minus_one_pow(k: usize) -> Self {
        let mut p = Self::zero();
        for (i, c) in binomial_row(k).into_iter().enumerate() {
            let sign = if (k - i).is_multiple_of(2) { 1 } else { -1 };
            p.add_term(i as u32, 0, sign * c);
        }
        p
    }

    /// `(y - 1)^k`.
    pub fn y_minus_one_pow(k: usize) -> Self {
        let mut p = Self::zero();
        for (j, c) in binomial_row(k).into_iter().enumerate() {
            let sign = if (k - j).is_multiple_of(2) { 1 } else { -1 };
            p.add_term(0, j as u32, sign * c);
        }
        p
    }

    pub fn coefficient(&self, i: u32, j: u32) -> i64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), &c) in &other.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), &a) in &self.terms {
            for (&(k, l), &b) in &other.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero();
        for (&(i, j), &a) in &self.terms {
            out.add_term(i, j, a * c);
        }
        out
    }

    pub fn times_x(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(i, j), &c)| ((i + 1, j), c)).collect(),
        }
    }

    pub fn times_y(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(i, j), &c)| ((i, j + 1), c)).collect(),
        }
    }

    pub fn eval(&self, x: i64, y: i64) -> i128 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c as i128 * (x as i128).pow(i) * (y as i128).pow(j))
            .sum()
    }
}

fn binomial_row(k: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..k {
        let mut next = vec![1i64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

impl Serialize for TwoVarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (&(i, j), c) in self.terms.iter().rev() {
            map.serialize_entry(&format!("x^{i} y^{j}"), c)?;
        }
        map.end()
    }
}

impl fmt::Display for TwoVarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, i64)> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), &c)| {
                let mono = [(i, "x"), (j, "y")]
                    .iter()
                    .filter(|(e, _)| *e > 0)
                    .map(|&(e, v)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                    .collect::<Vec<_>>()
                    .join("");
                (mono, c)
            })
            .collect();
        write_terms(f, &terms)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(String, i64)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (mono, c)) in terms.iter().enumerate() {
        let (sign, abs) = (if *c < 0 { "-" } else { "+" }, c.unsigned_abs());
        match (k, sign) {
            (0, "-") => write!(f, "-")?,
            (0, _) => {}
            _ => write!(f, " {sign} ")?,
        }
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs == 1 {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{abs}{mono}")?;
        }
    }
    Ok(())
}

/// Integer polynomial in one variable; `coeffs[i]` multiplies `λ^i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneVarPoly {
    coeffs: Vec<i64>,
}

impl OneVarPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        OneVarPoly { coeffs }
    }

    pub fn coefficient(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn times_lambda(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut c = vec![0];
        c.extend_from_slice(&self.coeffs);
        OneVarPoly { coeffs: c }
    }

    pub fn eval(&self, x: i64) -> i128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * x as i128 + c as i128)
    }
}

impl Serialize for OneVarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nonzero: Vec<(usize, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        let mut map = s.serialize_map(Some(nonzero.len()))?;
        for (i, c) in nonzero {
            map.serialize_entry(&format!("x^{i}"), &c)?;
        }
        map.end()
    }
}

impl fmt::Display for OneVarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => "λ".to_string(),
                    _ => format!("λ^{i}"),
                };
                (mono, c)
            })
            .collect();
        write_terms(f, &terms)
    }
}

/// The Tutte polynomial straight from the corank-nullity sum over all
/// subsets. Exponential in `m`; meant as a reference.
pub fn tutte_by_subsets<M: Matroid + ?Sized>(matroid: &M) -> TwoVarPoly {
    let m = matroid.ground_size();
    assert!(m <= 24, "subset expansion is limited to 24 elements");
    let r = matroid.full_rank();
    let mut counts: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for bits in 0u64..1 << m {
        let a = EdgeSet(bits);
        let ra = matroid.rank(a);
        *counts.entry((r - ra, a.len() - ra)).or_insert(0) += 1;
    }
    counts.into_iter().fold(TwoVarPoly::zero(), |acc, ((i, j), c)| {
        acc.add(
            &TwoVarPoly::x_minus_one_pow(i)
                .mul(&TwoVarPoly::y_minus_one_pow(j))
                .scale(c),
        )
    })
}

/// `χ_M(λ) = (-1)^r T(1 - λ, 0)`.
pub fn characteristic_polynomial<M: Matroid + ?Sized>(matroid: &M) -> OneVarPoly {
    let t = matroid.tutte_polynomial();
    let r = matroid.full_rank();
    let mut coeffs = vec![0i64; t.terms().map(|((i, _), _)| i as usize + 1).max().unwrap_or(1)];
    for ((i, j), c) in t.terms() {
        if j != 0 {
            continue;
        }
        // (1 - λ)^i
        for (k, b) in binomial_row(i as usize).into_iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            coeffs[k] += sign * b * c;
        }
    }
    if r % 2 == 1 {
        coeffs.iter_mut().for_each(|c| *c = -*c);
    }
    OneVarPoly::new(coeffs)
}

/// `P(G; λ) = λ χ_{M_G}(λ)`, valid for connected graphs.
pub fn chromatic_polynomial(graph: &LabelledGraph) -> Result<OneVarPoly> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = super::GraphicMatroid::new(graph)?;
    Ok(characteristic_polynomial(&m).times_lambda())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicReport {
    pub characteristic: OneVarPoly,
    pub chromatic: Result<OneVarPoly>,
}

pub fn characteristic_and_chromatic(graph: &LabelledGraph) -> Result<CharacteristicReport> {
    let m = super::GraphicMatroid::new(graph)?;
    let characteristic = characteristic_polynomial(&m);
    let chromatic = if graph.is_connected() {
        Ok(characteristic.times_lambda())
    } else {
        Err(Error::Disconnected)
    };
    Ok(CharacteristicReport {
        characteristic,
        chromatic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::EdgeOrder;
    use crate::matroid::{nbc_count, GraphicMatroid, UniformMatroid};

    fn k3() -> LabelledGraph {
        LabelledGraph::from_one_based(3, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn triangle_polynomials() {
        let m = GraphicMatroid::new(&k3()).unwrap();
        let t = m.tutte_polynomial();
        assert_eq!(t.to_string(), "x^2 + x + y");
        let rep = characteristic_and_chromatic(&k3()).unwrap();
        assert_eq!(rep.characteristic, OneVarPoly::new(vec![2, -3, 1]));
        assert_eq!(rep.characteristic.to_string(), "λ^2 - 3λ + 2");
        assert_eq!(rep.chromatic.unwrap(), OneVarPoly::new(vec![0, 2, -3, 1]));
    }

    #[test]
    fn fixture_evaluations() {
        let prism = GraphicMatroid::new(&fixtures::prism3()).unwrap();
        assert_eq!(prism.tutte_polynomial().eval(1, 0), 26);
        assert_eq!(characteristic_polynomial(&prism).coefficient(0).abs(), 26);
        let k4m = fixtures::k4_minus();
        assert_eq!(GraphicMatroid::new(&k4m).unwrap().tutte_polynomial().eval(1, 0), 4);
        assert_eq!(chromatic_polynomial(&k4m).unwrap().coefficient(1).abs(), 4);
    }

    #[test]
    fn deletion_contraction_matches_subset_sum() {
        for g in [
            fixtures::k4_minus(),
            fixtures::prism3(),
            fixtures::k33(),
            fixtures::fig2(),
        ] {
            let m = GraphicMatroid::new(&g).unwrap();
            assert_eq!(m.tutte_polynomial(), tutte_by_subsets(&m), "{g:?}");
        }
        let multi = LabelledGraph::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 2), (0, 2)]).unwrap();
        let m = GraphicMatroid::new(&multi).unwrap();
        assert_eq!(m.tutte_polynomial(), tutte_by_subsets(&m));
    }

    #[test]
    fn uniform_closed_form_matches_subset_sum() {
        for (m, s) in [(4, 2), (6, 3), (7, 7), (5, 0), (8, 5)] {
            let u = UniformMatroid::new(m, s).unwrap();
            assert_eq!(u.tutte_polynomial(), tutte_by_subsets(&u));
        }
    }

    #[test]
    fn evaluations_count_bases_and_nbc() {
        let m = GraphicMatroid::new(&fixtures::k33()).unwrap();
        let t = m.tutte_polynomial();
        assert_eq!(t.eval(1, 1), crate::matroid::bases(&m).len() as i128);
        assert_eq!(t.eval(1, 0), nbc_count(&m, &EdgeOrder::label_order(9)).unwrap() as i128);
        assert_eq!(t.eval(2, 2), 1 << 9);
    }

    #[test]
    fn disconnected_chromatic_is_an_error() {
        let g = LabelledGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        let rep = characteristic_and_chromatic(&g).unwrap();
        assert_eq!(rep.chromatic, Err(Error::Disconnected));
        assert_eq!(rep.characteristic, OneVarPoly::new(vec![1, -2, 1]));
    }

    #[test]
    fn json_shape() {
        let t = GraphicMatroid::new(&k3()).unwrap().tutte_polynomial();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v, serde_json::json!({"x^2 y^0": 1, "x^1 y^0": 1, "x^0 y^1": 1}));
    }
}
