//! Abelian gradings compatible with the bracket.
//!
//! A grading assigns each generator an integer weight tuple such that
//! `w_i + w_j = w_k` whenever `C^k_{ij} ≠ 0`. The maximal such grading is the
//! integer kernel of those constraints; its basis is kept in Hermite normal
//! form so the weights printed for an algebra are canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::enveloping::PbwMonomial;
use crate::linalg::integer_kernel_hnf;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn scaled_add(&mut self, other: &WeightVector, k: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += k * b;
        }
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;

    fn add(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Accepts `(0,2)`, `(0, 2)`, `0,2` and `()`.
impl FromStr for WeightVector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(Self(Vec::new()));
        }
        inner
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| format!("invalid weight entry `{}`", p.trim())))
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    /// `rank × N`; row `r` is the `r`-th weight functional.
    basis: Vec<Vec<i64>>,
    weights: Vec<WeightVector>,
}

impl Grading {
    /// Builds a grading from an explicit basis of weight functionals.
    pub fn from_basis(basis: Vec<Vec<i64>>, dim: usize) -> Self {
        let weights = (0..dim)
            .map(|i| WeightVector(basis.iter().map(|row| row[i]).collect()))
            .collect();
        Self { basis, weights }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn basis_matrix(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn weights(&self) -> &[WeightVector] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &WeightVector {
        &self.weights[i]
    }

    /// Same grading expressed in the basis `T · basis`. `T` should be
    /// unimodular for the result to describe the same lattice.
    pub fn transformed(&self, t: &[Vec<i64>]) -> Self {
        let dim = self.dim();
        let basis = t
            .iter()
            .map(|trow| {
                (0..dim)
                    .map(|i| trow.iter().zip(&self.basis).map(|(a, row)| a * row[i]).sum())
                    .collect()
            })
            .collect();
        Self::from_basis(basis, dim)
    }

    /// `Σ_i ω_i · w_i`
    pub fn monomial_weight(&self, exponents: &[u32]) -> WeightVector {
        let mut w = WeightVector::zero(self.rank());
        for (i, &e) in exponents.iter().enumerate() {
            if e > 0 {
                w.scaled_add(&self.weights[i], i64::from(e));
            }
        }
        w
    }

    pub fn is_consistent(&self, algebra: &LieAlgebra) -> bool {
        algebra.structure_constants().all(|(i, j, terms)| {
            let wij = &self.weights[i] + &self.weights[j];
            terms
                .iter()
                .all(|(k, c)| c.is_zero() || self.weights[*k] == wij)
        })
    }

    /// Partitions the PBW monomials of degree `1..=m` by weight. Monomials in
    /// each class are listed by degree, then in exponent order.
    pub fn weight_classes(&self, m: usize) -> BTreeMap<WeightVector, Vec<PbwMonomial>> {
        let mut classes: BTreeMap<WeightVector, Vec<PbwMonomial>> = BTreeMap::new();
        for mono in monomials_up_to(self.dim(), m) {
            classes
                .entry(self.monomial_weight(mono.exponents()))
                .or_default()
                .push(mono);
        }
        classes
    }
}

/// Maximal grading of `algebra`: one constraint `w_i + w_j − w_k = 0` per
/// nonzero structure constant.
pub fn compute_grading(algebra: &LieAlgebra) -> Grading {
    let n = algebra.dim();
    let mut constraints: Vec<Vec<i64>> = Vec::new();
    for (i, j, terms) in algebra.structure_constants() {
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let mut row = vec![0i64; n];
            row[i] += 1;
            row[j] += 1;
            row[*k] -= 1;
            if !constraints.contains(&row) {
                constraints.push(row);
            }
        }
    }
    Grading::from_basis(integer_kernel_hnf(&constraints, n), n)
}

/// All PBW monomials in `dim` generators of total degree `1..=m`, ordered by
/// degree and then lexicographically descending in the exponents.
pub fn monomials_up_to(dim: usize, m: usize) -> Vec<PbwMonomial> {
    let mut out = Vec::new();
    for d in 1..=m {
        let mut exps = vec![0u32; dim];
        fill(&mut exps, 0, d as u32, &mut out);
    }
    out
}

fn fill(exps: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<PbwMonomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = remaining;
        out.push(PbwMonomial::from_exponents(exps.clone()));
        exps[pos] = 0;
        return;
    }
    if exps.is_empty() {
        return;
    }
    for e in (0..=remaining).rev() {
        exps[pos] = e;
        fill(exps, pos + 1, remaining - e, out);
    }
    exps[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LieAlgebraBuilder;
    use crate::rational::int;

    fn filiform4() -> LieAlgebra {
        let mut b = LieAlgebraBuilder::new("L4", ["e1", "e2", "e3", "e4"].map(String::from).to_vec());
        b.bracket(1, 3, [(0, int(1))]).unwrap();
        b.bracket(2, 3, [(1, int(1))]).unwrap();
        b.build()
    }

    #[test]
    fn filiform4_grading() {
        let g = compute_grading(&filiform4());
        assert_eq!(g.rank(), 2);
        assert_eq!(g.basis_matrix(), &[vec![1, 0, -1, 1], vec![0, 1, 2, -1]]);
        assert!(g.is_consistent(&filiform4()));
        assert_eq!(g.monomial_weight(&[0, 2, 0, 0]), WeightVector(vec![0, 2]));
        assert_eq!(g.monomial_weight(&[0, 0, 0, 0]), WeightVector::zero(2));
    }

    #[test]
    fn filiform4_classes() {
        let g = compute_grading(&filiform4());
        let classes = g.weight_classes(2);
        assert_eq!(classes.values().map(Vec::len).sum::<usize>(), 14);
        let w = g.monomial_weight(&[0, 2, 0, 0]);
        let class: Vec<&[u32]> = classes[&w].iter().map(|m| m.exponents()).collect();
        assert_eq!(class, vec![&[1, 0, 1, 0][..], &[0, 2, 0, 0][..]]);
    }

    #[test]
    fn abelian_is_full_rank() {
        let alg = LieAlgebraBuilder::new("a3", ["a", "b", "c"].map(String::from).to_vec()).build();
        let g = compute_grading(&alg);
        assert_eq!(g.rank(), 3);
        assert_eq!(g.weight_classes(2).values().map(Vec::len).max(), Some(1));
    }

    #[test]
    fn rank_zero_gives_one_class() {
        let mut b = LieAlgebraBuilder::new("sl2", ["h", "e", "f"].map(String::from).to_vec());
        b.bracket(0, 1, [(1, int(2))]).unwrap();
        b.bracket(0, 2, [(2, int(-2))]).unwrap();
        b.bracket(1, 2, [(0, int(1))]).unwrap();
        let alg = b.build();
        let g = compute_grading(&alg);
        // [h,e]=2e forces w_h=0; the grading is the root grading
        assert_eq!(g.rank(), 1);
        let g0 = Grading::from_basis(Vec::new(), 3);
        let classes = g0.weight_classes(2);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[&WeightVector::zero(0)].len(), 9);
    }

    #[test]
    fn weight_vector_text() {
        let w: WeightVector = "(0, -4)".parse().unwrap();
        assert_eq!(w, WeightVector(vec![0, -4]));
        assert_eq!(w.to_string(), "(0,-4)");
        assert_eq!("3".parse::<WeightVector>().unwrap(), WeightVector(vec![3]));
        assert_eq!("()".parse::<WeightVector>().unwrap(), WeightVector(vec![]));
        assert!("(a,1)".parse::<WeightVector>().is_err());
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_up_to(2, 2);
        let exps: Vec<&[u32]> = ms.iter().map(|m| m.exponents()).collect();
        assert_eq!(exps, vec![&[1, 0][..], &[0, 1], &[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(monomials_up_to(5, 3).len(), 5 + 15 + 35);
    }
}
