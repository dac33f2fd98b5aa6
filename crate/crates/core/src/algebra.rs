//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{format_rational, integer_points, Rational};

/// Sparse linear combination `Σ c_k X_k` of basis generators.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct AlgebraElement {
    coeffs: BTreeMap<usize, Rational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(i: usize) -> Self {
        Self::from_terms([(i, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, k: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Rational) {
        for (k, v) in &other.coeffs {
            self.add_term(*k, v * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }
}

/// First triple `(i, j, k)` with a nonzero Jacobiator, and its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub names: (String, String, String),
    pub residual: String,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = &self.names;
        write!(
            f,
            "Jacobi identity fails for ({a}, {b}, {c}): [[{a},{b}],{c}] + cyclic = {}",
            self.residual
        )
    }
}

/// A Lie algebra over ℚ with an ordered basis.
///
/// Structure constants are held only for index pairs `i < j`; the bracket for
/// `i > j` is the negation and `[X_i, X_i] = 0`. Term lists never contain a
/// repeated index or a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl LieAlgebra {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            })
        }
    }

    /// Stored nonzero brackets `(i, j, terms)` with `i < j`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Rational)])> {
        self.brackets.iter().map(|(&(i, j), t)| (i, j, t.as_slice()))
    }

    /// Antisymmetrised bracket terms `Σ_k C^k_{ij} X_k`; indices must be valid.
    pub fn bracket_terms(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Vec::new(),
            Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(|t| t.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default(),
        }
    }

    pub fn bracket(&self, i: usize, j: usize) -> Result<AlgebraElement> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(AlgebraElement::from_terms(self.bracket_terms(i, j)))
    }

    pub fn bracket_elements(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let ab = a * b;
                for (k, c) in self.bracket_terms(i, j) {
                    out.add_term(k, c * &ab);
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Checks `[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j] = 0` for all `i<j<k`.
    pub fn jacobi_check(&self) -> std::result::Result<(), JacobiViolation> {
        let n = self.dim();
        let gen = AlgebraElement::generator;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut sum = AlgebraElement::zero();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let ab = self.bracket_elements(&gen(a), &gen(b));
                        sum.add_scaled(&self.bracket_elements(&ab, &gen(c)), &Rational::one());
                    }
                    if !sum.is_zero() {
                        return Err(JacobiViolation {
                            triple: (i, j, k),
                            names: (self.basis[i].clone(), self.basis[j].clone(), self.basis[k].clone()),
                            residual: self.format_element(&sum),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `M_{ij}(y) = Σ_k C^k_{ij} y_k`
    pub fn structure_matrix(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (&(i, j), terms) in &self.brackets {
            let v: Rational = terms.iter().map(|(k, c)| c * &point[*k]).sum();
            m[j][i] = -v.clone();
            m[i][j] = v;
        }
        m
    }

    /// Number of functionally independent (generalised) invariants,
    /// `N − max rank M(y)` over `trials` seeded random integer points.
    pub fn beltrametti_blasi_count(&self, trials: usize) -> usize {
        self.beltrametti_blasi_count_seeded(trials, 0)
    }

    pub fn beltrametti_blasi_count_seeded(&self, trials: usize, seed: u64) -> usize {
        let rank = integer_points(seed, trials.max(1), self.dim())
            .iter()
            .map(|y| linalg::rank(&self.structure_matrix(y)))
            .max()
            .unwrap_or(0);
        self.dim() - rank
    }

    pub fn format_element(&self, x: &AlgebraElement) -> String {
        let mut out = String::new();
        for (k, c) in x.terms() {
            push_signed_term(&mut out, c, &self.basis[k]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Appends `± c*body` in the house style: coefficient 1 omitted, ` + `/` - ` separators.
pub(crate) fn push_signed_term(out: &mut String, c: &Rational, body: &str) {
    let negative = c < &Rational::zero();
    let magnitude = if negative { -c } else { c.clone() };
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    if body.is_empty() {
        out.push_str(&format_rational(&magnitude));
    } else if magnitude.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&format_rational(&magnitude));
        out.push('*');
        out.push_str(body);
    }
}

/// Assembles a [`LieAlgebra`], enforcing antisymmetry and uniqueness of brackets.
#[derive(Debug, Clone)]
pub struct LieAlgebraBuilder {
    name: String,
    basis: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
    given: BTreeSet<(usize, usize)>,
}

impl LieAlgebraBuilder {
    pub fn new(name: impl Into<String>, basis: Vec<String>) -> Self {
        Self {
            name: name.into(),
            basis,
            brackets: BTreeMap::new(),
            given: BTreeSet::new(),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// Declares `[X_a, X_b] = Σ c X_k`. Repeating an ordered pair is an error;
    /// giving the reversed pair is accepted only if it is the negation.
    pub fn bracket(
        &mut self,
        a: usize,
        b: usize,
        terms: impl IntoIterator<Item = (usize, Rational)>,
    ) -> std::result::Result<&mut Self, String> {
        let n = self.basis.len();
        let value = AlgebraElement::from_terms(terms);
        if let Some(k) = value.terms().map(|(k, _)| k).find(|&k| k >= n) {
            return Err(format!("generator index {k} out of range"));
        }
        if a >= n || b >= n {
            return Err(format!("generator index {} out of range", a.max(b)));
        }
        if a == b {
            if value.is_zero() {
                return Ok(self);
            }
            return Err(format!("[{0}, {0}] must vanish", self.basis[a]));
        }
        if !self.given.insert((a, b)) {
            return Err(format!("duplicate bracket [{}, {}]", self.basis[a], self.basis[b]));
        }
        let (key, stored) = if a < b {
            ((a, b), value)
        } else {
            let mut neg = AlgebraElement::zero();
            neg.add_scaled(&value, &-Rational::one());
            ((b, a), neg)
        };
        let terms: Vec<(usize, Rational)> = stored.terms().map(|(k, c)| (k, c.clone())).collect();
        if self.given.contains(&(b, a)) {
            let previous = self.brackets.get(&key).cloned().unwrap_or_default();
            if previous != terms {
                return Err(format!(
                    "bracket [{}, {}] conflicts with [{}, {}] under antisymmetry",
                    self.basis[a], self.basis[b], self.basis[b], self.basis[a]
                ));
            }
            return Ok(self);
        }
        if !terms.is_empty() {
            self.brackets.insert(key, terms);
        }
        Ok(self)
    }

    pub fn build(self) -> LieAlgebra {
        LieAlgebra {
            name: self.name,
            basis: self.basis,
            brackets: self.brackets,
        }
    }
}
