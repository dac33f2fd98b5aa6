//! Universal enveloping algebra arithmetic in the PBW basis.
//!
//! Elements are finite sums of ordered monomials `X_1^{ω_1}···X_N^{ω_N}`
//! (declared basis order) with rational coefficients. Products are brought
//! back to this basis with the rewriting rule `X_b X_a = X_a X_b − [X_a, X_b]`
//! for `a < b`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::algebra::{push_signed_term, LieAlgebra};
use crate::error::{Error, Result};
use crate::expr::{parse_sum, strip_comments, Factor, Sum};
use crate::poly::Polynomial;
use crate::rational::Rational;

pub const DEFAULT_DEGREE_LIMIT: usize = 12;

/// Exponent vector of an ordered PBW monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial(Vec<u32>);

impl PbwMonomial {
    pub fn one(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Self(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Generator indices in PBW order, with multiplicity.
    pub fn word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    fn last_index(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    fn with_delta(&self, i: usize, delta: i32) -> Self {
        let mut e = self.0.clone();
        e[i] = e[i].checked_add_signed(delta).expect("exponent stays non-negative");
        Self(e)
    }

    /// Graded-lex order: total degree first, then exponents lexicographically
    /// (a larger power of an earlier generator is larger).
    pub fn grlex_cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        parts.join("*")
    }
}

/// Element of U(g): finite map from PBW monomials to nonzero rationals.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct UeaElement {
    terms: BTreeMap<PbwMonomial, Rational>,
}

impl UeaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(PbwMonomial::one(dim), Rational::one())
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        Self::monomial(PbwMonomial::generator(dim, i), Rational::one())
    }

    pub fn monomial(m: PbwMonomial, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PbwMonomial, Rational)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &UeaElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PbwMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(PbwMonomial::degree).max().unwrap_or(0)
    }

    /// Largest monomial in graded-lex order.
    pub fn leading_monomial(&self) -> Option<&PbwMonomial> {
        self.terms.keys().max_by(|a, b| a.grlex_cmp(b))
    }

    /// Commutative symbol: `X^ω ↦ y^ω`, forgetting the ordering.
    pub fn symbol(&self, dim: usize) -> Polynomial {
        let mut p = Polynomial::zero(dim);
        for (m, c) in &self.terms {
            p.add_term(m.0.clone(), c.clone());
        }
        p
    }

    /// Renders with the given generator names, leading term first.
    pub fn format(&self, names: &[String]) -> String {
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|a, b| b.0.grlex_cmp(a.0));
        let mut out = String::new();
        for (m, c) in sorted {
            push_signed_term(&mut out, c, &m.format(names));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn display<'a>(&'a self, algebra: &'a LieAlgebra) -> impl fmt::Display + 'a {
        struct Shown<'a>(&'a UeaElement, &'a LieAlgebra);
        impl fmt::Display for Shown<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1.basis_names()))
            }
        }
        Shown(self, algebra)
    }
}

impl Add for &UeaElement {
    type Output = UeaElement;
    fn add(self, rhs: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &UeaElement {
    type Output = UeaElement;
    fn sub(self, rhs: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &UeaElement {
    type Output = UeaElement;
    fn neg(self) -> UeaElement {
        self.scale(&-Rational::one())
    }
}

/// Multiplication context for U(g) of one algebra.
///
/// Products `X^ω · X_i` are memoised, so a context should be reused across
/// related computations. Not shareable across threads; create one per thread.
pub struct Uea<'a> {
    algebra: &'a LieAlgebra,
    degree_limit: usize,
    right_mul: RefCell<HashMap<(PbwMonomial, usize), Rc<UeaElement>>>,
}

impl<'a> Uea<'a> {
    pub fn new(algebra: &'a LieAlgebra) -> Self {
        Self::with_degree_limit(algebra, DEFAULT_DEGREE_LIMIT)
    }

    pub fn with_degree_limit(algebra: &'a LieAlgebra, degree_limit: usize) -> Self {
        Self {
            algebra,
            degree_limit,
            right_mul: RefCell::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &'a LieAlgebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn degree_limit(&self) -> usize {
        self.degree_limit
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.degree_limit {
            Err(Error::DegreeLimit {
                degree,
                limit: self.degree_limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn generator(&self, i: usize) -> Result<UeaElement> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange { index: i, dim: self.dim() });
        }
        Ok(UeaElement::generator(self.dim(), i))
    }

    /// `X^ω · X_i` in PBW form.
    fn mul_generator(&self, mono: &PbwMonomial, i: usize) -> Rc<UeaElement> {
        let j = match mono.last_index() {
            Some(j) if j > i => j,
            _ => return Rc::new(UeaElement::monomial(mono.with_delta(i, 1), Rational::one())),
        };
        let key = (mono.clone(), i);
        if let Some(hit) = self.right_mul.borrow().get(&key) {
            return Rc::clone(hit);
        }
        // X^ω X_i = (X^{ω-e_j} X_i) X_j + X^{ω-e_j} [X_j, X_i]
        let rest = mono.with_delta(j, -1);
        let head = self.mul_generator(&rest, i);
        let mut out = UeaElement::zero();
        for (m, c) in head.terms() {
            out.add_scaled(&self.mul_generator(m, j), c);
        }
        for (k, c) in self.algebra.bracket_terms(j, i) {
            out.add_scaled(&self.mul_generator(&rest, k), &c);
        }
        let out = Rc::new(out);
        self.right_mul.borrow_mut().insert(key, Rc::clone(&out));
        out
    }

    fn mul_word_right(&self, u: &UeaElement, word: &[usize]) -> UeaElement {
        let mut acc = u.clone();
        for &g in word {
            let mut next = UeaElement::zero();
            for (m, c) in acc.terms() {
                next.add_scaled(&self.mul_generator(m, g), c);
            }
            acc = next;
        }
        acc
    }

    /// Rewrites an arbitrary word `X_{w_1}···X_{w_k}` into the PBW basis.
    pub fn normal_order(&self, word: &[usize]) -> Result<UeaElement> {
        self.check_degree(word.len())?;
        if let Some(&bad) = word.iter().find(|&&g| g >= self.dim()) {
            return Err(Error::IndexOutOfRange { index: bad, dim: self.dim() });
        }
        Ok(self.mul_word_right(&UeaElement::one(self.dim()), word))
    }

    pub fn multiply(&self, u: &UeaElement, v: &UeaElement) -> Result<UeaElement> {
        if u.is_zero() || v.is_zero() {
            return Ok(UeaElement::zero());
        }
        self.check_degree(u.degree() + v.degree())?;
        let mut out = UeaElement::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.mul_word_right(u, &m.word()), c);
        }
        Ok(out)
    }

    pub fn pow(&self, u: &UeaElement, k: u32) -> Result<UeaElement> {
        let mut acc = UeaElement::one(self.dim());
        for _ in 0..k {
            acc = self.multiply(&acc, u)?;
        }
        Ok(acc)
    }

    /// Product of several factors, left to right.
    pub fn product(&self, factors: &[&UeaElement]) -> Result<UeaElement> {
        let mut acc = UeaElement::one(self.dim());
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// `[K, X_i] = K X_i − X_i K`
    pub fn commutator_with_generator(&self, k: &UeaElement, i: usize) -> Result<UeaElement> {
        let x = self.generator(i)?;
        self.check_degree(k.degree() + 1)?;
        let right = self.mul_word_right(k, &[i]);
        let left = self.multiply(&x, k)?;
        Ok(&right - &left)
    }

    pub fn commutator(&self, u: &UeaElement, v: &UeaElement) -> Result<UeaElement> {
        Ok(&self.multiply(u, v)? - &self.multiply(v, u)?)
    }

    /// First generator `X_i` with `[K, X_i] ≠ 0`, together with the commutator.
    pub fn first_noncommuting(&self, k: &UeaElement) -> Result<Option<(usize, UeaElement)>> {
        for i in 0..self.dim() {
            let c = self.commutator_with_generator(k, i)?;
            if !c.is_zero() {
                return Ok(Some((i, c)));
            }
        }
        Ok(None)
    }

    /// Whether `K` lies in the centre of U(g).
    pub fn is_casimir(&self, k: &UeaElement) -> Result<bool> {
        Ok(self.first_noncommuting(k)?.is_none())
    }

    /// Parses the expression grammar (`2*e1*e3 - e2^2`, parentheses allowed),
    /// reading each product left to right and normal-ordering it.
    pub fn parse(&self, text: &str) -> Result<UeaElement> {
        let sum = parse_sum(&strip_comments(text)).map_err(|m| Error::parse(1, m))?;
        self.eval_sum(&sum)
    }

    fn eval_sum(&self, sum: &Sum) -> Result<UeaElement> {
        let mut out = UeaElement::zero();
        for product in &sum.terms {
            let mut acc = UeaElement::one(self.dim());
            for factor in &product.factors {
                acc = match factor {
                    Factor::Number(q) => acc.scale(q),
                    Factor::Symbol { name, power } => {
                        let i = self
                            .algebra
                            .index_of(name)
                            .ok_or_else(|| Error::parse(1, format!("unknown generator `{name}`")))?;
                        self.multiply(&acc, &self.pow(&UeaElement::generator(self.dim(), i), *power)?)?
                    }
                    Factor::Group { sum, power } => {
                        let inner = self.eval_sum(sum)?;
                        self.multiply(&acc, &self.pow(&inner, *power)?)?
                    }
                    Factor::Derivative(v) => {
                        return Err(Error::parse(1, format!("derivative d/d{v} is not an enveloping algebra element")))
                    }
                };
            }
            let sign = if product.negative { -Rational::one() } else { Rational::one() };
            out.add_scaled(&acc, &sign);
        }
        Ok(out)
    }
}

/// `Σ c · word`, each word normal-ordered.
pub fn from_words(uea: &Uea<'_>, words: &[(Rational, Vec<usize>)]) -> Result<UeaElement> {
    let mut out = UeaElement::zero();
    for (c, w) in words {
        out.add_scaled(&uea.normal_order(w)?, c);
    }
    Ok(out)
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
    fn one_swap() {
        let a = filiform4();
        let u = Uea::new(&a);
        // e4 e2 = e2 e4 - [e2, e4] = e2 e4 - e1
        let got = u.normal_order(&[3, 1]).unwrap();
        assert_eq!(got, u.parse("e2*e4 - e1").unwrap());
        assert_eq!(got.format(a.basis_names()), "e2*e4 - e1");
        let sorted = u.normal_order(&[0, 1, 1, 3]).unwrap();
        assert_eq!(sorted.num_terms(), 1);
        assert_eq!(sorted.coefficient(&PbwMonomial::from_exponents(vec![1, 2, 0, 1])), int(1));
    }

    #[test]
    fn products() {
        let a = filiform4();
        let u = Uea::new(&a);
        let e2 = u.generator(1).unwrap();
        let e4 = u.generator(3).unwrap();
        assert_eq!(u.multiply(&e2, &e2).unwrap(), u.parse("e2^2").unwrap());
        let e2e4 = u.parse("e2*e4").unwrap();
        assert_eq!(u.multiply(&e4, &e2e4).unwrap(), u.parse("e2*e4^2 - e1*e4").unwrap());
        assert_eq!(u.multiply(&UeaElement::one(4), &e2e4).unwrap(), e2e4);
    }

    #[test]
    fn commutators_and_centre() {
        let a = filiform4();
        let u = Uea::new(&a);
        let q1 = u.parse("e2^2 - 2*e1*e3").unwrap();
        assert!(u.commutator_with_generator(&q1, 3).unwrap().is_zero());
        assert!(u.is_casimir(&q1).unwrap());
        let e2sq = u.parse("e2^2").unwrap();
        assert_eq!(u.commutator_with_generator(&e2sq, 3).unwrap(), u.parse("2*e1*e2").unwrap());
        assert!(!u.is_casimir(&u.generator(1).unwrap()).unwrap());
    }

    #[test]
    fn symbols() {
        let a = filiform4();
        let u = Uea::new(&a);
        let q1 = u.parse("e2^2 - 2*e1*e3").unwrap();
        let s = q1.symbol(4);
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s.coefficient(&[1, 0, 1, 0]), int(-2));
        assert!(UeaElement::zero().symbol(4).is_zero());
    }

    #[test]
    fn degree_limit_is_enforced() {
        let a = filiform4();
        let u = Uea::with_degree_limit(&a, 3);
        let e2 = u.generator(1).unwrap();
        let cube = u.pow(&e2, 3).unwrap();
        assert!(matches!(u.multiply(&cube, &e2), Err(Error::DegreeLimit { degree: 4, limit: 3 })));
        assert!(u.normal_order(&[0, 0, 0, 0]).is_err());
    }

    #[test]
    fn parse_errors() {
        let a = filiform4();
        let u = Uea::new(&a);
        assert!(u.parse("e5").is_err());
        assert!(u.parse("d/de1").is_err());
        assert!(u.parse("e1 +").is_err());
        assert_eq!(u.parse("(e4*e2)").unwrap(), u.parse("e2*e4 - e1").unwrap());
    }
}
