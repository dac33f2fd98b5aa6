//! Polynomial-coefficient differential operators and realisations of Lie
//! algebras by first-order operators.
//!
//! An operator acts on functions of `n_vars` variables and may also involve
//! `n_params` commuting parameters that are never differentiated. Terms are
//! kept in normal form `x^t ∂^k`, all coordinate and parameter factors to the
//! left of all derivatives.

use std::cell::RefCell;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::algebra::{push_signed_term, LieAlgebra};
use crate::enveloping::{PbwMonomial, UeaElement};
use crate::error::{Error, Result};
use crate::expr::{parse_sum, Factor, Sum};
use crate::rational::{binomial, falling_factorial, Rational};

/// Normal-ordered Weyl monomial `x^coords ∂^derivs`. `coords` spans variables
/// then parameters; `derivs` spans variables only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylMonomial {
    pub coords: Vec<u32>,
    pub derivs: Vec<u32>,
}

impl WeylMonomial {
    pub fn order(&self) -> u32 {
        self.derivs.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialOperator {
    n_vars: usize,
    n_params: usize,
    terms: BTreeMap<WeylMonomial, Rational>,
}

impl DifferentialOperator {
    pub fn zero(n_vars: usize, n_params: usize) -> Self {
        Self {
            n_vars,
            n_params,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, n_params: usize, c: Rational) -> Self {
        let mut op = Self::zero(n_vars, n_params);
        op.add_term(
            WeylMonomial {
                coords: vec![0; n_vars + n_params],
                derivs: vec![0; n_vars],
            },
            c,
        );
        op
    }

    pub fn identity(n_vars: usize, n_params: usize) -> Self {
        Self::constant(n_vars, n_params, Rational::one())
    }

    /// Multiplication by the `i`-th coordinate (variables first, then parameters).
    pub fn coordinate(n_vars: usize, n_params: usize, i: usize) -> Self {
        let mut op = Self::zero(n_vars, n_params);
        let mut coords = vec![0; n_vars + n_params];
        coords[i] = 1;
        op.add_term(
            WeylMonomial {
                coords,
                derivs: vec![0; n_vars],
            },
            Rational::one(),
        );
        op
    }

    pub fn variable(n_vars: usize, n_params: usize, j: usize) -> Self {
        Self::coordinate(n_vars, n_params, j)
    }

    pub fn parameter(n_vars: usize, n_params: usize, p: usize) -> Self {
        Self::coordinate(n_vars, n_params, n_vars + p)
    }

    /// `∂/∂x_j`
    pub fn derivative(n_vars: usize, n_params: usize, j: usize) -> Self {
        let mut op = Self::zero(n_vars, n_params);
        let mut derivs = vec![0; n_vars];
        derivs[j] = 1;
        op.add_term(
            WeylMonomial {
                coords: vec![0; n_vars + n_params],
                derivs,
            },
            Rational::one(),
        );
        op
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &WeylMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest total derivative order among the terms (0 for the zero operator).
    pub fn order(&self) -> u32 {
        self.terms.keys().map(WeylMonomial::order).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: WeylMonomial, c: Rational) {
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

    pub fn add_scaled(&mut self, other: &DifferentialOperator, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n_vars, self.n_params);
        out.add_scaled(self, c);
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n_vars == other.n_vars && self.n_params == other.n_params {
            Ok(())
        } else {
            Err(Error::IncompatibleOperators {
                left: format!("{} vars, {} params", self.n_vars, self.n_params),
                right: format!("{} vars, {} params", other.n_vars, other.n_params),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        Ok(out)
    }

    /// Composition `self ∘ other`, normal-ordered with
    /// `∂^k ∘ x^s = Σ_r C(k,r) (∂^r x^s) ∂^{k−r}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.n_vars, self.n_params);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                self.compose_terms(a, b, &(ca * cb), &mut out);
            }
        }
        Ok(out)
    }

    fn compose_terms(&self, a: &WeylMonomial, b: &WeylMonomial, c: &Rational, out: &mut Self) {
        let n = self.n_vars;
        // bounds for r_j: min(k_j of a, t_j of b)
        let bounds: Vec<u32> = (0..n).map(|j| a.derivs[j].min(b.coords[j])).collect();
        let mut r = vec![0u32; n];
        loop {
            let mut weight = num_bigint::BigInt::one();
            for j in 0..n {
                if r[j] > 0 {
                    weight *= binomial(a.derivs[j], r[j]) * falling_factorial(b.coords[j], r[j]);
                }
            }
            let mut coords: Vec<u32> = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
            let mut derivs: Vec<u32> = a.derivs.iter().zip(&b.derivs).map(|(x, y)| x + y).collect();
            for j in 0..n {
                coords[j] -= r[j];
                derivs[j] -= r[j];
            }
            out.add_term(WeylMonomial { coords, derivs }, c * Rational::from_integer(weight));

            // odometer over 0..=bounds
            let mut j = 0;
            while j < n {
                if r[j] < bounds[j] {
                    r[j] += 1;
                    break;
                }
                r[j] = 0;
                j += 1;
            }
            if j == n {
                break;
            }
        }
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn format(&self, var_names: &[String], param_names: &[String]) -> String {
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &e) in m.coords.iter().enumerate() {
                let name = if i < self.n_vars { &var_names[i] } else { &param_names[i - self.n_vars] };
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            for (j, &e) in m.derivs.iter().enumerate() {
                for _ in 0..e {
                    factors.push(format!("d/d{}", var_names[j]));
                }
            }
            push_signed_term(&mut out, c, &factors.join("*"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Images of the basis generators under a Lie algebra homomorphism into
/// first-order differential operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    name: String,
    var_names: Vec<String>,
    param_names: Vec<String>,
    images: Vec<DifferentialOperator>,
}

/// First bracket on which a realisation fails to be a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationFailure {
    pub pair: (usize, usize),
    pub message: String,
}

impl fmt::Display for RealizationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl Realization {
    /// Images must share one operator space and have derivative order ≤ 1.
    pub fn new(
        name: impl Into<String>,
        var_names: Vec<String>,
        param_names: Vec<String>,
        images: Vec<DifferentialOperator>,
    ) -> Result<Self> {
        let name = name.into();
        let mismatch = |reason: String| Error::RealizationMismatch {
            name: name.clone(),
            algebra: String::new(),
            reason,
        };
        for (i, op) in images.iter().enumerate() {
            if op.n_vars() != var_names.len() || op.n_params() != param_names.len() {
                return Err(mismatch(format!("image {i} lives in a different operator space")));
            }
            if op.order() > 1 {
                return Err(mismatch(format!(
                    "image {i} has derivative order {}; only first-order realisations are supported",
                    op.order()
                )));
            }
        }
        Ok(Self {
            name,
            var_names,
            param_names,
            images,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn param_names(&self) -> &[String] {
        &self.param_names
    }

    pub fn n_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn n_params(&self) -> usize {
        self.param_names.len()
    }

    pub fn images(&self) -> &[DifferentialOperator] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &DifferentialOperator {
        &self.images[i]
    }

    pub fn format_operator(&self, op: &DifferentialOperator) -> String {
        op.format(&self.var_names, &self.param_names)
    }

    /// Checks that the realisation has one image per generator of `algebra`.
    pub fn ensure_matches(&self, algebra: &LieAlgebra) -> Result<()> {
        if self.images.len() == algebra.dim() {
            Ok(())
        } else {
            Err(Error::RealizationMismatch {
                name: self.name.clone(),
                algebra: algebra.name().to_string(),
                reason: format!("{} images for {} generators", self.images.len(), algebra.dim()),
            })
        }
    }

    /// Verifies `ρ([X_i, X_j]) = [ρ(X_i), ρ(X_j)]` for all pairs. The map need
    /// not be injective.
    pub fn check(&self, algebra: &LieAlgebra) -> std::result::Result<(), RealizationFailure> {
        if let Err(e) = self.ensure_matches(algebra) {
            return Err(RealizationFailure {
                pair: (0, 0),
                message: e.to_string(),
            });
        }
        let n = algebra.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.images[i]
                    .commutator(&self.images[j])
                    .expect("images share one operator space");
                let mut rhs = DifferentialOperator::zero(self.n_vars(), self.n_params());
                for (k, c) in algebra.bracket_terms(i, j) {
                    rhs.add_scaled(&self.images[k], &c);
                }
                if lhs != rhs {
                    return Err(RealizationFailure {
                        pair: (i, j),
                        message: format!(
                            "[ρ({a}), ρ({b})] = {} but ρ([{a}, {b}]) = {}",
                            self.format_operator(&lhs),
                            self.format_operator(&rhs),
                            a = algebra.basis_name(i),
                            b = algebra.basis_name(j),
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Image of a PBW element under the homomorphic extension of the realisation.
    pub fn apply(&self, k: &UeaElement) -> DifferentialOperator {
        RealizationEvaluator::new(self).apply(k)
    }
}

/// Memoised images of PBW monomials: `ρ(X^ω) = ρ(X^{ω−e_j}) ∘ ρ(X_j)` with
/// `j` the last generator present.
pub struct RealizationEvaluator<'r> {
    realization: &'r Realization,
    cache: RefCell<HashMap<PbwMonomial, Rc<DifferentialOperator>>>,
}

impl<'r> RealizationEvaluator<'r> {
    pub fn new(realization: &'r Realization) -> Self {
        Self {
            realization,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn realization(&self) -> &'r Realization {
        self.realization
    }

    pub fn monomial(&self, m: &PbwMonomial) -> Rc<DifferentialOperator> {
        let r = self.realization;
        let Some(j) = m.exponents().iter().rposition(|&e| e > 0) else {
            return Rc::new(DifferentialOperator::identity(r.n_vars(), r.n_params()));
        };
        if let Some(hit) = self.cache.borrow().get(m) {
            return Rc::clone(hit);
        }
        let mut rest = m.exponents().to_vec();
        rest[j] -= 1;
        let prefix = self.monomial(&PbwMonomial::from_exponents(rest));
        let op = Rc::new(prefix.compose(&r.images[j]).expect("images share one operator space"));
        self.cache.borrow_mut().insert(m.clone(), Rc::clone(&op));
        op
    }

    pub fn apply(&self, k: &UeaElement) -> DifferentialOperator {
        let r = self.realization;
        let mut out = DifferentialOperator::zero(r.n_vars(), r.n_params());
        for (m, c) in k.terms() {
            out.add_scaled(&self.monomial(m), c);
        }
        out
    }
}

/// `X̂_i = Σ_{j,k} C^k_{ij} x_k ∂_j` on `x_1..x_N`, no parameters.
pub fn coadjoint_realization(algebra: &LieAlgebra) -> Realization {
    let n = algebra.dim();
    let mut images = vec![DifferentialOperator::zero(n, 0); n];
    for (i, image) in images.iter_mut().enumerate() {
        for j in 0..n {
            for (k, c) in algebra.bracket_terms(i, j) {
                let mut coords = vec![0; n];
                coords[k] = 1;
                let mut derivs = vec![0; n];
                derivs[j] = 1;
                image.add_term(WeylMonomial { coords, derivs }, c);
            }
        }
    }
    let vars = (1..=n).map(|k| format!("x{k}")).collect();
    Realization::new("coadjoint", vars, Vec::new(), images).expect("coadjoint images are first order")
}

/// Parses a realisation file against `algebra`:
///
/// ```text
/// realization schrodinger1
/// vars t x1
/// params m
/// map H = d/dt
/// map D = -2*t*d/dt - x1*d/dx1 - 1/2
/// ```
///
/// Each right-hand side is read as a Weyl-algebra expression (products are
/// compositions, left to right). Every generator must be mapped exactly once.
pub fn parse_realization(text: &str, algebra: &LieAlgebra) -> Result<Realization> {
    let mut name = None;
    let mut vars: Option<Vec<String>> = None;
    let mut params: Option<Vec<String>> = None;
    let mut images: Vec<Option<DifferentialOperator>> = vec![None; algebra.dim()];
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match keyword {
            "realization" | "realisation" => name = Some(rest.trim().to_string()),
            "vars" => vars = Some(rest.split_whitespace().map(String::from).collect()),
            "params" => params = Some(rest.split_whitespace().map(String::from).collect()),
            "map" => {
                let Some(vars) = &vars else {
                    return Err(Error::parse(line, "`vars` must precede `map` lines"));
                };
                let params = params.get_or_insert_with(Vec::new).clone();
                let (gen, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line, "expected `map <generator> = <operator>`"))?;
                let gen = gen.trim();
                let i = algebra
                    .index_of(gen)
                    .ok_or_else(|| Error::parse(line, format!("unknown generator `{gen}`")))?;
                if images[i].is_some() {
                    return Err(Error::parse(line, format!("generator `{gen}` mapped twice")));
                }
                let sum = parse_sum(rhs).map_err(|m| Error::parse(line, m))?;
                let op = eval_weyl(&sum, vars, &params).map_err(|m| Error::parse(line, m))?;
                if op.order() > 1 {
                    return Err(Error::parse(
                        line,
                        format!("image of `{gen}` has derivative order {}; at most 1 is supported", op.order()),
                    ));
                }
                images[i] = Some(op);
            }
            other => return Err(Error::parse(line, format!("unknown keyword `{other}`"))),
        }
    }

    let name = name.ok_or_else(|| Error::parse(1, "missing `realization <name>` line"))?;
    let vars = vars.ok_or_else(|| Error::parse(last_line, "missing `vars` line"))?;
    let params = params.unwrap_or_default();
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, op)| {
            op.ok_or_else(|| Error::parse(last_line, format!("generator `{}` is not mapped", algebra.basis_name(i))))
        })
        .collect::<Result<Vec<_>>>()?;
    Realization::new(name, vars, params, images)
}

fn eval_weyl(sum: &Sum, vars: &[String], params: &[String]) -> std::result::Result<DifferentialOperator, String> {
    let (nv, np) = (vars.len(), params.len());
    let mut out = DifferentialOperator::zero(nv, np);
    for product in &sum.terms {
        let mut acc = DifferentialOperator::identity(nv, np);
        for factor in &product.factors {
            let (op, power) = match factor {
                Factor::Number(q) => (DifferentialOperator::constant(nv, np, q.clone()), 1),
                Factor::Symbol { name, power } => {
                    let op = if let Some(j) = vars.iter().position(|v| v == name) {
                        DifferentialOperator::variable(nv, np, j)
                    } else if let Some(p) = params.iter().position(|v| v == name) {
                        DifferentialOperator::parameter(nv, np, p)
                    } else {
                        return Err(format!("unknown symbol `{name}`"));
                    };
                    (op, *power)
                }
                Factor::Derivative(v) => {
                    let j = vars
                        .iter()
                        .position(|x| x == v)
                        .ok_or_else(|| format!("d/d{v}: `{v}` is not a variable"))?;
                    (DifferentialOperator::derivative(nv, np, j), 1)
                }
                Factor::Group { sum, power } => (eval_weyl(sum, vars, params)?, *power),
            };
            for _ in 0..power {
                acc = acc.compose(&op).map_err(|e| e.to_string())?;
            }
        }
        let sign = if product.negative { -Rational::one() } else { Rational::one() };
        out.add_scaled(&acc, &sign);
    }
    Ok(out)
}

pub fn to_realization_file(realization: &Realization, algebra: &LieAlgebra) -> String {
    let mut out = format!(
        "realization {}\nvars {}\nparams {}\n",
        realization.name(),
        realization.var_names().join(" "),
        realization.param_names().join(" ")
    );
    for (i, op) in realization.images().iter().enumerate() {
        out.push_str(&format!(
            "map {} = {}\n",
            algebra.basis_name(i),
            realization.format_operator(op)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LieAlgebraBuilder;
    use crate::rational::int;

    fn parse(text: &str, vars: &[&str], params: &[&str]) -> DifferentialOperator {
        let v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let p: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        eval_weyl(&parse_sum(text).unwrap(), &v, &p).unwrap()
    }

    #[test]
    fn canonical_commutation() {
        let d = DifferentialOperator::derivative(1, 0, 0);
        let x = DifferentialOperator::variable(1, 0, 0);
        let dx = d.compose(&x).unwrap();
        assert_eq!(dx, parse("x*d/dx + 1", &["x"], &[]));
        assert_eq!(d.commutator(&x).unwrap(), DifferentialOperator::identity(1, 0));
        let y = DifferentialOperator::variable(2, 0, 1);
        assert!(DifferentialOperator::derivative(2, 0, 0).commutator(&y).unwrap().is_zero());
    }

    #[test]
    fn euler_operator_squared() {
        let e = parse("x*d/dx", &["x"], &[]);
        assert_eq!(e.compose(&e).unwrap(), parse("x^2*d/dx*d/dx + x*d/dx", &["x"], &[]));
    }

    #[test]
    fn parameters_are_central() {
        let dt = DifferentialOperator::derivative(1, 1, 0);
        let m = DifferentialOperator::parameter(1, 1, 0);
        assert_eq!(dt.compose(&m).unwrap(), m.compose(&dt).unwrap());
        assert!(dt.commutator(&m).unwrap().is_zero());
    }

    #[test]
    fn incompatible_spaces_are_rejected() {
        let a = DifferentialOperator::identity(1, 0);
        let b = DifferentialOperator::identity(2, 0);
        assert!(matches!(a.compose(&b), Err(Error::IncompatibleOperators { .. })));
    }

    #[test]
    fn higher_order_realisations_are_rejected() {
        let op = parse("d/dx*d/dx", &["x"], &[]);
        assert!(Realization::new("bad", vec!["x".into()], vec![], vec![op]).is_err());
        let alg = LieAlgebraBuilder::new("a", vec!["a".into()]).build();
        let err = parse_realization("realization r\nvars x\nmap a = d/dx*d/dx\n", &alg).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn realization_file_round_trip() {
        let mut b = LieAlgebraBuilder::new("sl2", ["h", "e", "f"].map(String::from).to_vec());
        b.bracket(0, 1, [(1, int(2))]).unwrap();
        b.bracket(0, 2, [(2, int(-2))]).unwrap();
        b.bracket(1, 2, [(0, int(1))]).unwrap();
        let alg = b.build();
        let text = "realization line\nvars x\nparams\nmap h = 2*x*d/dx\nmap e = -x^2*d/dx\nmap f = d/dx\n";
        let r = parse_realization(text, &alg).unwrap();
        assert!(r.check(&alg).is_ok());
        let again = parse_realization(&to_realization_file(&r, &alg), &alg).unwrap();
        assert_eq!(r, again);

        let bad = "realization line\nvars x\nmap h = 2*x*d/dx\nmap e = x^2*d/dx\nmap f = d/dx\n";
        let r = parse_realization(bad, &alg).unwrap();
        assert!(r.check(&alg).is_err());

        assert!(parse_realization("realization r\nvars x\nmap h = d/dx\n", &alg).is_err());
        assert!(parse_realization("realization r\nvars x\nmap q = d/dx\n", &alg).is_err());
        assert!(parse_realization("realization r\nvars x\nmap h = d/dy\n", &alg).is_err());
    }

    #[test]
    fn coadjoint_of_sl2_is_a_homomorphism() {
        let mut b = LieAlgebraBuilder::new("sl2", ["h", "e", "f"].map(String::from).to_vec());
        b.bracket(0, 1, [(1, int(2))]).unwrap();
        b.bracket(0, 2, [(2, int(-2))]).unwrap();
        b.bracket(1, 2, [(0, int(1))]).unwrap();
        let alg = b.build();
        let r = coadjoint_realization(&alg);
        assert_eq!(r.n_vars(), 3);
        assert!(r.images().iter().all(|op| op.order() == 1));
        assert!(r.check(&alg).is_ok());
    }
}
