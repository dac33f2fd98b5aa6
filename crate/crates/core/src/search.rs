//! Realisation-based search for Casimir operators.
//!
//! For each weight class the pipeline is:
//!
//! 1. ansatz `K = Σ f_σ σ` over the PBW monomials `σ` of the class;
//! 2. push `[ρ(K), ρ(X_i)] = 0` through the realisation and read off one
//!    linear equation in the `f_σ` per Weyl monomial;
//! 3. the exact nullspace gives the candidates;
//! 4. candidates that only commute after realisation are recombined: solve
//!    `[Σ a_j K_j, X_i] = 0` in U(g) and keep the certified combinations;
//! 5. drop invariants that are functionally dependent on ones already found
//!    (Jacobian rank of the commutative symbols at random points).
//!
//! Without a grading the whole of `β_m` forms a single class.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::enveloping::{PbwMonomial, Uea, UeaElement, DEFAULT_DEGREE_LIMIT};
use crate::error::{Error, Result};
use crate::grading::{compute_grading, monomials_up_to, Grading, WeightVector};
use crate::linalg::{dense_to_sparse, reduced_span_basis, EchelonBasis, LinearSystem};
use crate::rational::{integer_points, to_primitive_integers, Rational};
use crate::weyl::{Realization, RealizationEvaluator, WeylMonomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// One class: every PBW monomial of degree `1..=m`.
    Naive,
    /// One class per weight of the maximal grading.
    Graded,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Naive => "naive",
            Mode::Graded => "graded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSelection {
    /// Weights attained at degree `m` whose class has at least two monomials.
    Default,
    All,
    Only(Vec<WeightVector>),
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub degree: usize,
    pub mode: Mode,
    pub weights: WeightSelection,
    pub seed: u64,
    pub trials: usize,
    pub degree_limit: usize,
}

impl SearchOptions {
    pub fn new(degree: usize) -> Self {
        Self {
            degree,
            mode: Mode::Graded,
            weights: WeightSelection::Default,
            seed: 0,
            trials: 5,
            degree_limit: DEFAULT_DEGREE_LIMIT,
        }
    }

    pub fn naive(mut self) -> Self {
        self.mode = Mode::Naive;
        self
    }

    pub fn all_weights(mut self) -> Self {
        self.weights = WeightSelection::All;
        self
    }

    pub fn only(mut self, weights: Vec<WeightVector>) -> Self {
        self.weights = WeightSelection::Only(weights);
        self
    }
}

/// Outcome for one weight class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassResult {
    /// `None` in naive mode.
    pub weight: Option<WeightVector>,
    pub ansatz: Vec<PbwMonomial>,
    pub equations: usize,
    pub rank: usize,
    /// Nullspace of the realised system.
    pub candidates: Vec<UeaElement>,
    /// Certified Casimir operators spanning the genuine part, in canonical form.
    pub genuine: Vec<UeaElement>,
    /// Members of `genuine` kept by the global independence filter.
    pub independent: Vec<UeaElement>,
}

impl ClassResult {
    pub fn spurious(&self) -> bool {
        self.candidates.len() > self.genuine.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub algebra: String,
    pub realization: String,
    pub degree: usize,
    pub mode: Mode,
    pub grading: Option<Grading>,
    pub classes: Vec<ClassResult>,
}

impl SearchReport {
    /// Every independent invariant, ascending degree, then class order.
    pub fn independent(&self) -> Vec<&UeaElement> {
        let mut all: Vec<&UeaElement> = self.classes.iter().flat_map(|c| &c.independent).collect();
        all.sort_by_key(|k| k.degree());
        all
    }

    pub fn genuine(&self) -> Vec<&UeaElement> {
        self.classes.iter().flat_map(|c| &c.genuine).collect()
    }

    pub fn class(&self, weight: &WeightVector) -> Option<&ClassResult> {
        self.classes.iter().find(|c| c.weight.as_ref() == Some(weight))
    }

    pub fn to_json(&self, algebra: &LieAlgebra) -> serde_json::Value {
        let names = algebra.basis_names();
        let exprs = |v: &[UeaElement]| v.iter().map(|k| k.format(names)).collect::<Vec<_>>();
        let classes: Vec<_> = self
            .classes
            .iter()
            .map(|c| {
                serde_json::json!({
                    "weight": c.weight.as_ref().map(|w| w.0.clone()),
                    "ansatz_size": c.ansatz.len(),
                    "equations": c.equations,
                    "rank": c.rank,
                    "candidates": exprs(&c.candidates),
                    "genuine": exprs(&c.genuine),
                    "independent": exprs(&c.independent),
                })
            })
            .collect();
        serde_json::json!({
            "algebra": self.algebra,
            "realization": self.realization,
            "degree": self.degree,
            "mode": self.mode,
            "classes": classes,
        })
    }
}

/// `β_m` (no grading) or `β_m^W`: monomials of degree `1..=m`, by degree and
/// then exponent order.
pub fn build_ansatz(dim: usize, grading: Option<&Grading>, m: usize, weight: Option<&WeightVector>) -> Vec<PbwMonomial> {
    let all = monomials_up_to(dim, m);
    match (grading, weight) {
        (Some(g), Some(w)) => all.into_iter().filter(|mono| &g.monomial_weight(mono.exponents()) == w).collect(),
        _ => all,
    }
}

/// Equations `Σ_σ f_σ · coeff_{(i,t,k)}([ρ(σ), ρ(X_i)]) = 0`, one row per
/// generator `i` and Weyl monomial `x^t ∂^k` that occurs.
pub fn extract_system(realization: &Realization, ansatz: &[PbwMonomial]) -> LinearSystem<PbwMonomial> {
    let evaluator = RealizationEvaluator::new(realization);
    let mut rows: BTreeMap<(usize, WeylMonomial), Vec<(usize, Rational)>> = BTreeMap::new();
    for (col, sigma) in ansatz.iter().enumerate() {
        let image = evaluator.monomial(sigma);
        if image.is_zero() {
            continue;
        }
        for (i, gen) in realization.images().iter().enumerate() {
            if gen.is_zero() {
                continue;
            }
            let comm = image.commutator(gen).expect("images share one operator space");
            for (w, c) in comm.terms() {
                rows.entry((i, w.clone())).or_default().push((col, c.clone()));
            }
        }
    }
    let mut system = LinearSystem::new(ansatz.to_vec());
    system.rows = rows.into_values().collect();
    system
}

fn element_from_vector(ansatz: &[PbwMonomial], v: &[BigInt]) -> UeaElement {
    UeaElement::from_terms(
        ansatz
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))),
    )
}

/// Nullspace vectors as enveloping algebra elements.
pub fn candidates(system: &LinearSystem<PbwMonomial>) -> Vec<UeaElement> {
    system
        .nullspace()
        .iter()
        .map(|v| element_from_vector(&system.unknowns, v))
        .collect()
}

/// Solves `[Σ a_j K_j, X_i] = 0` in U(g) for the `a_j`. Returns a canonical
/// basis (see [`canonical_basis`]) of the certified combinations.
pub fn recombine(uea: &Uea<'_>, candidates: &[UeaElement]) -> Result<Vec<UeaElement>> {
    if candidates.is_empty() {
        return Ok(Vec::new());
    }
    let mut comm_cache: BTreeMap<(PbwMonomial, usize), UeaElement> = BTreeMap::new();
    let mut rows: BTreeMap<(usize, PbwMonomial), Vec<(usize, Rational)>> = BTreeMap::new();
    for i in 0..uea.dim() {
        for (j, k) in candidates.iter().enumerate() {
            let mut total = UeaElement::zero();
            for (sigma, c) in k.terms() {
                let key = (sigma.clone(), i);
                if !comm_cache.contains_key(&key) {
                    let single = UeaElement::monomial(sigma.clone(), Rational::from_integer(1.into()));
                    comm_cache.insert(key.clone(), uea.commutator_with_generator(&single, i)?);
                }
                total.add_scaled(&comm_cache[&key], c);
            }
            for (mono, c) in total.terms() {
                rows.entry((i, mono.clone())).or_default().push((j, c.clone()));
            }
        }
    }
    let mut system = LinearSystem::new((0..candidates.len()).collect::<Vec<_>>());
    system.rows = rows.into_values().collect();
    let mut genuine = Vec::new();
    for a in system.nullspace() {
        let mut k = UeaElement::zero();
        for (aj, kj) in a.iter().zip(candidates) {
            if !aj.is_zero() {
                k.add_scaled(kj, &Rational::from_integer(aj.clone()));
            }
        }
        genuine.push(k);
    }
    let genuine = canonical_basis(&genuine);
    for k in &genuine {
        if !uea.is_casimir(k)? {
            return Err(Error::InvalidSearch("recombined element failed certification".into()));
        }
    }
    Ok(genuine)
}

fn desc_grlex(a: &PbwMonomial, b: &PbwMonomial) -> Ordering {
    b.grlex_cmp(a)
}

/// Reduced echelon basis of the span of `elements`, with monomials ordered by
/// descending graded-lex: each basis element is integer primitive with a
/// positive leading coefficient, and no leading monomial appears in any other
/// basis element. Two lists span the same space iff their canonical bases agree.
pub fn canonical_basis(elements: &[UeaElement]) -> Vec<UeaElement> {
    let mut columns: Vec<PbwMonomial> = elements.iter().flat_map(|k| k.terms().map(|(m, _)| m.clone())).collect();
    columns.sort_by(desc_grlex);
    columns.dedup();
    let index: BTreeMap<&PbwMonomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let vectors: Vec<Vec<BigInt>> = elements
        .iter()
        .map(|k| {
            let mut dense = vec![Rational::zero(); columns.len()];
            for (m, c) in k.terms() {
                dense[index[m]] = c.clone();
            }
            to_primitive_integers(&dense)
        })
        .collect();
    reduced_span_basis(&vectors)
        .iter()
        .map(|v| element_from_vector(&columns, v))
        .collect()
}

pub fn same_span(a: &[UeaElement], b: &[UeaElement]) -> bool {
    canonical_basis(a) == canonical_basis(b)
}

/// Whether `x` lies in the span of `span`.
pub fn in_span(span: &[UeaElement], x: &UeaElement) -> bool {
    let mut with = span.to_vec();
    with.push(x.clone());
    canonical_basis(&with).len() == canonical_basis(span).len()
}

/// Greedy functional-independence test on commutative symbols. An element is
/// accepted when it raises the rank of the Jacobian `[∂ s_p / ∂ y_q]`, taken
/// as the maximum over a fixed set of random integer points.
pub struct IndependenceFilter {
    dim: usize,
    points: Vec<Vec<Rational>>,
    bases: Vec<EchelonBasis>,
}

impl IndependenceFilter {
    pub fn new(dim: usize, seed: u64, trials: usize) -> Self {
        let points = integer_points(seed, trials.max(1), dim);
        let bases = vec![EchelonBasis::new(); points.len()];
        Self { dim, points, bases }
    }

    pub fn rank(&self) -> usize {
        self.bases.iter().map(EchelonBasis::rank).max().unwrap_or(0)
    }

    /// Adds `k` if it is functionally independent of the accepted elements.
    pub fn add(&mut self, k: &UeaElement) -> bool {
        let symbol = k.symbol(self.dim);
        let grads: Vec<_> = (0..self.dim).map(|q| symbol.derivative(q)).collect();
        let before = self.rank();
        let mut trial = self.bases.clone();
        for (basis, point) in trial.iter_mut().zip(&self.points) {
            let row: Vec<Rational> = grads.iter().map(|g| g.evaluate(point)).collect();
            basis.insert(dense_to_sparse(&to_primitive_integers(&row)));
        }
        let after = trial.iter().map(EchelonBasis::rank).max().unwrap_or(0);
        if after > before {
            self.bases = trial;
            true
        } else {
            false
        }
    }
}

/// Members of `new` independent of `known` and of each other, considered by
/// ascending degree and then input order.
pub fn independence_filter(dim: usize, known: &[UeaElement], new: &[UeaElement], seed: u64, trials: usize) -> Vec<UeaElement> {
    let mut filter = IndependenceFilter::new(dim, seed, trials);
    for k in known {
        filter.add(k);
    }
    let mut order: Vec<&UeaElement> = new.iter().collect();
    order.sort_by_key(|k| k.degree());
    order.into_iter().filter(|k| filter.add(k)).cloned().collect()
}

fn select_weights(grading: &Grading, m: usize, selection: &WeightSelection) -> Result<Vec<WeightVector>> {
    let classes = grading.weight_classes(m);
    match selection {
        WeightSelection::All => Ok(classes.into_keys().collect()),
        WeightSelection::Default => Ok(classes
            .into_iter()
            .filter(|(_, monos)| monos.len() >= 2 && monos.iter().any(|x| x.degree() == m))
            .map(|(w, _)| w)
            .collect()),
        WeightSelection::Only(ws) => {
            let mut out = Vec::new();
            for w in ws {
                if w.rank() != grading.rank() {
                    return Err(Error::InvalidSearch(format!(
                        "weight {w} has {} entries but the grading has rank {}",
                        w.rank(),
                        grading.rank()
                    )));
                }
                if !classes.contains_key(w) {
                    return Err(Error::InvalidSearch(format!("no monomial of degree ≤ {m} has weight {w}")));
                }
                if !out.contains(w) {
                    out.push(w.clone());
                }
            }
            out.sort();
            Ok(out)
        }
    }
}

fn search_class(
    algebra: &LieAlgebra,
    realization: &Realization,
    weight: Option<WeightVector>,
    ansatz: Vec<PbwMonomial>,
    degree_limit: usize,
) -> Result<ClassResult> {
    let system = extract_system(realization, &ansatz);
    let rank = system.rank();
    let candidates = candidates(&system);
    let uea = Uea::with_degree_limit(algebra, degree_limit);
    let mut genuine = recombine(&uea, &candidates)?;
    genuine.sort_by_key(UeaElement::degree);
    Ok(ClassResult {
        weight,
        ansatz,
        equations: system.rows.len(),
        rank,
        candidates,
        genuine,
        independent: Vec::new(),
    })
}

/// Runs the full search up to degree `options.degree`.
pub fn run_search(algebra: &LieAlgebra, realization: &Realization, options: &SearchOptions) -> Result<SearchReport> {
    let m = options.degree;
    if m == 0 {
        return Err(Error::InvalidSearch("degree must be at least 1".into()));
    }
    if m + 1 > options.degree_limit {
        return Err(Error::DegreeLimit {
            degree: m + 1,
            limit: options.degree_limit,
        });
    }
    realization.ensure_matches(algebra)?;
    if let Err(failure) = realization.check(algebra) {
        return Err(Error::RealizationMismatch {
            name: realization.name().to_string(),
            algebra: algebra.name().to_string(),
            reason: failure.message,
        });
    }

    let (grading, jobs): (Option<Grading>, Vec<(Option<WeightVector>, Vec<PbwMonomial>)>) = match options.mode {
        Mode::Naive => {
            if options.weights != WeightSelection::Default && options.weights != WeightSelection::All {
                return Err(Error::InvalidSearch("weights cannot be selected without a grading".into()));
            }
            (None, vec![(None, build_ansatz(algebra.dim(), None, m, None))])
        }
        Mode::Graded => {
            let grading = compute_grading(algebra);
            let mut classes = grading.weight_classes(m);
            let jobs = select_weights(&grading, m, &options.weights)?
                .into_iter()
                .map(|w| {
                    let ansatz = classes.remove(&w).unwrap_or_default();
                    (Some(w), ansatz)
                })
                .collect();
            (Some(grading), jobs)
        }
    };

    let mut classes: Vec<ClassResult> = jobs
        .into_par_iter()
        .map(|(w, ansatz)| search_class(algebra, realization, w, ansatz, options.degree_limit))
        .collect::<Result<_>>()?;

    let mut order: Vec<(usize, usize)> = classes
        .iter()
        .enumerate()
        .flat_map(|(c, r)| (0..r.genuine.len()).map(move |g| (c, g)))
        .collect();
    order.sort_by_key(|&(c, g)| classes[c].genuine[g].degree());
    let mut filter = IndependenceFilter::new(algebra.dim(), options.seed, options.trials);
    for (c, g) in order {
        if filter.add(&classes[c].genuine[g]) {
            let k = classes[c].genuine[g].clone();
            classes[c].independent.push(k);
        }
    }

    Ok(SearchReport {
        algebra: algebra.name().to_string(),
        realization: realization.name().to_string(),
        degree: m,
        mode: options.mode,
        grading,
        classes,
    })
}
