#![allow(dead_code)]

use std::collections::BTreeMap;

use casimir::families::SchrodingerBasis;
use casimir::grading::{Grading, WeightVector};
use casimir::poly::Polynomial;
use casimir::rational::{frac, int};
use casimir::weyl::WeylMonomial;
use casimir::{DifferentialOperator, LieAlgebra, PbwMonomial, Rational, Uea, UeaElement};
use rand::Rng;

pub fn parse(uea: &Uea<'_>, text: &str) -> UeaElement {
    uea.parse(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}

pub fn mul(uea: &Uea<'_>, a: &UeaElement, b: &UeaElement) -> UeaElement {
    uea.multiply(a, b).unwrap()
}

/// Weights `e_k ↦ (1, n-k-1)` for `k < n` and `e_n ↦ (0, 1)`.
pub fn filiform_reference_grading(n: usize) -> Grading {
    let mut basis = vec![vec![0i64; n], vec![0i64; n]];
    for k in 1..n {
        basis[0][k - 1] = 1;
        basis[1][k - 1] = (n - k - 1) as i64;
    }
    basis[1][n - 1] = 1;
    Grading::from_basis(basis, n)
}

/// Weights with `P0 ↦ (1,1)`, `P1 ↦ (-1,1)`, `H ↦ (2,0)`, `C ↦ (-2,0)`,
/// `M ↦ (0,2)` and `D`, `J` of weight zero.
pub fn schrodinger_reference_grading(d: usize) -> Grading {
    let b = SchrodingerBasis { d };
    let mut w = vec![(0i64, 0i64); b.dim()];
    w[b.m()] = (0, 2);
    for i in 1..=d {
        w[b.p(0, i)] = (1, 1);
        w[b.p(1, i)] = (-1, 1);
    }
    w[b.h()] = (2, 0);
    w[b.c()] = (-2, 0);
    let basis = vec![w.iter().map(|p| p.0).collect(), w.iter().map(|p| p.1).collect()];
    Grading::from_basis(basis, b.dim())
}

/// The class of `weight` under `reference` must coincide with a single class
/// of `canonical`; returns that canonical weight.
pub fn matching_class(canonical: &Grading, reference: &Grading, m: usize, weight: &WeightVector) -> WeightVector {
    let ref_classes = reference.weight_classes(m);
    let class = ref_classes.get(weight).expect("reference class is empty");
    let w = canonical.monomial_weight(class[0].exponents());
    let can_classes = canonical.weight_classes(m);
    assert_eq!(&can_classes[&w], class, "classes differ for weight {weight}");
    w
}

pub fn weight_of(grading: &Grading, algebra: &LieAlgebra, monomial: &str) -> WeightVector {
    let mut exps = vec![0u32; algebra.dim()];
    for factor in monomial.split('*') {
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse().unwrap()),
            None => (factor, 1),
        };
        exps[algebra.index_of(name).unwrap()] += e;
    }
    grading.monomial_weight(&exps)
}

pub struct VirtualCopies {
    pub h: UeaElement,
    pub c: UeaElement,
    pub dil: UeaElement,
    pub j: BTreeMap<(usize, usize), UeaElement>,
}

/// Elements of the localised enveloping algebra (multiplied through by `M`)
/// that close on a copy of `sl2 ⊕ so(d)` commuting with the Heisenberg part.
pub fn virtual_copies(uea: &Uea<'_>, d: usize) -> VirtualCopies {
    let b = SchrodingerBasis { d };
    let g = |i: usize| uea.generator(i).unwrap();
    let m = g(b.m());
    let half = frac(1, 2);
    let mut h = mul(uea, &m, &g(b.h()));
    let mut c = mul(uea, &m, &g(b.c()));
    let mut dil = mul(uea, &m, &g(b.dil()));
    dil.add_scaled(&m, &frac(-(d as i64), 2));
    for i in 1..=d {
        let p0 = g(b.p(0, i));
        let p1 = g(b.p(1, i));
        h.add_scaled(&mul(uea, &p0, &p0), &-half.clone());
        c.add_scaled(&mul(uea, &p1, &p1), &-half.clone());
        dil.add_scaled(&mul(uea, &p0, &p1), &int(-1));
    }
    let mut j = BTreeMap::new();
    for i in 1..=d {
        for k in i + 1..=d {
            let mut x = mul(uea, &m, &g(b.j(i, k)));
            x.add_scaled(&mul(uea, &g(b.p(0, i)), &g(b.p(1, k))), &int(1));
            x.add_scaled(&mul(uea, &g(b.p(0, k)), &g(b.p(1, i))), &int(-1));
            j.insert((i, k), x);
        }
    }
    VirtualCopies { h, c, dil, j }
}

/// `D̃² − 2H̃C̃ − 2C̃H̃`
pub fn virtual_sl2_casimir(uea: &Uea<'_>, v: &VirtualCopies) -> UeaElement {
    let mut k = mul(uea, &v.dil, &v.dil);
    k.add_scaled(&mul(uea, &v.h, &v.c), &int(-2));
    k.add_scaled(&mul(uea, &v.c, &v.h), &int(-2));
    k
}

pub mod forms {
    pub const SCH1_CUBIC: &str = "M*D^2 - 3*M*D - 4*M*H*C + 2*P1_1^2*H + 2*P0_1^2*C - 2*P0_1*P1_1*D";

    pub const SCH2_QUADRATIC: &str = "M*J1_2 + P0_1*P1_2 - P0_2*P1_1";

    pub const SCH2_CUBIC: &str = "M*D^2 - 4*M*D - 4*M*H*C + 2*P1_1^2*H + 2*P1_2^2*H + 2*P0_1^2*C \
        + 2*P0_2^2*C - 2*P0_1*P1_1*D - 2*P0_2*P1_2*D + M*J1_2^2 + 2*P0_1*P1_2*J1_2 - 2*P0_2*P1_1*J1_2";

    pub const SCH2_CUBIC_PARTS: [&str; 2] = [
        "M*D^2 - 4*M*D - 4*M*H*C + 2*P1_1^2*H + 2*P1_2^2*H + 2*P0_1^2*C + 2*P0_2^2*C \
         - 2*P0_1*P1_1*D - 2*P0_2*P1_2*D - M*J1_2^2",
        "M*J1_2^2 + P0_1*P1_2*J1_2 - P0_2*P1_1*J1_2",
    ];

    pub const SCH2_VIRTUAL_SL2: &str = "M^2*D^2 - 4*M^2*D - 4*M^2*H*C + 2*M*P1_1^2*H + 2*M*P1_2^2*H \
        + 2*M*P0_1^2*C + 2*M*P0_2^2*C - 2*M*P0_1*P1_1*D - 2*M*P0_2*P1_2*D + M*P0_1*P1_1 + M*P0_2*P1_2 \
        + 2*P0_1*P0_2*P1_1*P1_2 - P0_1^2*P1_2^2 - P0_2^2*P1_1^2 - M^2";

    pub const SCH3_CUBIC_PARTS: [&str; 4] = [
        "-5*M*D + M*D^2 - 4*M*H*C + 2*P1_1^2*H + 2*P1_2^2*H + 2*P1_3^2*H + 2*P0_1^2*C + 2*P0_2^2*C \
         + 2*P0_3^2*C - 2*P0_1*P1_1*D - 2*P0_2*P1_2*D - 2*P0_3*P1_3*D - M*J1_2^2 - M*J1_3^2 - M*J2_3^2",
        "M*J1_2^2 - P0_2*P1_1*J1_2 + P0_1*P1_2*J1_2",
        "M*J1_3^2 - P0_3*P1_1*J1_3 + P0_1*P1_3*J1_3",
        "M*J2_3^2 - P0_3*P1_2*J2_3 + P0_2*P1_3*J2_3",
    ];

    pub const SCH3_QUARTIC_PARTS: [&str; 9] = [
        "M^2*J1_2^2 - M*P0_1*P1_1 + M*P0_2*P1_2 + 2*M*P0_1*P1_2*J1_2 - P0_2^2*P1_1^2 + P0_1^2*P1_2^2",
        "M^2*J1_2^2 + M*P0_1*P1_1 + M*P0_2*P1_2 - P0_1^2*P1_2^2 - P0_2^2*P1_1^2 + 2*P0_1*P0_2*P1_1*P1_2",
        "-M^2*J1_2^2 - M*P0_1*P1_1 + M*P0_2*P1_2 + 2*M*P0_2*P1_1*J1_2 - P0_2^2*P1_1^2 + P0_1^2*P1_2^2",
        "M^2*J1_3^2 - M*P0_1*P1_1 + M*P0_3*P1_3 + 2*M*P0_1*P1_3*J1_3 - P0_3^2*P1_1^2 + P0_1^2*P1_3^2",
        "M^2*J1_3^2 + M*P0_1*P1_1 + M*P0_3*P1_3 - P0_1^2*P1_3^2 - P0_3^2*P1_1^2 + 2*P0_1*P0_3*P1_1*P1_3",
        "-M^2*J1_3^2 - M*P0_1*P1_1 + M*P0_3*P1_3 + 2*M*P0_3*P1_1*J1_3 - P0_3^2*P1_1^2 + P0_1^2*P1_3^2",
        "M^2*J2_3^2 - M*P0_2*P1_2 + M*P0_3*P1_3 + 2*M*P0_2*P1_3*J2_3 - P0_3^2*P1_2^2 + P0_2^2*P1_3^2",
        "M^2*J2_3^2 + M*P0_2*P1_2 + M*P0_3*P1_3 - P0_2^2*P1_3^2 - P0_3^2*P1_2^2 + 2*P0_2*P0_3*P1_2*P1_3",
        "-M^2*J2_3^2 - M*P0_2*P1_2 + M*P0_3*P1_3 + 2*M*P0_3*P1_2*J2_3 - P0_3^2*P1_2^2 + P0_2^2*P1_3^2",
    ];

    /// Signs combining the nine quartic parts into the Casimir.
    pub const SCH3_QUARTIC_SIGNS: [i64; 9] = [1, -1, -1, 1, -1, -1, 1, -1, -1];

    pub const SCH3_QUARTIC: &str = "-2*M*(P0_1*P1_1 + P0_2*P1_2 + P0_3*P1_3) + M^2*(J1_2^2 + J1_3^2 + J2_3^2) \
        + 2*M*(P0_1*P1_2 - P0_2*P1_1)*J1_2 + 2*M*(P0_1*P1_3 - P0_3*P1_1)*J1_3 \
        + 2*M*(P0_2*P1_3 - P0_3*P1_2)*J2_3 + P0_1^2*P1_2^2 + P0_2^2*P1_1^2 + P0_1^2*P1_3^2 \
        + P0_3^2*P1_1^2 + P0_2^2*P1_3^2 + P0_3^2*P1_2^2 - 2*P0_1*P0_2*P1_1*P1_2 \
        - 2*P0_1*P0_3*P1_1*P1_3 - 2*P0_2*P0_3*P1_2*P1_3";

    pub const SCH4_CUBIC: &str = "M*D^2 - 6*M*D - 4*M*H*C + 2*(P1_1^2 + P1_2^2 + P1_3^2 + P1_4^2)*H \
        + 2*(P0_1^2 + P0_2^2 + P0_3^2 + P0_4^2)*C - 2*(P0_1*P1_1 + P0_2*P1_2 + P0_3*P1_3 + P0_4*P1_4)*D \
        + M*(J1_2^2 + J1_3^2 + J1_4^2 + J2_3^2 + J2_4^2 + J3_4^2) \
        - 2*(P0_2*P1_1 - P0_1*P1_2)*J1_2 - 2*(P0_3*P1_1 - P0_1*P1_3)*J1_3 \
        - 2*(P0_4*P1_1 - P0_1*P1_4)*J1_4 - 2*(P0_3*P1_2 - P0_2*P1_3)*J2_3 \
        - 2*(P0_4*P1_2 - P0_2*P1_4)*J2_4 - 2*(P0_4*P1_3 - P0_3*P1_4)*J3_4";

    pub const SCH4_PFAFFIAN_CUBIC: &str = "M*(J1_2*J3_4 - J1_3*J2_4 + J1_4*J2_3) \
        + (P0_1*P1_2 - P0_2*P1_1)*J3_4 + (P0_3*P1_1 - P0_1*P1_3)*J2_4 \
        + (P0_2*P1_3 - P0_3*P1_2)*J1_4 + (P0_1*P1_4 - P0_4*P1_1)*J2_3 \
        + (P0_4*P1_2 - P0_2*P1_4)*J1_3 + (P0_3*P1_4 - P0_4*P1_3)*J1_2";

    pub const SCH4_QUARTIC: &str = "-3*M*(P0_1*P1_1 + P0_2*P1_2 + P0_3*P1_3 + P0_4*P1_4) \
        + M^2*(J1_2^2 + J1_3^2 + J1_4^2 + J2_3^2 + J2_4^2 + J3_4^2) \
        + 2*M*(P0_1*P1_2 - P0_2*P1_1)*J1_2 + 2*M*(P0_1*P1_3 - P0_3*P1_1)*J1_3 \
        + 2*M*(P0_1*P1_4 - P0_4*P1_1)*J1_4 + 2*M*(P0_2*P1_3 - P0_3*P1_2)*J2_3 \
        + 2*M*(P0_2*P1_4 - P0_4*P1_2)*J2_4 + 2*M*(P0_3*P1_4 - P0_4*P1_3)*J3_4 \
        + P0_1^2*P1_2^2 + P0_2^2*P1_1^2 + P0_1^2*P1_3^2 + P0_3^2*P1_1^2 + P0_1^2*P1_4^2 + P0_4^2*P1_1^2 \
        + P0_2^2*P1_3^2 + P0_3^2*P1_2^2 + P0_2^2*P1_4^2 + P0_4^2*P1_2^2 + P0_3^2*P1_4^2 + P0_4^2*P1_3^2 \
        - 2*P0_1*P0_2*P1_1*P1_2 - 2*P0_1*P0_3*P1_1*P1_3 - 2*P0_1*P0_4*P1_1*P1_4 \
        - 2*P0_2*P0_3*P1_2*P1_3 - 2*P0_2*P0_4*P1_2*P1_4 - 2*P0_3*P0_4*P1_3*P1_4";
}

pub fn combine(uea: &Uea<'_>, parts: &[&str], coeffs: &[i64]) -> UeaElement {
    let mut out = UeaElement::zero();
    for (p, &c) in parts.iter().zip(coeffs) {
        out.add_scaled(&parse(uea, p), &int(c));
    }
    out
}

/// Splits `k` into its homogeneous components.
pub fn weight_components(grading: &Grading, k: &UeaElement) -> Vec<UeaElement> {
    let mut parts: BTreeMap<WeightVector, UeaElement> = BTreeMap::new();
    for (m, c) in k.terms() {
        parts
            .entry(grading.monomial_weight(m.exponents()))
            .or_insert_with(UeaElement::zero)
            .add_term(m.clone(), c.clone());
    }
    parts.into_values().collect()
}

fn small_coefficient(rng: &mut impl Rng) -> Rational {
    loop {
        let c = rng.gen_range(-4i64..=4);
        if c != 0 {
            return int(c);
        }
    }
}

pub fn random_monomial(rng: &mut impl Rng, dim: usize, max_degree: usize) -> PbwMonomial {
    let degree = rng.gen_range(0..=max_degree);
    let mut exps = vec![0u32; dim];
    for _ in 0..degree {
        exps[rng.gen_range(0..dim)] += 1;
    }
    PbwMonomial::from_exponents(exps)
}

pub fn random_element(rng: &mut impl Rng, dim: usize, max_degree: usize, max_terms: usize) -> UeaElement {
    let n = rng.gen_range(1..=max_terms);
    UeaElement::from_terms((0..n).map(|_| (random_monomial(rng, dim, max_degree), small_coefficient(rng))))
}

pub fn random_word(rng: &mut impl Rng, dim: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..dim)).collect()
}

pub fn random_operator(rng: &mut impl Rng, n_vars: usize, n_params: usize, max_order: u32, max_terms: usize) -> DifferentialOperator {
    let mut op = DifferentialOperator::zero(n_vars, n_params);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let mut coords = vec![0u32; n_vars + n_params];
        for _ in 0..rng.gen_range(0..=2) {
            coords[rng.gen_range(0..n_vars + n_params)] += 1;
        }
        let mut derivs = vec![0u32; n_vars];
        for _ in 0..rng.gen_range(0..=max_order) {
            derivs[rng.gen_range(0..n_vars)] += 1;
        }
        op.add_term(WeylMonomial { coords, derivs }, small_coefficient(rng));
    }
    op
}

pub fn random_polynomial(rng: &mut impl Rng, nvars: usize, max_degree: u32, max_terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let mut exps = vec![0u32; nvars];
        for _ in 0..rng.gen_range(0..=max_degree) {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        p.add_term(exps, small_coefficient(rng));
    }
    p
}

/// Lets `op` act on a polynomial in its variables and parameters.
pub fn act(op: &DifferentialOperator, f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(f.nvars());
    for (m, c) in op.terms() {
        let mut g = f.clone();
        for (j, &k) in m.derivs.iter().enumerate() {
            for _ in 0..k {
                g = g.derivative(j);
            }
        }
        let x = Polynomial::monomial(m.coords.clone(), c.clone());
        out = &out + &(&x * &g);
    }
    out
}

/// Normal ordering by repeatedly swapping the leftmost out-of-order pair.
pub fn bubble_normal_order(algebra: &LieAlgebra, word: &[usize]) -> UeaElement {
    let dim = algebra.dim();
    let mut out = UeaElement::zero();
    let mut stack: Vec<(Rational, Vec<usize>)> = vec![(int(1), word.to_vec())];
    while let Some((c, w)) = stack.pop() {
        match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            None => {
                let mut exps = vec![0u32; dim];
                for &g in &w {
                    exps[g] += 1;
                }
                out.add_term(PbwMonomial::from_exponents(exps), c);
            }
            Some(i) => {
                let (b, a) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                stack.push((c.clone(), swapped));
                for (k, s) in algebra.bracket_terms(b, a) {
                    let mut shorter = w[..i].to_vec();
                    shorter.push(k);
                    shorter.extend_from_slice(&w[i + 2..]);
                    stack.push((&c * &s, shorter));
                }
            }
        }
    }
    out
}
