//! Built-in algebra families, their standard realisations, and closed-form
//! invariants used as reference data.
//!
//! | spec            | basis                                                   |
//! |-----------------|---------------------------------------------------------|
//! | `filiform:n`    | `e1 .. en`, `[e_k, e_n] = e_{k-1}`                       |
//! | `schrodinger:d` | `M, P0_1..P0_d, P1_1..P1_d, H, D, C, J1_2, J1_3, ..`     |
//! | `heisenberg:d`  | `x1..xd, y1..yd, z`, `[x_i, y_i] = z`                    |
//! | `sl2`           | `h, e, f`                                               |
//! | `abelian:n`     | `e1 .. en`                                              |

use crate::algebra::{LieAlgebra, LieAlgebraBuilder};
use crate::enveloping::{PbwMonomial, Uea, UeaElement};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::weyl::{parse_realization, Realization};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Filiform(usize),
    Schrodinger(usize),
    Heisenberg(usize),
    Sl2,
    Abelian(usize),
}

impl Family {
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (name, param) = match spec.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (spec, None),
        };
        let out_of_range = |reason: &str| Error::ParameterOutOfRange {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let number = || -> Result<usize> {
            param
                .ok_or_else(|| out_of_range("missing parameter"))?
                .parse()
                .map_err(|_| out_of_range("parameter must be a non-negative integer"))
        };
        let family = match name {
            "filiform" => {
                let n = number()?;
                if n < 3 {
                    return Err(out_of_range("filiform needs n ≥ 3"));
                }
                Family::Filiform(n)
            }
            "schrodinger" | "sch" => {
                let d = number()?;
                if d < 1 {
                    return Err(out_of_range("schrodinger needs d ≥ 1"));
                }
                Family::Schrodinger(d)
            }
            "heisenberg" => {
                let d = number()?;
                if d < 1 {
                    return Err(out_of_range("heisenberg needs d ≥ 1"));
                }
                Family::Heisenberg(d)
            }
            "sl2" if param.is_none() => Family::Sl2,
            "abelian" => {
                let n = number()?;
                if n < 1 {
                    return Err(out_of_range("abelian needs n ≥ 1"));
                }
                Family::Abelian(n)
            }
            _ => return Err(Error::UnknownFamily(spec.to_string())),
        };
        Ok(family)
    }

    pub fn spec(&self) -> String {
        match self {
            Family::Filiform(n) => format!("filiform:{n}"),
            Family::Schrodinger(d) => format!("schrodinger:{d}"),
            Family::Heisenberg(d) => format!("heisenberg:{d}"),
            Family::Sl2 => "sl2".into(),
            Family::Abelian(n) => format!("abelian:{n}"),
        }
    }

    pub fn algebra(&self) -> LieAlgebra {
        match *self {
            Family::Filiform(n) => filiform(n),
            Family::Schrodinger(d) => schrodinger(d),
            Family::Heisenberg(d) => heisenberg(d),
            Family::Sl2 => sl2(),
            Family::Abelian(n) => abelian(n),
        }
    }

    /// The family's standard first-order realisation.
    pub fn realization(&self, algebra: &LieAlgebra) -> Realization {
        let text = match *self {
            Family::Filiform(n) => filiform_realization_text(n),
            Family::Schrodinger(d) => schrodinger_realization_text(d),
            Family::Heisenberg(d) => heisenberg_realization_text(d),
            Family::Sl2 => "realization line\nvars x\nmap h = 2*x*d/dx\nmap e = -x^2*d/dx\nmap f = d/dx\n".into(),
            Family::Abelian(n) => {
                let mut t = format!("realization multiplication\nvars {}\n", names("x", n).join(" "));
                for i in 1..=n {
                    t.push_str(&format!("map e{i} = x{i}\n"));
                }
                t
            }
        };
        parse_realization(&text, algebra).expect("built-in realisation text is well formed")
    }
}

/// Built-in algebra from a spec such as `filiform:5` or `sl2`.
pub fn builtin(spec: &str) -> Result<LieAlgebra> {
    Ok(Family::parse(spec)?.algebra())
}

/// Built-in realisation for a family spec.
pub fn builtin_realization(spec: &str) -> Result<Realization> {
    let family = Family::parse(spec)?;
    Ok(family.realization(&family.algebra()))
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn filiform(n: usize) -> LieAlgebra {
    let mut b = LieAlgebraBuilder::new(format!("filiform:{n}"), names("e", n));
    for k in 2..n {
        b.bracket(k - 1, n - 1, [(k - 2, int(1))]).expect("filiform table");
    }
    b.build()
}

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebraBuilder::new(format!("abelian:{n}"), names("e", n)).build()
}

pub fn sl2() -> LieAlgebra {
    let mut b = LieAlgebraBuilder::new("sl2", ["h", "e", "f"].map(String::from).to_vec());
    b.bracket(0, 1, [(1, int(2))]).expect("sl2 table");
    b.bracket(0, 2, [(2, int(-2))]).expect("sl2 table");
    b.bracket(1, 2, [(0, int(1))]).expect("sl2 table");
    b.build()
}

pub fn heisenberg(d: usize) -> LieAlgebra {
    let mut basis = names("x", d);
    basis.extend(names("y", d));
    basis.push("z".into());
    let mut b = LieAlgebraBuilder::new(format!("heisenberg:{d}"), basis);
    for i in 0..d {
        b.bracket(i, d + i, [(2 * d, int(1))]).expect("heisenberg table");
    }
    b.build()
}

/// Index layout of the Schrödinger basis.
#[derive(Debug, Clone, Copy)]
pub struct SchrodingerBasis {
    pub d: usize,
}

impl SchrodingerBasis {
    pub fn dim(&self) -> usize {
        (self.d * self.d + 3 * self.d) / 2 + 4
    }

    pub fn m(&self) -> usize {
        0
    }

    /// `P_{n,i}`, `n ∈ {0,1}`, `i ∈ 1..=d`
    pub fn p(&self, n: usize, i: usize) -> usize {
        1 + n * self.d + (i - 1)
    }

    pub fn h(&self) -> usize {
        1 + 2 * self.d
    }

    pub fn dil(&self) -> usize {
        2 + 2 * self.d
    }

    pub fn c(&self) -> usize {
        3 + 2 * self.d
    }

    /// `J_{ij}` for `i < j`
    pub fn j(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j <= self.d);
        let before: usize = (1..i).map(|a| self.d - a).sum();
        4 + 2 * self.d + before + (j - i - 1)
    }

    /// `J_{ab}` as `(index, sign)` with `J_{ba} = −J_{ab}`; `None` when `a = b`.
    fn j_signed(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some((self.j(a, b), 1)),
            std::cmp::Ordering::Greater => Some((self.j(b, a), -1)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn names(&self) -> Vec<String> {
        let d = self.d;
        let mut out = vec!["M".to_string()];
        out.extend((1..=d).map(|i| format!("P0_{i}")));
        out.extend((1..=d).map(|i| format!("P1_{i}")));
        out.extend(["H", "D", "C"].map(String::from));
        for i in 1..=d {
            for j in i + 1..=d {
                out.push(format!("J{i}_{j}"));
            }
        }
        out
    }
}

pub fn schrodinger(d: usize) -> LieAlgebra {
    let s = SchrodingerBasis { d };
    let mut b = LieAlgebraBuilder::new(format!("schrodinger:{d}"), s.names());
    let mut set = |a: usize, c: usize, terms: Vec<(usize, Rational)>| {
        b.bracket(a, c, terms).expect("schrodinger table");
    };
    let (m, h, dil, c) = (s.m(), s.h(), s.dil(), s.c());
    set(dil, h, vec![(h, int(2))]);
    set(dil, c, vec![(c, int(-2))]);
    set(c, h, vec![(dil, int(1))]);
    for i in 1..=d {
        let (p0, p1) = (s.p(0, i), s.p(1, i));
        set(h, p1, vec![(p0, int(-1))]);
        set(dil, p0, vec![(p0, int(1))]);
        set(dil, p1, vec![(p1, int(-1))]);
        set(c, p0, vec![(p1, int(1))]);
        set(p0, p1, vec![(m, int(-1))]);
    }
    for i in 1..=d {
        for j in i + 1..=d {
            let jij = s.j(i, j);
            for k in 1..=d {
                for n in 0..2 {
                    let mut terms = Vec::new();
                    if i == k {
                        terms.push((s.p(n, j), int(1)));
                    }
                    if j == k {
                        terms.push((s.p(n, i), int(-1)));
                    }
                    if !terms.is_empty() {
                        set(jij, s.p(n, k), terms);
                    }
                }
            }
            for k in 1..=d {
                for l in k + 1..=d {
                    let jkl = s.j(k, l);
                    if jkl <= jij {
                        continue;
                    }
                    let mut acc = std::collections::BTreeMap::<usize, i64>::new();
                    let mut add = |cond: bool, a: usize, bb: usize, sign: i64| {
                        if cond {
                            if let Some((idx, s2)) = s.j_signed(a, bb) {
                                *acc.entry(idx).or_default() += sign * s2;
                            }
                        }
                    };
                    add(i == k, j, l, 1);
                    add(j == l, i, k, 1);
                    add(i == l, j, k, -1);
                    add(j == k, i, l, -1);
                    let terms: Vec<(usize, Rational)> =
                        acc.into_iter().filter(|(_, v)| *v != 0).map(|(k, v)| (k, int(v))).collect();
                    if !terms.is_empty() {
                        set(jij, jkl, terms);
                    }
                }
            }
        }
    }
    b.build()
}

fn filiform_realization_text(n: usize) -> String {
    let mut t = format!("realization vector-field\nvars {}\nmap e1 = 0\n", names("x", n).join(" "));
    for k in 2..n {
        t.push_str(&format!("map e{k} = x{}*d/dx{n}\n", k - 1));
    }
    let en: Vec<String> = (2..n).map(|k| format!("- x{}*d/dx{k}", k - 1)).collect();
    t.push_str(&format!("map e{n} = {}\n", if en.is_empty() { "0".into() } else { en.join(" ") }));
    t
}

fn schrodinger_realization_text(d: usize) -> String {
    let xs = names("x", d);
    let mut t = format!("realization vector-field\nvars t {}\nparams m\nmap M = m\n", xs.join(" "));
    for x in &xs {
        let i = &x[1..];
        t.push_str(&format!("map P0_{i} = d/d{x}\n"));
        t.push_str(&format!("map P1_{i} = -t*d/d{x} - m*{x}\n"));
    }
    t.push_str("map H = d/dt\n");
    let euler: String = xs.iter().map(|x| format!(" - {x}*d/d{x}")).collect();
    t.push_str(&format!("map D = -2*t*d/dt{euler} - 1/2\n"));
    let boost: String = xs.iter().map(|x| format!(" + t*{x}*d/d{x} + 1/2*m*{x}^2")).collect();
    t.push_str(&format!("map C = t^2*d/dt{boost} + 1/2*t\n"));
    for i in 1..=d {
        for j in i + 1..=d {
            t.push_str(&format!("map J{i}_{j} = -x{i}*d/dx{j} + x{j}*d/dx{i}\n"));
        }
    }
    t
}

fn heisenberg_realization_text(d: usize) -> String {
    let qs = names("q", d);
    let mut t = format!("realization position\nvars {}\nparams m\n", qs.join(" "));
    for (i, q) in qs.iter().enumerate() {
        t.push_str(&format!("map x{} = d/d{q}\n", i + 1));
        t.push_str(&format!("map y{} = m*{q}\n", i + 1));
    }
    t.push_str("map z = m\n");
    t
}

fn commutative(dim: usize, terms: &[(Rational, Vec<(usize, u32)>)]) -> UeaElement {
    UeaElement::from_terms(terms.iter().map(|(c, factors)| {
        let mut exps = vec![0u32; dim];
        for &(k, e) in factors {
            exps[k - 1] += e;
        }
        (PbwMonomial::from_exponents(exps), c.clone())
    }))
}

fn check_range(spec: String, ok: bool, reason: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            spec,
            reason: reason.into(),
        })
    }
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Quadratic invariant of `filiform:n`,
/// `Q_k = e_{k+1}² + 2 Σ_{j=1}^{k} (−1)^j e_{k+1−j} e_{k+1+j}`, for
/// `1 ≤ k ≤ ⌊n/2⌋ − 1`. All factors lie in the abelian ideal `⟨e_1..e_{n−1}⟩`.
pub fn filiform_quadratic(n: usize, k: usize) -> Result<UeaElement> {
    check_range(format!("Q_{k} in filiform:{n}"), k >= 1 && 2 * k + 2 <= n, "need 1 ≤ k ≤ ⌊n/2⌋ − 1")?;
    let mut terms = vec![(int(1), vec![(k + 1, 2)])];
    for j in 1..=k {
        terms.push((int(2 * sign(j)), vec![(k + 1 - j, 1), (k + 1 + j, 1)]));
    }
    Ok(commutative(n, &terms))
}

/// Cubic invariant of `filiform:n` for `1 ≤ k ≤ ⌊(n+1)/2⌋ − 2`:
///
/// `C_k = (−1)^k Σ_{j=1}^{k+1} (2k+3−2j)(−1)^j e_1 e_j e_{2k+3−j} + 2(−1)^k e_1 e_2 e_{2k+1}
///        − e_2 e_{k+1}² + (−1)^k Σ_{j=1}^{k} 2(−1)^j e_2 e_{1+j} e_{2k+1−j}`
pub fn filiform_cubic(n: usize, k: usize) -> Result<UeaElement> {
    check_range(format!("C_{k} in filiform:{n}"), k >= 1 && 2 * k + 3 <= n, "need 1 ≤ k ≤ ⌊(n+1)/2⌋ − 2")?;
    let sk = sign(k);
    let mut terms = Vec::new();
    for j in 1..=k + 1 {
        let c = sk * (2 * k as i64 + 3 - 2 * j as i64) * sign(j);
        terms.push((int(c), vec![(1, 1), (j, 1), (2 * k + 3 - j, 1)]));
    }
    terms.push((int(2 * sk), vec![(1, 1), (2, 1), (2 * k + 1, 1)]));
    terms.push((int(-1), vec![(2, 1), (k + 1, 2)]));
    for j in 1..=k {
        terms.push((int(2 * sk * sign(j)), vec![(2, 1), (1 + j, 1), (2 * k + 1 - j, 1)]));
    }
    Ok(commutative(n, &terms))
}

/// `ξ_k = (−1)^k k/(k+1)! e_2^{k+1} + Σ_{i=0}^{k−1} (−1)^i/i! e_2^i e_{k+2−i} e_1^{k−i}`
/// for `1 ≤ k ≤ n − 3`.
pub fn filiform_xi(n: usize, k: usize) -> Result<UeaElement> {
    check_range(format!("xi_{k} in filiform:{n}"), k >= 1 && k + 3 <= n, "need 1 ≤ k ≤ n − 3")?;
    let factorial = |m: usize| (1..=m as i64).product::<i64>();
    let mut terms = vec![(
        Rational::new((sign(k) * k as i64).into(), factorial(k + 1).into()),
        vec![(2, k as u32 + 1)],
    )];
    for i in 0..k {
        terms.push((
            Rational::new(sign(i).into(), factorial(i).into()),
            vec![(2, i as u32), (k + 2 - i, 1), (1, (k - i) as u32)],
        ));
    }
    Ok(commutative(n, &terms))
}

fn p(n: usize, i: usize) -> String {
    format!("P{n}_{i}")
}

fn jn(i: usize, j: usize) -> String {
    format!("J{i}_{j}")
}

/// Text of the cubic invariant of `schrodinger:d` (weight of `M`):
/// `M D² − (d+2) M D − 4 M H C + 2 Σ_i (P_{1,i}² H + P_{0,i}² C − P_{0,i} P_{1,i} D)
///  + Σ_{i<j} (M J_{ij} + 2 (P_{0,i} P_{1,j} − P_{0,j} P_{1,i})) J_{ij}`.
pub fn schrodinger_cubic_text(d: usize) -> String {
    let mut t = format!("M*D^2 - {}*M*D - 4*M*H*C", d + 2);
    for i in 1..=d {
        t.push_str(&format!(
            " + 2*{p1}^2*H + 2*{p0}^2*C - 2*{p0}*{p1}*D",
            p0 = p(0, i),
            p1 = p(1, i)
        ));
    }
    for i in 1..=d {
        for j in i + 1..=d {
            t.push_str(&format!(
                " + (M*{jij} + 2*({p0i}*{p1j} - {p0j}*{p1i}))*{jij}",
                jij = jn(i, j),
                p0i = p(0, i),
                p1j = p(1, j),
                p0j = p(0, j),
                p1i = p(1, i)
            ));
        }
    }
    t
}

/// Text of the quartic invariant of `schrodinger:d`, `d ≥ 2` (weight of `M²`):
/// `Σ_{i<j} (M² J_{ij}² + 2M (P_{0,i}P_{1,j} − P_{0,j}P_{1,i}) J_{ij} + P_{0,i}² P_{1,j}²
///  + P_{0,j}² P_{1,i}² − 2 P_{0,i}P_{1,i}P_{0,j}P_{1,j}) − (d−1) M Σ_i P_{0,i}P_{1,i}`.
pub fn schrodinger_quartic_text(d: usize) -> String {
    let mut parts = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            parts.push(format!(
                "M^2*{jij}^2 + 2*M*({p0i}*{p1j} - {p0j}*{p1i})*{jij} + {p0i}^2*{p1j}^2 + {p0j}^2*{p1i}^2 - 2*{p0i}*{p1i}*{p0j}*{p1j}",
                jij = jn(i, j),
                p0i = p(0, i),
                p1j = p(1, j),
                p0j = p(0, j),
                p1i = p(1, i)
            ));
        }
    }
    for i in 1..=d {
        parts.push(format!("- {}*M*{}*{}", d - 1, p(0, i), p(1, i)));
    }
    parts.join(" + ").replace("+ -", "-")
}

/// `M J_{12} + P_{0,1}P_{1,2} − P_{0,2}P_{1,1}` in `schrodinger:d`, `d ≥ 2`.
pub fn schrodinger_quadratic_text() -> String {
    "M*J1_2 + P0_1*P1_2 - P0_2*P1_1".into()
}

pub fn schrodinger_cubic(uea: &Uea<'_>, d: usize) -> Result<UeaElement> {
    uea.parse(&schrodinger_cubic_text(d))
}

pub fn schrodinger_quartic(uea: &Uea<'_>, d: usize) -> Result<UeaElement> {
    check_range(format!("quartic in schrodinger:{d}"), d >= 2, "need d ≥ 2")?;
    uea.parse(&schrodinger_quartic_text(d))
}
