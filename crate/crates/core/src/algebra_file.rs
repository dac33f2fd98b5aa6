//! Line-based algebra file format.
//!
//! ```text
//! # comment
//! algebra n41
//! dim 4
//! basis e1 e2 e3 e4
//! bracket e2 e4 = e1
//! bracket e3 e4 = e2
//! ```
//!
//! Bracket right-hand sides are sums of `[rational*]id` terms. Unlisted
//! brackets vanish.

use num_traits::{One, Zero};

use crate::algebra::{push_signed_term, LieAlgebra, LieAlgebraBuilder};
use crate::error::{Error, Result};
use crate::expr::{parse_sum, Factor};
use crate::rational::Rational;

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_algebra(text: &str) -> Result<LieAlgebra> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let mut header = |keyword: &str| -> Result<(usize, Vec<String>)> {
        let (line, content) = lines
            .next()
            .ok_or_else(|| Error::parse(0, format!("missing `{keyword}` line")))?;
        let mut words = content.split_whitespace();
        if words.next() != Some(keyword) {
            return Err(Error::parse(line, format!("expected `{keyword}`")));
        }
        Ok((line, words.map(String::from).collect()))
    };

    let (line, name) = header("algebra")?;
    let name = match name.as_slice() {
        [n] => n.clone(),
        _ => return Err(Error::parse(line, "expected `algebra <name>`")),
    };
    let (line, dim) = header("dim")?;
    let dim: usize = match dim.as_slice() {
        [d] => d
            .parse()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::parse(line, format!("invalid dimension `{d}`")))?,
        _ => return Err(Error::parse(line, "expected `dim <N>`")),
    };
    let (line, basis) = header("basis")?;
    if basis.len() != dim {
        return Err(Error::parse(
            line,
            format!("basis lists {} generators but dim is {dim}", basis.len()),
        ));
    }
    for (i, b) in basis.iter().enumerate() {
        if !is_identifier(b) {
            return Err(Error::parse(line, format!("invalid identifier `{b}`")));
        }
        if basis[..i].contains(b) {
            return Err(Error::parse(line, format!("duplicate generator `{b}`")));
        }
    }

    let mut builder = LieAlgebraBuilder::new(name, basis);
    for (line, content) in lines {
        let rest = content
            .strip_prefix("bracket")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| Error::parse(line, "expected `bracket <A> <B> = ...`"))?;
        let (lhs, rhs) = rest
            .split_once('=')
            .ok_or_else(|| Error::parse(line, "missing `=`"))?;
        let ids: Vec<&str> = lhs.split_whitespace().collect();
        let [a, b] = ids.as_slice() else {
            return Err(Error::parse(line, "expected two generators before `=`"));
        };
        let lookup = |id: &str| {
            builder
                .index_of(id)
                .ok_or_else(|| Error::parse(line, format!("unknown generator `{id}`")))
        };
        let (a, b) = (lookup(a)?, lookup(b)?);
        let terms = parse_bracket_rhs(rhs.trim(), |id| builder.index_of(id)).map_err(|m| Error::parse(line, m))?;
        builder.bracket(a, b, terms).map_err(|m| Error::parse(line, m))?;
    }
    Ok(builder.build())
}

fn parse_bracket_rhs(rhs: &str, lookup: impl Fn(&str) -> Option<usize>) -> std::result::Result<Vec<(usize, Rational)>, String> {
    if rhs == "0" {
        return Ok(Vec::new());
    }
    let sum = parse_sum(rhs)?;
    let mut terms = Vec::new();
    for product in sum.terms {
        let mut coeff = if product.negative { -Rational::one() } else { Rational::one() };
        let mut generator = None;
        for factor in product.factors {
            match factor {
                Factor::Number(q) if generator.is_none() => coeff *= q,
                Factor::Symbol { name, power: 1 } if generator.is_none() => {
                    generator = Some(lookup(&name).ok_or_else(|| format!("unknown generator `{name}`"))?);
                }
                _ => return Err("bracket terms must have the form [rational*]generator".into()),
            }
        }
        let k = generator.ok_or("bracket term without a generator")?;
        terms.push((k, coeff));
    }
    Ok(terms)
}

pub fn to_algebra_file(algebra: &LieAlgebra) -> String {
    let mut out = format!(
        "algebra {}\ndim {}\nbasis {}\n",
        algebra.name(),
        algebra.dim(),
        algebra.basis_names().join(" ")
    );
    for (i, j, terms) in algebra.structure_constants() {
        let mut rhs = String::new();
        for (k, c) in terms {
            if !c.is_zero() {
                push_signed_term(&mut rhs, c, algebra.basis_name(*k));
            }
        }
        out.push_str(&format!(
            "bracket {} {} = {}\n",
            algebra.basis_name(i),
            algebra.basis_name(j),
            rhs
        ));
    }
    out
}
