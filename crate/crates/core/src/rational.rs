//! Exact scalars.
//!
//! All coefficients in the crate are arbitrary-precision rationals kept in
//! lowest terms with a positive denominator. Nothing is ever rounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `3`, `-1/2`, `+4/6` into a reduced rational. Rejects anything else,
/// including decimals and zero denominators.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (sign, body) = match text.as_bytes().first()? {
        b'-' => (-1, &text[1..]),
        b'+' => (1, &text[1..]),
        _ => (1, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num * sign, den))
}

/// Formats a rational as `n` or `n/d`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Clears denominators and removes the content of a rational vector, giving a
/// primitive integer vector on the same line through the origin. The sign is
/// left as-is; the zero vector maps to zeros.
pub fn to_primitive_integers(values: &[Rational]) -> Vec<BigInt> {
    let lcm = values
        .iter()
        .filter(|q| !q.is_zero())
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|q| (q.numer() * &lcm) / q.denom())
        .collect();
    make_primitive(scaled)
}

/// Divides an integer vector by the gcd of its entries.
pub fn make_primitive(mut values: Vec<BigInt>) -> Vec<BigInt> {
    let g = values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in values.iter_mut() {
            *v /= &g;
        }
    }
    values
}

/// Negates the vector if its first nonzero entry is negative.
pub fn normalize_sign(values: &mut [BigInt]) {
    if values.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        for v in values.iter_mut() {
            *v = -&*v;
        }
    }
}

/// Seeded integer sample points with coordinates in `[-1000, 1000]`.
pub fn integer_points(seed: u64, count: usize, dim: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..dim).map(|_| int(rng.gen_range(-1000..=1000))).collect())
        .collect()
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// n (n-1) ... (n-k+1)
pub fn falling_factorial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}
