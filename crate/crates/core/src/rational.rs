//! Exact rationals and the bits of elementary number theory the divisor code needs.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{GammaError, Result};

pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Ratio::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Ratio::from_integer(n)
}

/// Parses `a`, `a/b` or `-a/b`. The result is normalized (positive denominator).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || GammaError::Parse(format!("expected a rational `a/b`, got `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i128>().map_err(|_| bad())?, d.trim().parse::<i128>().map_err(|_| bad())?),
        None => (s.parse::<i128>().map_err(|_| bad())?, 1),
    };
    if d == 0 {
        return Err(GammaError::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Ratio::new(n, d))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `p`-adic valuation of a nonzero integer.
pub fn int_valuation(mut n: i128, p: u64) -> i64 {
    debug_assert!(n != 0);
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `p`-adic valuation of a nonzero rational.
pub fn valuation(q: &Rational, p: u64) -> i64 {
    int_valuation(*q.numer(), p) - int_valuation(*q.denom(), p)
}

/// Prime factorization of `|n| ≥ 1` by trial division.
pub fn factor(n: i128) -> BTreeMap<u64, i64> {
    let mut n = n.abs();
    let mut out = BTreeMap::new();
    let mut p: i128 = 2;
    while p * p <= n {
        while n % p == 0 {
            *out.entry(p as u64).or_insert(0) += 1;
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        *out.entry(n as u64).or_insert(0) += 1;
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `Σ |q_i|`.
pub fn l1_norm(values: &[Rational]) -> Rational {
    values.iter().fold(Rational::zero(), |acc, q| acc + q.abs())
}

pub fn lcm_of_denominators(values: &[Rational]) -> i128 {
    values.iter().fold(1, |acc, q| acc.lcm(q.denom()))
}
