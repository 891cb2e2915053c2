//! Finite multiplicative monoids with zero and finite semirings, given by
//! full operation tables over the carrier `0..n`.
//!
//! Validity is checked eagerly at construction. The text table format is
//!
//! ```text
//! semiring <name> <n>
//! <n rows of the addition table>
//! <n rows of the multiplication table>
//! ```
//!
//! (or `monoid <name> <n>` followed by a single multiplication table). Index
//! `0` is the zero and index `1` the unit.

use std::fmt;

use crate::error::{domain, GammaError, Result};

/// A multiplicative monoid with an absorbing zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    name: String,
    labels: Vec<String>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

impl FiniteMonoid {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = labels.len();
        check_table("multiplication", &mul, n)?;
        if zero >= n || one >= n {
            return domain("zero/one index outside the carrier");
        }
        for x in 0..n {
            if mul[one][x] != x || mul[x][one] != x {
                return domain(format!("{} is not a two-sided unit at {}", labels[one], labels[x]));
            }
            if mul[zero][x] != zero || mul[x][zero] != zero {
                return domain(format!("{} is not absorbing at {}", labels[zero], labels[x]));
            }
        }
        check_associative(&mul, "multiplication")?;
        Ok(FiniteMonoid { name: name.into(), labels, mul, zero, one })
    }

    /// The monoid `{0, 1}`.
    pub fn boolean() -> Self {
        FiniteMonoid::new("{0,1}", vec!["0".into(), "1".into()], vec![vec![0, 0], vec![0, 1]], 0, 1)
            .expect("valid table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }
}

/// A finite semiring: commutative additive monoid, multiplicative monoid with
/// absorbing zero, two-sided distributivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    name: String,
    labels: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl FiniteSemiring {
    /// Builds and validates a semiring whose zero is index `0` and unit index `1`
    /// (index `0` for the one-element semiring).
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let name = name.into();
        let n = labels.len();
        if n == 0 {
            return domain("empty carrier");
        }
        check_table("addition", &add, n)?;
        check_table("multiplication", &mul, n)?;
        let one = if n == 1 { 0 } else { 1 };
        for a in 0..n {
            if add[0][a] != a {
                return domain(format!("0 is not additively neutral at {}", labels[a]));
            }
            if mul[0][a] != 0 || mul[a][0] != 0 {
                return domain(format!("0 is not absorbing at {}", labels[a]));
            }
            if mul[one][a] != a || mul[a][one] != a {
                return domain(format!("{} is not a two-sided unit at {}", labels[one], labels[a]));
            }
            for b in 0..n {
                if add[a][b] != add[b][a] {
                    return domain(format!("addition not commutative at ({}, {})", labels[a], labels[b]));
                }
            }
        }
        check_associative(&add, "addition")?;
        check_associative(&mul, "multiplication")?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                        return domain(format!(
                            "left distributivity fails at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        ));
                    }
                    if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]] {
                        return domain(format!(
                            "right distributivity fails at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        ));
                    }
                }
            }
        }
        Ok(FiniteSemiring { name, labels, add, mul })
    }

    /// 𝔹 = {0, 1} with 1 + 1 = 1.
    pub fn boolean() -> Self {
        FiniteSemiring::new(
            "B",
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 1]],
        )
        .expect("valid table")
    }

    pub fn f2() -> Self {
        let mut r = Self::zmod(2).expect("valid");
        r.name = "F2".into();
        r
    }

    /// ℤ/n for `1 ≤ n ≤ 64`.
    pub fn zmod(n: usize) -> Result<Self> {
        if !(1..=64).contains(&n) {
            return domain(format!("Z/n supported for 1 <= n <= 64, got {n}"));
        }
        let labels = (0..n).map(|a| a.to_string()).collect();
        let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect();
        FiniteSemiring::new(format!("Z/{n}"), labels, add, mul)
    }

    /// Naturals truncated at `m` with saturating addition and multiplication.
    pub fn truncated(m: usize) -> Result<Self> {
        if !(1..=64).contains(&m) {
            return domain(format!("N<=m supported for 1 <= m <= 64, got {m}"));
        }
        let n = m + 1;
        let labels = (0..n).map(|a| a.to_string()).collect();
        let add = (0..n).map(|a| (0..n).map(|b| (a + b).min(m)).collect()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a * b).min(m)).collect()).collect();
        FiniteSemiring::new(format!("N<={m}"), labels, add, mul)
    }

    /// Resolves a built-in name: `B`, `F2`, `Z/n`, `N<=m`.
    pub fn builtin(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "B" => Ok(Self::boolean()),
            "F2" => Ok(Self::f2()),
            _ => {
                if let Some(n) = spec.strip_prefix("Z/") {
                    let n = n.parse().map_err(|_| GammaError::Parse(format!("bad modulus in `{spec}`")))?;
                    Self::zmod(n)
                } else if let Some(m) = spec.strip_prefix("N<=") {
                    let m = m.parse().map_err(|_| GammaError::Parse(format!("bad bound in `{spec}`")))?;
                    Self::truncated(m)
                } else {
                    Err(GammaError::Parse(format!("unknown semiring `{spec}`")))
                }
            }
        }
    }

    /// Parses the text table format.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| GammaError::Parse("empty input".into()))?;
        let (name, n) = parse_header(header, "semiring")?;
        let add = read_rows(&mut lines, n)?;
        let mul = read_rows(&mut lines, n)?;
        let labels = (0..n).map(|a| a.to_string()).collect();
        FiniteSemiring::new(name, labels, add, mul)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        if self.len() == 1 {
            0
        } else {
            1
        }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn sum<I: IntoIterator<Item = usize>>(&self, terms: I) -> usize {
        terms.into_iter().fold(0, |acc, t| self.add[acc][t])
    }

    /// Additive inverse, when one exists.
    pub fn neg(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.add[a][b] == 0)
    }

    pub fn is_ring(&self) -> bool {
        (0..self.len()).all(|a| self.neg(a).is_some())
    }

    /// Multiplicative inverse, when one exists.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        let one = self.one();
        (0..self.len()).find(|&b| self.mul[a][b] == one && self.mul[b][a] == one)
    }

    /// The multiplicative monoid `(R, ·, 0, 1)`.
    pub fn multiplicative_monoid(&self) -> FiniteMonoid {
        FiniteMonoid::new(format!("({}, *)", self.name), self.labels.clone(), self.mul.clone(), 0, self.one())
            .expect("semiring tables give a monoid")
    }
}

impl fmt::Display for FiniteSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "semiring {} {}", self.name, self.len())?;
        for table in [&self.add, &self.mul] {
            for row in table.iter() {
                let row: Vec<String> = row.iter().map(usize::to_string).collect();
                writeln!(f, "{}", row.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Parses `monoid <name> <n>` followed by the multiplication table; `0` is
/// the zero and `1` the unit.
pub fn parse_monoid_table(text: &str) -> Result<FiniteMonoid> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| GammaError::Parse("empty input".into()))?;
    let (name, n) = parse_header(header, "monoid")?;
    let mul = read_rows(&mut lines, n)?;
    let one = if n == 1 { 0 } else { 1 };
    FiniteMonoid::new(name, (0..n).map(|a| a.to_string()).collect(), mul, 0, one)
}

fn parse_header(header: &str, keyword: &str) -> Result<(String, usize)> {
    let parts: Vec<&str> = header.split_whitespace().collect();
    match parts.as_slice() {
        [kw, name, n] if *kw == keyword => {
            let n = n.parse().map_err(|_| GammaError::Parse(format!("bad size in `{header}`")))?;
            Ok((name.to_string(), n))
        }
        _ => Err(GammaError::Parse(format!("expected `{keyword} <name> <n>`, got `{header}`"))),
    }
}

fn read_rows<'a>(lines: &mut impl Iterator<Item = &'a str>, n: usize) -> Result<Vec<Vec<usize>>> {
    (0..n)
        .map(|_| {
            let line = lines.next().ok_or_else(|| GammaError::Parse("table truncated".into()))?;
            line.split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| GammaError::Parse(format!("bad entry `{t}`"))))
                .collect()
        })
        .collect()
}

fn check_table(what: &str, table: &[Vec<usize>], n: usize) -> Result<()> {
    if table.len() != n || table.iter().any(|row| row.len() != n) {
        return domain(format!("{what} table must be {n}x{n}"));
    }
    if table.iter().flatten().any(|&v| v >= n) {
        return domain(format!("{what} table has entries outside 0..{n}"));
    }
    Ok(())
}

fn check_associative(table: &[Vec<usize>], what: &str) -> Result<()> {
    let n = table.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return domain(format!("{what} not associative at ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok(())
}
