//! Divisor modules on the compactified `Spec ℤ` with exact rational arithmetic.
//!
//! A divisor is a finitely supported `n_p` together with `λ > 0` at the
//! archimedean place. A tuple `φ` is a section of `O(D)` over `U` when
//! `v_p(φ(j)) ≥ −n_p` for every prime in `U`, and `Σ|φ(j)| ≤ λ` when `∞ ∈ U`
//! (`< λ` for the strict variant `O_<`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, GammaError, Result};
use crate::gamma::{smash_index, LawOutcome, LawReport, PointedMap};
use crate::rational::{factor, format_rational, int, is_prime, l1_norm, parse_rational, rat, valuation, Rational};

/// Cap on the number of tuples returned by one enumeration.
pub const MAX_SECTIONS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArakelovDivisor {
    pub finite: BTreeMap<u64, i64>,
    #[serde(with = "lambda_serde")]
    pub lambda: Rational,
}

mod lambda_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Int(i64),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(int(n as i128)),
        }
    }
}

impl ArakelovDivisor {
    pub fn new(finite: BTreeMap<u64, i64>, lambda: Rational) -> Result<Self> {
        if !lambda.is_positive() {
            return domain(format!("lambda must be positive, got {}", format_rational(&lambda)));
        }
        if let Some(p) = finite.keys().find(|&&p| !is_prime(p)) {
            return domain(format!("{p} is not a prime"));
        }
        Ok(ArakelovDivisor { finite: finite.into_iter().filter(|&(_, n)| n != 0).collect(), lambda })
    }

    /// `λ` at infinity and no finite part.
    pub fn at_infinity(lambda: Rational) -> Result<Self> {
        Self::new(BTreeMap::new(), lambda)
    }

    pub fn zero() -> Self {
        ArakelovDivisor { finite: BTreeMap::new(), lambda: Rational::one() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ArakelovDivisor = serde_json::from_str(text).map_err(|e| GammaError::Parse(e.to_string()))?;
        Self::new(raw.finite, raw.lambda)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn n(&self, p: u64) -> i64 {
        self.finite.get(&p).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &ArakelovDivisor) -> ArakelovDivisor {
        let mut finite = self.finite.clone();
        for (&p, &n) in &other.finite {
            *finite.entry(p).or_insert(0) += n;
        }
        finite.retain(|_, n| *n != 0);
        ArakelovDivisor { finite, lambda: self.lambda * other.lambda }
    }

    /// `c(D) = λ·Π p^{n_p}`.
    pub fn capacity(&self) -> Rational {
        self.finite.iter().fold(self.lambda, |acc, (&p, &n)| acc * int(p as i128).pow(n as i32))
    }

    /// `Π p^{−n_p}`: generates the fractional ideal of finite conditions.
    pub fn ideal_generator(&self) -> Rational {
        self.finite.iter().fold(Rational::one(), |acc, (&p, &n)| acc * int(p as i128).pow(-n as i32))
    }

    /// Height large enough for every global level-1 section to be enumerated.
    pub fn sufficient_height(&self) -> i128 {
        let c = self.capacity().floor().to_integer();
        let num: i128 = self.finite.iter().filter(|(_, &n)| n < 0).map(|(&p, &n)| (p as i128).pow((-n) as u32)).product();
        let den: i128 = self.finite.iter().filter(|(_, &n)| n > 0).map(|(&p, &n)| (p as i128).pow(n as u32)).product();
        (c * num).max(den).max(1)
    }
}

impl fmt::Display for ArakelovDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// `(q) = (q)_finite − log|q|·{∞}`, stored as `λ = 1/|q|`.
pub fn principal_divisor(q: &Rational) -> Result<ArakelovDivisor> {
    if q.is_zero() {
        return domain("the principal divisor of 0 is undefined");
    }
    let mut finite = factor(*q.numer());
    for (p, n) in factor(*q.denom()) {
        *finite.entry(p).or_insert(0) -= n;
    }
    ArakelovDivisor::new(finite, q.abs().recip())
}

/// The capacity, a complete invariant of divisors up to principal divisors.
pub fn class_invariant(d: &ArakelovDivisor) -> Rational {
    d.capacity()
}

pub fn equivalent(d: &ArakelovDivisor, e: &ArakelovDivisor) -> bool {
    d.capacity() == e.capacity()
}

/// `ξ ↦ q⁻¹ξ`, carrying `O(D)` onto `O(D + (q))`.
pub fn principal_shift(q: &Rational, values: &[Rational]) -> Result<Vec<Rational>> {
    if q.is_zero() {
        return domain("cannot shift by 0");
    }
    Ok(values.iter().map(|x| x / q).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

/// The complement of finitely many places.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OpenSet {
    removed: BTreeSet<Place>,
}

impl OpenSet {
    pub fn global() -> Self {
        OpenSet::default()
    }

    pub fn complement_of(places: impl IntoIterator<Item = Place>) -> Result<Self> {
        let removed: BTreeSet<Place> = places.into_iter().collect();
        if let Some(Place::Prime(p)) = removed.iter().find(|pl| matches!(pl, Place::Prime(p) if !is_prime(*p))) {
            return domain(format!("{p} is not a prime"));
        }
        Ok(OpenSet { removed })
    }

    /// `Spec ℤ`, the complement of `{∞}`.
    pub fn finite_part() -> Self {
        OpenSet { removed: BTreeSet::from([Place::Infinity]) }
    }

    pub fn removed(&self) -> &BTreeSet<Place> {
        &self.removed
    }

    pub fn has_infinity(&self) -> bool {
        !self.removed.contains(&Place::Infinity)
    }

    pub fn has_prime(&self, p: u64) -> bool {
        !self.removed.contains(&Place::Prime(p))
    }

    pub fn removed_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.removed.iter().filter_map(|pl| match pl {
            Place::Prime(p) => Some(*p),
            Place::Infinity => None,
        })
    }

    pub fn union(&self, other: &OpenSet) -> OpenSet {
        OpenSet { removed: self.removed.intersection(&other.removed).copied().collect() }
    }

    pub fn contains(&self, other: &OpenSet) -> bool {
        self.removed.is_subset(&other.removed)
    }
}

/// `-{2,inf}`; `all` or `-{}` is the whole space.
impl FromStr for OpenSet {
    type Err = GammaError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("all") || t.is_empty() {
            return Ok(Self::global());
        }
        let inner = t
            .strip_prefix('-')
            .map(str::trim)
            .and_then(|r| r.strip_prefix('{'))
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| GammaError::Parse(format!("expected `-{{p,...,inf}}`, got `{s}`")))?;
        let mut places = Vec::new();
        for item in inner.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            if matches!(item, "inf" | "∞" | "infinity") {
                places.push(Place::Infinity);
            } else {
                let p: u64 = item.parse().map_err(|_| GammaError::Parse(format!("bad place `{item}`")))?;
                if !is_prime(p) {
                    return Err(GammaError::Parse(format!("{p} is not a prime")));
                }
                places.push(Place::Prime(p));
            }
        }
        Self::complement_of(places)
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.removed.iter().map(Place::to_string).collect();
        write!(f, "-{{{}}}", items.join(","))
    }
}

impl Serialize for OpenSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Coefficient rings carrying the absolute value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeminormRing {
    Z,
    Q,
}

/// `Σ|φ(x)| ≤ λ`, or `< λ` when `strict`.
pub fn seminorm_member(ring: SeminormRing, values: &[Rational], bound: &Rational, strict: bool) -> bool {
    if ring == SeminormRing::Z && !values.iter().all(|q| q.is_integer()) {
        return false;
    }
    let n = l1_norm(values);
    if strict {
        n < *bound
    } else {
        n <= *bound
    }
}

/// Members of `‖H𝔹‖₁(k₊)` among all subsets of `{1..k}`, with `|1| = 1`.
pub fn boolean_seminorm_members(k: usize) -> Vec<Vec<usize>> {
    crate::constructions::tuples(2, k)
        .into_iter()
        .filter(|v| {
            let q: Vec<Rational> = v.iter().map(|&b| int(b as i128)).collect();
            seminorm_member(SeminormRing::Z, &q, &Rational::one(), false)
        })
        .collect()
}

/// `HQ(f)` on rational tuples.
pub fn act_rational(f: &PointedMap, values: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); f.target()];
    for (i, q) in values.iter().enumerate() {
        let y = f.apply(i + 1);
        if y != 0 {
            out[y - 1] += q;
        }
    }
    out
}

/// `(φψ)(i∧j) = φ(i)ψ(j)`.
pub fn product_rational(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let l = y.len();
    let mut out = vec![Rational::zero(); x.len() * l];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[smash_index(l, i + 1, j + 1) - 1] = a * b;
        }
    }
    out
}

fn random_rational<R: Rng + ?Sized>(rng: &mut R, span: i128) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=span))
}

/// A random member of `‖HQ‖₁(k₊)`, rescaled into the unit ball when needed.
fn random_member<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<Rational> {
    let v: Vec<Rational> = (0..k).map(|_| random_rational(rng, 6)).collect();
    let n = l1_norm(&v);
    if n > Rational::one() {
        v.iter().map(|q| q / n).collect()
    } else {
        v
    }
}

/// Action and product closure of `‖HQ‖₁` on random members, plus a rejected
/// non-member as negative control.
pub fn seminorm_closure_check<R: Rng + ?Sized>(samples: usize, rng: &mut R) -> LawReport {
    let one = Rational::one();
    let mut action = LawOutcome::new("action closure");
    let mut product = LawOutcome::new("product closure");
    let mut control = LawOutcome::new("non-member rejected");
    for _ in 0..samples {
        let k = rng.gen_range(1..=3);
        let l = rng.gen_range(0..=3);
        let x = random_member(k, rng);
        let f = PointedMap::random(k, l, rng);
        let fx = act_rational(&f, &x);
        action.record(seminorm_member(SeminormRing::Q, &fx, &one, false), || format!("{f} on {x:?}"));
        let m = rng.gen_range(1..=3);
        let y = random_member(m, rng);
        let xy = product_rational(&x, &y);
        product.record(seminorm_member(SeminormRing::Q, &xy, &one, false), || format!("{x:?} * {y:?}"));
        let mut bad = x.clone();
        bad[0] = rat(8, 7);
        control.record(!seminorm_member(SeminormRing::Q, &bad, &one, false), || format!("{bad:?}"));
    }
    for o in [&mut action, &mut product, &mut control] {
        o.exhaustive = false;
    }
    LawReport { subject: "||HQ||_1".into(), max_level: 9, outcomes: vec![action, product, control] }
}

/// Whether `values` is a section of `O(D)` over `U` (of `O_<(D)` when `strict`).
pub fn section_member(d: &ArakelovDivisor, u: &OpenSet, values: &[Rational], strict: bool) -> bool {
    let finite_ok = values.iter().filter(|q| !q.is_zero()).all(|q| {
        let primes = factor(*q.numer()).into_keys().chain(factor(*q.denom()).into_keys()).chain(d.finite.keys().copied());
        primes.collect::<BTreeSet<u64>>().into_iter().filter(|&p| u.has_prime(p)).all(|p| valuation(q, p) >= -d.n(p))
    });
    finite_ok && (!u.has_infinity() || seminorm_member(SeminormRing::Q, values, &d.lambda, strict))
}

/// A tuple checked against a divisor and an open set at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectionTuple {
    values: Vec<Rational>,
}

impl SectionTuple {
    pub fn new(d: &ArakelovDivisor, u: &OpenSet, values: Vec<Rational>, strict: bool) -> Result<Self> {
        if !section_member(d, u, &values, strict) {
            let shown: Vec<String> = values.iter().map(format_rational).collect();
            return domain(format!("({}) is not a section of O(D) over {u}", shown.join(", ")));
        }
        Ok(SectionTuple { values })
    }

    pub fn level(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

impl Serialize for SectionTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let shown: Vec<String> = self.values.iter().map(format_rational).collect();
        shown.serialize(s)
    }
}

/// Products `≤ bound` of the allowed primes, capped at `caps[p]` when present.
fn smooth_numbers(primes: &[(u64, Option<i64>)], bound: i128) -> Vec<i128> {
    let mut out = vec![1i128];
    for &(p, cap) in primes {
        let mut next = Vec::new();
        for &b in &out {
            let mut v = b;
            let mut e = 0;
            loop {
                next.push(v);
                e += 1;
                if cap.is_some_and(|c| e > c) || v > bound / p as i128 {
                    break;
                }
                v *= p as i128;
            }
        }
        out = next;
    }
    out.retain(|&b| b <= bound);
    out.sort_unstable();
    out
}

/// Level-1 sections `a/b` with `|a|, b ≤ height`, sorted.
fn level_one(d: &ArakelovDivisor, u: &OpenSet, height: i128, strict: bool) -> Vec<Rational> {
    let mut allowed: Vec<(u64, Option<i64>)> = u.removed_primes().map(|p| (p, None)).collect();
    allowed.extend(d.finite.iter().filter(|&(&p, &n)| n > 0 && u.has_prime(p)).map(|(&p, &n)| (p, Some(n))));
    let step: i128 =
        d.finite.iter().filter(|&(&p, &n)| n < 0 && u.has_prime(p)).map(|(&p, &n)| (p as i128).pow((-n) as u32)).product();
    let mut out = Vec::new();
    for b in smooth_numbers(&allowed, height) {
        let mut top = height;
        if u.has_infinity() {
            let lim = d.lambda * int(b);
            let f = lim.floor().to_integer();
            top = top.min(if strict && lim.is_integer() { f - 1 } else { f });
        }
        if top < 0 {
            continue;
        }
        let mut a = -(top / step) * step;
        while a <= top {
            if a.gcd(&b) == 1 || (a == 0 && b == 1) {
                let q = rat(a, b);
                if section_member(d, u, &[q], strict) {
                    out.push(q);
                }
            }
            a += step;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All sections of `O(D)` (or `O_<(D)`) over `U` at level `k` whose entries
/// have height at most `height`, sorted.
pub fn sections(d: &ArakelovDivisor, u: &OpenSet, k: usize, height: i128, strict: bool) -> Result<Vec<SectionTuple>> {
    let base = level_one(d, u, height, strict);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fill(d, u, k, strict, &base, &mut cur, &mut out)?;
    out.sort();
    Ok(out)
}

fn fill(
    d: &ArakelovDivisor,
    u: &OpenSet,
    k: usize,
    strict: bool,
    base: &[Rational],
    cur: &mut Vec<Rational>,
    out: &mut Vec<SectionTuple>,
) -> Result<()> {
    if cur.len() == k {
        if section_member(d, u, cur, strict) {
            if out.len() >= MAX_SECTIONS {
                return Err(GammaError::Resource(format!("more than {MAX_SECTIONS} sections")));
            }
            out.push(SectionTuple { values: cur.clone() });
        }
        return Ok(());
    }
    for q in base {
        cur.push(*q);
        let feasible = !u.has_infinity() || seminorm_member(SeminormRing::Q, cur, &d.lambda, strict);
        if feasible {
            fill(d, u, k, strict, base, cur, out)?;
        }
        cur.pop();
    }
    Ok(())
}

pub fn divisor_sections(d: &ArakelovDivisor, u: &OpenSet, k: usize, height: i128) -> Result<Vec<SectionTuple>> {
    sections(d, u, k, height, false)
}

/// `2⌊c(D)⌋ + 1`, the number of global level-1 sections.
pub fn h0_count(d: &ArakelovDivisor) -> u128 {
    2 * d.capacity().floor().to_integer() as u128 + 1
}

/// `m(D, D′)` on one pair of sections over `U`.
pub fn multiply_sections(
    d: &ArakelovDivisor,
    d2: &ArakelovDivisor,
    u: &OpenSet,
    s: &[Rational],
    s2: &[Rational],
) -> Result<Vec<Rational>> {
    SectionTuple::new(d, u, s.to_vec(), false)?;
    SectionTuple::new(d2, u, s2.to_vec(), false)?;
    let p = product_rational(s, s2);
    SectionTuple::new(&d.add(d2), u, p.clone(), false)?;
    Ok(p)
}

/// The primes appearing in `q`.
fn primes_of(q: &Rational) -> BTreeSet<u64> {
    if q.is_zero() {
        return BTreeSet::new();
    }
    factor(*q.numer()).into_keys().chain(factor(*q.denom()).into_keys()).collect()
}

/// A local factorization `t = s·s′` with `s ∈ O(D)(W)`, `s′ ∈ O(D′)(W)`.
#[derive(Debug, Clone, Serialize)]
pub struct LocalFactor {
    pub open: OpenSet,
    pub left: SectionTuple,
    pub right: SectionTuple,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizationReport {
    pub strict: bool,
    pub height: i128,
    pub sections_checked: usize,
    pub factored_locally: usize,
    /// Informational: sections that also factor through global sections.
    pub factored_globally: usize,
    pub failures: Vec<String>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.factored_locally == self.sections_checked
    }
}

/// A dyadic rational strictly between `lo ≥ 0` and `hi > lo`.
fn dyadic_between(lo: &Rational, hi: &Rational) -> Option<Rational> {
    for e in 0..100u32 {
        let scale = int(1i128.checked_shl(e)?);
        let m = (lo * scale).floor().to_integer() + 1;
        let q = rat(m, 1) / scale;
        if q < *hi {
            return Some(q);
        }
    }
    None
}

/// Factors `t` near `∞` and on `Spec ℤ`; each open is chosen so that the
/// two factors are sections there.
pub fn local_factorizations(d: &ArakelovDivisor, d2: &ArakelovDivisor, t: &Rational, strict: bool) -> Result<Vec<LocalFactor>> {
    let support: BTreeSet<u64> = d.finite.keys().chain(d2.finite.keys()).copied().collect();
    let near_infinity = |s: Rational| -> Result<LocalFactor> {
        let s2 = if s.is_zero() { Rational::zero() } else { t / s };
        let removed = support.iter().chain(primes_of(&s).iter()).map(|&p| Place::Prime(p)).collect::<Vec<_>>();
        let w = OpenSet::complement_of(removed)?;
        Ok(LocalFactor {
            left: SectionTuple::new(d, &w, vec![s], strict)?,
            right: SectionTuple::new(d2, &w, vec![s2], strict)?,
            open: w,
        })
    };
    let at_infinity = if t.is_zero() {
        near_infinity(Rational::zero())?
    } else if strict {
        let lo = t.abs() / d2.lambda;
        let s = dyadic_between(&lo, &d.lambda)
            .ok_or_else(|| GammaError::Resource(format!("no dyadic between {} and {}", format_rational(&lo), format_rational(&d.lambda))))?;
        near_infinity(s)?
    } else {
        near_infinity(d.lambda)?
    };
    let g = d.ideal_generator();
    let u0 = OpenSet::finite_part();
    let finite = LocalFactor {
        left: SectionTuple::new(d, &u0, vec![g], strict)?,
        right: SectionTuple::new(d2, &u0, vec![t / g], strict)?,
        open: u0,
    };
    for f in [&at_infinity, &finite] {
        if f.left.values()[0] * f.right.values()[0] != *t {
            return domain("factors do not multiply back");
        }
    }
    Ok(vec![at_infinity, finite])
}

/// Every global level-1 section of `D + D′` within `height` factors locally
/// on an open cover by products of sections of `D` and `D′`.
pub fn m_surjectivity_check(d: &ArakelovDivisor, d2: &ArakelovDivisor, height: i128, strict: bool) -> Result<FactorizationReport> {
    let sum = d.add(d2);
    let global = OpenSet::global();
    let targets = sections(&sum, &global, 1, height, strict)?;
    let left = level_one(d, &global, d.sufficient_height(), strict);
    let right: BTreeSet<Rational> = level_one(d2, &global, d2.sufficient_height(), strict).into_iter().collect();
    let mut report = FactorizationReport {
        strict,
        height,
        sections_checked: targets.len(),
        factored_locally: 0,
        factored_globally: 0,
        failures: Vec::new(),
    };
    for t in &targets {
        let t = t.values()[0];
        match local_factorizations(d, d2, &t, strict) {
            Ok(_) => report.factored_locally += 1,
            Err(e) => report.failures.push(format!("{}: {e}", format_rational(&t))),
        }
        let global_factor = if t.is_zero() {
            true
        } else {
            left.iter().any(|s| !s.is_zero() && right.contains(&(t / s)))
        };
        report.factored_globally += usize::from(global_factor);
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct GluingReport {
    pub union: OpenSet,
    pub level: usize,
    pub candidates: usize,
    pub glued: usize,
    pub failures: Vec<String>,
}

impl GluingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Candidate tuples of height `≤ height` that are sections over every member
/// of the cover are exactly the sections over the union.
pub fn sheaf_gluing_check(d: &ArakelovDivisor, cover: &[OpenSet], k: usize, height: i128) -> Result<GluingReport> {
    let Some(first) = cover.first() else {
        return domain("empty cover");
    };
    let union = cover.iter().skip(1).fold(first.clone(), |acc, v| acc.union(v));
    let mut pool = Vec::new();
    for b in 1..=height {
        for a in -height..=height {
            if a.gcd(&b) == 1 || (a == 0 && b == 1) {
                pool.push(rat(a, b));
            }
        }
    }
    pool.sort();
    pool.dedup();
    let count = (pool.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if count > MAX_SECTIONS as u128 {
        return Err(GammaError::Resource(format!("{count} candidate tuples")));
    }
    let mut report = GluingReport { union: union.clone(), level: k, candidates: 0, glued: 0, failures: Vec::new() };
    let mut idx = vec![0usize; k];
    loop {
        let values: Vec<Rational> = idx.iter().map(|&i| pool[i]).collect();
        let compatible = cover.iter().all(|v| section_member(d, v, &values, false));
        let on_union = section_member(d, &union, &values, false);
        report.candidates += 1;
        report.glued += usize::from(compatible);
        if compatible != on_union {
            let shown: Vec<String> = values.iter().map(format_rational).collect();
            report.failures.push(format!("({}) compatible={compatible} global={on_union}", shown.join(", ")));
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(report);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < pool.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// A random divisor over the primes `2, 3, 5, 7` with capacity at most `max_capacity`.
pub fn random_divisor<R: Rng + ?Sized>(rng: &mut R, max_capacity: i128) -> ArakelovDivisor {
    loop {
        let mut finite = BTreeMap::new();
        for p in [2u64, 3, 5, 7] {
            if rng.gen_bool(0.4) {
                finite.insert(p, rng.gen_range(-2..=2));
            }
        }
        let lambda = rat(rng.gen_range(1..=12), rng.gen_range(1..=12));
        let d = ArakelovDivisor::new(finite, lambda).expect("valid by construction");
        if d.capacity() <= int(max_capacity) {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(a: i128, b: i128) -> Rational {
        rat(a, b)
    }

    #[test]
    fn seminorm_examples() {
        let one = Rational::one();
        assert!(seminorm_member(SeminormRing::Q, &[q(1, 2), q(1, 3)], &one, false));
        assert!(!seminorm_member(SeminormRing::Q, &[q(1, 1), q(1, 1)], &one, false));
        assert!(!seminorm_member(SeminormRing::Q, &[q(1, 1)], &one, true));
        assert!(!seminorm_member(SeminormRing::Z, &[q(1, 2)], &one, false));
        for k in 0..=5 {
            assert_eq!(boolean_seminorm_members(k).len(), k + 1);
        }
        let folded = act_rational(&crate::gamma::standard_maps().gamma, &[q(1, 2), q(1, 3)]);
        assert_eq!(folded, vec![q(5, 6)]);
    }

    #[test]
    fn closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let r = seminorm_closure_check(300, &mut rng);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn principal_divisors() {
        let d = principal_divisor(&q(3, 2)).unwrap();
        assert_eq!(d.finite, BTreeMap::from([(2, -1), (3, 1)]));
        assert_eq!(d.lambda, q(2, 3));
        assert_eq!(d.capacity(), Rational::one());
        assert_eq!(principal_divisor(&q(1, 1)).unwrap(), ArakelovDivisor::zero());
        let d = principal_divisor(&q(-5, 1)).unwrap();
        assert_eq!((d.n(5), d.lambda), (1, q(1, 5)));
        assert!(principal_divisor(&Rational::zero()).is_err());
        for x in [q(2, 1), q(3, 2), q(-7, 5)] {
            assert_eq!(class_invariant(&principal_divisor(&x).unwrap()), Rational::one());
        }
    }

    #[test]
    fn json_and_opens() {
        let d = ArakelovDivisor::from_json(r#"{"finite": {"2": -1, "3": 1}, "lambda": "2/3"}"#).unwrap();
        assert_eq!(d.capacity(), Rational::one());
        assert_eq!(d.to_json(), r#"{"finite":{"2":-1,"3":1},"lambda":"2/3"}"#);
        assert_eq!(ArakelovDivisor::from_json(r#"{"finite":{},"lambda":2}"#).unwrap().lambda, q(2, 1));
        assert!(ArakelovDivisor::from_json(r#"{"finite":{"4":1},"lambda":"1"}"#).is_err());
        assert!(ArakelovDivisor::from_json(r#"{"finite":{},"lambda":"-1"}"#).is_err());
        let u: OpenSet = "-{2,inf}".parse().unwrap();
        assert!(!u.has_infinity() && !u.has_prime(2) && u.has_prime(3));
        assert_eq!(u.to_string(), "-{2,inf}");
        assert_eq!("all".parse::<OpenSet>().unwrap(), OpenSet::global());
        assert!("-{4}".parse::<OpenSet>().is_err());
        assert!("{2}".parse::<OpenSet>().is_err());
    }

    #[test]
    fn section_examples() {
        let g = OpenSet::global();
        let values = |v: Vec<SectionTuple>| v.into_iter().map(|s| s.values()[0]).collect::<Vec<_>>();
        let s = divisor_sections(&ArakelovDivisor::zero(), &g, 1, 10).unwrap();
        assert_eq!(values(s), vec![q(-1, 1), q(0, 1), q(1, 1)]);
        let d = ArakelovDivisor::new(BTreeMap::from([(2, 1)]), Rational::one()).unwrap();
        let s = divisor_sections(&d, &g, 1, 10).unwrap();
        assert_eq!(values(s), vec![q(-1, 1), q(-1, 2), q(0, 1), q(1, 2), q(1, 1)]);
        let u: OpenSet = "-{3}".parse().unwrap();
        assert!(!section_member(&ArakelovDivisor::zero(), &u, &[q(7, 3)], false));
        assert!(section_member(&ArakelovDivisor::zero(), &u, &[q(2, 3)], false));
        let u: OpenSet = "-{3,inf}".parse().unwrap();
        assert!(section_member(&ArakelovDivisor::zero(), &u, &[q(7, 3)], false));
        assert!(!section_member(&ArakelovDivisor::zero(), &g, &[q(1, 3)], false));
    }

    #[test]
    fn h0_matches_enumeration() {
        assert_eq!(h0_count(&ArakelovDivisor::zero()), 3);
        assert_eq!(h0_count(&ArakelovDivisor::at_infinity(q(2, 1)).unwrap()), 5);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let d = random_divisor(&mut rng, 100);
            let n = divisor_sections(&d, &OpenSet::global(), 1, d.sufficient_height()).unwrap().len();
            assert_eq!(n as u128, h0_count(&d), "{d}");
        }
    }

    #[test]
    fn principal_shift_is_bijective() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let g = OpenSet::global();
        for _ in 0..20 {
            let d = random_divisor(&mut rng, 20);
            let x = rat(rng.gen_range(1..=12), rng.gen_range(1..=12));
            let e = d.add(&principal_divisor(&x).unwrap());
            assert!(equivalent(&d, &e));
            assert_eq!(h0_count(&d), h0_count(&e));
            let src = divisor_sections(&d, &g, 1, d.sufficient_height()).unwrap();
            let dst = divisor_sections(&e, &g, 1, e.sufficient_height()).unwrap();
            let shifted: Vec<Vec<Rational>> = src.iter().map(|s| principal_shift(&x, s.values()).unwrap()).collect();
            let mut shifted_sorted = shifted.clone();
            shifted_sorted.sort();
            let dst: Vec<Vec<Rational>> = dst.iter().map(|s| s.values().to_vec()).collect();
            assert_eq!(shifted_sorted, dst);
        }
    }

    #[test]
    fn products() {
        let g = OpenSet::global();
        let zero = ArakelovDivisor::zero();
        let two = ArakelovDivisor::at_infinity(q(2, 1)).unwrap();
        assert_eq!(multiply_sections(&zero, &zero, &g, &[q(1, 1)], &[q(1, 1)]).unwrap(), vec![q(1, 1)]);
        let off2: OpenSet = "-{2}".parse().unwrap();
        assert_eq!(
            multiply_sections(&zero, &two, &off2, &[q(1, 2), q(1, 2)], &[q(2, 1)]).unwrap(),
            vec![q(1, 1), q(1, 1)]
        );
        assert!(multiply_sections(&zero, &two, &g, &[q(1, 2), q(1, 2)], &[q(2, 1)]).is_err());
        assert!(multiply_sections(&zero, &zero, &g, &[q(2, 1)], &[q(1, 1)]).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let d = random_divisor(&mut rng, 6);
            let e = random_divisor(&mut rng, 6);
            assert_eq!(d.add(&e).capacity(), d.capacity() * e.capacity());
            let sd = divisor_sections(&d, &g, 2, d.sufficient_height().min(6)).unwrap();
            let se = divisor_sections(&e, &g, 1, e.sufficient_height().min(6)).unwrap();
            for a in sd.iter().take(30) {
                for b in se.iter().take(10) {
                    multiply_sections(&d, &e, &g, a.values(), b.values()).unwrap();
                }
            }
        }
    }

    #[test]
    fn global_factorization_can_fail() {
        let d = ArakelovDivisor::at_infinity(q(1, 2)).unwrap();
        let e = ArakelovDivisor::at_infinity(q(2, 1)).unwrap();
        let r = m_surjectivity_check(&d, &e, 10, false).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.sections_checked, 3);
        assert_eq!(r.factored_globally, 1);
    }

    /// Whenever a constructed local factorization exists, a brute-force
    /// search over sections on the same open finds one too.
    #[test]
    fn local_factors_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for strict in [false, true] {
            for _ in 0..10 {
                let d = random_divisor(&mut rng, 20);
                let e = random_divisor(&mut rng, 20);
                let r = m_surjectivity_check(&d, &e, 30, strict).unwrap();
                assert!(r.passed(), "{d} {e} {r:?}");
                for t in sections(&d.add(&e), &OpenSet::global(), 1, 12, strict).unwrap() {
                    let t = t.values()[0];
                    for f in local_factorizations(&d, &e, &t, strict).unwrap() {
                        let s = f.left.values()[0];
                        if s.numer().abs() > 64 || *s.denom() > 64 {
                            continue;
                        }
                        let found = sections(&d, &f.open, 1, 64, strict).unwrap().iter().any(|c| {
                            let c = c.values()[0];
                            let rest = if c.is_zero() { c } else { t / c };
                            c * rest == t && section_member(&e, &f.open, &[rest], strict)
                        });
                        assert!(found, "{d} {e} t={t} on {}", f.open);
                    }
                }
            }
        }
    }

    #[test]
    fn gluing() {
        let d = ArakelovDivisor::zero();
        let a: OpenSet = "-{2}".parse().unwrap();
        let b: OpenSet = "-{inf}".parse().unwrap();
        assert!(!section_member(&d, &b, &[q(1, 2)], false));
        let r = sheaf_gluing_check(&d, &[a.clone(), b.clone()], 1, 6).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.union, OpenSet::global());
        assert_eq!(r.glued, 3);
        let c: OpenSet = "-{3,inf}".parse().unwrap();
        let r = sheaf_gluing_check(&d, &[a, b, c], 2, 4).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(sheaf_gluing_check(&d, &[], 1, 2).is_err());
    }
}
