//! Finite pointed sets `k₊ = {0, …, k}`, base-point preserving maps between
//! them, and the functor contract shared by every Γ-set in the crate.
//!
//! The base point is always `0`. The identification `k₊ ∧ l₊ ≅ (k·l)₊` is
//! fixed once here ([`smash_index`]) and used by every product in the crate.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{domain, GammaError, Result};

/// Case spaces at or below this size are checked exhaustively, larger ones are sampled.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000;

/// The pointed finite set `k₊`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedSet {
    pub size: usize,
}

impl PointedSet {
    pub fn new(size: usize) -> Self {
        PointedSet { size }
    }

    pub fn points(&self) -> impl Iterator<Item = usize> {
        0..=self.size
    }
}

/// A base-point preserving map `k₊ → l₊`, i.e. a morphism of Γ^op.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedMap {
    source: usize,
    target: usize,
    images: Vec<usize>,
}

impl PointedMap {
    /// `images[i]` is the image of `i`; `images.len()` must be `source + 1`.
    pub fn new(source: usize, target: usize, images: Vec<usize>) -> Result<Self> {
        if images.len() != source + 1 {
            return domain(format!(
                "map {source}->{target} needs {} images, got {}",
                source + 1,
                images.len()
            ));
        }
        if images[0] != 0 {
            return domain("base point must map to base point");
        }
        if let Some(&bad) = images.iter().find(|&&y| y > target) {
            return domain(format!("image {bad} outside 0..={target}"));
        }
        Ok(PointedMap { source, target, images })
    }

    pub fn identity(k: usize) -> Self {
        PointedMap { source: k, target: k, images: (0..=k).collect() }
    }

    /// The map sending every point to the base point.
    pub fn to_base(source: usize, target: usize) -> Self {
        PointedMap { source, target, images: vec![0; source + 1] }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// The fiber over a non-base point `y`.
    pub fn fiber(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.source).filter(move |&x| self.images[x] == y)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Number of maps `k₊ → l₊`, i.e. `(l+1)^k`, saturating.
    pub fn count(source: usize, target: usize) -> u128 {
        (target as u128 + 1).checked_pow(source as u32).unwrap_or(u128::MAX)
    }

    /// Enumerates every map `source₊ → target₊` in lexicographic order of images.
    pub fn all(source: usize, target: usize) -> impl Iterator<Item = PointedMap> {
        let total = Self::count(source, target);
        (0..total).map(move |mut code| {
            let mut images = vec![0; source + 1];
            for slot in images.iter_mut().skip(1).rev() {
                *slot = (code % (target as u128 + 1)) as usize;
                code /= target as u128 + 1;
            }
            PointedMap { source, target, images }
        })
    }

    pub fn random<R: Rng + ?Sized>(source: usize, target: usize, rng: &mut R) -> Self {
        let mut images = vec![0; source + 1];
        for slot in images.iter_mut().skip(1) {
            *slot = rng.gen_range(0..=target);
        }
        PointedMap { source, target, images }
    }
}

/// `g ∘ f`: apply `f` first, then `g`.
pub fn compose(f: &PointedMap, g: &PointedMap) -> Result<PointedMap> {
    if f.target != g.source {
        return domain(format!(
            "cannot compose {}->{} with {}->{}",
            f.source, f.target, g.source, g.target
        ));
    }
    Ok(PointedMap {
        source: f.source,
        target: g.target,
        images: f.images.iter().map(|&y| g.images[y]).collect(),
    })
}

impl fmt::Display for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:[", self.source, self.target)?;
        for (i, y) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{y}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for PointedMap {
    type Err = GammaError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || GammaError::Parse(format!("expected `k->l:[i0,...,ik]`, got `{s}`"));
        let (shape, body) = s.trim().split_once(':').ok_or_else(bad)?;
        let (k, l) = shape.split_once("->").ok_or_else(bad)?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        let l: usize = l.trim().parse().map_err(|_| bad())?;
        let body = body.trim().strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
        let images = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        PointedMap::new(k, l, images)
    }
}

/// The three maps `2₊ → 1₊` that extract an addition from a Γ-set.
#[derive(Debug, Clone)]
pub struct StandardMaps {
    /// `0↦0, 1↦1, 2↦0`
    pub alpha: PointedMap,
    /// `0↦0, 1↦0, 2↦1`
    pub beta: PointedMap,
    /// `0↦0, 1↦1, 2↦1`
    pub gamma: PointedMap,
}

pub fn standard_maps() -> StandardMaps {
    StandardMaps {
        alpha: PointedMap { source: 2, target: 1, images: vec![0, 1, 0] },
        beta: PointedMap { source: 2, target: 1, images: vec![0, 0, 1] },
        gamma: PointedMap { source: 2, target: 1, images: vec![0, 1, 1] },
    }
}

/// Row-major identification `k₊ ∧ l₊ ≅ (k·l)₊`: `(i, j) ↦ (i−1)·l + j`, and
/// any pair containing the base point goes to `0`.
#[inline]
pub fn smash_index(l: usize, i: usize, j: usize) -> usize {
    if i == 0 || j == 0 {
        0
    } else {
        (i - 1) * l + j
    }
}

/// Inverse of [`smash_index`] on non-base points.
#[inline]
pub fn smash_split(l: usize, z: usize) -> (usize, usize) {
    if z == 0 || l == 0 {
        (0, 0)
    } else {
        ((z - 1) / l + 1, (z - 1) % l + 1)
    }
}

/// `f ∧ g : (k·l)₊ → (k'·l')₊` under the row-major identification.
pub fn smash_maps(f: &PointedMap, g: &PointedMap) -> PointedMap {
    let (k, l) = (f.source, g.source);
    let mut images = vec![0; k * l + 1];
    for (z, slot) in images.iter_mut().enumerate().skip(1) {
        let (i, j) = smash_split(l, z);
        *slot = smash_index(g.target, f.apply(i), g.apply(j));
    }
    PointedMap { source: k * l, target: f.target * g.target, images }
}

/// The inclusion `l₊ → (k·l)₊`, `i ↦ j ∧ i`, used by the left unit law.
pub fn left_slot(k: usize, l: usize, j: usize) -> PointedMap {
    debug_assert!((1..=k).contains(&j));
    let images = (0..=l).map(|i| smash_index(l, j, i)).collect();
    PointedMap { source: l, target: k * l, images }
}

/// The inclusion `k₊ → (k·l)₊`, `i ↦ i ∧ j`, used by the right unit law.
pub fn right_slot(k: usize, l: usize, j: usize) -> PointedMap {
    debug_assert!((1..=l).contains(&j));
    let images = (0..=k).map(|i| smash_index(l, i, j)).collect();
    PointedMap { source: k, target: k * l, images }
}

/// A pointed functor `Γ^op → Sets_*` with finitely represented elements.
///
/// Elements of `A(k₊)` are values of `Elem`; callers pass `act` an element of
/// the level `f.source()`.
pub trait GammaSet {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug;

    fn name(&self) -> String;

    fn base(&self, level: usize) -> Self::Elem;

    fn act(&self, f: &PointedMap, x: &Self::Elem) -> Self::Elem;

    /// Upper bound on `|A(k₊)|`, or `None` when the carrier is infinite.
    fn enumeration_bound(&self, level: usize) -> Option<u128>;

    /// Every element of `A(k₊)`, base first, without repetition.
    fn elements(&self, level: usize) -> Result<Vec<Self::Elem>>;

    fn sample<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> Self::Elem {
        let all = self.elements(level).expect("default sample needs an enumerable carrier");
        all[rng.gen_range(0..all.len())].clone()
    }
}

/// A Γ-set with an associative product `A(k₊) ∧ A(l₊) → A((k·l)₊)` and a unit `𝕊 → A`.
pub trait SAlgebra: GammaSet {
    fn mul(&self, k: usize, x: &Self::Elem, l: usize, y: &Self::Elem) -> Self::Elem;

    /// `1_k(j) ∈ A(k₊)`; `unit(k, 0)` is the base point.
    fn unit(&self, k: usize, j: usize) -> Self::Elem;
}

/// The sphere: `𝕊(k₊) = k₊`, `𝕊(f) = f`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sphere;

pub fn sphere() -> Sphere {
    Sphere
}

impl GammaSet for Sphere {
    type Elem = usize;

    fn name(&self) -> String {
        "S".into()
    }

    fn base(&self, _level: usize) -> usize {
        0
    }

    fn act(&self, f: &PointedMap, x: &usize) -> usize {
        f.apply(*x)
    }

    fn enumeration_bound(&self, level: usize) -> Option<u128> {
        Some(level as u128 + 1)
    }

    fn elements(&self, level: usize) -> Result<Vec<usize>> {
        Ok((0..=level).collect())
    }

    fn sample<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> usize {
        rng.gen_range(0..=level)
    }
}

impl SAlgebra for Sphere {
    fn mul(&self, _k: usize, x: &usize, l: usize, y: &usize) -> usize {
        smash_index(l, *x, *y)
    }

    fn unit(&self, _k: usize, j: usize) -> usize {
        j
    }
}

/// Negative-control fixture: sends `x` to `f(x)` when `f` is injective off the
/// base point and to the base point otherwise. Identity and base-point laws
/// hold, composition fails.
#[derive(Debug, Clone, Copy, Default)]
pub struct BrokenSphere;

impl GammaSet for BrokenSphere {
    type Elem = usize;

    fn name(&self) -> String {
        "broken-S".into()
    }

    fn base(&self, _level: usize) -> usize {
        0
    }

    fn act(&self, f: &PointedMap, x: &usize) -> usize {
        let mut seen = BTreeSet::new();
        let injective = f.images()[1..].iter().all(|&y| y == 0 || seen.insert(y));
        if injective {
            f.apply(*x)
        } else {
            0
        }
    }

    fn enumeration_bound(&self, level: usize) -> Option<u128> {
        Some(level as u128 + 1)
    }

    fn elements(&self, level: usize) -> Result<Vec<usize>> {
        Ok((0..=level).collect())
    }
}

/// Outcome of one law over all the cases that were tried.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawOutcome {
    pub law: String,
    pub cases: u64,
    pub exhaustive: bool,
    pub counterexample: Option<String>,
}

impl LawOutcome {
    pub(crate) fn new(law: &str) -> Self {
        LawOutcome { law: law.into(), cases: 0, exhaustive: true, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub(crate) fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    pub subject: String,
    pub max_level: usize,
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(LawOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<&LawOutcome> {
        self.outcomes.iter().find(|o| !o.passed())
    }
}

/// Elements to test at `level`: all of them when the carrier is small, `samples`
/// random draws otherwise.
fn test_elements<A: GammaSet, R: Rng + ?Sized>(
    a: &A,
    level: usize,
    samples: usize,
    rng: &mut R,
) -> (Vec<A::Elem>, bool) {
    match a.enumeration_bound(level) {
        Some(n) if n <= EXHAUSTIVE_LIMIT => match a.elements(level) {
            Ok(all) => (all, true),
            Err(_) => ((0..samples).map(|_| a.sample(level, rng)).collect(), false),
        },
        _ => ((0..samples).map(|_| a.sample(level, rng)).collect(), false),
    }
}

/// Checks identity, composition and base-point preservation for all levels up
/// to `max_level`. Case spaces up to [`EXHAUSTIVE_LIMIT`] are exhausted,
/// larger ones are sampled `samples` times.
pub fn check_gamma_laws<A: GammaSet, R: Rng + ?Sized>(
    a: &A,
    max_level: usize,
    samples: usize,
    rng: &mut R,
) -> LawReport {
    let mut identity = LawOutcome::new("identity");
    let mut composition = LawOutcome::new("composition");
    let mut base_point = LawOutcome::new("base-point");

    for k in 0..=max_level {
        let (xs, exhaustive) = test_elements(a, k, samples, rng);
        identity.exhaustive &= exhaustive;
        let id = PointedMap::identity(k);
        for x in &xs {
            let y = a.act(&id, x);
            identity.record(&y == x, || format!("A(id_{k})({x:?}) = {y:?}"));
        }
    }

    for k in 0..=max_level {
        for l in 0..=max_level {
            let n = PointedMap::count(k, l);
            let maps: Vec<PointedMap> = if n <= EXHAUSTIVE_LIMIT {
                PointedMap::all(k, l).collect()
            } else {
                base_point.exhaustive = false;
                (0..samples).map(|_| PointedMap::random(k, l, rng)).collect()
            };
            let (b_in, b_out) = (a.base(k), a.base(l));
            for f in &maps {
                let y = a.act(f, &b_in);
                base_point.record(y == b_out, || format!("A({f})(base) = {y:?}"));
            }
        }
    }

    for k in 0..=max_level {
        let size = a.enumeration_bound(k).filter(|&n| n <= EXHAUSTIVE_LIMIT);
        for l in 0..=max_level {
            for m in 0..=max_level {
                let pairs = PointedMap::count(k, l).saturating_mul(PointedMap::count(l, m));
                let space = size.map(|s| pairs.saturating_mul(s));
                match space {
                    Some(total) if total <= EXHAUSTIVE_LIMIT => {
                        let xs = a.elements(k).unwrap_or_default();
                        for f in PointedMap::all(k, l) {
                            for g in PointedMap::all(l, m) {
                                let gf = compose(&f, &g).expect("shapes agree");
                                for x in &xs {
                                    check_composition(a, &f, &g, &gf, x, &mut composition);
                                }
                            }
                        }
                    }
                    _ => {
                        composition.exhaustive = false;
                        for _ in 0..samples {
                            let f = PointedMap::random(k, l, rng);
                            let g = PointedMap::random(l, m, rng);
                            let gf = compose(&f, &g).expect("shapes agree");
                            let x = a.sample(k, rng);
                            check_composition(a, &f, &g, &gf, &x, &mut composition);
                        }
                    }
                }
            }
        }
    }

    LawReport { subject: a.name(), max_level, outcomes: vec![identity, composition, base_point] }
}

fn check_composition<A: GammaSet>(
    a: &A,
    f: &PointedMap,
    g: &PointedMap,
    gf: &PointedMap,
    x: &A::Elem,
    out: &mut LawOutcome,
) {
    let lhs = a.act(gf, x);
    let rhs = a.act(g, &a.act(f, x));
    out.record(lhs == rhs, || format!("f={f}, g={g}, x={x:?}: A(g∘f)x={lhs:?} but A(g)A(f)x={rhs:?}"));
}

/// Associativity, both unit laws, unit naturality and naturality of the
/// product in each variable, on sampled inputs with levels up to `max_level`.
pub fn check_salgebra_laws<A: SAlgebra, R: Rng + ?Sized>(
    a: &A,
    max_level: usize,
    samples: usize,
    rng: &mut R,
) -> LawReport {
    let mut assoc = LawOutcome::new("associativity");
    let mut left_unit = LawOutcome::new("left-unit");
    let mut right_unit = LawOutcome::new("right-unit");
    let mut unit_nat = LawOutcome::new("unit-naturality");
    let mut mul_nat = LawOutcome::new("product-naturality");
    for law in [&mut assoc, &mut left_unit, &mut right_unit, &mut unit_nat, &mut mul_nat] {
        law.exhaustive = false;
    }
    let levels = 1..=max_level.max(1);

    for _ in 0..samples {
        let k = rng.gen_range(levels.clone());
        let l = rng.gen_range(levels.clone());
        let m = rng.gen_range(levels.clone());
        let (x, y, z) = (a.sample(k, rng), a.sample(l, rng), a.sample(m, rng));

        let xy_z = a.mul(k * l, &a.mul(k, &x, l, &y), m, &z);
        let x_yz = a.mul(k, &x, l * m, &a.mul(l, &y, m, &z));
        assoc.record(xy_z == x_yz, || format!("x={x:?}@{k}, y={y:?}@{l}, z={z:?}@{m}"));

        let j = rng.gen_range(1..=k);
        let lhs = a.mul(k, &a.unit(k, j), l, &y);
        let rhs = a.act(&left_slot(k, l, j), &y);
        left_unit.record(lhs == rhs, || format!("1_{k}({j}) * {y:?}@{l}: {lhs:?} vs {rhs:?}"));

        let j = rng.gen_range(1..=l);
        let lhs = a.mul(k, &x, l, &a.unit(l, j));
        let rhs = a.act(&right_slot(k, l, j), &x);
        right_unit.record(lhs == rhs, || format!("{x:?}@{k} * 1_{l}({j}): {lhs:?} vs {rhs:?}"));

        let f = PointedMap::random(k, rng.gen_range(0..=max_level), rng);
        let j = rng.gen_range(0..=k);
        let lhs = a.act(&f, &a.unit(k, j));
        let rhs = a.unit(f.target(), f.apply(j));
        unit_nat.record(lhs == rhs, || format!("A({f})(1({j})) = {lhs:?}, 1(f({j})) = {rhs:?}"));

        let g = PointedMap::random(l, rng.gen_range(0..=max_level), rng);
        let lhs = a.mul(f.target(), &a.act(&f, &x), g.target(), &a.act(&g, &y));
        let rhs = a.act(&smash_maps(&f, &g), &a.mul(k, &x, l, &y));
        mul_nat.record(lhs == rhs, || format!("f={f}, g={g}, x={x:?}, y={y:?}"));
    }

    LawReport {
        subject: a.name(),
        max_level,
        outcomes: vec![assoc, left_unit, right_unit, unit_nat, mul_nat],
    }
}
