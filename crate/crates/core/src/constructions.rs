//! Spherical monoid algebras `𝕊M`, Eilenberg–MacLane algebras `HR`, the
//! power-set model of `H𝔹`, and what can be read back off an 𝕊-algebra: its
//! level-1 monoid, its hyperaddition and its morphisms.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{domain, GammaError, Result};
use crate::gamma::{smash_index, standard_maps, GammaSet, LawOutcome, LawReport, PointedMap, SAlgebra, EXHAUSTIVE_LIMIT};
use crate::semiring::{FiniteMonoid, FiniteSemiring};

/// Candidate bound for the exhaustive hom searches.
pub const HOM_SEARCH_LIMIT: u128 = 1_000_000;

/// `𝕊M(k₊) = M ∧ k₊`. Non-base elements are pairs `(m, j)` with `m ≠ 0`, `j ≥ 1`.
#[derive(Debug, Clone)]
pub struct MonoidAlgebra {
    monoid: FiniteMonoid,
}

pub fn monoid_algebra(monoid: FiniteMonoid) -> MonoidAlgebra {
    MonoidAlgebra { monoid }
}

impl MonoidAlgebra {
    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        let zero = self.monoid.zero();
        (0..self.monoid.len()).filter(move |&m| m != zero)
    }
}

impl GammaSet for MonoidAlgebra {
    type Elem = Option<(usize, usize)>;

    fn name(&self) -> String {
        format!("S[{}]", self.monoid.name())
    }

    fn base(&self, _level: usize) -> Self::Elem {
        None
    }

    fn act(&self, f: &PointedMap, x: &Self::Elem) -> Self::Elem {
        x.and_then(|(m, j)| match f.apply(j) {
            0 => None,
            y => Some((m, y)),
        })
    }

    fn enumeration_bound(&self, level: usize) -> Option<u128> {
        Some(1 + (self.monoid.len() as u128 - 1) * level as u128)
    }

    fn elements(&self, level: usize) -> Result<Vec<Self::Elem>> {
        let mut out = vec![None];
        for m in self.nonzero() {
            out.extend((1..=level).map(|j| Some((m, j))));
        }
        Ok(out)
    }

    fn sample<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> Self::Elem {
        let nonzero: Vec<usize> = self.nonzero().collect();
        if level == 0 || nonzero.is_empty() || rng.gen_bool(0.1) {
            return None;
        }
        Some((nonzero[rng.gen_range(0..nonzero.len())], rng.gen_range(1..=level)))
    }
}

impl SAlgebra for MonoidAlgebra {
    fn mul(&self, _k: usize, x: &Self::Elem, l: usize, y: &Self::Elem) -> Self::Elem {
        let ((m, i), (n, j)) = ((*x)?, (*y)?);
        let mn = self.monoid.mul(m, n);
        (mn != self.monoid.zero()).then(|| (mn, smash_index(l, i, j)))
    }

    fn unit(&self, _k: usize, j: usize) -> Self::Elem {
        let one = self.monoid.one();
        (j != 0 && one != self.monoid.zero()).then_some((one, j))
    }
}

/// `HR(k₊) = R^k` with the fiber-sum action. Elements are the value vectors
/// `(φ(1), …, φ(k))`; the base point is the zero vector.
#[derive(Debug, Clone)]
pub struct EilenbergMacLane {
    ring: FiniteSemiring,
}

pub fn eilenberg_maclane(ring: FiniteSemiring) -> EilenbergMacLane {
    EilenbergMacLane { ring }
}

impl EilenbergMacLane {
    pub fn ring(&self) -> &FiniteSemiring {
        &self.ring
    }

    /// `δ_a ∈ HR(k₊)`.
    pub fn delta(&self, k: usize, a: usize) -> Vec<usize> {
        let mut v = vec![0; k];
        if a > 0 {
            v[a - 1] = self.ring.one();
        }
        v
    }
}

impl GammaSet for EilenbergMacLane {
    type Elem = Vec<usize>;

    fn name(&self) -> String {
        format!("H{}", self.ring.name())
    }

    fn base(&self, level: usize) -> Vec<usize> {
        vec![0; level]
    }

    fn act(&self, f: &PointedMap, x: &Vec<usize>) -> Vec<usize> {
        let mut out = vec![0; f.target()];
        for (i, &a) in x.iter().enumerate() {
            let y = f.apply(i + 1);
            if y != 0 {
                out[y - 1] = self.ring.add(out[y - 1], a);
            }
        }
        out
    }

    fn enumeration_bound(&self, level: usize) -> Option<u128> {
        Some((self.ring.len() as u128).checked_pow(level as u32).unwrap_or(u128::MAX))
    }

    fn elements(&self, level: usize) -> Result<Vec<Vec<usize>>> {
        let bound = self.enumeration_bound(level).unwrap_or(u128::MAX);
        if bound > HOM_SEARCH_LIMIT {
            return Err(GammaError::Resource(format!("{} has {bound} elements at level {level}", self.name())));
        }
        Ok(tuples(self.ring.len(), level))
    }

    fn sample<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> Vec<usize> {
        (0..level).map(|_| rng.gen_range(0..self.ring.len())).collect()
    }
}

impl SAlgebra for EilenbergMacLane {
    fn mul(&self, k: usize, x: &Vec<usize>, l: usize, y: &Vec<usize>) -> Vec<usize> {
        let mut out = vec![0; k * l];
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                out[smash_index(l, i + 1, j + 1) - 1] = self.ring.mul(a, b);
            }
        }
        out
    }

    fn unit(&self, k: usize, j: usize) -> Vec<usize> {
        self.delta(k, j)
    }
}

/// All vectors of length `len` over `0..n`, lexicographically; the zero vector first.
pub(crate) fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; len]];
    if n == 0 {
        return out;
    }
    let mut cur = vec![0; len];
    loop {
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < n {
                break;
            }
            cur[pos] = 0;
        }
        out.push(cur.clone());
    }
}

/// `H𝔹` as the functor of subsets: `P(k₊)` is the set of subsets of `{1, …, k}`
/// and a map acts by direct image with the base point discarded.
#[derive(Debug, Clone, Copy, Default)]
pub struct PowerSetAlgebra;

impl GammaSet for PowerSetAlgebra {
    type Elem = BTreeSet<usize>;

    fn name(&self) -> String {
        "P".into()
    }

    fn base(&self, _level: usize) -> BTreeSet<usize> {
        BTreeSet::new()
    }

    fn act(&self, f: &PointedMap, x: &BTreeSet<usize>) -> BTreeSet<usize> {
        x.iter().map(|&i| f.apply(i)).filter(|&y| y != 0).collect()
    }

    fn enumeration_bound(&self, level: usize) -> Option<u128> {
        Some(2u128.checked_pow(level as u32).unwrap_or(u128::MAX))
    }

    fn elements(&self, level: usize) -> Result<Vec<BTreeSet<usize>>> {
        if level > 20 {
            return Err(GammaError::Resource(format!("2^{level} subsets")));
        }
        Ok(tuples(2, level)
            .into_iter()
            .map(|bits| bits.iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i + 1).collect())
            .collect())
    }

    fn sample<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> BTreeSet<usize> {
        (1..=level).filter(|_| rng.gen_bool(0.5)).collect()
    }
}

impl SAlgebra for PowerSetAlgebra {
    fn mul(&self, _k: usize, x: &BTreeSet<usize>, l: usize, y: &BTreeSet<usize>) -> BTreeSet<usize> {
        x.iter().flat_map(|&i| y.iter().map(move |&j| smash_index(l, i, j))).collect()
    }

    fn unit(&self, _k: usize, j: usize) -> BTreeSet<usize> {
        if j == 0 {
            BTreeSet::new()
        } else {
            BTreeSet::from([j])
        }
    }
}

/// `H𝔹(k₊) → P(k₊)`: the support of a Boolean vector.
pub fn boolean_support(x: &[usize]) -> BTreeSet<usize> {
    x.iter().enumerate().filter(|(_, &a)| a != 0).map(|(i, _)| i + 1).collect()
}

/// `Hℤ` with `i64` coordinates. Not enumerable; sampling draws small entries.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntegerEM;

impl GammaSet for IntegerEM {
    type Elem = Vec<i64>;

    fn name(&self) -> String {
        "HZ".into()
    }

    fn base(&self, level: usize) -> Vec<i64> {
        vec![0; level]
    }

    fn act(&self, f: &PointedMap, x: &Vec<i64>) -> Vec<i64> {
        let mut out = vec![0; f.target()];
        for (i, &a) in x.iter().enumerate() {
            let y = f.apply(i + 1);
            if y != 0 {
                out[y - 1] += a;
            }
        }
        out
    }

    fn enumeration_bound(&self, level: usize) -> Option<u128> {
        (level == 0).then_some(1)
    }

    fn elements(&self, level: usize) -> Result<Vec<Vec<i64>>> {
        if level == 0 {
            Ok(vec![vec![]])
        } else {
            Err(GammaError::Unsupported("HZ(k+) is infinite for k > 0".into()))
        }
    }

    fn sample<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> Vec<i64> {
        (0..level).map(|_| rng.gen_range(-9..=9)).collect()
    }
}

impl SAlgebra for IntegerEM {
    fn mul(&self, k: usize, x: &Vec<i64>, l: usize, y: &Vec<i64>) -> Vec<i64> {
        let mut out = vec![0; k * l];
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                out[smash_index(l, i + 1, j + 1) - 1] = a * b;
            }
        }
        out
    }

    fn unit(&self, k: usize, j: usize) -> Vec<i64> {
        let mut v = vec![0; k];
        if j > 0 {
            v[j - 1] = 1;
        }
        v
    }
}

/// `A(1₊)` with the product `μ` restricted to `1₊ ∧ 1₊ = 1₊`. Returns the
/// carrier (base first) alongside the monoid on its indices.
pub fn level1_monoid<A: SAlgebra>(a: &A) -> Result<(Vec<A::Elem>, FiniteMonoid)> {
    if a.enumeration_bound(1).is_none() {
        return Err(GammaError::Unsupported(format!("{}(1+) is not enumerable", a.name())));
    }
    let elems = a.elements(1)?;
    let index = |x: &A::Elem| elems.iter().position(|e| e == x);
    let one = index(&a.unit(1, 1)).ok_or_else(|| GammaError::Domain("unit outside A(1+)".into()))?;
    let mut table = Vec::with_capacity(elems.len());
    for x in &elems {
        let row = elems
            .iter()
            .map(|y| index(&a.mul(1, x, 1, y)).ok_or_else(|| GammaError::Domain("product outside A(1+)".into())))
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    let labels = elems.iter().map(|e| format!("{e:?}")).collect();
    let monoid = FiniteMonoid::new(format!("{}(1+)", a.name()), labels, table, 0, one)?;
    Ok((elems, monoid))
}

/// `x ⊕ y = {A(γ)z : A(α)z = x, A(β)z = y}` over `z ∈ A(2₊)`.
pub fn hyper_add<A: GammaSet>(a: &A, x: &A::Elem, y: &A::Elem) -> Result<BTreeSet<A::Elem>> {
    match a.enumeration_bound(2) {
        Some(n) if n <= HOM_SEARCH_LIMIT => {}
        _ => return Err(GammaError::Unsupported(format!("{}(2+) is not enumerable", a.name()))),
    }
    let m = standard_maps();
    Ok(a.elements(2)?
        .into_iter()
        .filter(|z| &a.act(&m.alpha, z) == x && &a.act(&m.beta, z) == y)
        .map(|z| a.act(&m.gamma, &z))
        .collect())
}

/// The morphism `𝕊M → A` adjoint to a monoid map `h: M → A(1₊)`:
/// `(m, j) ↦ μ(1(j) ∧ h(m))`.
#[derive(Debug, Clone)]
pub struct MonoidAdjunction<'a, A: SAlgebra> {
    source: MonoidAlgebra,
    target: &'a A,
    images: Vec<A::Elem>,
}

/// `h[m]` is the index in `level1_monoid(a)` of the image of `m`.
pub fn monoid_adjunction<'a, A: SAlgebra>(
    monoid: &FiniteMonoid,
    a: &'a A,
    h: &[usize],
) -> Result<MonoidAdjunction<'a, A>> {
    let (elems, target) = level1_monoid(a)?;
    if h.len() != monoid.len() || h.iter().any(|&i| i >= target.len()) {
        return domain("h must send every monoid element into A(1+)");
    }
    if h[monoid.zero()] != target.zero() {
        return domain("h does not preserve 0");
    }
    if h[monoid.one()] != target.one() {
        return domain("h does not preserve 1");
    }
    for m in 0..monoid.len() {
        for n in 0..monoid.len() {
            if h[monoid.mul(m, n)] != target.mul(h[m], h[n]) {
                return domain(format!(
                    "h is not multiplicative at ({}, {})",
                    monoid.labels()[m],
                    monoid.labels()[n]
                ));
            }
        }
    }
    Ok(MonoidAdjunction {
        source: monoid_algebra(monoid.clone()),
        target: a,
        images: h.iter().map(|&i| elems[i].clone()).collect(),
    })
}

impl<A: SAlgebra> MonoidAdjunction<'_, A> {
    pub fn source(&self) -> &MonoidAlgebra {
        &self.source
    }

    pub fn apply(&self, k: usize, x: &Option<(usize, usize)>) -> A::Elem {
        match x {
            None => self.target.base(k),
            Some((m, j)) => self.target.mul(k, &self.target.unit(k, *j), 1, &self.images[*m]),
        }
    }

    /// Naturality over every map `k₊ → l₊` with `k, l ≤ max_level`, plus
    /// multiplicativity and unit preservation on all pairs at levels `≤ max_level`.
    pub fn check(&self, max_level: usize) -> LawReport {
        let mut natural = LawOutcome::new("naturality");
        let mut multiplicative = LawOutcome::new("multiplicativity");
        let mut unital = LawOutcome::new("unit");
        let t = self.target;
        for k in 0..=max_level {
            let xs = self.source.elements(k).expect("finite");
            for j in 0..=k {
                let lhs = self.apply(k, &self.source.unit(k, j));
                let rhs = t.unit(k, j);
                unital.record(lhs == rhs, || format!("1_{k}({j})"));
            }
            for l in 0..=max_level {
                for f in PointedMap::all(k, l) {
                    for x in &xs {
                        let lhs = self.apply(l, &self.source.act(&f, x));
                        let rhs = t.act(&f, &self.apply(k, x));
                        natural.record(lhs == rhs, || format!("f={f}, x={x:?}"));
                    }
                }
                let ys = self.source.elements(l).expect("finite");
                for x in &xs {
                    for y in &ys {
                        let lhs = self.apply(k * l, &self.source.mul(k, x, l, y));
                        let rhs = t.mul(k, &self.apply(k, x), l, &self.apply(l, y));
                        multiplicative.record(lhs == rhs, || format!("x={x:?}@{k}, y={y:?}@{l}"));
                    }
                }
            }
        }
        LawReport {
            subject: format!("{} -> {}", self.source.name(), t.name()),
            max_level,
            outcomes: vec![natural, multiplicative, unital],
        }
    }
}

/// Semiring homomorphisms `A → B` (preserving `0`, `1`, `+`, `·`).
pub fn semiring_homs(a: &FiniteSemiring, b: &FiniteSemiring) -> Result<Vec<Vec<usize>>> {
    let space = (b.len() as u128).checked_pow(a.len() as u32).unwrap_or(u128::MAX);
    if space > HOM_SEARCH_LIMIT {
        return Err(GammaError::Unsupported(format!("{space} candidate maps exceed {HOM_SEARCH_LIMIT}")));
    }
    Ok(tuples(b.len(), a.len())
        .into_iter()
        .filter(|h| {
            h[a.zero()] == b.zero()
                && h[a.one()] == b.one()
                && (0..a.len()).all(|x| {
                    (0..a.len()).all(|y| h[a.add(x, y)] == b.add(h[x], h[y]) && h[a.mul(x, y)] == b.mul(h[x], h[y]))
                })
        })
        .collect())
}

/// Families `φ_k: HA(k₊) → HB(k₊)` that are natural, multiplicative and unital
/// at every level up to `level_bound`. Naturality against the projections
/// `k₊ → 1₊` forces `φ_k` to be `φ_1` applied coordinatewise, so candidates are
/// indexed by maps `A → B`; each is then checked against the Γ-level laws.
pub fn salgebra_homs(a: &FiniteSemiring, b: &FiniteSemiring, level_bound: usize) -> Result<Vec<Vec<usize>>> {
    let space = (b.len() as u128).checked_pow(a.len() as u32).unwrap_or(u128::MAX);
    if space > HOM_SEARCH_LIMIT {
        return Err(GammaError::Unsupported(format!("{space} candidate maps exceed {HOM_SEARCH_LIMIT}")));
    }
    let ha = eilenberg_maclane(a.clone());
    let hb = eilenberg_maclane(b.clone());
    let bound = level_bound.max(1);
    let mut levels = Vec::new();
    for k in 0..=bound {
        let n = ha.enumeration_bound(k).unwrap_or(u128::MAX);
        if n > EXHAUSTIVE_LIMIT {
            return Err(GammaError::Unsupported(format!("HA({k}+) has {n} elements")));
        }
        levels.push(ha.elements(k)?);
    }
    let phi = |h: &[usize], x: &[usize]| -> Vec<usize> { x.iter().map(|&v| h[v]).collect() };
    let is_morphism = |h: &[usize]| -> bool {
        for k in 0..=bound {
            for j in 0..=k {
                if phi(h, &ha.unit(k, j)) != hb.unit(k, j) {
                    return false;
                }
            }
            for l in 0..=bound {
                for f in PointedMap::all(k, l) {
                    for x in &levels[k] {
                        if phi(h, &ha.act(&f, x)) != hb.act(&f, &phi(h, x)) {
                            return false;
                        }
                    }
                }
                if k * l <= bound {
                    for x in &levels[k] {
                        for y in &levels[l] {
                            if phi(h, &ha.mul(k, x, l, y)) != hb.mul(k, &phi(h, x), l, &phi(h, y)) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    };
    Ok(tuples(b.len(), a.len()).into_iter().filter(|h| is_morphism(h)).collect())
}

/// `(|Hom_semiring(A, B)|, |Hom_𝕊-alg(HA, HB)|)`, the latter checked up to `level_bound`.
pub fn hom_semiring_vs_hom_salgebra(
    a: &FiniteSemiring,
    b: &FiniteSemiring,
    level_bound: usize,
) -> Result<(usize, usize)> {
    Ok((semiring_homs(a, b)?.len(), salgebra_homs(a, b, level_bound)?.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{check_gamma_laws, check_salgebra_laws, Sphere};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zmod(n: usize) -> FiniteSemiring {
        FiniteSemiring::zmod(n).unwrap()
    }

    #[test]
    fn monoid_algebra_of_boolean_is_sphere() {
        let s = monoid_algebra(FiniteMonoid::boolean());
        for k in 0..=5 {
            assert_eq!(s.elements(k).unwrap().len(), Sphere.elements(k).unwrap().len());
        }
        let m3 = monoid_algebra(zmod(3).multiplicative_monoid());
        assert_eq!(m3.elements(1).unwrap(), vec![None, Some((1, 1)), Some((2, 1))]);
        assert_eq!(m3.act(&standard_maps().alpha, &Some((2, 2))), None);
    }

    #[test]
    fn monoid_algebra_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = monoid_algebra(zmod(6).multiplicative_monoid());
        assert!(check_gamma_laws(&m, 3, 200, &mut rng).passed());
        assert!(check_salgebra_laws(&m, 3, 300, &mut rng).passed());
    }

    #[test]
    fn em_action_sums_fibers() {
        let h = eilenberg_maclane(zmod(10));
        assert_eq!(h.act(&standard_maps().gamma, &vec![2, 3]), vec![5]);
        let f = PointedMap::new(3, 2, vec![0, 2, 2, 0]).unwrap();
        assert_eq!(h.act(&f, &vec![4, 9, 1]), vec![0, 3]);
        for a in 0..=3 {
            let g = PointedMap::new(3, 3, vec![0, 2, 3, 1]).unwrap();
            assert_eq!(h.act(&g, &h.delta(3, a)), h.delta(3, g.apply(a)));
        }
    }

    #[test]
    fn em_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for spec in ["B", "F2", "Z/3", "Z/4"] {
            let h = eilenberg_maclane(FiniteSemiring::builtin(spec).unwrap());
            assert!(check_gamma_laws(&h, 3, 150, &mut rng).passed(), "{spec}");
            assert!(check_salgebra_laws(&h, 3, 300, &mut rng).passed(), "{spec}");
        }
        assert!(check_salgebra_laws(&IntegerEM, 3, 300, &mut rng).passed());
        assert!(check_salgebra_laws(&PowerSetAlgebra, 3, 300, &mut rng).passed());
    }

    #[test]
    fn power_set_model_matches_hb() {
        let hb = eilenberg_maclane(FiniteSemiring::boolean());
        for k in 0..=3 {
            for l in 0..=3 {
                for f in PointedMap::all(k, l) {
                    for x in hb.elements(k).unwrap() {
                        assert_eq!(boolean_support(&hb.act(&f, &x)), PowerSetAlgebra.act(&f, &boolean_support(&x)));
                    }
                }
            }
        }
    }

    #[test]
    fn boolean_and_f2_diverge_on_even_fibers() {
        let gamma = standard_maps().gamma;
        let hb = eilenberg_maclane(FiniteSemiring::boolean());
        let hf2 = eilenberg_maclane(FiniteSemiring::f2());
        assert_eq!(hb.act(&gamma, &vec![1, 1]), vec![1]);
        assert_eq!(hf2.act(&gamma, &vec![1, 1]), vec![0]);
    }

    #[test]
    fn level1_monoids() {
        let (_, m) = level1_monoid(&eilenberg_maclane(FiniteSemiring::boolean())).unwrap();
        assert_eq!(m.table(), FiniteMonoid::boolean().table());
        let (_, m) = level1_monoid(&Sphere).unwrap();
        assert_eq!(m.table(), FiniteMonoid::boolean().table());
        let z6 = zmod(6).multiplicative_monoid();
        let (_, m) = level1_monoid(&monoid_algebra(z6.clone())).unwrap();
        assert_eq!(m.table(), z6.table());
        assert!(matches!(level1_monoid(&IntegerEM), Err(GammaError::Unsupported(_))));
    }

    #[test]
    fn hyperaddition_of_em_is_ordinary_addition() {
        let h = eilenberg_maclane(zmod(10));
        assert_eq!(hyper_add(&h, &vec![2], &vec![3]).unwrap(), BTreeSet::from([vec![5]]));
        for x in 0..10 {
            assert_eq!(hyper_add(&h, &vec![0], &vec![x]).unwrap(), BTreeSet::from([vec![x]]));
        }
        assert!(matches!(hyper_add(&IntegerEM, &vec![1], &vec![1]), Err(GammaError::Unsupported(_))));
    }

    #[test]
    fn adjunction_unit_and_counit() {
        let hb = eilenberg_maclane(FiniteSemiring::boolean());
        let unit = monoid_adjunction(&FiniteMonoid::boolean(), &hb, &[0, 1]).unwrap();
        assert!(unit.check(3).passed());
        for k in 0..=3 {
            for j in 0..=k {
                assert_eq!(unit.apply(k, &unit.source().unit(k, j)), hb.unit(k, j));
            }
        }

        let h4 = eilenberg_maclane(zmod(4));
        let (_, m) = level1_monoid(&h4).unwrap();
        let id: Vec<usize> = (0..m.len()).collect();
        let counit = monoid_adjunction(&m, &h4, &id).unwrap();
        assert!(counit.check(3).passed());
    }

    #[test]
    fn adjunction_rejects_non_multiplicative() {
        let h3 = eilenberg_maclane(zmod(3));
        let m = zmod(3).multiplicative_monoid();
        // 1 must go to 1 and 0 to 0
        assert!(monoid_adjunction(&m, &h3, &[0, 2, 2]).is_err());
        assert!(monoid_adjunction(&m, &h3, &[0, 1, 1]).is_ok());
        assert!(monoid_adjunction(&m, &h3, &[1, 1, 1]).is_err());
    }

    #[test]
    fn distinct_monoid_maps_give_distinct_morphisms() {
        let h3 = eilenberg_maclane(zmod(3));
        let m = zmod(3).multiplicative_monoid();
        let a = monoid_adjunction(&m, &h3, &[0, 1, 1]).unwrap();
        let b = monoid_adjunction(&m, &h3, &[0, 1, 2]).unwrap();
        assert_ne!(a.apply(1, &Some((2, 1))), b.apply(1, &Some((2, 1))));
    }

    #[test]
    fn hom_counts() {
        let b = FiniteSemiring::boolean();
        assert_eq!(hom_semiring_vs_hom_salgebra(&b, &b, 2).unwrap(), (1, 1));
        assert_eq!(hom_semiring_vs_hom_salgebra(&zmod(4), &zmod(2), 2).unwrap(), (1, 1));
        assert_eq!(hom_semiring_vs_hom_salgebra(&b, &zmod(2), 2).unwrap(), (0, 0));
        assert_eq!(hom_semiring_vs_hom_salgebra(&zmod(2), &b, 2).unwrap(), (0, 0));
        assert!(matches!(
            hom_semiring_vs_hom_salgebra(&zmod(20), &zmod(20), 1),
            Err(GammaError::Unsupported(_))
        ));
    }

    #[test]
    fn tuples_are_lexicographic() {
        assert_eq!(tuples(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 0), vec![Vec::<usize>::new()]);
    }
}
