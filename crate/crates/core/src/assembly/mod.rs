//! Extension of Γ-sets to pointed sets, the assembly map `M ∧ N → M̃∘N`, and
//! its closed forms for `HR`.
//!
//! An element of `M̃(Z)` for a pointed set `Z` is stored as a finite list of
//! non-base points of `Z` together with an element of `M` at the matching level.
//! Points the element does not depend on are pruned, which makes the
//! representation canonical for `HR`.

mod laurent;
mod monad;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::constructions::{eilenberg_maclane, tuples};
use crate::error::{domain, Result};
use rand::Rng;

use crate::gamma::{compose, smash_index, smash_maps, GammaSet, LawOutcome, PointedMap};
use crate::krel::KRelation;
use crate::semiring::FiniteSemiring;

pub use laurent::{hz_pairing_injectivity, laurent_gamma, laurent_rho, LaurentClass, LaurentFunctor, LaurentTerm, PairingVerdict};
pub use monad::{eq13_check, monad_to_salgebra, sigma_r_monad, LinearizationMonad, MonadAlgebra};

/// A finitely supported `R`-linear combination of points, base point and zero
/// coefficients dropped. Coefficients are indices into the semiring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FormalSum<T: Ord> {
    terms: BTreeMap<T, usize>,
}

impl<T: Ord + Clone> FormalSum<T> {
    pub fn zero() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }

    pub fn term(ring: &FiniteSemiring, point: T, coeff: usize) -> Self {
        let mut s = Self::zero();
        s.add_term(ring, point, coeff);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<T, usize> {
        &self.terms
    }

    pub fn coeff(&self, point: &T) -> usize {
        self.terms.get(point).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, ring: &FiniteSemiring, point: T, coeff: usize) {
        let c = ring.add(self.coeff(&point), coeff);
        if c == 0 {
            self.terms.remove(&point);
        } else {
            self.terms.insert(point, c);
        }
    }

    pub fn from_terms(ring: &FiniteSemiring, terms: impl IntoIterator<Item = (T, usize)>) -> Self {
        let mut s = Self::zero();
        for (p, c) in terms {
            s.add_term(ring, p, c);
        }
        s
    }

    /// Pushes forward along `f`; points sent to `None` are the base point and vanish.
    pub fn map<U: Ord + Clone>(&self, ring: &FiniteSemiring, f: impl Fn(&T) -> Option<U>) -> FormalSum<U> {
        FormalSum::from_terms(ring, self.terms.iter().filter_map(|(p, &c)| f(p).map(|q| (q, c))))
    }

    pub fn scale(&self, ring: &FiniteSemiring, c: usize) -> Self {
        Self::from_terms(ring, self.terms.iter().map(|(p, &d)| (p.clone(), ring.mul(c, d))))
    }
}

impl FormalSum<usize> {
    /// `(φ(1), …, φ(k))` as `Σ φ(j)·j`.
    pub fn from_vector(ring: &FiniteSemiring, v: &[usize]) -> Self {
        Self::from_terms(ring, v.iter().enumerate().map(|(i, &c)| (i + 1, c)))
    }

    pub fn to_vector(&self, k: usize) -> Vec<usize> {
        (1..=k).map(|j| self.coeff(&j)).collect()
    }
}

/// An element of `M̃(Z)`: `value ∈ M(points.len()₊)` with the `i`-th non-base
/// point of that level standing for `points[i−1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Extended<E, T> {
    pub points: Vec<T>,
    pub value: E,
}

/// `M̃(k₊) = M(k₊)` for a finite pointed set; the colimit over subsets is
/// attained at `k₊` itself.
pub fn extend<M: GammaSet>(m: &M, k: usize) -> Result<Vec<M::Elem>> {
    m.elements(k)
}

/// Drops every point the element does not depend on: `s` is dropped when
/// collapsing it to the base point leaves the value unchanged.
pub fn prune<M: GammaSet, T: Clone + Ord>(m: &M, e: Extended<M::Elem, T>) -> Extended<M::Elem, T> {
    let Extended { mut points, mut value } = e;
    let mut i = 0;
    while i < points.len() {
        let p = points.len();
        let collapse = PointedMap::new(p, p, (0..=p).map(|j| if j == i + 1 { 0 } else { j }).collect()).expect("map");
        if m.act(&collapse, &value) == value {
            let drop = PointedMap::new(p, p - 1, (0..=p).map(|j| if j <= i { j } else if j == i + 1 { 0 } else { j - 1 }).collect())
                .expect("map");
            value = m.act(&drop, &value);
            points.remove(i);
        } else {
            i += 1;
        }
    }
    Extended { points, value }
}

/// Re-expresses `value ∈ M(n₊)` along a labelling `x ↦ labels[x−1]` of its
/// points (`None` = base), merging equal labels.
pub fn push_labels<M: GammaSet, T: Clone + Ord>(m: &M, value: &M::Elem, labels: &[Option<T>]) -> Extended<M::Elem, T> {
    let points: Vec<T> = labels.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut images = vec![0];
    images.extend(labels.iter().map(|l| l.as_ref().map_or(0, |t| points.binary_search(t).expect("present") + 1)));
    let h = PointedMap::new(labels.len(), points.len(), images).expect("labelling map");
    prune(m, Extended { value: m.act(&h, value), points })
}

/// `M̃∘N` on a map `f: k₊ → l₊`.
pub fn extended_act<M: GammaSet, N: GammaSet>(
    m: &M,
    n: &N,
    f: &PointedMap,
    e: &Extended<M::Elem, N::Elem>,
) -> Extended<M::Elem, N::Elem> {
    let base = n.base(f.target());
    let labels: Vec<Option<N::Elem>> = e
        .points
        .iter()
        .map(|s| {
            let t = n.act(f, s);
            (t != base).then_some(t)
        })
        .collect();
    push_labels(m, &e.value, &labels)
}

/// A representative `(x₊, y₊, v, ξ ∧ η)` of an element of `(M ∧ N)(k₊)`;
/// `v: (x·y)₊ → k₊` under the row-major identification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmashRep<A, B> {
    pub x: usize,
    pub y: usize,
    pub v: PointedMap,
    pub xi: A,
    pub eta: B,
}

impl<A, B> SmashRep<A, B> {
    pub fn level(&self) -> usize {
        self.v.target()
    }
}

/// `α_{M,N} = M̃(ι^N)∘ι^M` evaluated on a representative and pushed along `v`:
/// each `x` goes to `N(v∘δ_x)(η)`, then `M` carries `ξ` along that labelling.
pub fn assembly<M: GammaSet, N: GammaSet>(m: &M, n: &N, rep: &SmashRep<M::Elem, N::Elem>) -> Result<Extended<M::Elem, N::Elem>> {
    if rep.v.source() != rep.x * rep.y {
        return domain(format!("v must start at ({}·{})+, starts at {}+", rep.x, rep.y, rep.v.source()));
    }
    let k = rep.level();
    let base = n.base(k);
    let labels: Vec<Option<N::Elem>> = (1..=rep.x)
        .map(|i| {
            let images = (0..=rep.y).map(|j| rep.v.apply(smash_index(rep.y, i, j))).collect();
            let slice = PointedMap::new(rep.y, k, images).expect("v∘δ_x is pointed");
            let t = n.act(&slice, &rep.eta);
            (t != base).then_some(t)
        })
        .collect();
    Ok(push_labels(m, &rep.xi, &labels))
}

/// `Σ r_x·(Σ s_y·v(x∧y))` computed directly in `R`.
pub fn assembly_hr_closed(ring: &FiniteSemiring, rep: &SmashRep<Vec<usize>, Vec<usize>>) -> Result<FormalSum<Vec<usize>>> {
    if rep.v.source() != rep.x * rep.y || rep.xi.len() != rep.x || rep.eta.len() != rep.y {
        return domain("representative shapes do not match");
    }
    let k = rep.level();
    let mut out = FormalSum::zero();
    for i in 1..=rep.x {
        let mut inner = vec![0; k];
        for j in 1..=rep.y {
            let t = rep.v.apply(smash_index(rep.y, i, j));
            if t != 0 {
                inner[t - 1] = ring.add(inner[t - 1], rep.eta[j - 1]);
            }
        }
        if inner.iter().any(|&c| c != 0) {
            out.add_term(ring, inner, rep.xi[i - 1]);
        }
    }
    Ok(out)
}

/// Reads an `HR`-valued extended element as a formal sum of inner vectors.
pub fn to_formal_sum(ring: &FiniteSemiring, e: &Extended<Vec<usize>, Vec<usize>>) -> FormalSum<Vec<usize>> {
    FormalSum::from_terms(ring, e.points.iter().cloned().zip(e.value.iter().copied()))
}

/// The representative of a k-relation: `X = F₊`, `Y = G₊`, `ξ`, `η` all ones.
pub fn krel_rep(c: &KRelation) -> SmashRep<Vec<usize>, Vec<usize>> {
    let images = std::iter::once(0).chain(c.raw().iter().map(|&e| e as usize)).collect();
    SmashRep {
        x: c.rows(),
        y: c.cols(),
        v: PointedMap::new(c.rows() * c.cols(), c.k(), images).expect("k-relation values lie in k+"),
        xi: vec![1; c.rows()],
        eta: vec![1; c.cols()],
    }
}

/// `{{v(x, y) | y ∈ G} | x ∈ F}` with the base point removed from each inner set.
pub fn assembly_hb(c: &KRelation) -> BTreeSet<BTreeSet<usize>> {
    (0..c.rows()).map(|i| c.row(i).iter().filter(|&&e| e != 0).map(|&e| e as usize).collect()).collect()
}

/// The generic assembly of a k-relation in `H𝔹`, read as a set of subsets.
pub fn assembly_hb_generic(c: &KRelation) -> Result<BTreeSet<BTreeSet<usize>>> {
    let hb = eilenberg_maclane(FiniteSemiring::boolean());
    let e = assembly(&hb, &hb, &krel_rep(c))?;
    Ok(e.points
        .iter()
        .zip(&e.value)
        .filter(|(_, &c)| c != 0)
        .map(|(inner, _)| crate::constructions::boolean_support(inner))
        .collect())
}

/// The preimage of `τ = Σ λ_i·(Σ μ_ij·j)` built from `X = I₊`, `Y = I₊ ∧ k₊`,
/// `v(i, (i′, j)) = j` when `i = i′` and the base point otherwise.
pub fn surjectivity_preimage(k: usize, tau: &FormalSum<Vec<usize>>) -> SmashRep<Vec<usize>, Vec<usize>> {
    let terms: Vec<(&Vec<usize>, &usize)> = tau.terms().iter().collect();
    let n = terms.len();
    let xi = terms.iter().map(|(_, &c)| c).collect();
    let mut eta = vec![0; n * k];
    for (i, (inner, _)) in terms.iter().enumerate() {
        for j in 1..=k {
            eta[smash_index(k, i + 1, j) - 1] = inner[j - 1];
        }
    }
    let y = n * k;
    let mut images = vec![0; n * y + 1];
    for i in 1..=n {
        for z in 1..=y {
            let (i2, j) = crate::gamma::smash_split(k, z);
            if i2 == i {
                images[smash_index(y, i, z)] = j;
            }
        }
    }
    SmashRep { x: n, y, v: PointedMap::new(n * y, k, images).expect("pointed"), xi, eta }
}

#[derive(Debug, Clone, Serialize)]
pub struct SurjectivityReport {
    pub ring: String,
    pub level: usize,
    pub term_bound: usize,
    pub targets: usize,
    pub hit: usize,
    pub failures: Vec<String>,
}

impl SurjectivityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.hit == self.targets
    }
}

/// Every `τ ∈ (H̃R∘HR)(k₊)` with at most `term_bound` outer terms, reached
/// from its constructed preimage through the generic assembly map.
pub fn surjectivity_check(ring: &FiniteSemiring, k: usize, term_bound: usize) -> Result<SurjectivityReport> {
    let hr = eilenberg_maclane(ring.clone());
    let inner: Vec<Vec<usize>> = tuples(ring.len(), k).into_iter().skip(1).collect();
    let coeffs: Vec<usize> = (1..ring.len()).collect();
    let mut targets = Vec::new();
    for size in 0..=term_bound.min(inner.len()) {
        for chosen in subsets(inner.len(), size) {
            for cs in tuples(coeffs.len(), size) {
                let terms = chosen.iter().zip(&cs).map(|(&i, &c)| (inner[i].clone(), coeffs[c]));
                targets.push(FormalSum::from_terms(ring, terms));
            }
        }
    }
    let mut failures = Vec::new();
    let mut hit = 0;
    for tau in &targets {
        let rep = surjectivity_preimage(k, tau);
        let got = to_formal_sum(ring, &assembly(&hr, &hr, &rep)?);
        if &got == tau {
            hit += 1;
        } else {
            failures.push(format!("{tau:?} assembled to {got:?}"));
        }
    }
    Ok(SurjectivityReport { ring: ring.name().into(), level: k, term_bound, targets: targets.len(), hit, failures })
}

/// Moving a representative along `f: x₊ → x′₊`, `g: y₊ → y′₊` with
/// `v = v′∘(f∧g)` does not change the assembled element.
pub fn assembly_equivalence_check<M: GammaSet, N: GammaSet, R: Rng + ?Sized>(
    m: &M,
    n: &N,
    samples: usize,
    rng: &mut R,
) -> Result<LawOutcome> {
    let mut out = LawOutcome::new("assembly respects the smash equivalence");
    out.exhaustive = false;
    for _ in 0..samples {
        let (x, y, x2, y2) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let k = rng.gen_range(0..=2);
        let f = PointedMap::random(x, x2, rng);
        let g = PointedMap::random(y, y2, rng);
        let v2 = PointedMap::random(x2 * y2, k, rng);
        let v = compose(&smash_maps(&f, &g), &v2)?;
        let xi = m.sample(x, rng);
        let eta = n.sample(y, rng);
        let moved = SmashRep { x: x2, y: y2, v: v2, xi: m.act(&f, &xi), eta: n.act(&g, &eta) };
        let rep = SmashRep { x, y, v, xi, eta };
        let (a, b) = (assembly(m, n, &rep)?, assembly(m, n, &moved)?);
        out.record(a == b, || format!("f={f} g={g} v'={}: {a:?} vs {b:?}", moved.v));
    }
    Ok(out)
}

/// Increasing `size`-subsets of `0..n`.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::PowerSetAlgebra;
    use crate::gamma::Sphere;

    fn z(n: usize) -> FiniteSemiring {
        FiniteSemiring::zmod(n).unwrap()
    }

    #[test]
    fn extension_at_finite_sets() {
        assert_eq!(extend(&PowerSetAlgebra, 2).unwrap().len(), 4);
        assert_eq!(extend(&Sphere, 3).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(extend(&eilenberg_maclane(z(3)), 2).unwrap().len(), 9);
    }

    #[test]
    fn single_term_assembly() {
        let r = z(10);
        let h = eilenberg_maclane(r.clone());
        let rep = SmashRep { x: 1, y: 1, v: PointedMap::identity(1), xi: vec![1], eta: vec![1] };
        let e = assembly(&h, &h, &rep).unwrap();
        assert_eq!(to_formal_sum(&r, &e), FormalSum::term(&r, vec![1], 1));
        assert_eq!(assembly_hr_closed(&r, &rep).unwrap(), FormalSum::term(&r, vec![1], 1));
    }

    #[test]
    fn hb_formula_examples() {
        assert_eq!(assembly_hb(&KRelation::identity(1)), BTreeSet::from([BTreeSet::from([1])]));
        assert_eq!(assembly_hb(&KRelation::identity(2)), assembly_hb(&KRelation::identity(1)));
        assert_eq!(assembly_hb_generic(&KRelation::identity(2)).unwrap(), BTreeSet::from([BTreeSet::from([1])]));
        let m = KRelation::from_rows(2, &[vec![1, 2, 0], vec![2, 0, 2]]).unwrap();
        assert_eq!(assembly_hb(&m), BTreeSet::from([BTreeSet::from([1, 2]), BTreeSet::from([2])]));
        assert_eq!(assembly_hb_generic(&m).unwrap(), assembly_hb(&m));
    }

    #[test]
    fn preimage_recipe() {
        let r = z(3);
        let h = eilenberg_maclane(r.clone());
        let tau = FormalSum::from_terms(&r, [(vec![1, 2], 2), (vec![0, 1], 1)]);
        let rep = surjectivity_preimage(2, &tau);
        assert_eq!(to_formal_sum(&r, &assembly(&h, &h, &rep).unwrap()), tau);
        let zero = FormalSum::zero();
        let rep = surjectivity_preimage(2, &zero);
        assert_eq!(to_formal_sum(&r, &assembly(&h, &h, &rep).unwrap()), zero);
    }

    #[test]
    fn surjectivity_small() {
        for (ring, k) in [(FiniteSemiring::boolean(), 1), (z(2), 2), (z(3), 1)] {
            let report = surjectivity_check(&ring, k, 2).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn equivalence_invariance() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for ring in [FiniteSemiring::boolean(), z(2), z(3), z(4)] {
            let h = eilenberg_maclane(ring);
            assert!(assembly_equivalence_check(&h, &h, 300, &mut rng).unwrap().passed());
        }
        assert!(assembly_equivalence_check(&PowerSetAlgebra, &Sphere, 300, &mut rng).unwrap().passed());
    }

    #[test]
    fn shape_errors() {
        let h = eilenberg_maclane(z(2));
        let rep = SmashRep { x: 2, y: 1, v: PointedMap::identity(1), xi: vec![1, 1], eta: vec![1] };
        assert!(assembly(&h, &h, &rep).is_err());
    }

    #[test]
    fn prune_keeps_support() {
        let r = z(5);
        let h = eilenberg_maclane(r.clone());
        let e = Extended { points: vec![vec![1], vec![2], vec![3]], value: vec![0, 4, 0] };
        let p = prune(&h, e);
        assert_eq!(p.points, vec![vec![2]]);
        assert_eq!(p.value, vec![4]);
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
