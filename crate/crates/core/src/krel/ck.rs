//! Objects `(X, Y, v, E)` presenting elements of `(H𝔹 ∧ H𝔹)(k₊)`, their
//! supports and morphisms, the retraction `Γ` onto k-relations and the
//! resulting functor `R₊`.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use crate::error::{domain, GammaError, Result};
use crate::gamma::{GammaSet, PointedMap};

use super::{canonical_form, KRelation};

/// An element of `R(k)₊`: `None` is the base point, otherwise a canonical reduced k-relation.
pub type KClass = Option<KRelation>;

/// `X = x₊`, `Y = y₊`, `v: X ∧ Y → k₊` as an `x × y` matrix over the non-base
/// points, and `E` either the base point (`None`) or a pair of non-empty
/// subsets `(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CkObject {
    k: usize,
    x: usize,
    y: usize,
    v: Vec<usize>,
    e: Option<(BTreeSet<usize>, BTreeSet<usize>)>,
}

impl CkObject {
    pub fn new(
        k: usize,
        x: usize,
        y: usize,
        v: Vec<usize>,
        e: Option<(BTreeSet<usize>, BTreeSet<usize>)>,
    ) -> Result<Self> {
        if v.len() != x * y {
            return domain(format!("v on {x}+ ^ {y}+ needs {} values, got {}", x * y, v.len()));
        }
        if let Some(&bad) = v.iter().find(|&&a| a > k) {
            return domain(format!("value {bad} outside 0..={k}"));
        }
        if let Some((a, b)) = &e {
            if a.is_empty() || b.is_empty() {
                return domain("A and B must be non-empty");
            }
            if a.iter().any(|&i| i == 0 || i > x) || b.iter().any(|&j| j == 0 || j > y) {
                return domain("A and B must consist of non-base points");
            }
        }
        Ok(CkObject { k, x, y, v, e })
    }

    /// The object `⋆ = (*, *, Id, *)`.
    pub fn star(k: usize) -> Self {
        CkObject { k, x: 0, y: 0, v: Vec::new(), e: None }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn x_size(&self) -> usize {
        self.x
    }

    pub fn y_size(&self) -> usize {
        self.y
    }

    pub fn e(&self) -> Option<&(BTreeSet<usize>, BTreeSet<usize>)> {
        self.e.as_ref()
    }

    /// `v(i, j)` for pointed indices; `0` whenever either index is the base point.
    #[inline]
    pub fn v(&self, i: usize, j: usize) -> usize {
        if i == 0 || j == 0 {
            0
        } else {
            self.v[(i - 1) * self.y + (j - 1)]
        }
    }

    /// `(A × B) ∩ v⁻¹(k₊ \ {0})`, empty when `E` is the base point.
    pub fn support(&self) -> BTreeSet<(usize, usize)> {
        let Some((a, b)) = &self.e else {
            return BTreeSet::new();
        };
        a.iter()
            .flat_map(|&i| b.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| self.v(i, j) != 0)
            .collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.support().is_empty()
    }

    /// The restriction `(A₊, B₊, v|, A, B)` with `A`, `B` renumbered in order,
    /// together with the inclusions `(ι_A, ι_B)` into `self`.
    pub fn restrict_to_e(&self) -> Option<(CkObject, PointedMap, PointedMap)> {
        let (a, b) = self.e.as_ref()?;
        let a: Vec<usize> = a.iter().copied().collect();
        let b: Vec<usize> = b.iter().copied().collect();
        let v = a.iter().flat_map(|&i| b.iter().map(move |&j| (i, j))).map(|(i, j)| self.v(i, j)).collect();
        let e = Some(((1..=a.len()).collect(), (1..=b.len()).collect()));
        let obj = CkObject { k: self.k, x: a.len(), y: b.len(), v, e };
        let iota_a = PointedMap::new(a.len(), self.x, std::iter::once(0).chain(a.iter().copied()).collect())
            .expect("inclusion");
        let iota_b = PointedMap::new(b.len(), self.y, std::iter::once(0).chain(b.iter().copied()).collect())
            .expect("inclusion");
        Some((obj, iota_a, iota_b))
    }
}

/// Whether `(f, g)` is a morphism `a → b`. When it is and both ends are
/// non-degenerate, `(f × g)(Support a) = Support b` is asserted.
pub fn is_ck_morphism(a: &CkObject, b: &CkObject, f: &PointedMap, g: &PointedMap) -> Result<bool> {
    if a.k != b.k {
        return domain(format!("objects live at levels {} and {}", a.k, b.k));
    }
    if f.source() != a.x || f.target() != b.x || g.source() != a.y || g.target() != b.y {
        return domain(format!(
            "maps {}->{} and {}->{} do not fit objects on {}+ ^ {}+ and {}+ ^ {}+",
            f.source(),
            f.target(),
            g.source(),
            g.target(),
            a.x,
            a.y,
            b.x,
            b.y
        ));
    }
    let v_ok = (1..=a.x).all(|i| (1..=a.y).all(|j| b.v(f.apply(i), g.apply(j)) == a.v(i, j)));
    if !v_ok {
        return Ok(false);
    }
    let image = |m: &PointedMap, s: &BTreeSet<usize>| -> BTreeSet<usize> {
        s.iter().map(|&i| m.apply(i)).filter(|&y| y != 0).collect()
    };
    let ok = match (&a.e, &b.e) {
        (_, None) => match &a.e {
            None => true,
            Some((sa, sb)) => image(f, sa).is_empty() || image(g, sb).is_empty(),
        },
        (None, Some(_)) => false,
        (Some((sa, sb)), Some((ta, tb))) => &image(f, sa) == ta && &image(g, sb) == tb,
    };
    if ok && !a.is_degenerate() && !b.is_degenerate() {
        let pushed: BTreeSet<(usize, usize)> = a.support().iter().map(|&(i, j)| (f.apply(i), g.apply(j))).collect();
        assert_eq!(pushed, b.support(), "morphism does not carry support onto support");
    }
    Ok(ok)
}

/// `Γ(α) = (F, G, v|_{F×G})` with `F`, `G` the projections of the support;
/// the base point for degenerate objects.
pub fn gamma_retract(a: &CkObject) -> Option<KRelation> {
    let support = a.support();
    if support.is_empty() {
        return None;
    }
    let rows: BTreeSet<usize> = support.iter().map(|&(i, _)| i).collect();
    let cols: BTreeSet<usize> = support.iter().map(|&(_, j)| j).collect();
    let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| (i, j))).map(|(i, j)| a.v(i, j)).collect();
    Some(KRelation::new(a.k, rows.len(), cols.len(), entries).expect("support projections give a k-relation"))
}

/// `γ̃ = (F₊, G₊, ṽ, F, G)`.
pub fn lift(c: &KRelation) -> CkObject {
    CkObject {
        k: c.k(),
        x: c.rows(),
        y: c.cols(),
        v: c.raw().iter().map(|&e| e as usize).collect(),
        e: Some(((1..=c.rows()).collect(), (1..=c.cols()).collect())),
    }
}

/// `(X, Y, v, E) ↦ (X, Y, φ∘v, E)`.
pub fn smash_action(phi: &PointedMap, a: &CkObject) -> Result<CkObject> {
    if phi.source() != a.k {
        return domain(format!("map from {}+ applied at level {}", phi.source(), a.k));
    }
    Ok(CkObject { k: phi.target(), x: a.x, y: a.y, v: a.v.iter().map(|&t| phi.apply(t)).collect(), e: a.e.clone() })
}

/// `r∘Γ`, landing in canonical form.
pub fn class_of(a: &CkObject) -> Result<KClass> {
    gamma_retract(a).map(|c| canonical_form(&c)).transpose()
}

/// `R₊(φ)(F, G, v) = r∘Γ(F, G, φ∘v)`.
pub fn act(phi: &PointedMap, c: &KClass) -> Result<KClass> {
    match c {
        None => Ok(None),
        Some(c) => class_of(&smash_action(phi, &lift(c))?),
    }
}

/// The class in `(H𝔹 ∧ H𝔹)(k₊)` of `(x₊, y₊, v, (A, B))`; `v` is given on
/// non-base points as an `x × y` matrix.
pub fn smash_element(
    k: usize,
    x: usize,
    y: usize,
    a: BTreeSet<usize>,
    b: BTreeSet<usize>,
    v: Vec<usize>,
) -> Result<KClass> {
    class_of(&CkObject::new(k, x, y, v, Some((a, b)))?)
}

/// `R₊` as a Γ-set. Samples are classes of random matrices with at most three rows and columns.
#[derive(Debug, Clone, Copy, Default)]
pub struct KRelationFunctor;

impl GammaSet for KRelationFunctor {
    type Elem = KClass;

    fn name(&self) -> String {
        "R+".into()
    }

    fn base(&self, _level: usize) -> KClass {
        None
    }

    fn act(&self, f: &PointedMap, x: &KClass) -> KClass {
        act(f, x).expect("small classes stay within the canonicalization bound")
    }

    fn enumeration_bound(&self, level: usize) -> Option<u128> {
        (level == 0).then_some(1)
    }

    fn elements(&self, level: usize) -> Result<Vec<KClass>> {
        if level == 0 {
            Ok(vec![None])
        } else {
            Err(GammaError::Unsupported("R(k) is infinite for k > 0".into()))
        }
    }

    fn sample<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> KClass {
        let (x, y) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let v = (0..x * y).map(|_| rng.gen_range(0..=level)).collect();
        let e = Some(((1..=x).collect(), (1..=y).collect()));
        class_of(&CkObject::new(level, x, y, v, e).expect("valid")).expect("small")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NaturalityReport {
    pub objects: u64,
    pub squares: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Nonempty subsets of `{1..n}`.
fn nonempty_subsets(n: usize) -> Vec<BTreeSet<usize>> {
    (1u32..1 << n).map(|mask| (1..=n).filter(|&i| mask & (1 << (i - 1)) != 0).collect()).collect()
}

/// `r∘Γ(φ·α) = R₊(φ)(r∘Γ(α))` for every object with `|X|, |Y| ≤ max_side`,
/// entries of `v` in `0..=max_value`, every `E`, and every `φ: k₊ → l₊`.
pub fn naturality_check(k: usize, l: usize, max_side: usize, max_value: usize) -> Result<NaturalityReport> {
    if max_value > k {
        return domain(format!("values up to {max_value} do not lie in {k}+"));
    }
    let maps: Vec<PointedMap> = PointedMap::all(k, l).collect();
    let mut report = NaturalityReport { objects: 0, squares: 0, failures: 0, first_failure: None };
    for x in 1..=max_side {
        for y in 1..=max_side {
            let mut es: Vec<Option<(BTreeSet<usize>, BTreeSet<usize>)>> = vec![None];
            for a in nonempty_subsets(x) {
                for b in nonempty_subsets(y) {
                    es.push(Some((a.clone(), b)));
                }
            }
            for v in crate::constructions::tuples(max_value + 1, x * y) {
                for e in &es {
                    let obj = CkObject { k, x, y, v: v.clone(), e: e.clone() };
                    let class = class_of(&obj)?;
                    report.objects += 1;
                    for phi in &maps {
                        let lhs = class_of(&smash_action(phi, &obj)?)?;
                        let rhs = act(phi, &class)?;
                        report.squares += 1;
                        if lhs != rhs {
                            report.failures += 1;
                            report.first_failure.get_or_insert_with(|| format!("{phi} on {obj:?}"));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::compose;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn support_examples() {
        let a = CkObject::new(1, 2, 1, vec![1, 0], Some((set(&[1, 2]), set(&[1])))).unwrap();
        assert_eq!(a.support(), BTreeSet::from([(1, 1)]));
        assert_eq!(gamma_retract(&a), Some(KRelation::identity(1)));
        let b = CkObject::new(1, 2, 1, vec![1, 0], None).unwrap();
        assert!(b.support().is_empty() && b.is_degenerate());
        assert!(CkObject::star(3).is_degenerate());
        let z = CkObject::new(1, 2, 2, vec![0; 4], Some((set(&[1, 2]), set(&[1])))).unwrap();
        assert!(z.is_degenerate());
        assert_eq!(gamma_retract(&z), None);
        let full = CkObject::new(1, 2, 2, vec![1; 4], Some((set(&[1, 2]), set(&[1, 2])))).unwrap();
        assert!(!full.is_degenerate());
        assert!(CkObject::new(1, 2, 2, vec![1; 4], Some((set(&[]), set(&[1])))).is_err());
        assert!(CkObject::new(1, 2, 2, vec![1; 4], Some((set(&[3]), set(&[1])))).is_err());
    }

    #[test]
    fn lift_round_trips() {
        let m = KRelation::from_rows(1, &[vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        for c in [KRelation::identity(1), KRelation::identity(2), m] {
            assert_eq!(gamma_retract(&lift(&c)), Some(c));
        }
    }

    #[test]
    fn morphism_examples() {
        let a = CkObject::new(1, 3, 2, vec![1, 0, 0, 1, 1, 1], Some((set(&[1, 3]), set(&[1, 2])))).unwrap();
        let (restricted, ia, ib) = a.restrict_to_e().unwrap();
        assert!(is_ck_morphism(&restricted, &a, &ia, &ib).unwrap());
        assert!(is_ck_morphism(&a, &a, &PointedMap::identity(3), &PointedMap::identity(2)).unwrap());
        let swap = PointedMap::new(2, 2, vec![0, 2, 1]).unwrap();
        assert!(!is_ck_morphism(&a, &a, &PointedMap::identity(3), &swap).unwrap());
        assert!(is_ck_morphism(&a, &a, &swap, &swap).is_err());
        let to_star = PointedMap::to_base(3, 0);
        let zero = CkObject::new(1, 3, 2, vec![0; 6], Some((set(&[1]), set(&[1])))).unwrap();
        assert!(is_ck_morphism(&zero, &CkObject::star(1), &to_star, &PointedMap::to_base(2, 0)).unwrap());
    }

    #[test]
    fn action_examples() {
        let id3 = canonical_form(&KRelation::identity(3)).unwrap();
        let c = Some(id3.clone());
        assert_eq!(act(&PointedMap::to_base(1, 1), &c).unwrap(), None);
        assert_eq!(act(&PointedMap::identity(1), &c).unwrap(), c);
        let c2 = Some(canonical_form(&KRelation::from_rows(2, &[vec![1, 2], vec![2, 0]]).unwrap()).unwrap());
        let fold = PointedMap::new(2, 1, vec![0, 1, 1]).unwrap();
        let folded = KRelation::from_rows(1, &[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(act(&fold, &c2).unwrap(), Some(folded));
        let keep_one = PointedMap::new(2, 1, vec![0, 0, 1]).unwrap();
        let c3 = Some(canonical_form(&KRelation::from_rows(2, &[vec![2, 1], vec![1, 1]]).unwrap()).unwrap());
        assert_eq!(act(&keep_one, &c3).unwrap(), Some(KRelation::identity(1)));
    }

    #[test]
    fn composition_law_small() {
        let mut classes: Vec<KClass> = vec![None];
        for rows in 1..=2 {
            for cols in 1..=2 {
                for code in 0..3usize.pow((rows * cols) as u32) {
                    let mut c = code;
                    let v: Vec<usize> = (0..rows * cols)
                        .map(|_| {
                            let d = c % 3;
                            c /= 3;
                            d
                        })
                        .collect();
                    if let Ok(r) = KRelation::new(2, rows, cols, v) {
                        classes.push(Some(canonical_form(&r).unwrap()));
                    }
                }
            }
        }
        for l in 0..=2 {
            for m in 0..=2 {
                for f in PointedMap::all(2, l) {
                    for g in PointedMap::all(l, m) {
                        let gf = compose(&f, &g).unwrap();
                        for c in &classes {
                            assert_eq!(act(&gf, c).unwrap(), act(&g, &act(&f, c).unwrap()).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn naturality_small() {
        let r = naturality_check(2, 1, 2, 2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.squares, r.objects * 4);
        assert!(naturality_check(1, 1, 2, 2).is_err());
    }

    #[test]
    fn smash_element_examples() {
        assert_eq!(smash_element(1, 1, 1, set(&[1]), set(&[1]), vec![0]).unwrap(), None);
        assert_eq!(smash_element(1, 1, 1, set(&[1]), set(&[1]), vec![1]).unwrap(), Some(KRelation::identity(1)));
        let small = smash_element(1, 2, 2, set(&[1, 2]), set(&[1, 2]), vec![1, 0, 0, 1]).unwrap();
        let big = smash_element(1, 3, 3, set(&[1, 2]), set(&[1, 2]), vec![1, 0, 1, 0, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(small, big);
    }
}
