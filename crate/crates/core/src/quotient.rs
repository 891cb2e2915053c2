//! Quotients `HA/G` of Eilenberg–MacLane algebras by a group of units acting
//! diagonally, and the hyperring they induce on `A/G`.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::Serialize;

use crate::constructions::{eilenberg_maclane, hyper_add, tuples, EilenbergMacLane};
use crate::error::{domain, GammaError, Result};
use crate::gamma::{GammaSet, PointedMap, SAlgebra};
use crate::semiring::FiniteSemiring;

/// A subgroup of the units of a finite ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSubgroup {
    ring: FiniteSemiring,
    elements: Vec<usize>,
}

impl UnitSubgroup {
    pub fn new(ring: FiniteSemiring, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        if !ring.is_ring() {
            return domain(format!("{} has elements without additive inverse", ring.name()));
        }
        let elements: BTreeSet<usize> = elements.into_iter().collect();
        if elements.iter().any(|&g| g >= ring.len()) {
            return domain("group element outside the ring");
        }
        if !elements.contains(&ring.one()) {
            return domain("subgroup must contain 1");
        }
        for &g in &elements {
            match ring.inverse(g) {
                Some(inv) if elements.contains(&inv) => {}
                Some(_) => return domain(format!("inverse of {g} missing from the subgroup")),
                None => return domain(format!("{g} is not invertible")),
            }
            for &h in &elements {
                if !elements.contains(&ring.mul(g, h)) {
                    return domain(format!("not closed: {g}·{h}"));
                }
            }
        }
        Ok(UnitSubgroup { ring, elements: elements.into_iter().collect() })
    }

    /// The full unit group.
    pub fn units(ring: FiniteSemiring) -> Result<Self> {
        let units: Vec<usize> = (0..ring.len()).filter(|&a| ring.inverse(a).is_some()).collect();
        Self::new(ring, units)
    }

    pub fn ring(&self) -> &FiniteSemiring {
        &self.ring
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// The orbit `Gφ` of a tuple under diagonal multiplication.
    pub fn orbit(&self, x: &[usize]) -> BTreeSet<Vec<usize>> {
        self.elements.iter().map(|&g| x.iter().map(|&a| self.ring.mul(g, a)).collect()).collect()
    }

    /// Lexicographically least member of the orbit.
    pub fn canonical(&self, x: &[usize]) -> Vec<usize> {
        self.elements
            .iter()
            .map(|&g| x.iter().map(|&a| self.ring.mul(g, a)).collect::<Vec<_>>())
            .min()
            .unwrap_or_else(|| x.to_vec())
    }
}

/// `HA/G`: tuples up to a common unit factor, stored as their least orbit member.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    cover: EilenbergMacLane,
    group: UnitSubgroup,
}

pub fn quotient_algebra(group: UnitSubgroup) -> QuotientAlgebra {
    QuotientAlgebra { cover: eilenberg_maclane(group.ring().clone()), group }
}

impl QuotientAlgebra {
    pub fn group(&self) -> &UnitSubgroup {
        &self.group
    }

    pub fn cover(&self) -> &EilenbergMacLane {
        &self.cover
    }

    /// The quotient map `HA → HA/G`.
    pub fn project(&self, x: &[usize]) -> Vec<usize> {
        self.group.canonical(x)
    }
}

impl GammaSet for QuotientAlgebra {
    type Elem = Vec<usize>;

    fn name(&self) -> String {
        format!("H{}/{:?}", self.group.ring().name(), self.group.elements())
    }

    fn base(&self, level: usize) -> Vec<usize> {
        vec![0; level]
    }

    fn act(&self, f: &PointedMap, x: &Vec<usize>) -> Vec<usize> {
        self.project(&self.cover.act(f, x))
    }

    fn enumeration_bound(&self, level: usize) -> Option<u128> {
        self.cover.enumeration_bound(level)
    }

    fn elements(&self, level: usize) -> Result<Vec<Vec<usize>>> {
        let bound = self.cover.enumeration_bound(level).unwrap_or(u128::MAX);
        if bound > crate::constructions::HOM_SEARCH_LIMIT {
            return Err(GammaError::Resource(format!("{} has {bound} lifts at level {level}", self.name())));
        }
        let mut seen = BTreeSet::new();
        Ok(tuples(self.group.ring().len(), level)
            .into_iter()
            .map(|x| self.project(&x))
            .filter(|x| seen.insert(x.clone()))
            .collect())
    }

    fn sample<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> Vec<usize> {
        self.project(&self.cover.sample(level, rng))
    }
}

impl SAlgebra for QuotientAlgebra {
    fn mul(&self, k: usize, x: &Vec<usize>, l: usize, y: &Vec<usize>) -> Vec<usize> {
        self.project(&self.cover.mul(k, x, l, y))
    }

    fn unit(&self, k: usize, j: usize) -> Vec<usize> {
        self.project(&self.cover.unit(k, j))
    }
}

/// A hyperring on a finite set of classes, each labelled by its least representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperringTable {
    pub classes: Vec<usize>,
    pub add: BTreeMap<usize, BTreeMap<usize, BTreeSet<usize>>>,
    pub mul: BTreeMap<usize, BTreeMap<usize, usize>>,
}

impl HyperringTable {
    pub fn sum(&self, x: usize, y: usize) -> Option<&BTreeSet<usize>> {
        self.add.get(&x)?.get(&y)
    }

    pub fn product(&self, x: usize, y: usize) -> Option<usize> {
        self.mul.get(&x)?.get(&y).copied()
    }
}

/// The hyperring read off `HA/G`: addition through the hyperaddition of the
/// 𝕊-algebra, multiplication through its product at level 1.
pub fn recover_hyperring(group: &UnitSubgroup) -> Result<HyperringTable> {
    let q = quotient_algebra(group.clone());
    let classes = q.elements(1)?;
    let label = |x: &Vec<usize>| x[0];
    let mut add = BTreeMap::new();
    let mut mul = BTreeMap::new();
    for x in &classes {
        let mut add_row = BTreeMap::new();
        let mut mul_row = BTreeMap::new();
        for y in &classes {
            add_row.insert(label(y), hyper_add(&q, x, y)?.iter().map(label).collect());
            mul_row.insert(label(y), label(&q.mul(1, x, 1, y)));
        }
        add.insert(label(x), add_row);
        mul.insert(label(x), mul_row);
    }
    Ok(HyperringTable { classes: classes.iter().map(label).collect(), add, mul })
}

/// The same tables from coset arithmetic: `xG ⊕ yG = {(a+b)G : a ∈ xG, b ∈ yG}`.
pub fn coset_oracle(group: &UnitSubgroup) -> HyperringTable {
    let r = group.ring();
    let coset = |x: usize| -> BTreeSet<usize> { group.elements().iter().map(|&g| r.mul(g, x)).collect() };
    let label = |x: usize| *coset(x).iter().next().expect("nonempty coset");
    let classes: BTreeSet<usize> = (0..r.len()).map(label).collect();
    let mut add = BTreeMap::new();
    let mut mul = BTreeMap::new();
    for &x in &classes {
        let mut add_row = BTreeMap::new();
        let mut mul_row = BTreeMap::new();
        for &y in &classes {
            let mut sums = BTreeSet::new();
            for a in coset(x) {
                for b in coset(y) {
                    sums.insert(label(r.add(a, b)));
                }
            }
            add_row.insert(y, sums);
            mul_row.insert(y, label(r.mul(x, y)));
        }
        add.insert(x, add_row);
        mul.insert(x, mul_row);
    }
    HyperringTable { classes: classes.into_iter().collect(), add, mul }
}
