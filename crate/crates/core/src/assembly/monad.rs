//! The linearization monad `Σ_R` and the 𝕊-algebra it induces through the
//! assembly map.

use rand::Rng;

use crate::constructions::{eilenberg_maclane, tuples};
use crate::error::Result;
use crate::gamma::{GammaSet, LawOutcome, LawReport, PointedMap, SAlgebra};
use crate::semiring::FiniteSemiring;

use super::{assembly, FormalSum, SmashRep};

/// `Σ_R(X)`: finite `R`-combinations of the non-base points of `X`.
#[derive(Debug, Clone)]
pub struct LinearizationMonad {
    ring: FiniteSemiring,
}

pub fn sigma_r_monad(ring: FiniteSemiring) -> LinearizationMonad {
    LinearizationMonad { ring }
}

impl LinearizationMonad {
    pub fn ring(&self) -> &FiniteSemiring {
        &self.ring
    }

    pub fn unit<T: Ord + Clone>(&self, x: T) -> FormalSum<T> {
        FormalSum::term(&self.ring, x, self.ring.one())
    }

    /// `Σ λ_i·(Σ μ_ij·x_j) ↦ Σ (Σ_i λ_i·μ_ij)·x_j`.
    pub fn mu<T: Ord + Clone>(&self, s: &FormalSum<FormalSum<T>>) -> FormalSum<T> {
        let mut out = FormalSum::zero();
        for (inner, &lambda) in s.terms() {
            for (x, &c) in inner.terms() {
                out.add_term(&self.ring, x.clone(), self.ring.mul(lambda, c));
            }
        }
        out
    }

    pub fn fmap<T: Ord + Clone, U: Ord + Clone>(&self, s: &FormalSum<T>, f: impl Fn(&T) -> Option<U>) -> FormalSum<U> {
        s.map(&self.ring, f)
    }

    // random layers with at most three terms each
    fn random_sigma<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> FormalSum<usize> {
        let terms: Vec<(usize, usize)> =
            (0..rng.gen_range(0..=3)).map(|_| (rng.gen_range(1..=k), rng.gen_range(0..self.ring.len()))).collect();
        FormalSum::from_terms(&self.ring, terms)
    }

    fn random_sigma2<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> FormalSum<FormalSum<usize>> {
        let terms: Vec<_> = (0..rng.gen_range(0..=3))
            .map(|_| (self.random_sigma(k, rng), rng.gen_range(0..self.ring.len())))
            .filter(|(s, _)| !s.is_zero())
            .collect();
        FormalSum::from_terms(&self.ring, terms)
    }

    fn random_sigma3<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> FormalSum<FormalSum<FormalSum<usize>>> {
        let terms: Vec<_> = (0..rng.gen_range(0..=3))
            .map(|_| (self.random_sigma2(k, rng), rng.gen_range(0..self.ring.len())))
            .filter(|(s, _)| !s.is_zero())
            .collect();
        FormalSum::from_terms(&self.ring, terms)
    }
}

/// The associativity square `μ∘Σ(μ) = μ∘μ_Σ` and both unit triangles on
/// random inputs over `k₊`, `1 ≤ k ≤ 3`.
pub fn eq13_check<R: Rng + ?Sized>(monad: &LinearizationMonad, samples: usize, rng: &mut R) -> LawReport {
    let mut assoc = LawOutcome::new("mu . Sigma(mu) = mu . mu_Sigma");
    let mut left = LawOutcome::new("mu . eta_Sigma = id");
    let mut right = LawOutcome::new("mu . Sigma(eta) = id");
    for _ in 0..samples {
        let k = rng.gen_range(1..=3);
        let t = monad.random_sigma3(k, rng);
        let inner_first = monad.mu(&monad.fmap(&t, |s| {
            let m = monad.mu(s);
            (!m.is_zero()).then_some(m)
        }));
        let outer_first = monad.mu(&monad.mu(&t));
        assoc.record(inner_first == outer_first, || format!("{t:?}"));

        let s = monad.random_sigma(k, rng);
        let eta_s = if s.is_zero() { FormalSum::zero() } else { monad.unit(s.clone()) };
        left.record(monad.mu(&eta_s) == s, || format!("{s:?}"));
        right.record(monad.mu(&monad.fmap(&s, |&x| Some(monad.unit(x)))) == s, || format!("{s:?}"));
    }
    for o in [&mut assoc, &mut left, &mut right] {
        o.exhaustive = false;
    }
    LawReport { subject: format!("Sigma_{}", monad.ring().name()), max_level: 3, outcomes: vec![assoc, left, right] }
}

/// `Σ_R` restricted to finite pointed sets, with product `μ∘α_{Σ,Σ}`.
#[derive(Debug, Clone)]
pub struct MonadAlgebra {
    monad: LinearizationMonad,
}

pub fn monad_to_salgebra(monad: LinearizationMonad) -> MonadAlgebra {
    MonadAlgebra { monad }
}

impl MonadAlgebra {
    pub fn monad(&self) -> &LinearizationMonad {
        &self.monad
    }

    /// Compares carriers, actions, products and units with `HR` on all levels
    /// up to `max_level`, exhaustively.
    pub fn compare_with_eilenberg_maclane(&self, max_level: usize) -> Result<LawReport> {
        let ring = self.monad.ring();
        let hr = eilenberg_maclane(ring.clone());
        let mut carrier = LawOutcome::new("carrier");
        let mut action = LawOutcome::new("action");
        let mut product = LawOutcome::new("product");
        let mut unit = LawOutcome::new("unit");
        for k in 0..=max_level {
            let vs = hr.elements(k)?;
            let ss = self.elements(k)?;
            carrier.record(vs.len() == ss.len() && vs.iter().zip(&ss).all(|(v, s)| &s.to_vector(k) == v), || {
                format!("level {k}")
            });
            for l in 0..=max_level {
                for f in PointedMap::all(k, l) {
                    for v in &vs {
                        let s = FormalSum::from_vector(ring, v);
                        action.record(self.act(&f, &s).to_vector(l) == hr.act(&f, v), || format!("{f} on {v:?}"));
                    }
                }
                let ws = hr.elements(l)?;
                for v in &vs {
                    for w in &ws {
                        let p = self.mul(k, &FormalSum::from_vector(ring, v), l, &FormalSum::from_vector(ring, w));
                        product.record(p.to_vector(k * l) == hr.mul(k, v, l, w), || format!("{v:?} * {w:?}"));
                    }
                }
            }
            for j in 0..=k {
                unit.record(self.unit(k, j).to_vector(k) == hr.unit(k, j), || format!("1_{k}({j})"));
            }
        }
        Ok(LawReport {
            subject: format!("Sigma_{} vs H{}", ring.name(), ring.name()),
            max_level,
            outcomes: vec![carrier, action, product, unit],
        })
    }
}

impl GammaSet for MonadAlgebra {
    type Elem = FormalSum<usize>;

    fn name(&self) -> String {
        format!("Sigma_{}", self.monad.ring().name())
    }

    fn base(&self, _level: usize) -> FormalSum<usize> {
        FormalSum::zero()
    }

    fn act(&self, f: &PointedMap, x: &FormalSum<usize>) -> FormalSum<usize> {
        self.monad.fmap(x, |&p| {
            let q = f.apply(p);
            (q != 0).then_some(q)
        })
    }

    fn enumeration_bound(&self, level: usize) -> Option<u128> {
        Some((self.monad.ring().len() as u128).checked_pow(level as u32).unwrap_or(u128::MAX))
    }

    fn elements(&self, level: usize) -> Result<Vec<FormalSum<usize>>> {
        let ring = self.monad.ring();
        if self.enumeration_bound(level).unwrap_or(u128::MAX) > crate::constructions::HOM_SEARCH_LIMIT {
            return Err(crate::GammaError::Resource(format!("{} is too large at level {level}", self.name())));
        }
        Ok(tuples(ring.len(), level).iter().map(|v| FormalSum::from_vector(ring, v)).collect())
    }

    fn sample<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> FormalSum<usize> {
        let ring = self.monad.ring();
        let v: Vec<usize> = (0..level).map(|_| rng.gen_range(0..ring.len())).collect();
        FormalSum::from_vector(ring, &v)
    }
}

impl SAlgebra for MonadAlgebra {
    fn mul(&self, k: usize, x: &FormalSum<usize>, l: usize, y: &FormalSum<usize>) -> FormalSum<usize> {
        let rep = SmashRep { x: k, y: l, v: PointedMap::identity(k * l), xi: x.clone(), eta: y.clone() };
        let e = assembly(self, self, &rep).expect("identity representative has matching shape");
        let ring = self.monad.ring();
        let nested = FormalSum::from_terms(
            ring,
            e.points.iter().enumerate().map(|(i, s)| (s.clone(), e.value.coeff(&(i + 1)))),
        );
        self.monad.mu(&nested)
    }

    fn unit(&self, _k: usize, j: usize) -> FormalSum<usize> {
        if j == 0 {
            FormalSum::zero()
        } else {
            self.monad.unit(j)
        }
    }
}
