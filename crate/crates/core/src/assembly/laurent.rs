//! `(H̃ℤ∘Hℤ)(k₊)` as Laurent polynomials in `t₁, …, t_k` modulo constants:
//! the basis element `(e₁, …, e_k) ∈ Hℤ(k₊)` is the monomial `t^e`, and the
//! zero vector, being the base point, is the constant monomial.

use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::IntegerEM;
use crate::error::{domain, GammaError, Result};
use crate::gamma::{standard_maps, GammaSet, PointedMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentTerm {
    pub exponents: Vec<i64>,
    pub coeff: i64,
}

/// A Laurent polynomial modulo constants, at a fixed level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentClass {
    level: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl LaurentClass {
    pub fn zero(level: usize) -> Self {
        LaurentClass { level, terms: BTreeMap::new() }
    }

    pub fn from_terms(level: usize, terms: impl IntoIterator<Item = (Vec<i64>, i64)>) -> Result<Self> {
        let mut c = Self::zero(level);
        for (e, a) in terms {
            if e.len() != level {
                return domain(format!("exponent vector {e:?} has length {}, expected {level}", e.len()));
            }
            c.add(e, a);
        }
        Ok(c)
    }

    pub fn from_json_terms(level: usize, terms: Vec<LaurentTerm>) -> Result<Self> {
        Self::from_terms(level, terms.into_iter().map(|t| (t.exponents, t.coeff)))
    }

    /// Parses `[{"exponents": [..], "coeff": n}, ..]`; an empty list needs `level`.
    pub fn from_json(text: &str, level: Option<usize>) -> Result<Self> {
        let terms: Vec<LaurentTerm> = serde_json::from_str(text).map_err(|e| GammaError::Parse(e.to_string()))?;
        let level = match (terms.first(), level) {
            (Some(t), _) => t.exponents.len(),
            (None, Some(l)) => l,
            (None, None) => return Err(GammaError::Parse("empty class without a level".into())),
        };
        Self::from_json_terms(level, terms)
    }

    fn add(&mut self, e: Vec<i64>, a: i64) {
        if a == 0 || e.iter().all(|&x| x == 0) {
            return;
        }
        let c = self.terms.entry(e.clone()).or_insert(0);
        *c += a;
        if *c == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, i64> {
        &self.terms
    }

    pub fn to_json_terms(&self) -> Vec<LaurentTerm> {
        self.terms.iter().map(|(e, &c)| LaurentTerm { exponents: e.clone(), coeff: c }).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_terms()).expect("plain data serializes")
    }

    /// Substitution induced by `f: k₊ → l₊`: `t_i ↦ t_{f(i)}`, with `t_0 = 1`.
    pub fn act(&self, f: &PointedMap) -> Result<Self> {
        if f.source() != self.level {
            return domain(format!("map starts at {}+, class lives at {}+", f.source(), self.level));
        }
        let mut out = Self::zero(f.target());
        for (e, &a) in &self.terms {
            out.add(IntegerEM.act(f, e), a);
        }
        Ok(out)
    }

    /// `(t₁ − 1)(t₂ − 1)`.
    pub fn witness() -> Self {
        Self::from_terms(2, [(vec![1, 1], 1), (vec![1, 0], -1), (vec![0, 1], -1)]).expect("level 2")
    }
}

impl Serialize for LaurentClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

/// `ρ = (α, β)`: the substitutions `P(t, 1)` and `P(1, t)`.
pub fn laurent_rho(p: &LaurentClass) -> Result<(LaurentClass, LaurentClass)> {
    let m = standard_maps();
    Ok((p.act(&m.alpha)?, p.act(&m.beta)?))
}

/// `P(t, t)`.
pub fn laurent_gamma(p: &LaurentClass) -> Result<LaurentClass> {
    p.act(&standard_maps().gamma)
}

/// `H̃ℤ∘Hℤ` as a Γ-set of Laurent classes.
#[derive(Debug, Clone, Copy, Default)]
pub struct LaurentFunctor;

impl GammaSet for LaurentFunctor {
    type Elem = LaurentClass;

    fn name(&self) -> String {
        "HZ~HZ".into()
    }

    fn base(&self, level: usize) -> LaurentClass {
        LaurentClass::zero(level)
    }

    fn act(&self, f: &PointedMap, x: &LaurentClass) -> LaurentClass {
        x.act(f).expect("caller passes an element of the source level")
    }

    fn enumeration_bound(&self, level: usize) -> Option<u128> {
        (level == 0).then_some(1)
    }

    fn elements(&self, level: usize) -> Result<Vec<LaurentClass>> {
        if level == 0 {
            Ok(vec![LaurentClass::zero(0)])
        } else {
            Err(GammaError::Unsupported("Laurent classes are infinite for k > 0".into()))
        }
    }

    fn sample<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> LaurentClass {
        let n = rng.gen_range(0..=4);
        let terms: Vec<_> =
            (0..n).map(|_| ((0..level).map(|_| rng.gen_range(-3..=3)).collect(), rng.gen_range(-5..=5))).collect();
        LaurentClass::from_terms(level, terms).expect("lengths match")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingVerdict {
    pub window: i64,
    pub pairs_checked: u64,
    pub rho_prime_injective: bool,
    pub rho_prime_surjective: bool,
    pub witness: LaurentClass,
    pub witness_rho_zero: bool,
    pub witness_gamma: LaurentClass,
}

impl PairingVerdict {
    /// `ρ′` bijective on the window while `ρ` collapses a nonzero class.
    pub fn passed(&self) -> bool {
        self.rho_prime_injective
            && self.rho_prime_surjective
            && !self.witness.is_zero()
            && self.witness_rho_zero
            && !self.witness_gamma.is_zero()
    }
}

/// `ρ′ = (Hℤ(α), Hℤ(β))` on `{|n|, |m| ≤ window}` and `ρ` on the witness class.
pub fn hz_pairing_injectivity(window: i64) -> Result<PairingVerdict> {
    let m = standard_maps();
    let mut seen = HashSet::new();
    let mut injective = true;
    let mut surjective = true;
    let mut pairs = 0;
    for a in -window..=window {
        for b in -window..=window {
            let x = vec![a, b];
            let image = (IntegerEM.act(&m.alpha, &x), IntegerEM.act(&m.beta, &x));
            injective &= seen.insert(image);
            pairs += 1;
        }
    }
    for a in -window..=window {
        for b in -window..=window {
            surjective &= seen.contains(&(vec![a], vec![b]));
        }
    }
    let witness = LaurentClass::witness();
    let (l, r) = laurent_rho(&witness)?;
    Ok(PairingVerdict {
        window,
        pairs_checked: pairs,
        rho_prime_injective: injective,
        rho_prime_surjective: surjective,
        witness_rho_zero: l.is_zero() && r.is_zero(),
        witness_gamma: laurent_gamma(&witness)?,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{extended_act, Extended};
    use crate::gamma::check_gamma_laws;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn witness_behaviour() {
        let w = LaurentClass::witness();
        let (a, b) = laurent_rho(&w).unwrap();
        assert!(a.is_zero() && b.is_zero());
        let g = laurent_gamma(&w).unwrap();
        assert_eq!(g, LaurentClass::from_terms(1, [(vec![2], 1), (vec![1], -2)]).unwrap());
        assert!(hz_pairing_injectivity(20).unwrap().passed());
    }

    #[test]
    fn json_round_trip() {
        let w = LaurentClass::witness();
        let s = w.to_json();
        assert_eq!(s, r#"[{"exponents":[0,1],"coeff":-1},{"exponents":[1,0],"coeff":-1},{"exponents":[1,1],"coeff":1}]"#);
        assert_eq!(LaurentClass::from_json(&s, None).unwrap(), w);
        assert!(LaurentClass::from_json("[]", None).is_err());
        assert_eq!(LaurentClass::from_json("[]", Some(2)).unwrap(), LaurentClass::zero(2));
        assert!(LaurentClass::from_terms(2, [(vec![1], 1)]).is_err());
    }

    #[test]
    fn constants_vanish() {
        let c = LaurentClass::from_terms(2, [(vec![0, 0], 7), (vec![1, -1], 2), (vec![1, -1], -2)]).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn functor_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(check_gamma_laws(&LaurentFunctor, 3, 40, &mut rng).passed());
    }

    /// The substitution action agrees with `M̃∘N` computed through extended elements.
    #[test]
    fn agrees_with_extension() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let k = rng.gen_range(1..=3);
            let l = rng.gen_range(0..=3);
            let p = LaurentFunctor.sample(k, &mut rng);
            let f = PointedMap::random(k, l, &mut rng);
            let points: Vec<Vec<i64>> = p.terms().keys().cloned().collect();
            let value: Vec<i64> = p.terms().values().copied().collect();
            let e = extended_act(&IntegerEM, &IntegerEM, &f, &Extended { points, value });
            let q = LaurentClass::from_terms(l, e.points.into_iter().zip(e.value)).unwrap();
            assert_eq!(q, p.act(&f).unwrap());
        }
    }
}
