//! `Hℚ/ℚ₊ˣ`: at level `k`, the half lines through the origin of `ℚ^k`, each
//! stored as its primitive integer direction.
//!
//! The three maps `α, β, γ: 2₊ → 1₊` see a ray `z = (a, b)` only through
//! `sgn a`, `sgn b` and `sgn (a + b)`. Every sign triple realised by some
//! rational `(a, b)` is already realised with `a, b ∈ {-2, …, 2}`: equal or zero
//! signs force `sgn (a + b)`, and opposite signs give all three outcomes via
//! `(2, -1)`, `(1, -1)`, `(1, -2)` and their negatives. Hyperaddition on the
//! level-1 rays is therefore an enumeration over that box.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rand::Rng;
use serde::Serialize;

use crate::error::{GammaError, Result};
use crate::gamma::{smash_index, standard_maps, GammaSet, PointedMap, SAlgebra};
use crate::rational::{lcm_of_denominators, Rational};

/// Primitive integer direction; the all-zero vector is the degenerate ray `{0}`.
pub type Ray = Vec<i64>;

/// The ray through a rational vector.
pub fn ray_normalize(v: &[Rational]) -> Ray {
    let l = lcm_of_denominators(v);
    let ints: Vec<i128> = v.iter().map(|q| q.numer() * (l / q.denom())).collect();
    primitive(&ints)
}

/// The ray through an integer vector.
pub fn primitive(v: &[i128]) -> Ray {
    let g = v.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return vec![0; v.len()];
    }
    v.iter().map(|&x| i64::try_from(x / g).expect("ray coordinate fits in i64")).collect()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RayAlgebra;

pub fn ray_algebra() -> RayAlgebra {
    RayAlgebra
}

impl GammaSet for RayAlgebra {
    type Elem = Ray;

    fn name(&self) -> String {
        "HQ/Q+".into()
    }

    fn base(&self, level: usize) -> Ray {
        vec![0; level]
    }

    fn act(&self, f: &PointedMap, x: &Ray) -> Ray {
        let mut out = vec![0i128; f.target()];
        for (i, &a) in x.iter().enumerate() {
            let y = f.apply(i + 1);
            if y != 0 {
                out[y - 1] += a as i128;
            }
        }
        primitive(&out)
    }

    fn enumeration_bound(&self, level: usize) -> Option<u128> {
        (level == 0).then_some(1)
    }

    fn elements(&self, level: usize) -> Result<Vec<Ray>> {
        if level == 0 {
            Ok(vec![vec![]])
        } else {
            Err(GammaError::Unsupported("rays in Q^k are not enumerable for k > 0".into()))
        }
    }

    fn sample<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> Ray {
        let v: Vec<i128> = (0..level).map(|_| rng.gen_range(-6..=6)).collect();
        primitive(&v)
    }
}

impl SAlgebra for RayAlgebra {
    fn mul(&self, k: usize, x: &Ray, l: usize, y: &Ray) -> Ray {
        let mut out = vec![0i128; k * l];
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                out[smash_index(l, i + 1, j + 1) - 1] = a as i128 * b as i128;
            }
        }
        primitive(&out)
    }

    fn unit(&self, k: usize, j: usize) -> Ray {
        let mut v = vec![0; k];
        if j > 0 {
            v[j - 1] = 1;
        }
        v
    }
}

/// `x ⊕ y` on level-1 rays, searching `z = (a, b)` with `|a|, |b| ≤ radius`.
/// Any `radius ≥ 2` gives the complete answer.
pub fn ray_hyper_add(x: &Ray, y: &Ray, radius: i64) -> BTreeSet<Ray> {
    let a = RayAlgebra;
    let m = standard_maps();
    let mut out = BTreeSet::new();
    for p in -radius..=radius {
        for q in -radius..=radius {
            let z = primitive(&[p as i128, q as i128]);
            if &a.act(&m.alpha, &z) == x && &a.act(&m.beta, &z) == y {
                out.insert(a.act(&m.gamma, &z));
            }
        }
    }
    out
}

/// Hyperaddition and multiplication on `{-1, 0, 1}` (the level-1 rays).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignTable {
    pub add: BTreeMap<i64, BTreeMap<i64, BTreeSet<i64>>>,
    pub mul: BTreeMap<i64, BTreeMap<i64, i64>>,
}

impl SignTable {
    pub fn sum(&self, x: i64, y: i64) -> &BTreeSet<i64> {
        &self.add[&x][&y]
    }

    pub fn product(&self, x: i64, y: i64) -> i64 {
        self.mul[&x][&y]
    }
}

pub fn sign_hyperfield_table() -> SignTable {
    let a = RayAlgebra;
    let signs = [-1i64, 0, 1];
    let mut add = BTreeMap::new();
    let mut mul = BTreeMap::new();
    for x in signs {
        let mut add_row = BTreeMap::new();
        let mut mul_row = BTreeMap::new();
        for y in signs {
            add_row.insert(y, ray_hyper_add(&vec![x], &vec![y], 2).into_iter().map(|r| r[0]).collect());
            mul_row.insert(y, a.mul(1, &vec![x], 1, &vec![y])[0]);
        }
        add.insert(x, add_row);
        mul.insert(x, mul_row);
    }
    SignTable { add, mul }
}

/// How much of `H𝔹(k₊)` the map `Hρ: Hℚ₊/ℚ₊ˣ → H𝔹` reaches from the rays with
/// non-negative coordinates at most `coord_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoImage {
    pub level: usize,
    pub rays_seen: usize,
    pub image_size: usize,
    pub target_size: u128,
}

pub fn h_rho_image(level: usize, coord_bound: u32) -> RhoImage {
    let mut rays = BTreeSet::new();
    let mut image = BTreeSet::new();
    let n = coord_bound as usize + 1;
    for v in crate::constructions::tuples(n, level) {
        let ray = primitive(&v.iter().map(|&x| x as i128).collect::<Vec<_>>());
        image.insert(ray.iter().map(|&x| usize::from(x != 0)).collect::<Vec<_>>());
        rays.insert(ray);
    }
    RhoImage { level, rays_seen: rays.len(), image_size: image.len(), target_size: 1u128 << level }
}
