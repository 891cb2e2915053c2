use proptest::prelude::*;

use gamma_forge::arakelov::{
    h0_count, principal_divisor, principal_shift, section_member, seminorm_member, ArakelovDivisor, OpenSet,
    SeminormRing,
};
use gamma_forge::assembly::{
    assembly, assembly_hr_closed, sigma_r_monad, to_formal_sum, FormalSum, LaurentClass, SmashRep,
};
use gamma_forge::constructions::eilenberg_maclane;
use gamma_forge::krel::{act, canonical_form, enumerate_reduced, reduce, KRelation};
use gamma_forge::rational::{rat, Rational};
use gamma_forge::{compose, FiniteSemiring, PointedMap};

fn pointed_map(source: usize, target: usize) -> impl Strategy<Value = PointedMap> {
    prop::collection::vec(0..=target, source).prop_map(move |img| {
        PointedMap::new(source, target, std::iter::once(0).chain(img).collect()).unwrap()
    })
}

/// A `rows × cols` k-relation; zero rows and columns get a 1 on the diagonal.
fn krelation(k: usize, max_side: usize) -> impl Strategy<Value = KRelation> {
    (1..=max_side, 1..=max_side).prop_flat_map(move |(r, c)| {
        prop::collection::vec(0..=k, r * c).prop_map(move |mut e| {
            for i in 0..r {
                if (0..c).all(|j| e[i * c + j] == 0) {
                    e[i * c + i % c] = 1;
                }
            }
            for j in 0..c {
                if (0..r).all(|i| e[i * c + j] == 0) {
                    e[(j % r) * c + j] = 1;
                }
            }
            KRelation::new(k, r, c, e).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i128..=40, 1i128..=12).prop_map(|(n, d)| rat(n, d))
}

fn divisor() -> impl Strategy<Value = ArakelovDivisor> {
    (prop::collection::btree_map(prop::sample::select(vec![2u64, 3, 5, 7]), -2i64..=2, 0..3), 1i128..=12, 1i128..=6)
        .prop_map(|(finite, a, b)| ArakelovDivisor::new(finite, rat(a, b)).unwrap())
}

fn laurent(level: usize) -> impl Strategy<Value = LaurentClass> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, level), -5i64..=5), 0..5)
        .prop_map(move |t| LaurentClass::from_terms(level, t).unwrap())
}

proptest! {
    #[test]
    fn canonical_form_ignores_permutations(
        (c, rp, cp) in krelation(2, 4).prop_flat_map(|c| {
            let (r, k) = c.shape();
            (Just(c), permutation(r), permutation(k))
        })
    ) {
        let c = reduce(&c);
        let (r, k) = c.shape();
        let rp: Vec<usize> = rp.into_iter().filter(|&i| i < r).collect();
        let cp: Vec<usize> = cp.into_iter().filter(|&j| j < k).collect();
        prop_assert_eq!(canonical_form(&c).unwrap(), canonical_form(&c.permute(&rp, &cp)).unwrap());
    }

    #[test]
    fn reduce_is_idempotent(c in krelation(2, 5)) {
        let r = reduce(&c);
        prop_assert!(r.is_reduced());
        prop_assert_eq!(reduce(&r), r.clone());
        prop_assert_eq!(r.transpose().transpose(), r);
    }

    #[test]
    fn krelation_action_composes(
        c in krelation(3, 3),
        f in pointed_map(3, 2),
        g in pointed_map(2, 3),
    ) {
        let class = Some(canonical_form(&reduce(&c)).unwrap());
        let step = act(&g, &act(&f, &class).unwrap()).unwrap();
        prop_assert_eq!(step, act(&compose(&f, &g).unwrap(), &class).unwrap());
    }

    #[test]
    fn laurent_action_composes(p in laurent(3), f in pointed_map(3, 2), g in pointed_map(2, 2)) {
        let step = p.act(&f).unwrap().act(&g).unwrap();
        prop_assert_eq!(step, p.act(&compose(&f, &g).unwrap()).unwrap());
    }

    #[test]
    fn monad_unit_laws(n in 2usize..=6, terms in prop::collection::vec((1usize..=4, 0usize..6), 0..5)) {
        let ring = FiniteSemiring::zmod(n).unwrap();
        let monad = sigma_r_monad(ring.clone());
        let terms: Vec<_> = terms.into_iter().map(|(p, c)| (p, c % n)).collect();
        let s = FormalSum::from_terms(&ring, terms);
        prop_assert_eq!(monad.mu(&monad.unit(s.clone())), s.clone());
        prop_assert_eq!(monad.mu(&monad.fmap(&s, |x| Some(monad.unit(*x)))), s);
    }

    #[test]
    fn closed_assembly_matches_generic(
        (x, y, v) in (1usize..=2, 1usize..=2).prop_flat_map(|(x, y)| (Just(x), Just(y), pointed_map(x * y, 2))),
        xi in prop::collection::vec(0usize..3, 2),
        eta in prop::collection::vec(0usize..3, 2),
    ) {
        let ring = FiniteSemiring::zmod(3).unwrap();
        let h = eilenberg_maclane(ring.clone());
        let rep = SmashRep { x, y, v, xi: xi[..x].to_vec(), eta: eta[..y].to_vec() };
        let generic = to_formal_sum(&ring, &assembly(&h, &h, &rep).unwrap());
        prop_assert_eq!(generic, assembly_hr_closed(&ring, &rep).unwrap());
    }

    #[test]
    fn seminorm_membership_is_exact(
        values in prop::collection::vec(rational(), 0..4),
        bound in (0i128..=40, 1i128..=6).prop_map(|(n, d)| rat(n, d)),
        strict: bool,
    ) {
        // cross-multiplied integer comparison
        let den: i128 = values.iter().map(|v| *v.denom()).product::<i128>() * bound.denom();
        let scaled: i128 = values.iter().map(|v| (v.numer() * (den / v.denom())).abs()).sum();
        let limit = bound.numer() * (den / bound.denom());
        let expected = if strict { scaled < limit } else { scaled <= limit };
        prop_assert_eq!(seminorm_member(SeminormRing::Q, &values, &bound, strict), expected);
        let integral = values.iter().all(|v| v.is_integer());
        prop_assert_eq!(seminorm_member(SeminormRing::Z, &values, &bound, strict), expected && integral);
    }

    #[test]
    fn capacity_is_multiplicative(d in divisor(), e in divisor()) {
        prop_assert_eq!(d.add(&e).capacity(), d.capacity() * e.capacity());
    }

    #[test]
    fn principal_shift_preserves_sections(
        d in divisor(),
        q in rational().prop_filter("nonzero", |q| *q != rat(0, 1)),
        values in prop::collection::vec(rational(), 1..3),
        open in prop::sample::select(vec!["all", "-{inf}", "-{2}", "-{3,inf}"]),
    ) {
        let u: OpenSet = open.parse().unwrap();
        let shifted = d.add(&principal_divisor(&q).unwrap());
        let image = principal_shift(&q, &values).unwrap();
        prop_assert_eq!(section_member(&d, &u, &values, false), section_member(&shifted, &u, &image, false));
        prop_assert_eq!(h0_count(&d), h0_count(&shifted));
    }
}

#[test]
fn enumeration_grows_with_size() {
    let counts: Vec<usize> = (1..=4).map(|n| enumerate_reduced(1, n, n).unwrap().len()).collect();
    assert!(counts.windows(2).all(|w| w[0] < w[1]), "{counts:?}");
    assert_eq!(counts[0], 1);
}
