//! The seeded property suite behind `gamma-forge check`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arakelov::seminorm_closure_check;
use crate::assembly::{assembly_equivalence_check, eq13_check, monad_to_salgebra, sigma_r_monad, LaurentFunctor};
use crate::constructions::{eilenberg_maclane, IntegerEM, PowerSetAlgebra};
use crate::error::Result;
use crate::gamma::{check_gamma_laws, check_salgebra_laws, standard_maps, GammaSet, LawReport, Sphere};
use crate::krel::KRelationFunctor;
use crate::quotient::{quotient_algebra, UnitSubgroup};
use crate::rays::ray_algebra;
use crate::semiring::FiniteSemiring;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteEntry {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub exhaustive: bool,
    pub counterexample: Option<String>,
}

impl SuiteEntry {
    fn from_report(name: String, r: &LawReport) -> Self {
        SuiteEntry {
            name,
            passed: r.passed(),
            cases: r.outcomes.iter().map(|o| o.cases).sum(),
            exhaustive: r.outcomes.iter().all(|o| o.exhaustive),
            counterexample: r.first_failure().map(|o| format!("{}: {}", o.law, o.counterexample.clone().unwrap_or_default())),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// `H𝔹(γ){1,2} = {1}` while `H𝔽₂(γ)(1,1)` is the base point.
pub fn parity_divergence() -> (Vec<usize>, Vec<usize>) {
    let gamma = standard_maps().gamma;
    let hb = PowerSetAlgebra.act(&gamma, &[1, 2].into());
    let hf2 = eilenberg_maclane(FiniteSemiring::f2()).act(&gamma, &vec![1, 1]);
    (hb.into_iter().collect(), hf2)
}

/// The subjects of the Γ-set law checks, with their maximal level.
fn gamma_subjects(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<SuiteEntry>> {
    let mut out = Vec::new();
    let mut push = |name: String, r: LawReport| out.push(SuiteEntry::from_report(name, &r));
    push("gamma laws: S".into(), check_gamma_laws(&Sphere, 3, samples, rng));
    push("gamma laws: HB (power sets)".into(), check_gamma_laws(&PowerSetAlgebra, 3, samples, rng));
    let rings = [
        FiniteSemiring::boolean(),
        FiniteSemiring::f2(),
        FiniteSemiring::zmod(2)?,
        FiniteSemiring::zmod(3)?,
        FiniteSemiring::zmod(4)?,
    ];
    for ring in rings {
        let h = eilenberg_maclane(ring);
        push(format!("gamma laws: {}", h.name()), check_gamma_laws(&h, 3, samples, rng));
    }
    for (ring, units) in [
        (FiniteSemiring::zmod(3)?, vec![1, 2]),
        (FiniteSemiring::zmod(5)?, vec![1, 2, 3, 4]),
        (FiniteSemiring::zmod(7)?, vec![1, 2, 3, 4, 5, 6]),
        (FiniteSemiring::zmod(5)?, vec![1, 4]),
    ] {
        let q = quotient_algebra(UnitSubgroup::new(ring, units)?);
        push(format!("gamma laws: {}", q.name()), check_gamma_laws(&q, 3, samples, rng));
    }
    push("gamma laws: HZ".into(), check_gamma_laws(&IntegerEM, 3, samples, rng));
    push("gamma laws: rays".into(), check_gamma_laws(&ray_algebra(), 3, samples, rng));
    push("gamma laws: R+ (k <= 2)".into(), check_gamma_laws(&KRelationFunctor, 2, samples, rng));
    push("gamma laws: HZ~HZ".into(), check_gamma_laws(&LaurentFunctor, 3, samples, rng));
    Ok(out)
}

/// Runs every randomized law check with one seed; output depends only on it.
pub fn run_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = 60;
    let mut entries = gamma_subjects(&mut rng, samples)?;

    let z3 = eilenberg_maclane(FiniteSemiring::zmod(3)?);
    let sigma = monad_to_salgebra(sigma_r_monad(FiniteSemiring::zmod(3)?));
    let algebras = [
        ("S-algebra laws: S", check_salgebra_laws(&Sphere, 3, samples, &mut rng)),
        ("S-algebra laws: HB", check_salgebra_laws(&PowerSetAlgebra, 3, samples, &mut rng)),
        ("S-algebra laws: HZ/3", check_salgebra_laws(&z3, 2, samples, &mut rng)),
        ("S-algebra laws: HZ", check_salgebra_laws(&IntegerEM, 3, samples, &mut rng)),
        ("S-algebra laws: Sigma_Z/3", check_salgebra_laws(&sigma, 2, samples, &mut rng)),
    ];
    entries.extend(algebras.iter().map(|(n, r)| SuiteEntry::from_report((*n).into(), r)));

    for ring in [FiniteSemiring::boolean(), FiniteSemiring::zmod(10)?] {
        let r = eq13_check(&sigma_r_monad(ring.clone()), 200, &mut rng);
        entries.push(SuiteEntry::from_report(format!("monad laws: Sigma_{}", ring.name()), &r));
    }
    for ring in [FiniteSemiring::boolean(), FiniteSemiring::zmod(2)?, FiniteSemiring::zmod(3)?] {
        let h = eilenberg_maclane(ring);
        let o = assembly_equivalence_check(&h, &h, 200, &mut rng)?;
        let r = LawReport { subject: h.name(), max_level: 2, outcomes: vec![o] };
        entries.push(SuiteEntry::from_report(format!("assembly equivalence: {}", h.name()), &r));
    }
    let r = seminorm_closure_check(200, &mut rng);
    entries.push(SuiteEntry::from_report("seminorm closure: ||HQ||_1".into(), &r));

    let (hb, hf2) = parity_divergence();
    entries.push(SuiteEntry {
        name: "HB vs HF2 on gamma{1,2}".into(),
        passed: hb == vec![1] && hf2 == vec![0],
        cases: 1,
        exhaustive: true,
        counterexample: None,
    });
    Ok(SuiteReport { seed, entries })
}
