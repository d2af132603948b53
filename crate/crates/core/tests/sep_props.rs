use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qx_core::fpmod::{order_ideal, primary_component, quotient, FPModule, ModElement, Submodule};
use qx_core::qmatrix::PolyMatrix;
use qx_core::qpoly::{factor, is_omega_member, MonicPrime, Poly, PrimeSet};
use qx_core::random;
use qx_core::sep::{is_isolated, is_residually_ftomega, isolator, separate, verify_witness};
use qx_core::Error;

/// A random `(G, H, ω)` with `H` not ω′-isolated, over explicit ω.
fn non_isolated_instance(rng: &mut ChaCha8Rng) -> (FPModule, Submodule, PrimeSet) {
    loop {
        let g = random::torsion_module(rng, 2);
        let omega = PrimeSet::explicit(
            random::prime_pool()
                .into_iter()
                .filter(|_| rng.gen_bool(0.4))
                .collect::<Vec<_>>(),
        );
        let Ok(omega) = omega else { continue };
        let h = random::submodule(rng, &g, 1);
        if !is_isolated(&g, &h, &omega.complement()).unwrap().isolated {
            return (g, h, omega);
        }
    }
}

/// Every `N = ⟨π_i^{e_i}·e_i⟩` with `π_i ∈ ω`, `e_i ≤ 3`.
fn candidate_kernels(g: &FPModule, omega: &PrimeSet) -> Vec<Submodule> {
    let n = g.ngens();
    let mut choices: Vec<Poly> = vec![Poly::one()];
    for p in omega.listed() {
        for e in 1..=3 {
            choices.push(p.pow(e));
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let diag: Vec<Poly> = idx.iter().map(|&i| choices[i].clone()).collect();
        out.push(Submodule::new(g, PolyMatrix::diagonal(n, n, &diag)).unwrap());
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < choices.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
    }
}

fn all_primes_in(factors: &[Poly], omega: &PrimeSet) -> bool {
    factors
        .iter()
        .all(|d| factor(d).unwrap().primes().all(|p| omega.contains(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn witnesses_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h, e, omega) = random::separation_instance(&mut rng);
        let w = separate(&g, &h, &e, &omega).unwrap();
        prop_assert!(verify_witness(&w));
    }

    #[test]
    fn non_isolated_subgroups_cannot_be_separated(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h, omega) = non_isolated_instance(&mut rng);
        let probe = random::element(&mut rng, &g, 2);
        let e = if h.contains(&probe).unwrap() {
            is_isolated(&g, &h, &omega.complement()).unwrap().violating_element.unwrap()
        } else {
            probe
        };
        let Err(Error::NotIsolated(report)) = separate(&g, &h, &e, &omega) else {
            return Err(TestCaseError::fail("expected NotIsolated"));
        };
        let v = report.violating_element.unwrap();
        let lambda = report.violating_exponent.unwrap();
        prop_assert!(!h.contains(&v).unwrap());
        prop_assert!(h.contains(&g.scale(&v, &lambda).unwrap()).unwrap());
        prop_assert!(is_omega_member(&lambda, &omega.complement()).unwrap());
        for n in candidate_kernels(&g, &omega) {
            let fq = quotient(&g, &n).unwrap().module().clone();
            if fq.free_rank() == 0 && all_primes_in(&fq.torsion_factors(), &omega) {
                prop_assert!(h.sum(&n).unwrap().contains(&v).unwrap());
            }
        }
    }

    #[test]
    fn residual_iff_every_element_separates(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random::module(&mut rng, 3, 0.25);
        let omega = random::prime_set(&mut rng);
        let h = random::submodule(&mut rng, &g, 1);
        let q = quotient(&g, &h).unwrap();
        let (residual, evidence) = is_residually_ftomega(q.module(), &omega).unwrap();
        let mut samples: Vec<ModElement> = (0..10).map(|_| random::element(&mut rng, &g, 2)).collect();
        if let Some(x) = evidence {
            samples.push(q.lift(&x).unwrap());
        }
        let mut all_separate = true;
        for e in samples.iter().filter(|e| !h.contains(e).unwrap()) {
            match separate(&g, &h, e, &omega) {
                Ok(w) => prop_assert!(verify_witness(&w)),
                Err(Error::NotIsolated(_)) => all_separate = false,
                Err(err) => return Err(TestCaseError::fail(err.to_string())),
            }
        }
        prop_assert_eq!(residual, all_separate);
    }

    #[test]
    fn isolator_is_a_closure(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random::module(&mut rng, 3, 0.25);
        let sigma = random::prime_set(&mut rng);
        let h1 = random::submodule(&mut rng, &g, 2);
        let h2 = h1.sum(&random::submodule(&mut rng, &g, 1)).unwrap();
        let i1 = isolator(&g, &h1, &sigma).unwrap();
        let i2 = isolator(&g, &h2, &sigma).unwrap();
        prop_assert!(h1.is_subset_of(&i1).unwrap());
        prop_assert!(i1.is_subset_of(&i2).unwrap());
        prop_assert_eq!(isolator(&g, &i1, &sigma).unwrap(), i1.clone());
        prop_assert!(is_isolated(&g, &i1, &sigma).unwrap().isolated);
    }

    #[test]
    fn prime_power_witnesses_respect_the_primary_exponent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h, e, omega) = random::separation_instance(&mut rng);
        let q = quotient(&g, &h).unwrap();
        let ord = order_ideal(q.module(), &q.project(&e).unwrap()).unwrap();
        if ord.is_zero() {
            return Ok(());
        }
        let primes: Vec<MonicPrime> = factor(ord.generator()).unwrap().primes().cloned().collect();
        let [pi] = primes.as_slice() else { return Ok(()); };
        let comp = primary_component(q.module(), pi).unwrap().presentation().unwrap();
        let t = comp.torsion_factors().last().map_or(0, |d| pi.valuation(d));
        let w = separate(&g, &h, &e, &omega).unwrap();
        let exp = w.quotient_factors.last().cloned().unwrap_or_else(Poly::one);
        prop_assert!(pi.pow(t).rem(&exp).unwrap().is_zero());
    }
}
