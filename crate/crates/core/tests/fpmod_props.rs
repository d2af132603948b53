use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qx_core::fpmod::{
    canonical_decomposition, exponent_ideal, order_ideal, power_subgroup, primary_component,
    quotient, root, torsion, FPModule, Submodule,
};
use qx_core::qmatrix::PolyMatrix;
use qx_core::qpoly::{factor, MonicPrime, Poly};
use qx_core::random;

fn dense_module(rng: &mut ChaCha8Rng) -> FPModule {
    use rand::Rng;
    let n = rng.gen_range(1..=5);
    let k = rng.gen_range(0..=5);
    FPModule::new(n, random::matrix(rng, n, k, 3, 3, 0.4)).unwrap()
}

fn primes_of(g: &FPModule) -> Vec<MonicPrime> {
    let mut out: Vec<MonicPrime> = Vec::new();
    for d in g.torsion_factors() {
        for p in factor(&d).unwrap().primes() {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = dense_module(&mut rng);
        let dec = canonical_decomposition(&g);
        prop_assert_eq!(dec.torsion_factors.len() + dec.free_rank, dec.cyclic_generators().len());
        for _ in 0..100 {
            let e = random::element(&mut rng, &g, 3);
            let y = dec.to_decomposed(&e).unwrap();
            prop_assert_eq!(g.element(dec.from_decomposed(&y).unwrap()).unwrap(), e);
        }
    }

    #[test]
    fn order_ideal_is_exact(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random::module(&mut rng, 4, 0.2);
        let e = random::element(&mut rng, &g, 2);
        let ord = order_ideal(&g, &e).unwrap();
        if ord.is_zero() {
            prop_assert!(g.free_rank() > 0);
            let d = g.torsion_factors().last().cloned().unwrap_or_else(Poly::one);
            prop_assert!(!g.is_zero(&g.scale(&e, &d).unwrap()));
        } else {
            let beta = ord.generator();
            prop_assert!(g.is_zero(&g.scale(&e, beta).unwrap()));
            for p in factor(beta).unwrap().primes() {
                let smaller = beta.div_exact(p.as_poly()).unwrap();
                prop_assert!(!g.is_zero(&g.scale(&e, &smaller).unwrap()));
            }
        }
    }

    #[test]
    fn exponent_is_lcm_of_generator_orders(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random::module(&mut rng, 4, 0.2);
        let dec = canonical_decomposition(&g);
        let mut lcm = Poly::one();
        let mut unbounded = false;
        for c in dec.cyclic_generators() {
            let o = order_ideal(&g, &g.element(c).unwrap()).unwrap();
            if o.is_zero() {
                unbounded = true;
            } else {
                lcm = lcm.lcm(o.generator());
            }
        }
        let exp = exponent_ideal(&g);
        if unbounded {
            prop_assert!(exp.is_zero());
        } else {
            prop_assert_eq!(exp.generator(), &lcm);
        }
    }

    #[test]
    fn primary_decomposition(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random::module(&mut rng, 4, 0.2);
        let comps: Vec<Submodule> = primes_of(&g)
            .iter()
            .map(|p| primary_component(&g, p).unwrap())
            .collect();
        let sum = comps.iter().fold(Submodule::trivial(&g), |acc, c| acc.sum(c).unwrap());
        prop_assert_eq!(sum, torsion(&g));
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                prop_assert!(comps[i].intersection(&comps[j]).unwrap().is_trivial());
            }
        }
    }

    #[test]
    fn nested_submodules_and_quotients_stay_presented(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = random::module(&mut rng, 3, 0.3);
        for _ in 0..4 {
            let n = random::submodule(&mut rng, &g, 2);
            let sub = n.presentation().unwrap();
            prop_assert_eq!(sub.ngens(), n.gens().cols());
            let q = quotient(&g, &n).unwrap();
            let back = q.preimage(&Submodule::trivial(q.module())).unwrap();
            prop_assert_eq!(back, n);
            g = q.module().clone();
        }
    }

    #[test]
    fn roots_match_power_subgroups(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random::module(&mut rng, 3, 0.3);
        let alpha = random::pool_product(&mut rng, 2);
        let e = if rand::Rng::gen_bool(&mut rng, 0.5) {
            random::element(&mut rng, &g, 2)
        } else {
            let h = random::element(&mut rng, &g, 2);
            g.scale(&h, &alpha).unwrap()
        };
        let r = root(&g, &e, &alpha).unwrap();
        prop_assert_eq!(r.is_some(), power_subgroup(&g, &alpha).unwrap().contains(&e).unwrap());
        if let Some(h) = r {
            prop_assert_eq!(g.scale(&h, &alpha).unwrap(), e);
        }
    }

    #[test]
    fn nonzero_elements_lack_some_root(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random::module(&mut rng, 3, 0.3);
        let Some(e) = random::nonzero_element(&mut rng, &g, 2) else { return Ok(()); };
        // Kills the torsion part and outgrows every free coordinate.
        let dec = canonical_decomposition(&g);
        let y = dec.to_decomposed(&e).unwrap();
        let free_deg = y[dec.torsion_factors.len()..]
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .map_or(0, |d| d + 1);
        let beta = dec
            .torsion_factors
            .last()
            .cloned()
            .unwrap_or_else(Poly::one)
            * Poly::x().pow(free_deg as u32);
        prop_assert!(root(&g, &e, &beta).unwrap().is_none());
    }
}

fn torsion_quotient(g: &FPModule) -> FPModule {
    quotient(g, &torsion(g)).unwrap().module().clone()
}

#[test]
fn quotient_by_torsion_is_torsion_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let g = random::module(&mut rng, 4, 0.3);
        let q = torsion_quotient(&g);
        assert!(q.torsion_factors().is_empty());
        assert_eq!(q.free_rank(), g.free_rank());
    }
}

#[test]
fn presentation_of_whole_module_matches() {
    let g = FPModule::cyclic_sum(&[Poly::x().pow(2), Poly::zero()]);
    let whole = Submodule::new(&g, PolyMatrix::identity(2)).unwrap();
    let p = whole.presentation().unwrap();
    assert_eq!(p.torsion_factors(), g.torsion_factors());
    assert_eq!(p.free_rank(), 1);
}
