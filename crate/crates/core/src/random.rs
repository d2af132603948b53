//! Seeded random instances: polynomials, matrices, modules, prime sets and
//! separation problems. Shared by the test suites and the `generate` command.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::class2::{pairs, Class2Element};
use crate::fpmod::{FPModule, ModElement, Submodule};
use crate::qmatrix::PolyMatrix;
use crate::qpoly::{MonicPrime, Poly, PrimeSet};
use crate::quasicyclic::QuasiElement;
use crate::sep::isolator;

/// Small monic primes that random modules are built from.
pub fn prime_pool() -> Vec<MonicPrime> {
    [
        &[0, 1][..],
        &[-1, 1],
        &[1, 1],
        &[-2, 1],
        &[1, 0, 1],
        &[-2, 0, 1],
        &[1, 1, 1],
    ]
    .iter()
    .map(|c| MonicPrime::from_irreducible(Poly::from_ints(c)))
    .collect()
}

/// Degree at most `max_deg`, integer coefficients in `-bound..=bound`.
pub fn poly<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    Poly::from_ints(&c)
}

pub fn nonzero_poly<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> Poly {
    loop {
        let p = poly(rng, max_deg, bound);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Entries are zero with probability `zero_prob`, otherwise random.
pub fn matrix<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    max_deg: usize,
    bound: i64,
    zero_prob: f64,
) -> PolyMatrix {
    let entries = (0..rows * cols)
        .map(|_| {
            if rng.gen_bool(zero_prob) {
                Poly::zero()
            } else {
                poly(rng, max_deg, bound)
            }
        })
        .collect();
    PolyMatrix::new(rows, cols, entries).expect("entry count matches")
}

/// A product of at most `max_factors` pool primes (possibly 1).
pub fn pool_product<R: Rng>(rng: &mut R, max_factors: usize) -> Poly {
    let pool = prime_pool();
    let k = rng.gen_range(0..=max_factors);
    (0..k).fold(Poly::one(), |acc, _| {
        acc * pool.choose(rng).expect("pool nonempty").as_poly().clone()
    })
}

/// A diagonal presentation over pool primes, disguised by random unimodular
/// row and column operations. `free_prob` is the chance of a zero diagonal
/// entry (a free summand).
pub fn module<R: Rng>(rng: &mut R, max_gens: usize, free_prob: f64) -> FPModule {
    let n = rng.gen_range(1..=max_gens);
    let diag: Vec<Poly> = (0..n)
        .map(|_| {
            if rng.gen_bool(free_prob) {
                Poly::zero()
            } else {
                pool_product(rng, 3)
            }
        })
        .collect();
    let mut m = PolyMatrix::diagonal(n, n, &diag);
    if n > 1 {
        for _ in 0..n + 1 {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let q = if rng.gen_bool(0.5) {
                poly(rng, 0, 2)
            } else {
                Poly::from_ints(&[rng.gen_range(-1..=1), 1])
            };
            if rng.gen_bool(0.5) {
                m.add_row_multiple(i, j, &q);
            } else {
                m.add_col_multiple(i, j, &q);
            }
        }
    }
    FPModule::new(n, m).expect("square presentation")
}

/// A module with free rank zero.
pub fn torsion_module<R: Rng>(rng: &mut R, max_gens: usize) -> FPModule {
    module(rng, max_gens, 0.0)
}

pub fn element<R: Rng>(rng: &mut R, g: &FPModule, max_deg: usize) -> ModElement {
    let coords = (0..g.ngens()).map(|_| poly(rng, max_deg, 3)).collect();
    g.element(coords).expect("length matches")
}

pub fn nonzero_element<R: Rng>(rng: &mut R, g: &FPModule, max_deg: usize) -> Option<ModElement> {
    if g.is_trivial() {
        return None;
    }
    loop {
        let e = element(rng, g, max_deg);
        if !g.is_zero(&e) {
            return Some(e);
        }
    }
}

/// Generated by up to `max_gens` random elements.
pub fn submodule<R: Rng>(rng: &mut R, g: &FPModule, max_gens: usize) -> Submodule {
    let k = rng.gen_range(0..=max_gens);
    let elems: Vec<ModElement> = (0..k).map(|_| element(rng, g, 2)).collect();
    Submodule::from_elements(g, &elems).expect("elements belong to g")
}

/// A random nonempty prime set drawn from the pool, explicit or cofinite.
pub fn prime_set<R: Rng>(rng: &mut R) -> PrimeSet {
    let pool = prime_pool();
    let k = rng.gen_range(1..=3);
    let chosen: Vec<MonicPrime> = pool.choose_multiple(rng, k).cloned().collect();
    if rng.gen_bool(0.5) {
        PrimeSet::explicit(chosen).expect("nonempty")
    } else {
        PrimeSet::cofinite(chosen)
    }
}

/// `(G, H, g, ω)` with `H` ω′-isolated and `g ∉ H`.
pub fn separation_instance<R: Rng>(rng: &mut R) -> (FPModule, Submodule, ModElement, PrimeSet) {
    loop {
        let g = module(rng, 4, 0.25);
        let omega = prime_set(rng);
        let h0 = submodule(rng, &g, 2);
        let h = isolator(&g, &h0, &omega.complement()).expect("same ambient");
        for _ in 0..10 {
            let e = element(rng, &g, 2);
            if !h.contains(&e).expect("length matches") {
                return (g, h, e, omega);
            }
        }
    }
}

/// A class-2 element of rank `n` with exponents of degree at most `max_deg`.
pub fn class2<R: Rng>(rng: &mut R, n: usize, max_deg: usize) -> Class2Element {
    let gens = (0..n).map(|_| poly(rng, max_deg, 3)).collect();
    let comms = (0..pairs(n)).map(|_| poly(rng, max_deg, 3)).collect();
    Class2Element::new(gens, comms).expect("lengths match")
}

/// A quasicyclic element over a pool prime, level at most `max_level`.
pub fn quasi<R: Rng>(rng: &mut R, max_level: u32) -> QuasiElement {
    let pi = prime_pool().choose(rng).expect("pool nonempty").clone();
    let level = rng.gen_range(0..=max_level);
    let num = poly(rng, level as usize * pi.degree(), 5);
    QuasiElement::new(pi, level, num).expect("modulus nonzero")
}
