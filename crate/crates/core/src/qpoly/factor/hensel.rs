//! Factorization of primitive squarefree integer polynomials: reduce modulo
//! a small prime, lift the modular factors with linear Hensel steps, then
//! recombine subsets of lifted factors by trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{is_zero_poly, to_bigints, Field, ModPoly};
use crate::qpoly::Poly;

const CANDIDATE_PRIMES_TRIED: usize = 5;

type ZPoly = Vec<BigInt>;

fn trim_z(v: &mut ZPoly) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn mod_pos(c: &BigInt, m: &BigInt) -> BigInt {
    c.mod_floor(m)
}

fn reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| mod_pos(c, m)).collect();
    trim_z(&mut out);
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half: BigInt = m >> 1;
    let mut out: ZPoly = a
        .iter()
        .map(|c| {
            let r = mod_pos(c, m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim_z(&mut out);
    out
}

fn mul_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(&mut out);
    out
}

fn sub_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim_z(&mut out);
    out
}

fn add_scaled(a: &[BigInt], b: &[u64], scale: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) + BigInt::from(b.get(i).copied().unwrap_or(0)) * scale)
        .collect();
    trim_z(&mut out);
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts `target ≡ ∏ factors (mod p)` to a factorization modulo `p^k`.
/// `target` is monic modulo `p^k`; each modular factor is monic.
fn lift_tree(target: &ZPoly, factors: &[ModPoly], field: Field, k: u32) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![target.clone()];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[ModPoly]| fs.iter().fold(vec![1u64], |acc, f| field.mul_poly(&acc, f));
    let g0 = prod(&factors[..mid]);
    let h0 = prod(&factors[mid..]);
    let (one, _, t) = field.gcd_ext(&g0, &h0);
    debug_assert_eq!(one, vec![1]);

    let p = BigInt::from(field.p);
    let mut g = to_bigints(&g0);
    let mut h = to_bigints(&h0);
    let mut pj = p.clone();
    for _ in 1..k {
        let next = &pj * &p;
        let err = reduce(&sub_z(target, &mul_z(&g, &h)), &next);
        if !is_zero_poly(&err) {
            let e: ZPoly = err.iter().map(|c| c / &pj).collect();
            let e = field.reduce(&e);
            let dg = field.rem(&field.mul_poly(&t, &e), &g0);
            let dh = field
                .divmod(&field.sub(&e, &field.mul_poly(&dg, &h0)), &g0)
                .0;
            g = add_scaled(&g, &dg, &pj);
            h = add_scaled(&h, &dh, &pj);
        }
        pj = next;
    }
    let mut out = lift_tree(&reduce(&g, &pj), &factors[..mid], field, k);
    out.extend(lift_tree(&reduce(&h, &pj), &factors[mid..], field, k));
    out
}

fn max_abs(f: &[BigInt]) -> BigInt {
    f.iter().map(|c| c.abs()).max().unwrap_or_default()
}

/// Chooses a prime for which `f` stays squarefree with nonvanishing leading
/// coefficient, preferring the one with the fewest modular factors.
fn choose_prime(f: &[BigInt]) -> (Field, Vec<ModPoly>) {
    let lc = f.last().expect("nonzero");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(Field, Vec<ModPoly>)> = None;
    let mut tried = 0;
    for p in (3u64..).step_by(2).filter(|&n| is_small_prime(n)) {
        let field = Field::new(p);
        if field.reduce_int(lc) == 0 {
            continue;
        }
        let fp = field.reduce(f);
        if !field.is_squarefree(&fp) {
            continue;
        }
        let factors = field.factor_squarefree(&field.monic(&fp), &mut rng);
        let better = best.as_ref().is_none_or(|(_, b)| factors.len() < b.len());
        if better {
            best = Some((field, factors));
        }
        tried += 1;
        if tried >= CANDIDATE_PRIMES_TRIED || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("some prime keeps a squarefree polynomial squarefree")
}

fn is_small_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Irreducible factors (primitive, positive leading coefficient) of a
/// primitive squarefree integer polynomial of positive degree.
pub(crate) fn factor_squarefree_integer(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let (field, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    let lc = f.last().expect("nonzero").clone();
    // Coefficient bound for any factor, times the leading coefficient, doubled.
    let sqrt_bound = BigInt::from(((n + 1) as f64).sqrt().ceil() as u64);
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * sqrt_bound * max_abs(f);
    let p = BigInt::from(field.p);
    let mut k = 1u32;
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus *= &p;
        k += 1;
    }

    let target = reduce(
        &f.iter()
            .map(|c| c * mod_inverse(&lc, &modulus))
            .collect::<Vec<_>>(),
        &modulus,
    );
    let lifted = lift_tree(&target, &modular, field, k);
    recombine(f, lifted, &modulus)
}

fn recombine(f: &[BigInt], mut lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut found = Vec::new();
    let mut rest = Poly::from_bigints(f);
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let lc_rest = rest.integer_primitive().1.last().cloned().expect("nonzero");
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let mut g = vec![lc_rest.clone()];
            for &i in &subset {
                g = reduce(&mul_z(&g, &lifted[i]), modulus);
            }
            let g = symmetric(&g, modulus);
            let candidate = Poly::from_bigints(&g);
            let (_, prim) = candidate.integer_primitive();
            let cand = Poly::from_bigints(&prim);
            if let Some(q) = rest.div_exact(&cand) {
                found.push(prim);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            if !next_combination(&mut subset, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    let (_, last) = rest.integer_primitive();
    if last.len() > 1 {
        found.push(last);
    }
    found
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
