//! Dense polynomials over a small prime field `F_p` (p < 2^31), with
//! distinct-degree and equal-degree (Cantor–Zassenhaus) splitting.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

pub(crate) type ModPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31));
        Field { p }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        let mut base = a % self.p;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn reduce_int(&self, c: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((c % &m) + &m) % &m;
        r.to_u64().expect("residue fits in u64")
    }

    pub fn reduce(&self, f: &[BigInt]) -> ModPoly {
        let mut out: ModPoly = f.iter().map(|c| self.reduce_int(c)).collect();
        trim(&mut out);
        out
    }

    #[cfg(test)]
    pub fn add(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        let mut out: ModPoly = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        trim(&mut out);
        out
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        let mut out: ModPoly = (0..n)
            .map(|i| {
                (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul_poly(&self, a: &[u64], b: &[u64]) -> ModPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn scale(&self, a: &[u64], c: u64) -> ModPoly {
        let mut out: ModPoly = a.iter().map(|&x| self.mul(x, c)).collect();
        trim(&mut out);
        out
    }

    pub fn monic(&self, a: &[u64]) -> ModPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    /// Division with remainder; `b` must be nonzero.
    pub fn divmod(&self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly) {
        let db = b.len() - 1;
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let lc_inv = self.inv(b[db]);
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], lc_inv);
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + self.p - self.mul(c, bj)) % self.p;
            }
            q[k] = c;
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> ModPoly {
        self.divmod(a, b).1
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn gcd_ext(&self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly, ModPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (ModPoly, ModPoly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divmod(&r0, &r1);
            let s = self.sub(&s0, &self.mul_poly(&q, &s1));
            let t = self.sub(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("not both zero"));
        (
            self.scale(&r0, inv),
            self.scale(&s0, inv),
            self.scale(&t0, inv),
        )
    }

    pub fn derivative(&self, a: &[u64]) -> ModPoly {
        let mut out: ModPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        trim(&mut out);
        out
    }

    pub fn powmod(&self, base: &[u64], exp: &BigUint, modulus: &[u64]) -> ModPoly {
        let mut acc: ModPoly = vec![1];
        let base = self.rem(base, modulus);
        for i in (0..exp.bits()).rev() {
            acc = self.rem(&self.mul_poly(&acc, &acc), modulus);
            if exp.bit(i) {
                acc = self.rem(&self.mul_poly(&acc, &base), modulus);
            }
        }
        self.rem(&acc, modulus)
    }

    pub fn is_squarefree(&self, f: &[u64]) -> bool {
        let d = self.derivative(f);
        !d.is_empty() && self.gcd(f, &d).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs (product of all irreducible factors of degree d, d).
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(ModPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x: ModPoly = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                out.push((rest.clone(), rest.len() - 1));
                break;
            }
            h = self.powmod(&h, &p, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if g.len() > 1 {
                rest = self.divmod(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a monic squarefree product of degree-`d` irreducibles (odd p).
    pub fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R) -> Vec<ModPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) >> 1;
        loop {
            let a: ModPoly = {
                let mut v: ModPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                trim(&mut v);
                v
            };
            if a.len() <= 1 {
                continue;
            }
            let g = self.gcd(f, &a);
            let split = if g.len() > 1 && g.len() < f.len() {
                g
            } else {
                let b = self.powmod(&a, &e, f);
                let g = self.gcd(f, &self.sub(&b, &[1]));
                if g.len() > 1 && g.len() < f.len() {
                    g
                } else {
                    continue;
                }
            };
            let other = self.divmod(f, &split).0;
            let mut out = self.equal_degree(&split, d, rng);
            out.extend(self.equal_degree(&other, d, rng));
            return out;
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<ModPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort();
        out
    }
}

pub(crate) fn trim(v: &mut ModPoly) {
    while v.last().is_some_and(|&c| c == 0) {
        v.pop();
    }
}

pub(crate) fn to_bigints(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

pub(crate) fn is_zero_poly(a: &[BigInt]) -> bool {
    a.iter().all(Zero::is_zero)
}
