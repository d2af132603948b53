//! Complete factorization over `Q` into monic irreducibles.
//!
//! Squarefree decomposition (Yun) runs over `Q`; each squarefree part is
//! cleared of denominators and factored over `Z` by modular factorization,
//! Hensel lifting and factor recombination.

mod hensel;
mod modp;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::{MonicPrime, Poly, Rational};

/// `unit * ∏ prime^multiplicity`, primes distinct and ordered by degree then
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    #[serde(with = "crate::json::rational_str")]
    pub unit: Rational,
    pub factors: Vec<(MonicPrime, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (p, e)| {
                acc * p.as_poly().pow(*e)
            })
    }

    pub fn primes(&self) -> impl Iterator<Item = &MonicPrime> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn multiplicity(&self, prime: &MonicPrime) -> u32 {
        self.factors
            .iter()
            .find(|(p, _)| p == prime)
            .map_or(0, |(_, e)| *e)
    }
}

/// Squarefree decomposition of a monic polynomial: `(a_i, i)` with
/// `f = ∏ a_i^i`, each `a_i` monic squarefree and pairwise coprime.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_unit() {
        let a = b.gcd(&d);
        let b_next = b.div_exact(&a).expect("gcd divides");
        let c_next = d.div_exact(&a).expect("gcd divides");
        d = &c_next - &b_next.derivative();
        if !a.is_unit() {
            out.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    out
}

pub fn factor(a: &Poly) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = a.leading_coeff();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(a) {
        let (_, prim) = part.integer_primitive();
        for g in hensel::factor_squarefree_integer(&prim) {
            let monic = Poly::from_bigints(&g).monic();
            factors.push((MonicPrime::from_irreducible(monic), mult));
        }
    }
    factors.sort_by(|(p, _), (q, _)| p.cmp(q));
    Ok(Factorization { unit, factors })
}
