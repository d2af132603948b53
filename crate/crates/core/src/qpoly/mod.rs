//! Exact arithmetic in `Q[x]`: polynomials, monic primes, prime sets,
//! factorization and binomial coefficients.

mod factor;
mod parse;
mod poly;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use factor::{factor, squarefree_decomposition, Factorization};
pub use parse::parse_poly;
pub use poly::Poly;

pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A monic irreducible polynomial of positive degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonicPrime(Poly);

impl MonicPrime {
    /// Normalizes to the monic associate and checks irreducibility.
    pub fn new(p: &Poly) -> Result<Self> {
        if p.is_zero() || p.is_unit() {
            return Err(Error::NotPrime(p.to_string()));
        }
        let f = factor(p)?;
        match f.factors.as_slice() {
            [(q, 1)] => Ok(q.clone()),
            _ => Err(Error::NotPrime(p.to_string())),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        MonicPrime::new(&parse_poly(s)?)
    }

    pub(crate) fn from_irreducible(p: Poly) -> Self {
        debug_assert!(p.is_monic() && p.degree().unwrap_or(0) >= 1);
        MonicPrime(p)
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().expect("positive degree")
    }

    pub fn pow(&self, e: u32) -> Poly {
        self.0.pow(e)
    }

    /// Largest `e` with `self^e | a`; `a` must be nonzero.
    pub fn valuation(&self, a: &Poly) -> u32 {
        debug_assert!(!a.is_zero());
        let mut e = 0;
        let mut rest = a.clone();
        while let Some(q) = rest.div_exact(&self.0) {
            rest = q;
            e += 1;
        }
        e
    }
}

impl fmt::Display for MonicPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for MonicPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonicPrime({})", self.0)
    }
}

impl Serialize for MonicPrime {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for MonicPrime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        MonicPrime::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeSetMode {
    Explicit,
    Cofinite,
}

/// A set of monic primes: either the listed primes, or every monic prime
/// except the listed ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PrimeSetRepr")]
pub struct PrimeSet {
    mode: PrimeSetMode,
    primes: BTreeSet<MonicPrime>,
}

#[derive(Deserialize)]
struct PrimeSetRepr {
    mode: PrimeSetMode,
    primes: Vec<MonicPrime>,
}

impl TryFrom<PrimeSetRepr> for PrimeSet {
    type Error = Error;
    fn try_from(r: PrimeSetRepr) -> Result<Self> {
        match r.mode {
            PrimeSetMode::Explicit => PrimeSet::explicit(r.primes),
            PrimeSetMode::Cofinite => Ok(PrimeSet::cofinite(r.primes)),
        }
    }
}

impl PrimeSet {
    pub fn explicit<I: IntoIterator<Item = MonicPrime>>(primes: I) -> Result<Self> {
        let primes: BTreeSet<_> = primes.into_iter().collect();
        if primes.is_empty() {
            return Err(Error::EmptyPrimeSet);
        }
        Ok(PrimeSet {
            mode: PrimeSetMode::Explicit,
            primes,
        })
    }

    /// All monic primes except `excluded`.
    pub fn cofinite<I: IntoIterator<Item = MonicPrime>>(excluded: I) -> Self {
        PrimeSet {
            mode: PrimeSetMode::Cofinite,
            primes: excluded.into_iter().collect(),
        }
    }

    pub fn all() -> Self {
        PrimeSet::cofinite([])
    }

    /// Parses prime strings; each must be irreducible (normalized to monic).
    pub fn from_strs(mode: PrimeSetMode, primes: &[&str]) -> Result<Self> {
        let primes = primes
            .iter()
            .map(|s| MonicPrime::parse(s))
            .collect::<Result<Vec<_>>>()?;
        match mode {
            PrimeSetMode::Explicit => PrimeSet::explicit(primes),
            PrimeSetMode::Cofinite => Ok(PrimeSet::cofinite(primes)),
        }
    }

    pub fn mode(&self) -> PrimeSetMode {
        self.mode
    }

    pub fn listed(&self) -> &BTreeSet<MonicPrime> {
        &self.primes
    }

    /// Swaps the mode and keeps the listed primes. The complement of the set
    /// of all primes is the (explicit) empty set.
    pub fn complement(&self) -> PrimeSet {
        PrimeSet {
            mode: match self.mode {
                PrimeSetMode::Explicit => PrimeSetMode::Cofinite,
                PrimeSetMode::Cofinite => PrimeSetMode::Explicit,
            },
            primes: self.primes.clone(),
        }
    }

    pub fn contains(&self, p: &MonicPrime) -> bool {
        let listed = self.primes.contains(p);
        match self.mode {
            PrimeSetMode::Explicit => listed,
            PrimeSetMode::Cofinite => !listed,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.mode == PrimeSetMode::Explicit && self.primes.is_empty()
    }

    /// A deterministic representative prime of the set. Explicit sets give
    /// their least prime; cofinite sets give the first of
    /// `x, x - 1, x + 1, x - 2, x + 2, ...` that is not excluded.
    pub fn first_prime(&self) -> Option<MonicPrime> {
        match self.mode {
            PrimeSetMode::Explicit => self.primes.iter().next().cloned(),
            PrimeSetMode::Cofinite => (0i64..)
                .flat_map(|n| if n == 0 { vec![0] } else { vec![n, -n] })
                .map(|c| MonicPrime(Poly::from_ints(&[-c, 1])))
                .find(|p| !self.primes.contains(p)),
        }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        match self.mode {
            PrimeSetMode::Explicit => write!(f, "{{{}}}", list.join(", ")),
            PrimeSetMode::Cofinite if list.is_empty() => f.write_str("all primes"),
            PrimeSetMode::Cofinite => write!(f, "all primes except {{{}}}", list.join(", ")),
        }
    }
}

/// `alpha (alpha - 1) ... (alpha - k + 1) / k!`.
pub fn binom(alpha: &Poly, k: u32) -> Poly {
    let mut num = Poly::one();
    let mut fact = BigInt::one();
    for i in 0..k {
        num = &num * &(alpha - &Poly::from_int(i64::from(i)));
        fact *= BigInt::from(i + 1);
    }
    num.scale(&Rational::new(BigInt::one(), fact))
}

/// True iff `alpha` is a non-unit whose monic prime factors all lie in `omega`.
pub fn is_omega_member(alpha: &Poly, omega: &PrimeSet) -> Result<bool> {
    if alpha.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if alpha.is_unit() {
        return Ok(false);
    }
    Ok(factor(alpha)?.primes().all(|p| omega.contains(p)))
}

/// Splits a nonzero `a` into `(u, v)` with `a = u * v`, `u` monic and built
/// from the primes of `omega`, `v` free of them.
pub fn omega_part(a: &Poly, omega: &PrimeSet) -> Result<(Poly, Poly)> {
    let f = factor(a)?;
    let mut u = Poly::one();
    for (p, e) in &f.factors {
        if omega.contains(p) {
            u = u * p.pow(*e);
        }
    }
    let v = a.div_exact(&u).expect("omega part divides");
    Ok((u, v))
}
