//! The π-quasicyclic group `Q(π^∞)`, modelled as fractions `f/π^k`
//! modulo `Q[x]`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::{MonicPrime, Poly};

/// The class of `num/π^level`, kept reduced: `deg num < level·deg π` and
/// `π ∤ num` unless the element is zero, which is `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuasiRepr")]
pub struct QuasiElement {
    pi: MonicPrime,
    level: u32,
    num: Poly,
}

#[derive(Deserialize)]
struct QuasiRepr {
    pi: MonicPrime,
    level: u32,
    num: Poly,
}

impl TryFrom<QuasiRepr> for QuasiElement {
    type Error = Error;
    fn try_from(r: QuasiRepr) -> Result<Self> {
        QuasiElement::new(r.pi, r.level, r.num)
    }
}

impl QuasiElement {
    pub fn new(pi: MonicPrime, level: u32, num: Poly) -> Result<Self> {
        let modulus = pi.pow(level);
        let num = num.rem(&modulus)?;
        Ok(Self::normalized(pi, level, num))
    }

    fn normalized(pi: MonicPrime, mut level: u32, mut num: Poly) -> Self {
        if num.is_zero() {
            level = 0;
        }
        while level > 0 {
            match num.div_exact(pi.as_poly()) {
                Some(q) => {
                    num = q;
                    level -= 1;
                }
                None => break,
            }
        }
        QuasiElement { pi, level, num }
    }

    pub fn zero(pi: MonicPrime) -> Self {
        QuasiElement {
            pi,
            level: 0,
            num: Poly::zero(),
        }
    }

    /// `g_k = 1/π^k`.
    pub fn generator(pi: MonicPrime, k: u32) -> Self {
        if k == 0 {
            return Self::zero(pi);
        }
        QuasiElement {
            pi,
            level: k,
            num: Poly::one(),
        }
    }

    pub fn pi(&self) -> &MonicPrime {
        &self.pi
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

pub fn qc_add(a: &QuasiElement, b: &QuasiElement) -> Result<QuasiElement> {
    if a.pi != b.pi {
        return Err(Error::PrimeMismatch);
    }
    let k = a.level.max(b.level);
    let num = &a.num * &a.pi.pow(k - a.level) + &b.num * &b.pi.pow(k - b.level);
    QuasiElement::new(a.pi.clone(), k, num)
}

pub fn qc_neg(a: &QuasiElement) -> QuasiElement {
    QuasiElement::new(a.pi.clone(), a.level, -&a.num).expect("modulus is nonzero")
}

/// `α·a`.
pub fn qc_scale(a: &QuasiElement, alpha: &Poly) -> QuasiElement {
    QuasiElement::new(a.pi.clone(), a.level, alpha * &a.num).expect("modulus is nonzero")
}

/// `π^level`, the monic generator of the order ideal.
pub fn qc_order(a: &QuasiElement) -> Poly {
    a.pi.pow(a.level)
}

/// Some `h` with `α·h = a`; exists for every nonzero `α`.
pub fn qc_root(a: &QuasiElement, alpha: &Poly) -> Result<QuasiElement> {
    if alpha.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.is_zero() {
        return Ok(a.clone());
    }
    let e = a.pi.valuation(alpha);
    let beta = alpha.div_exact(&a.pi.pow(e)).expect("valuation divides");
    let level = a.level + e;
    let modulus = a.pi.pow(level);
    let (_, s, _) = Poly::gcd_ext(&beta, &modulus)?;
    QuasiElement::new(a.pi.clone(), level, &s * &a.num)
}

fn single_term(p: &Poly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
}

fn wrapped(p: &Poly) -> String {
    if single_term(p) {
        p.to_string()
    } else {
        format!("({p})")
    }
}

impl fmt::Display for QuasiElement {
    /// `num/π^k`, e.g. `1/x^2` or `(x + 1)/(x^2 + 1)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let pi = wrapped(self.pi.as_poly());
        let den = if self.level == 1 {
            pi
        } else {
            format!("{pi}^{}", self.level)
        };
        write!(f, "{}/{den}", wrapped(&self.num))
    }
}
