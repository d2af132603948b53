//! The free nilpotent class-2 `Q[x]`-powered group on `n` generators.
//!
//! Elements are in normal form `a_1^{u_1}⋯a_n^{u_n}·∏_{i<j} c_ij^{w_ij}`
//! with central `c_ij = [a_j, a_i] = a_j⁻¹a_i⁻¹a_j a_i`, so collection uses
//! `a_j a_i = a_i a_j c_ij`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::{binom, parse_poly, Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Class2Repr")]
pub struct Class2Element {
    gen_exps: Vec<Poly>,
    /// Pairs `(i, j)`, `i < j`, in lexicographic order.
    comm_exps: Vec<Poly>,
}

#[derive(Deserialize)]
struct Class2Repr {
    gen_exps: Vec<Poly>,
    comm_exps: Vec<Poly>,
}

impl TryFrom<Class2Repr> for Class2Element {
    type Error = Error;
    fn try_from(r: Class2Repr) -> Result<Self> {
        Class2Element::new(r.gen_exps, r.comm_exps)
    }
}

/// Number of commutator exponents at rank `n`.
pub fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of `c_ij` (`i < j`) in the commutator list.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl Class2Element {
    pub fn new(gen_exps: Vec<Poly>, comm_exps: Vec<Poly>) -> Result<Self> {
        let n = gen_exps.len();
        if comm_exps.len() != pairs(n) {
            return Err(Error::DimensionMismatch {
                expected: pairs(n),
                found: comm_exps.len(),
            });
        }
        Ok(Class2Element {
            gen_exps,
            comm_exps,
        })
    }

    pub fn identity(n: usize) -> Self {
        Class2Element {
            gen_exps: vec![Poly::zero(); n],
            comm_exps: vec![Poly::zero(); pairs(n)],
        }
    }

    /// `a_i` (0-based).
    pub fn generator(n: usize, i: usize) -> Self {
        let mut g = Self::identity(n);
        g.gen_exps[i] = Poly::one();
        g
    }

    /// `c_ij` (0-based, `i < j`).
    pub fn commutator_generator(n: usize, i: usize, j: usize) -> Self {
        let mut g = Self::identity(n);
        g.comm_exps[pair_index(n, i, j)] = Poly::one();
        g
    }

    pub fn rank(&self) -> usize {
        self.gen_exps.len()
    }

    pub fn gen_exps(&self) -> &[Poly] {
        &self.gen_exps
    }

    pub fn comm_exps(&self) -> &[Poly] {
        &self.comm_exps
    }

    /// Exponent of `c_ij` (0-based, `i < j`).
    pub fn comm(&self, i: usize, j: usize) -> &Poly {
        &self.comm_exps[pair_index(self.rank(), i, j)]
    }

    pub fn is_identity(&self) -> bool {
        self.gen_exps
            .iter()
            .chain(&self.comm_exps)
            .all(Poly::is_zero)
    }

    pub fn is_central(&self) -> bool {
        self.gen_exps.iter().all(Poly::is_zero)
    }
}

fn same_rank(g: &Class2Element, h: &Class2Element) -> Result<()> {
    if g.rank() != h.rank() {
        return Err(Error::RankMismatch(g.rank(), h.rank()));
    }
    Ok(())
}

pub fn c2_mul(g: &Class2Element, h: &Class2Element) -> Result<Class2Element> {
    same_rank(g, h)?;
    let n = g.rank();
    let gen_exps = g
        .gen_exps
        .iter()
        .zip(&h.gen_exps)
        .map(|(a, b)| a + b)
        .collect();
    let mut comm_exps: Vec<Poly> = g
        .comm_exps
        .iter()
        .zip(&h.comm_exps)
        .map(|(a, b)| a + b)
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            // a_i^{u'_i} moves left past a_j^{u_j}.
            comm_exps[pair_index(n, i, j)] += &(&g.gen_exps[j] * &h.gen_exps[i]);
        }
    }
    Ok(Class2Element {
        gen_exps,
        comm_exps,
    })
}

/// `g^α`: generator exponents scale by `α`, commutator exponents pick up
/// `binom(α, 2)·u_i·u_j`.
pub fn c2_pow(g: &Class2Element, alpha: &Poly) -> Class2Element {
    let n = g.rank();
    let b = binom(alpha, 2);
    let gen_exps = g.gen_exps.iter().map(|u| alpha * u).collect();
    let mut comm_exps: Vec<Poly> = g.comm_exps.iter().map(|w| alpha * w).collect();
    for i in 0..n {
        for j in i + 1..n {
            comm_exps[pair_index(n, i, j)] += &(&b * &(&g.gen_exps[i] * &g.gen_exps[j]));
        }
    }
    Class2Element {
        gen_exps,
        comm_exps,
    }
}

pub fn c2_inv(g: &Class2Element) -> Class2Element {
    c2_pow(g, &Poly::from_int(-1))
}

/// `[g, h] = g⁻¹h⁻¹gh`.
pub fn c2_commutator(g: &Class2Element, h: &Class2Element) -> Result<Class2Element> {
    same_rank(g, h)?;
    let left = c2_mul(&c2_inv(g), &c2_inv(h))?;
    c2_mul(&left, &c2_mul(g, h)?)
}

/// Some `h` with `h^β = g_1^β ⋯ g_m^β`.
pub fn c2_product_root(gs: &[Class2Element], beta: &Poly) -> Result<Class2Element> {
    if beta.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (first, rest) = gs.split_first().ok_or(Error::EmptyInput)?;
    // h^β g^β = (hg)^β [h, g]^{binom(β, 2)}, and binom(β, 2) = β·(β - 1)/2.
    let half = (beta - &Poly::one()).scale(&Rational::new(1.into(), 2.into()));
    let mut h = first.clone();
    for g in rest {
        let correction = c2_pow(&c2_commutator(&h, g)?, &half);
        h = c2_mul(&c2_mul(&h, g)?, &correction)?;
    }
    Ok(h)
}

fn exponent_text(p: &Poly) -> Option<String> {
    if p.is_zero() {
        None
    } else if p.is_one() {
        Some(String::new())
    } else {
        Some(format!("^{{{p}}}"))
    }
}

fn comm_name(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("c{}{}", i + 1, j + 1)
    } else {
        format!("c{}_{}", i + 1, j + 1)
    }
}

impl fmt::Display for Class2Element {
    /// `a1^{x} a2 c12^{1/2*x^2 - 1/2*x}`; the identity is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank();
        let mut parts = Vec::new();
        for (i, u) in self.gen_exps.iter().enumerate() {
            if let Some(e) = exponent_text(u) {
                parts.push(format!("a{}{e}", i + 1));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if let Some(e) = exponent_text(self.comm(i, j)) {
                    parts.push(format!("{}{e}", comm_name(n, i, j)));
                }
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Parses a word such as `a2 a1^{x} c12^{-1}` in rank `n`, multiplying the
/// factors in the order written. Exponents are `^{poly}` or `^int`.
pub fn parse_class2(s: &str, n: usize) -> Result<Class2Element> {
    let err = |m: &str| Error::Parse(format!("{m} in class-2 word {s:?}"));
    let mut acc = Class2Element::identity(n);
    if s.trim() == "1" {
        return Ok(acc);
    }
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() || chars[i] == '*' {
            i += 1;
            continue;
        }
        let kind = chars[i];
        i += 1;
        let start = i;
        while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
            i += 1;
        }
        let index: String = chars[start..i].iter().collect();
        let base = match kind {
            'a' => {
                let k: usize = index.parse().map_err(|_| err("bad generator index"))?;
                if k == 0 || k > n {
                    return Err(err("generator index out of range"));
                }
                Class2Element::generator(n, k - 1)
            }
            'c' => {
                let (a, b) = match index.split_once('_') {
                    Some((a, b)) => (a.to_string(), b.to_string()),
                    None if index.len() == 2 => (index[..1].to_string(), index[1..].to_string()),
                    None => return Err(err("ambiguous commutator index")),
                };
                let a: usize = a.parse().map_err(|_| err("bad commutator index"))?;
                let b: usize = b.parse().map_err(|_| err("bad commutator index"))?;
                if a == 0 || b > n || a >= b {
                    return Err(err("commutator index out of range"));
                }
                Class2Element::commutator_generator(n, a - 1, b - 1)
            }
            _ => return Err(err("expected a generator")),
        };
        let mut exp = Poly::one();
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            if i < chars.len() && chars[i] == '{' {
                let mut depth = 0;
                let open = i;
                loop {
                    match chars.get(i) {
                        Some('{') => depth += 1,
                        Some('}') => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        None => return Err(err("unclosed brace")),
                        _ => {}
                    }
                    i += 1;
                }
                let body: String = chars[open + 1..i].iter().collect();
                exp = parse_poly(&body)?;
                i += 1;
            } else {
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let k: i64 = lit.parse().map_err(|_| err("bad exponent"))?;
                exp = Poly::from_int(k);
            }
        }
        acc = c2_mul(&acc, &c2_pow(&base, &exp))?;
    }
    Ok(acc)
}
