use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpmod::{FPModule, ModElement, Submodule};
use crate::qmatrix::{member, PolyMatrix};
use crate::qpoly::{factor, omega_part, MonicPrime, Poly, PrimeSet};

/// A principal ideal of `Q[x]`, stored by its monic (or zero) generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ideal {
    generator: Poly,
}

impl Ideal {
    pub fn new(p: Poly) -> Self {
        Ideal {
            generator: if p.is_zero() { p } else { p.monic() },
        }
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn is_zero(&self) -> bool {
        self.generator.is_zero()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.generator.divides(p)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

/// `G ≅ ⊕ Q[x]/(d_i) ⊕ Q[x]^r`, with the coordinate changes realizing it.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub torsion_factors: Vec<Poly>,
    pub free_rank: usize,
    /// Rows map generator coordinates to decomposed coordinates.
    to: PolyMatrix,
    /// Columns are the cyclic generators, expressed in generator coordinates.
    from: PolyMatrix,
}

impl Decomposition {
    /// Decomposed coordinates of `g`, torsion entries reduced modulo `d_i`.
    pub fn to_decomposed(&self, g: &ModElement) -> Result<Vec<Poly>> {
        let mut y = self.to.mul_vec(g.coords())?;
        for (yi, d) in y.iter_mut().zip(&self.torsion_factors) {
            *yi = yi.rem(d)?;
        }
        Ok(y)
    }

    /// Generator coordinates (unreduced) of the decomposed vector `y`.
    pub fn from_decomposed(&self, y: &[Poly]) -> Result<Vec<Poly>> {
        self.from.mul_vec(y)
    }

    /// Generator coordinates of each cyclic summand's generator, torsion first.
    pub fn cyclic_generators(&self) -> Vec<Vec<Poly>> {
        self.from.columns()
    }
}

pub fn canonical_decomposition(g: &FPModule) -> Decomposition {
    let s = g.smith();
    let diag = s.diagonal();
    let mut idx: Vec<usize> = (0..diag.len()).filter(|&i| !diag[i].is_unit()).collect();
    let torsion_factors: Vec<Poly> = idx.iter().map(|&i| diag[i].clone()).collect();
    idx.extend(diag.len()..g.ngens());
    let mut to = s.u.transpose().select_columns(&idx).transpose();
    for (i, d) in torsion_factors.iter().enumerate() {
        for j in 0..to.cols() {
            let r = to.get(i, j).rem(d).expect("invariant factor nonzero");
            to.set(i, j, r);
        }
    }
    let rf = g.relation_form();
    let from_cols: Vec<Vec<Poly>> = s
        .u_inv
        .select_columns(&idx)
        .columns()
        .iter()
        .map(|c| rf.reduce(c).expect("length matches"))
        .collect();
    let from = PolyMatrix::from_columns(g.ngens(), &from_cols).expect("column lengths match");
    Decomposition {
        torsion_factors,
        free_rank: g.free_rank(),
        to,
        from,
    }
}

/// Generator of `Ann(g)`; zero when `g` has unbounded order.
pub fn order_ideal(g: &FPModule, e: &ModElement) -> Result<Ideal> {
    g.check(e)?;
    let dec = canonical_decomposition(g);
    let y = dec.to_decomposed(e)?;
    let k = dec.torsion_factors.len();
    if y[k..].iter().any(|p| !p.is_zero()) {
        return Ok(Ideal::new(Poly::zero()));
    }
    let mut acc = Poly::one();
    for (yi, d) in y.iter().zip(&dec.torsion_factors) {
        if yi.is_zero() {
            continue;
        }
        let ord = d.div_exact(&Poly::gcd(d, yi)).expect("gcd divides");
        acc = Poly::lcm(&acc, &ord);
    }
    Ok(Ideal::new(acc))
}

pub fn exponent_ideal(g: &FPModule) -> Ideal {
    if g.free_rank() > 0 {
        return Ideal::new(Poly::zero());
    }
    Ideal::new(
        g.torsion_factors()
            .last()
            .cloned()
            .unwrap_or_else(Poly::one),
    )
}

fn submodule_from_columns(g: &FPModule, cols: Vec<Vec<Poly>>) -> Submodule {
    let m = PolyMatrix::from_columns(g.ngens(), &cols).expect("column lengths match");
    Submodule::new(g, m).expect("rows match")
}

/// The full torsion subgroup `τ(G)`.
pub fn torsion(g: &FPModule) -> Submodule {
    let dec = canonical_decomposition(g);
    let k = dec.torsion_factors.len();
    submodule_from_columns(g, dec.cyclic_generators().into_iter().take(k).collect())
}

/// `τ_ω(G)`: elements annihilated by some ω-member.
pub fn omega_torsion(g: &FPModule, omega: &PrimeSet) -> Result<Submodule> {
    let dec = canonical_decomposition(g);
    let mut cols = Vec::new();
    for (d, c) in dec.torsion_factors.iter().zip(dec.cyclic_generators()) {
        let (u, v) = omega_part(d, omega)?;
        if !u.is_unit() {
            cols.push(c.iter().map(|x| &v * x).collect());
        }
    }
    Ok(submodule_from_columns(g, cols))
}

/// `τ_π(G)`.
pub fn primary_component(g: &FPModule, pi: &MonicPrime) -> Result<Submodule> {
    omega_torsion(g, &PrimeSet::explicit([pi.clone()])?)
}

/// `G^α = α·G`.
pub fn power_subgroup(g: &FPModule, alpha: &Poly) -> Result<Submodule> {
    if alpha.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = g.ngens();
    Submodule::new(g, PolyMatrix::diagonal(n, n, &vec![alpha.clone(); n]))
}

/// Some `h` with `α·h = g`, if one exists.
pub fn root(g: &FPModule, e: &ModElement, alpha: &Poly) -> Result<Option<ModElement>> {
    if alpha.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    g.check(e)?;
    let n = g.ngens();
    let m = PolyMatrix::diagonal(n, n, &vec![alpha.clone(); n]).hconcat(g.relations())?;
    match member(&m, e.coords())? {
        Some(c) => Ok(Some(g.element(c[..n].to_vec())?)),
        None => Ok(None),
    }
}

/// JSON: a number, or the string `"infinite"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl Serialize for Height {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Height::Finite(n) => s.serialize_u32(*n),
            Height::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(n) => write!(f, "{n}"),
            Height::Infinite => f.write_str("infinite"),
        }
    }
}

/// The largest `n` such that `g` has a `π^n`-th root, in a π-torsion module.
pub fn height(g: &FPModule, e: &ModElement, pi: &MonicPrime) -> Result<Height> {
    g.check(e)?;
    let exp = exponent_ideal(g);
    if exp.is_zero() {
        return Err(Error::NotPrimary);
    }
    let m = pi.valuation(exp.generator());
    if pi.pow(m) != *exp.generator() {
        return Err(Error::NotPrimary);
    }
    if g.is_zero(e) {
        return Err(Error::ZeroElement);
    }
    let mut n = 0;
    while n < m && root(g, e, &pi.pow(n + 1))?.is_some() {
        n += 1;
    }
    Ok(Height::Finite(n))
}

/// Free rank zero and every prime of every invariant factor in `ω`.
pub fn is_finite_omega_type(g: &FPModule, omega: &PrimeSet) -> Result<bool> {
    if g.free_rank() > 0 {
        return Ok(false);
    }
    for d in g.torsion_factors() {
        if !factor(&d)?.primes().all(|p| omega.contains(p)) {
            return Ok(false);
        }
    }
    Ok(true)
}
