//! Finitely presented abelian `Q[x]`-groups.
//!
//! A module `G` with `n` generators is `Q[x]^n / L`, where the relation
//! lattice `L` is spanned by the columns of the relation matrix. Elements are
//! coordinate vectors kept in canonical form (reduced modulo the Hermite form
//! of `L`), so equal classes compare equal field by field.

mod structure;
mod submodule;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmatrix::{hnf, snf, HermiteForm, PolyMatrix, SmithForm};
use crate::qpoly::Poly;

pub use structure::{
    canonical_decomposition, exponent_ideal, height, is_finite_omega_type, omega_torsion,
    order_ideal, power_subgroup, primary_component, root, torsion, Decomposition, Height, Ideal,
};
pub use submodule::{quotient, Quotient, Submodule, SubmoduleRepr};

#[derive(Debug)]
struct Inner {
    ngens: usize,
    relations: PolyMatrix,
    relation_form: HermiteForm,
    smith: SmithForm,
}

/// A finitely presented abelian `Q[x]`-group. Cheap to clone.
#[derive(Clone, Debug)]
pub struct FPModule(Arc<Inner>);

impl FPModule {
    /// `relations` has one row per generator and one column per relator.
    pub fn new(ngens: usize, relations: PolyMatrix) -> Result<Self> {
        if relations.rows() != ngens {
            return Err(Error::DimensionMismatch {
                expected: ngens,
                found: relations.rows(),
            });
        }
        let relation_form = hnf(&relations);
        let smith = snf(&relations);
        Ok(FPModule(Arc::new(Inner {
            ngens,
            relations,
            relation_form,
            smith,
        })))
    }

    /// `Q[x]^n`.
    pub fn free(ngens: usize) -> Self {
        FPModule::new(ngens, PolyMatrix::zeros(ngens, 0)).expect("shape is consistent")
    }

    /// `⊕ Q[x]/(d_i)`, one generator per entry; zero entries give free summands.
    pub fn cyclic_sum(orders: &[Poly]) -> Self {
        let n = orders.len();
        FPModule::new(n, PolyMatrix::diagonal(n, n, orders)).expect("square diagonal")
    }

    pub fn ngens(&self) -> usize {
        self.0.ngens
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.0.relations
    }

    pub(crate) fn relation_form(&self) -> &HermiteForm {
        &self.0.relation_form
    }

    pub fn smith(&self) -> &SmithForm {
        &self.0.smith
    }

    /// Monic nonunit invariant factors `d_1 | ... | d_k`.
    pub fn torsion_factors(&self) -> Vec<Poly> {
        self.0.smith.invariant_factors()
    }

    pub fn free_rank(&self) -> usize {
        self.0.ngens - self.0.smith.rank()
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion_factors().is_empty() && self.free_rank() == 0
    }

    /// Canonical element with the given generator coordinates.
    pub fn element(&self, coords: Vec<Poly>) -> Result<ModElement> {
        if coords.len() != self.ngens() {
            return Err(Error::DimensionMismatch {
                expected: self.ngens(),
                found: coords.len(),
            });
        }
        let coords = self.0.relation_form.reduce(&coords)?;
        Ok(ModElement { coords })
    }

    pub fn zero(&self) -> ModElement {
        ModElement {
            coords: vec![Poly::zero(); self.ngens()],
        }
    }

    /// The class of the `i`-th generator.
    pub fn generator(&self, i: usize) -> ModElement {
        let mut coords = vec![Poly::zero(); self.ngens()];
        coords[i] = Poly::one();
        self.element(coords).expect("length matches")
    }

    pub fn add(&self, a: &ModElement, b: &ModElement) -> Result<ModElement> {
        self.check(a)?;
        self.check(b)?;
        self.element(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &ModElement) -> Result<ModElement> {
        self.check(a)?;
        self.element(a.coords.iter().map(|x| -x).collect())
    }

    /// `α·a`, i.e. `a^α` in multiplicative notation.
    pub fn scale(&self, a: &ModElement, alpha: &Poly) -> Result<ModElement> {
        self.check(a)?;
        self.element(a.coords.iter().map(|x| alpha * x).collect())
    }

    pub fn is_zero(&self, a: &ModElement) -> bool {
        a.coords.iter().all(Poly::is_zero)
    }

    pub(crate) fn check(&self, a: &ModElement) -> Result<()> {
        if a.coords.len() != self.ngens() {
            return Err(Error::DimensionMismatch {
                expected: self.ngens(),
                found: a.coords.len(),
            });
        }
        Ok(())
    }
}

/// Two presentations are the same ambient module when they have the same
/// generators and the same relation lattice.
impl PartialEq for FPModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.ngens() == other.ngens()
                && self.0.relation_form.basis() == other.0.relation_form.basis())
    }
}

impl Eq for FPModule {}

impl fmt::Display for FPModule {
    /// Multiplicative rendering of the cyclic decomposition, e.g.
    /// `Q[x]/(x^2) × Q[x]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .torsion_factors()
            .iter()
            .map(|d| format!("Q[x]/({d})"))
            .collect();
        parts.extend((0..self.free_rank()).map(|_| "Q[x]".to_string()));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" × "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleRepr {
    ngens: usize,
    #[serde(default)]
    relations: Option<PolyMatrix>,
}

impl Serialize for FPModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModuleRepr {
            ngens: self.ngens(),
            relations: Some(self.relations().clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FPModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ModuleRepr::deserialize(d)?;
        if r.ngens == 0 {
            return Err(serde::de::Error::custom(
                "a module needs at least one generator",
            ));
        }
        let rel = r.relations.unwrap_or_else(|| PolyMatrix::zeros(r.ngens, 0));
        FPModule::new(r.ngens, rel).map_err(serde::de::Error::custom)
    }
}

/// An element as coordinates in the presentation generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModElement {
    coords: Vec<Poly>,
}

impl ModElement {
    /// Raw coordinates; not reduced until passed through [`FPModule::element`].
    pub fn from_coords(coords: Vec<Poly>) -> Self {
        ModElement { coords }
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Poly> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl fmt::Display for ModElement {
    /// `(p1, p2, ...)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Parses the element literal `(p1, p2, ...)`; a single polynomial without
/// parentheses is a one-coordinate element.
pub fn parse_element(s: &str) -> Result<ModElement> {
    let t = s.trim();
    let inner = match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner,
        None if t.starts_with('[') => {
            let v: Vec<Poly> = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            return Ok(ModElement::from_coords(v));
        }
        None => t,
    };
    let coords = split_top_level(inner)
        .into_iter()
        .map(crate::qpoly::parse_poly)
        .collect::<Result<Vec<_>>>()?;
    Ok(ModElement::from_coords(coords))
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
