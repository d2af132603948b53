use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpmod::{FPModule, ModElement};
use crate::qmatrix::{hnf, kernel, HermiteForm, PolyMatrix};
use crate::qpoly::Poly;

/// A `Q[x]`-subgroup of an [`FPModule`], given by generating elements.
///
/// The canonical form is the Hermite form of `[gens | relations]`, so two
/// submodules are equal exactly when they contain the same elements.
#[derive(Clone, Debug)]
pub struct Submodule {
    ambient: FPModule,
    gens: PolyMatrix,
    form: HermiteForm,
}

impl Submodule {
    pub fn new(ambient: &FPModule, gens: PolyMatrix) -> Result<Self> {
        if gens.rows() != ambient.ngens() {
            return Err(Error::DimensionMismatch {
                expected: ambient.ngens(),
                found: gens.rows(),
            });
        }
        // Same lattice as [gens | relations], with much smaller entries.
        let rf = ambient.relation_form();
        let reduced: Vec<Vec<Poly>> = gens
            .columns()
            .iter()
            .map(|c| rf.reduce(c))
            .collect::<Result<_>>()?;
        let form = hnf(&PolyMatrix::from_columns(gens.rows(), &reduced)?.hconcat(&rf.basis())?);
        Ok(Submodule {
            ambient: ambient.clone(),
            gens,
            form,
        })
    }

    pub fn from_elements(ambient: &FPModule, elems: &[ModElement]) -> Result<Self> {
        let cols: Vec<Vec<Poly>> = elems.iter().map(|e| e.coords().to_vec()).collect();
        for c in &cols {
            if c.len() != ambient.ngens() {
                return Err(Error::DimensionMismatch {
                    expected: ambient.ngens(),
                    found: c.len(),
                });
            }
        }
        Submodule::new(ambient, PolyMatrix::from_columns(ambient.ngens(), &cols)?)
    }

    pub fn trivial(ambient: &FPModule) -> Self {
        Submodule::new(ambient, PolyMatrix::zeros(ambient.ngens(), 0)).expect("shape matches")
    }

    pub fn whole(ambient: &FPModule) -> Self {
        Submodule::new(ambient, PolyMatrix::identity(ambient.ngens())).expect("shape matches")
    }

    pub fn ambient(&self) -> &FPModule {
        &self.ambient
    }

    pub fn gens(&self) -> &PolyMatrix {
        &self.gens
    }

    /// Hermite basis of the preimage lattice in `Q[x]^n` (contains the relations).
    pub fn basis(&self) -> PolyMatrix {
        self.form.basis()
    }

    pub fn generators(&self) -> Vec<ModElement> {
        self.gens
            .columns()
            .into_iter()
            .map(|c| self.ambient.element(c).expect("length matches"))
            .collect()
    }

    pub fn contains(&self, g: &ModElement) -> Result<bool> {
        self.ambient.check(g)?;
        Ok(self.form.solve(g.coords())?.is_some())
    }

    pub fn is_subset_of(&self, other: &Submodule) -> Result<bool> {
        self.same_ambient(other)?;
        for c in self.basis().columns() {
            if other.form.solve(&c)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.same_ambient(other)?;
        Submodule::new(&self.ambient, self.gens.hconcat(&other.gens)?)
    }

    pub fn intersection(&self, other: &Submodule) -> Result<Submodule> {
        self.same_ambient(other)?;
        let b1 = self.basis();
        let b2 = other.basis();
        let neg = PolyMatrix::from_columns(
            b2.rows(),
            &b2.columns()
                .into_iter()
                .map(|c| c.iter().map(|p| -p).collect())
                .collect::<Vec<_>>(),
        )?;
        let k = kernel(&b1.hconcat(&neg)?);
        let top: Vec<Vec<Poly>> = k
            .columns()
            .into_iter()
            .map(|c| b1.mul_vec(&c[..b1.cols()]))
            .collect::<Result<_>>()?;
        Submodule::new(&self.ambient, PolyMatrix::from_columns(b1.rows(), &top)?)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.columns().iter().all(|c| {
            self.ambient
                .relation_form()
                .solve(c)
                .ok()
                .flatten()
                .is_some()
        })
    }

    pub fn is_whole(&self) -> bool {
        self.form.rank() == self.ambient.ngens()
            && self
                .form
                .pivots
                .iter()
                .all(|&(r, c)| self.form.h.get(r, c).is_one())
    }

    /// The submodule as a module in its own right, on its generators.
    pub fn presentation(&self) -> Result<FPModule> {
        let m = self.gens.cols();
        let k = kernel(&self.gens.hconcat(self.ambient.relations())?);
        let rel: Vec<Vec<Poly>> = k.columns().into_iter().map(|c| c[..m].to_vec()).collect();
        FPModule::new(m, PolyMatrix::from_columns(m, &rel)?)
    }

    fn same_ambient(&self, other: &Submodule) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.form.basis() == other.form.basis()
    }
}

impl Eq for Submodule {}

impl fmt::Display for Submodule {
    /// `⟨g1, g2, ...⟩` over the generating elements.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        write!(f, "⟨{}⟩", parts.join(", "))
    }
}

/// JSON form `{"gens": <matrix>}`; the ambient module is supplied separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleRepr {
    pub gens: PolyMatrix,
}

impl Submodule {
    pub fn to_repr(&self) -> SubmoduleRepr {
        SubmoduleRepr {
            gens: self.gens.clone(),
        }
    }

    pub fn from_repr(ambient: &FPModule, repr: SubmoduleRepr) -> Result<Self> {
        Submodule::new(ambient, repr.gens)
    }
}

/// `G/N` together with the maps relating it to `G`.
#[derive(Clone, Debug)]
pub struct Quotient {
    module: FPModule,
    ambient: FPModule,
    kernel: Submodule,
}

impl Quotient {
    pub fn module(&self) -> &FPModule {
        &self.module
    }

    pub fn kernel(&self) -> &Submodule {
        &self.kernel
    }

    /// `g ↦ gN`.
    pub fn project(&self, g: &ModElement) -> Result<ModElement> {
        self.ambient.check(g)?;
        self.module.element(g.coords().to_vec())
    }

    /// Some preimage of `q` in `G`.
    pub fn lift(&self, q: &ModElement) -> Result<ModElement> {
        self.module.check(q)?;
        self.ambient.element(q.coords().to_vec())
    }

    /// The full preimage of a submodule of `G/N`.
    pub fn preimage(&self, s: &Submodule) -> Result<Submodule> {
        if s.ambient() != &self.module {
            return Err(Error::AmbientMismatch);
        }
        Submodule::new(&self.ambient, s.gens().hconcat(&self.kernel.basis())?)
    }

    /// The image of a submodule of `G`.
    pub fn image(&self, s: &Submodule) -> Result<Submodule> {
        if s.ambient() != &self.ambient {
            return Err(Error::AmbientMismatch);
        }
        Submodule::new(&self.module, s.gens().clone())
    }
}

/// `G/N`, presented by the Hermite basis of the preimage of `N`.
pub fn quotient(g: &FPModule, n: &Submodule) -> Result<Quotient> {
    if n.ambient() != g {
        return Err(Error::AmbientMismatch);
    }
    Ok(Quotient {
        module: FPModule::new(g.ngens(), n.basis())?,
        ambient: g.clone(),
        kernel: n.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn elem(g: &FPModule, cs: &[&str]) -> ModElement {
        g.element(cs.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let g = FPModule::cyclic_sum(&[p("x^2"), Poly::zero()]);
        let q = quotient(&g, &Submodule::trivial(&g)).unwrap();
        assert_eq!(q.module().torsion_factors(), g.torsion_factors());
        assert_eq!(q.module().free_rank(), 1);
        let q = quotient(&g, &Submodule::whole(&g)).unwrap();
        assert!(q.module().is_trivial());

        let free = FPModule::free(1);
        let n = Submodule::from_elements(&free, &[elem(&free, &["x^2"])]).unwrap();
        let q = quotient(&free, &n).unwrap();
        assert_eq!(q.module().torsion_factors(), vec![p("x^2")]);
        assert_eq!(q.module().free_rank(), 0);
        let other = FPModule::free(1);
        let foreign = Submodule::trivial(&FPModule::cyclic_sum(&[p("x")]));
        assert!(matches!(
            quotient(&other, &foreign),
            Err(Error::AmbientMismatch)
        ));
    }

    #[test]
    fn projection_kernel_is_n() {
        let g = FPModule::cyclic_sum(&[p("x^3"), Poly::zero()]);
        let n = Submodule::from_elements(&g, &[elem(&g, &["x", "x - 1"])]).unwrap();
        let q = quotient(&g, &n).unwrap();
        for cs in [["x^2", "x^2 - x"], ["1", "0"], ["0", "x"]] {
            let e = elem(&g, &cs);
            assert_eq!(
                q.module().is_zero(&q.project(&e).unwrap()),
                n.contains(&e).unwrap()
            );
        }
    }

    #[test]
    fn equality_is_by_content() {
        let g = FPModule::cyclic_sum(&[p("x^2"), p("x")]);
        let a =
            Submodule::from_elements(&g, &[elem(&g, &["x", "0"]), elem(&g, &["0", "1"])]).unwrap();
        let b =
            Submodule::from_elements(&g, &[elem(&g, &["x", "1"]), elem(&g, &["0", "2"])]).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_whole());
        assert!(Submodule::from_elements(&g, &[elem(&g, &["x^2", "x"])])
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn sum_and_intersection() {
        let g = FPModule::free(1);
        let a = Submodule::from_elements(&g, &[elem(&g, &["x^2 - x"])]).unwrap();
        let b = Submodule::from_elements(&g, &[elem(&g, &["x^2 + x"])]).unwrap();
        let i = a.intersection(&b).unwrap();
        let expect = Submodule::from_elements(&g, &[elem(&g, &["x^3 - x"])]).unwrap();
        assert_eq!(i, expect);
        let s = a.sum(&b).unwrap();
        assert_eq!(
            s,
            Submodule::from_elements(&g, &[elem(&g, &["x"])]).unwrap()
        );
        assert!(i.is_subset_of(&a).unwrap() && a.is_subset_of(&s).unwrap());
    }
}
