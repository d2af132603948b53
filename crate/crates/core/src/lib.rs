//! Exact computation with finitely presented abelian `Q[x]`-groups.
//!
//! The crate covers arithmetic in `Q[x]` ([`qpoly`]), Smith and Hermite
//! normal forms over `Q[x]` ([`qmatrix`]), finitely presented modules with
//! their torsion, primary components and power subgroups ([`fpmod`]),
//! isolation and separability certificates ([`sep`]), the symbolic
//! `π`-quasicyclic group ([`quasicyclic`]) and the free class-2 nilpotent
//! `Q[x]`-powered group ([`class2`]).
//!
//! Abelian groups are handled additively as `Q[x]`-modules: the group
//! element `g^α` is the module element `α·g`.
//!
//! ```
//! use qx_core::fpmod::{FPModule, Submodule};
//! use qx_core::qpoly::{parse_poly, PrimeSet, PrimeSetMode};
//! use qx_core::sep::{separate, verify_witness};
//!
//! let p = |s| parse_poly(s).unwrap();
//! let g = FPModule::cyclic_sum(&[p("x"), p("x^2")]);
//! let h = Submodule::trivial(&g);
//! let e = g.element(vec![p("1"), p("0")]).unwrap();
//! let omega = PrimeSet::from_strs(PrimeSetMode::Explicit, &["x"]).unwrap();
//! let w = separate(&g, &h, &e, &omega).unwrap();
//! assert!(verify_witness(&w));
//! ```

pub mod class2;
pub mod error;
pub mod fpmod;
mod json;
pub mod qmatrix;
pub mod qpoly;
pub mod quasicyclic;
pub mod random;
pub mod sep;

pub use error::{Error, Result};
