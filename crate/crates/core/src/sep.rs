//! Isolation, isolators and finite-ω-type separability certificates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpmod::{
    canonical_decomposition, exponent_ideal, omega_torsion, order_ideal, power_subgroup,
    primary_component, quotient, root, FPModule, ModElement, Quotient, Submodule, SubmoduleRepr,
};
use crate::qmatrix::{member, snf};
use crate::qpoly::{factor, MonicPrime, Poly, PrimeSet};
use crate::random;

/// Outcome of an isolation test. A failing report carries `g ∉ H` and a
/// σ-member `λ` with `g^λ ∈ H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolationReport {
    pub isolated: bool,
    pub violating_element: Option<ModElement>,
    pub violating_exponent: Option<Poly>,
}

impl IsolationReport {
    fn isolated() -> Self {
        IsolationReport {
            isolated: true,
            violating_element: None,
            violating_exponent: None,
        }
    }
}

fn check_ambient(g: &FPModule, h: &Submodule) -> Result<()> {
    if h.ambient() != g {
        return Err(Error::AmbientMismatch);
    }
    Ok(())
}

/// Whether `H` is σ-isolated in `G`, i.e. whether `G/H` is σ-torsion-free.
pub fn is_isolated(g: &FPModule, h: &Submodule, sigma: &PrimeSet) -> Result<IsolationReport> {
    check_ambient(g, h)?;
    let q = quotient(g, h)?;
    let dec = canonical_decomposition(q.module());
    for (d, col) in dec.torsion_factors.iter().zip(dec.cyclic_generators()) {
        let Some(pi) = factor(d)?.primes().find(|p| sigma.contains(p)).cloned() else {
            continue;
        };
        let cofactor = d.div_exact(pi.as_poly()).expect("prime divides");
        let coords = col.iter().map(|c| &cofactor * c).collect();
        return Ok(IsolationReport {
            isolated: false,
            violating_element: Some(g.element(coords)?),
            violating_exponent: Some(pi.into_poly()),
        });
    }
    Ok(IsolationReport::isolated())
}

/// The smallest σ-isolated submodule containing `H`: the preimage of
/// `τ_σ(G/H)`.
pub fn isolator(g: &FPModule, h: &Submodule, sigma: &PrimeSet) -> Result<Submodule> {
    check_ambient(g, h)?;
    let q = quotient(g, h)?;
    q.preimage(&omega_torsion(q.module(), sigma)?)
}

/// Whether every torsion element of `G` is ω-torsion. When not, returns a
/// nonzero ω′-torsion element as evidence.
pub fn is_residually_ftomega(g: &FPModule, omega: &PrimeSet) -> Result<(bool, Option<ModElement>)> {
    let t = omega_torsion(g, &omega.complement())?;
    let witness = t.generators().into_iter().find(|e| !g.is_zero(e));
    Ok((witness.is_none(), witness))
}

/// Certificate that `g` survives in a finite-ω-type quotient `G/N` with
/// `g ∉ H + N`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeparabilityWitness {
    pub module: FPModule,
    pub subgroup: SubmoduleRepr,
    pub element: ModElement,
    pub n: SubmoduleRepr,
    pub quotient_factors: Vec<Poly>,
    pub omega: PrimeSet,
}

/// Builds `N` with `G/N` of finite ω-type and `g ∉ H + N`, following the
/// order of `gH` in `G/H`: prime power, composite, or unbounded.
pub fn separate(
    g: &FPModule,
    h: &Submodule,
    e: &ModElement,
    omega: &PrimeSet,
) -> Result<SeparabilityWitness> {
    if e.len() != g.ngens() {
        return Err(Error::NotInAmbient);
    }
    check_ambient(g, h)?;
    if h.contains(e)? {
        return Err(Error::ElementInSubgroup);
    }
    let report = is_isolated(g, h, &omega.complement())?;
    if !report.isolated {
        return Err(Error::NotIsolated(Box::new(report)));
    }

    let q = quotient(g, h)?;
    let qe = q.project(e)?;
    let ord = order_ideal(q.module(), &qe)?;
    let n_bar = if ord.is_zero() {
        unbounded_cut(q.module(), &qe, omega)?
    } else {
        let f = factor(ord.generator())?;
        let primes: Vec<MonicPrime> = f.primes().cloned().collect();
        match primes.as_slice() {
            [pi] => prime_power_cut(q.module(), pi)?,
            [pi, ..] => composite_cut(q.module(), pi)?,
            [] => unreachable!("gH is nonzero"),
        }
    };
    let n = q.preimage(&n_bar)?;
    let quotient_factors = quotient(g, &n)?.module().torsion_factors();
    Ok(SeparabilityWitness {
        module: g.clone(),
        subgroup: h.to_repr(),
        element: e.clone(),
        n: n.to_repr(),
        quotient_factors,
        omega: omega.clone(),
    })
}

/// `Q^{π^t}` where `π^t` is the exponent of `τ_π(Q)`.
fn prime_power_cut(q: &FPModule, pi: &MonicPrime) -> Result<Submodule> {
    let t = q.torsion_factors().last().map_or(0, |d| pi.valuation(d));
    power_subgroup(q, &pi.pow(t))
}

/// Passes to `Q / ∏_{β≠π} τ_β(Q)`, where `gH` has π-power order, cuts there
/// and pulls back.
fn composite_cut(q: &FPModule, pi: &MonicPrime) -> Result<Submodule> {
    let others = omega_torsion(q, &PrimeSet::cofinite([pi.clone()]))?;
    let reduced: Quotient = quotient(q, &others)?;
    let cut = prime_power_cut(reduced.module(), pi)?;
    reduced.preimage(&cut)
}

/// `Q^{α^r}` for the first prime `α ∈ ω` and the least `r` with `gH ∉ Q^{α^r}`.
fn unbounded_cut(q: &FPModule, qe: &ModElement, omega: &PrimeSet) -> Result<Submodule> {
    let alpha = omega.first_prime().ok_or(Error::EmptyPrimeSet)?;
    let mut r = 1;
    while root(q, qe, &alpha.pow(r))?.is_some() {
        r += 1;
    }
    power_subgroup(q, &alpha.pow(r))
}

/// Rechecks a witness from its raw data: the quotient's invariant factors,
/// their primes, and non-membership of `g` in `H + N`. Malformed data fails.
pub fn verify_witness(w: &SeparabilityWitness) -> bool {
    verify_inner(w).unwrap_or(false)
}

fn verify_inner(w: &SeparabilityWitness) -> Result<bool> {
    let rel = w.module.relations();
    let n = rel.rows();
    if w.n.gens.rows() != n || w.subgroup.gens.rows() != n || w.element.len() != n {
        return Ok(false);
    }
    let presented = rel.hconcat(&w.n.gens)?;
    let s = snf(&presented);
    if s.rank() != n || s.invariant_factors() != w.quotient_factors {
        return Ok(false);
    }
    for d in &w.quotient_factors {
        if !factor(d)?.primes().all(|p| w.omega.contains(p)) {
            return Ok(false);
        }
    }
    let all = w.subgroup.gens.hconcat(&w.n.gens)?.hconcat(rel)?;
    Ok(member(&all, w.element.coords())?.is_none())
}

/// `τ_π(F/N)` for one sampled `N`, as invariant factors per prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub n: SubmoduleRepr,
    pub components: Vec<(MonicPrime, Vec<Poly>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub restricted: bool,
    pub samples: Vec<SampleReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub restricted: bool,
    pub factors: Vec<FactorReport>,
}

/// Evidence that each factor is ω-restricted: for the trivial `N` and
/// `samples` random submodules `N`, every `τ_π(F/N)` with `π ∈ ω` is
/// presented finitely and is bounded by a power of `π`.
pub fn check_omega_restricted_series(
    factors: &[FPModule],
    omega: &PrimeSet,
    samples: usize,
    seed: u64,
) -> Result<SeriesReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for f in factors {
        let mut subs = vec![Submodule::trivial(f)];
        subs.extend((0..samples).map(|_| random::submodule(&mut rng, f, 2)));
        let mut restricted = true;
        let mut reports = Vec::new();
        for n in subs {
            let q = quotient(f, &n)?;
            let mut primes: Vec<MonicPrime> = Vec::new();
            for d in q.module().torsion_factors() {
                for p in factor(&d)?.primes() {
                    if omega.contains(p) && !primes.contains(p) {
                        primes.push(p.clone());
                    }
                }
            }
            primes.sort();
            let mut components = Vec::new();
            for pi in primes {
                let comp = primary_component(q.module(), &pi)?.presentation()?;
                let exp = exponent_ideal(&comp);
                let bounded =
                    !exp.is_zero() && pi.pow(pi.valuation(exp.generator())) == *exp.generator();
                restricted &= bounded;
                components.push((pi, comp.torsion_factors()));
            }
            reports.push(SampleReport {
                n: n.to_repr(),
                components,
            });
        }
        out.push(FactorReport {
            restricted,
            samples: reports,
        });
    }
    Ok(SeriesReport {
        restricted: out.iter().all(|r| r.restricted),
        factors: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmod::Submodule;
    use crate::qpoly::{parse_poly, PrimeSetMode};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn cyc(ds: &[&str]) -> FPModule {
        FPModule::cyclic_sum(&ds.iter().map(|s| p(s)).collect::<Vec<_>>())
    }

    fn elem(g: &FPModule, cs: &[&str]) -> ModElement {
        g.element(cs.iter().map(|s| p(s)).collect()).unwrap()
    }

    fn sub(g: &FPModule, es: &[&[&str]]) -> Submodule {
        Submodule::from_elements(g, &es.iter().map(|cs| elem(g, cs)).collect::<Vec<_>>()).unwrap()
    }

    fn explicit(ps: &[&str]) -> PrimeSet {
        PrimeSet::from_strs(PrimeSetMode::Explicit, ps).unwrap()
    }

    fn check_violator(g: &FPModule, h: &Submodule, sigma: &PrimeSet, r: &IsolationReport) {
        let v = r.violating_element.as_ref().unwrap();
        let lam = r.violating_exponent.as_ref().unwrap();
        assert!(!h.contains(v).unwrap());
        assert!(h.contains(&g.scale(v, lam).unwrap()).unwrap());
        assert!(crate::qpoly::is_omega_member(lam, sigma).unwrap());
    }

    #[test]
    fn is_isolated_examples() {
        let g = cyc(&["x", "x - 1"]);
        let h = sub(&g, &[&["1", "0"]]);
        let sigma = explicit(&["x"]).complement();
        let r = is_isolated(&g, &h, &sigma).unwrap();
        assert!(!r.isolated);
        assert_eq!(r.violating_exponent, Some(p("x - 1")));
        check_violator(&g, &h, &sigma, &r);
        assert!(is_isolated(&g, &h, &explicit(&["x"])).unwrap().isolated);
        assert!(
            is_isolated(&g, &Submodule::whole(&g), &PrimeSet::all())
                .unwrap()
                .isolated
        );
    }

    #[test]
    fn isolator_examples() {
        let g = cyc(&["x^2"]);
        let iso = isolator(&g, &Submodule::trivial(&g), &explicit(&["x"])).unwrap();
        assert!(iso.is_whole());
        assert_eq!(isolator(&g, &iso, &explicit(&["x"])).unwrap(), iso);

        let g = cyc(&["x^2 - x"]);
        let iso = isolator(&g, &Submodule::trivial(&g), &explicit(&["x"])).unwrap();
        assert_eq!(
            iso,
            crate::fpmod::primary_component(&g, &MonicPrime::parse("x").unwrap()).unwrap()
        );
        assert!(is_isolated(&g, &iso, &explicit(&["x"])).unwrap().isolated);
    }

    #[test]
    fn residual_examples() {
        assert_eq!(
            is_residually_ftomega(&FPModule::free(2), &explicit(&["x"])).unwrap(),
            (true, None)
        );
        assert!(
            is_residually_ftomega(&cyc(&["x"]), &explicit(&["x"]))
                .unwrap()
                .0
        );
        let g = cyc(&["x - 1"]);
        let (ok, w) = is_residually_ftomega(&g, &explicit(&["x"])).unwrap();
        assert!(!ok);
        assert_eq!(w, Some(elem(&g, &["1"])));
    }

    #[test]
    fn separate_bounded_order() {
        let g = cyc(&["x^2", "0"]);
        let h = sub(&g, &[&["0", "1"]]);
        let e = elem(&g, &["1", "0"]);
        let w = separate(&g, &h, &e, &explicit(&["x"])).unwrap();
        assert_eq!(Submodule::from_repr(&g, w.n.clone()).unwrap(), h);
        assert_eq!(w.quotient_factors, vec![p("x^2")]);
        assert!(verify_witness(&w));
    }

    #[test]
    fn separate_unbounded_order() {
        let g = FPModule::free(1);
        let w = separate(
            &g,
            &Submodule::trivial(&g),
            &elem(&g, &["1"]),
            &explicit(&["x"]),
        )
        .unwrap();
        assert_eq!(
            Submodule::from_repr(&g, w.n.clone()).unwrap(),
            sub(&g, &[&["x"]])
        );
        assert_eq!(w.quotient_factors, vec![p("x")]);
        assert!(verify_witness(&w));
    }

    #[test]
    fn separate_composite_order() {
        let g = cyc(&["x^3 - x", "x"]);
        let e = elem(&g, &["1", "1"]);
        let w = separate(&g, &Submodule::trivial(&g), &e, &PrimeSet::all()).unwrap();
        assert!(verify_witness(&w));
        for d in &w.quotient_factors {
            assert_eq!(factor(d).unwrap().factors.len(), 1);
        }
    }

    #[test]
    fn separate_errors() {
        let g = cyc(&["x^2"]);
        let h = sub(&g, &[&["x"]]);
        let err = separate(&g, &h, &elem(&g, &["1"]), &explicit(&["x - 1"])).unwrap_err();
        let Error::NotIsolated(r) = err else {
            panic!("expected NotIsolated")
        };
        check_violator(&g, &h, &explicit(&["x - 1"]).complement(), &r);
        assert!(matches!(
            separate(&g, &h, &elem(&g, &["x"]), &explicit(&["x"])),
            Err(Error::ElementInSubgroup)
        ));
        assert!(matches!(
            separate(
                &g,
                &h,
                &ModElement::from_coords(vec![p("1"), p("1")]),
                &explicit(&["x"])
            ),
            Err(Error::NotInAmbient)
        ));
    }

    #[test]
    fn verify_rejects_bad_witnesses() {
        let g = cyc(&["x^2", "0"]);
        let h = sub(&g, &[&["0", "1"]]);
        let e = elem(&g, &["1", "0"]);
        let w = separate(&g, &h, &e, &explicit(&["x"])).unwrap();

        let mut whole = w.clone();
        whole.n = Submodule::whole(&g).to_repr();
        whole.quotient_factors = vec![];
        assert!(!verify_witness(&whole));

        let mut foreign = w.clone();
        foreign.n = sub(&g, &[&["x^2 - x", "0"], &["0", "1"]]).to_repr();
        foreign.quotient_factors = vec![];
        assert!(!verify_witness(&foreign));
        let g2 = cyc(&["x^2 - x", "0"]);
        let w2 = SeparabilityWitness {
            module: g2.clone(),
            subgroup: sub(&g2, &[&["0", "1"]]).to_repr(),
            element: elem(&g2, &["1", "0"]),
            n: sub(&g2, &[&["0", "1"]]).to_repr(),
            quotient_factors: vec![p("x^2 - x")],
            omega: explicit(&["x"]),
        };
        assert!(!verify_witness(&w2));

        let mut malformed = w.clone();
        malformed.element = ModElement::from_coords(vec![p("1")]);
        assert!(!verify_witness(&malformed));
    }

    #[test]
    fn witness_json_round_trip() {
        let g = FPModule::free(1);
        let w = separate(
            &g,
            &Submodule::trivial(&g),
            &elem(&g, &["1"]),
            &explicit(&["x"]),
        )
        .unwrap();
        let js = serde_json::to_string(&w).unwrap();
        assert!(js.starts_with(r#"{"module":{"ngens":1,"#));
        let back: SeparabilityWitness = serde_json::from_str(&js).unwrap();
        assert!(verify_witness(&back));
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }

    #[test]
    fn restricted_series_examples() {
        let r =
            check_omega_restricted_series(&[FPModule::free(1)], &explicit(&["x"]), 3, 1).unwrap();
        assert!(r.restricted);
        let r = check_omega_restricted_series(&[cyc(&["x^3"])], &explicit(&["x"]), 0, 1).unwrap();
        assert!(r.restricted);
        assert_eq!(
            r.factors[0].samples[0].components,
            vec![(MonicPrime::parse("x").unwrap(), vec![p("x^3")])]
        );
    }
}
