use clap::Subcommand;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use qx_core::class2::{
    c2_commutator, c2_inv, c2_mul, c2_pow, c2_product_root, parse_class2, Class2Element,
};
use qx_core::fpmod::{
    canonical_decomposition, exponent_ideal, order_ideal, primary_component, FPModule, ModElement,
    SubmoduleRepr,
};
use qx_core::qmatrix::{snf, PolyMatrix};
use qx_core::qpoly::{factor, MonicPrime, Poly, PrimeSet};
use qx_core::quasicyclic::{qc_add, qc_neg, qc_order, qc_root, qc_scale, QuasiElement};
use qx_core::sep::{
    is_isolated, is_residually_ftomega, isolator, separate, verify_witness, IsolationReport,
    SeparabilityWitness,
};
use qx_core::{random, Error};

use crate::input;
use crate::{Command, Failure, Format};

#[derive(Subcommand)]
pub enum QcOp {
    /// `1/π^level`.
    Gen {
        #[arg(long)]
        pi: String,
        #[arg(long)]
        level: u32,
    },
    Add {
        a: String,
        b: String,
    },
    Neg {
        a: String,
    },
    Scale {
        a: String,
        #[arg(long)]
        alpha: String,
    },
    Order {
        a: String,
    },
    Root {
        a: String,
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Subcommand)]
pub enum C2Op {
    /// Product of one or more elements, left to right.
    Mul {
        #[arg(required = true)]
        gs: Vec<String>,
    },
    Pow {
        g: String,
        #[arg(long)]
        alpha: String,
    },
    Inv {
        g: String,
    },
    /// `[g, h] = g⁻¹h⁻¹gh`.
    Comm {
        g: String,
        h: String,
    },
    /// Some `h` with `h^β` equal to the product of the `g_i^β`.
    Root {
        #[arg(required = true)]
        gs: Vec<String>,
        #[arg(long)]
        beta: String,
    },
}

#[derive(Serialize)]
struct SnfReport<'a> {
    u: &'a PolyMatrix,
    d: &'a PolyMatrix,
    v: &'a PolyMatrix,
    invariant_factors: &'a [Poly],
}

#[derive(Serialize)]
struct DecomposeReport<'a> {
    torsion_factors: &'a [Poly],
    free_rank: usize,
    generators: &'a [ModElement],
}

#[derive(Serialize)]
struct Component {
    prime: MonicPrime,
    subgroup: SubmoduleRepr,
    invariant_factors: Vec<Poly>,
}

/// A separation problem as emitted by `generate`.
#[derive(Serialize, Deserialize)]
pub struct Instance {
    pub module: FPModule,
    pub subgroup: SubmoduleRepr,
    pub element: ModElement,
    pub omega: PrimeSet,
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string(value).expect("serializable"),
        Format::Text => text(),
    }
}

fn joined(ps: &[Poly]) -> String {
    ps.iter()
        .map(Poly::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn run(cmd: Command, format: Format) -> Result<String, Failure> {
    match cmd {
        Command::Snf { matrix } => {
            let m = input::matrix(&matrix)?;
            let s = snf(&m);
            let inv = s.invariant_factors();
            let value = SnfReport {
                u: &s.u,
                d: &s.d,
                v: &s.v,
                invariant_factors: &inv,
            };
            Ok(emit(format, &value, || {
                format!(
                    "D = diag({})\ninvariant factors: {}\nU =\n{}V =\n{}",
                    joined(&s.diagonal()),
                    joined(&inv),
                    s.u,
                    s.v
                )
            }))
        }
        Command::Decompose { module } => {
            let g = input::module(&module)?;
            let dec = canonical_decomposition(&g);
            let gens: Vec<ModElement> = dec
                .cyclic_generators()
                .into_iter()
                .map(ModElement::from_coords)
                .collect();
            let value = DecomposeReport {
                torsion_factors: &dec.torsion_factors,
                free_rank: dec.free_rank,
                generators: &gens,
            };
            Ok(emit(format, &value, || {
                let mut out = g.to_string();
                let orders = dec
                    .torsion_factors
                    .iter()
                    .map(|d| format!("({d})"))
                    .chain((0..dec.free_rank).map(|_| "(0)".to_string()));
                for (i, (e, o)) in gens.iter().zip(orders).enumerate() {
                    out.push_str(&format!("\n  e{} = {e}  order {o}", i + 1));
                }
                out
            }))
        }
        Command::Order { module, element } => {
            let g = input::module(&module)?;
            let e = input::element(&element)?;
            let ord = order_ideal(&g, &e)?;
            Ok(emit(format, &ord, || ord.to_string()))
        }
        Command::Exponent { module } => {
            let g = input::module(&module)?;
            let exp = exponent_ideal(&g);
            Ok(emit(format, &exp, || exp.to_string()))
        }
        Command::Primary { module, prime } => {
            let g = input::module(&module)?;
            let primes = match prime {
                Some(p) => vec![input::prime(&p)?],
                None => torsion_primes(&g)?,
            };
            let mut comps = Vec::new();
            for pi in primes {
                let c = primary_component(&g, &pi)?;
                comps.push(Component {
                    invariant_factors: c.presentation()?.torsion_factors(),
                    subgroup: c.to_repr(),
                    prime: pi,
                });
            }
            Ok(emit(format, &comps, || {
                if comps.is_empty() {
                    return "no torsion".to_string();
                }
                comps
                    .iter()
                    .map(|c| format!("{}: {}", c.prime, structure(&c.invariant_factors)))
                    .collect::<Vec<_>>()
                    .join("\n")
            }))
        }
        Command::Isolate {
            module,
            subgroup,
            sigma,
        } => {
            let g = input::module(&module)?;
            let h = input::subgroup(&subgroup, &g)?;
            let sigma: PrimeSet = input::json(&sigma, "prime set")?;
            let report = is_isolated(&g, &h, &sigma)?;
            Ok(emit(format, &report, || report_text(&report)))
        }
        Command::Isolator {
            module,
            subgroup,
            sigma,
        } => {
            let g = input::module(&module)?;
            let h = input::subgroup(&subgroup, &g)?;
            let sigma: PrimeSet = input::json(&sigma, "prime set")?;
            let iso = isolator(&g, &h, &sigma)?;
            Ok(emit(format, &iso.to_repr(), || iso.to_string()))
        }
        Command::Separate {
            instance,
            module,
            subgroup,
            element,
            omega,
        } => {
            let (g, h, e, omega) = match instance {
                Some(path) => {
                    let mut v: Value = input::json(&path, "instance")?;
                    let g = input::module_value(&mut v["module"])?;
                    let h = input::subgroup_value(v["subgroup"].clone(), &g)?;
                    let e: ModElement = serde_json::from_value(v["element"].clone())
                        .map_err(|e| Failure::input(format!("invalid element: {e}")))?;
                    let omega: PrimeSet = serde_json::from_value(v["omega"].clone())
                        .map_err(|e| Failure::input(format!("invalid prime set: {e}")))?;
                    (g, h, e, omega)
                }
                None => {
                    let g = input::module(&module.expect("required by clap"))?;
                    let h = input::subgroup(&subgroup.expect("required by clap"), &g)?;
                    let e = input::element(&element.expect("required by clap"))?;
                    let omega: PrimeSet =
                        input::json(&omega.expect("required by clap"), "prime set")?;
                    (g, h, e, omega)
                }
            };
            match separate(&g, &h, &e, &omega) {
                Ok(w) => Ok(emit(format, &w, || witness_text(&w))),
                Err(Error::NotIsolated(report)) => Err(Failure::rejected(
                    "subgroup is not isolated for the primes outside omega".into(),
                    Some(emit(format, &*report, || report_text(&report))),
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify { witness } => {
            let w: SeparabilityWitness = input::json(&witness, "witness")?;
            let valid = verify_witness(&w);
            let out = emit(format, &json!({ "valid": valid }), || {
                if valid { "VALID" } else { "INVALID" }.to_string()
            });
            if valid {
                Ok(out)
            } else {
                Err(Failure::rejected(
                    "witness does not check".into(),
                    Some(out),
                ))
            }
        }
        Command::Residual { module, omega } => {
            let g = input::module(&module)?;
            let omega: PrimeSet = input::json(&omega, "prime set")?;
            let (residual, witness) = is_residually_ftomega(&g, &omega)?;
            let value = json!({"residual": residual, "witness": witness});
            Ok(emit(format, &value, || match &witness {
                None => "residually finite ω-type".to_string(),
                Some(w) => format!("not residually finite ω-type: {w} is ω′-torsion"),
            }))
        }
        Command::Qc { op } => {
            let out = qc(op)?;
            Ok(match out {
                QcOut::Elem(a) => emit(format, &a, || a.to_string()),
                QcOut::Order(p) => emit(format, &json!({ "order": p }), || format!("({p})")),
            })
        }
        Command::C2 { rank, op } => {
            let g = c2(op, rank)?;
            Ok(emit(format, &g, || g.to_string()))
        }
        Command::Generate { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (g, h, e, omega) = random::separation_instance(&mut rng);
            let inst = Instance {
                module: g,
                subgroup: h.to_repr(),
                element: e,
                omega,
            };
            // Instances are data for `separate --instance`; always JSON.
            Ok(serde_json::to_string(&inst).expect("serializable"))
        }
    }
}

fn torsion_primes(g: &FPModule) -> Result<Vec<MonicPrime>, Failure> {
    let mut out: Vec<MonicPrime> = Vec::new();
    for d in g.torsion_factors() {
        for p in factor(&d)?.primes() {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
    }
    out.sort();
    Ok(out)
}

fn structure(factors: &[Poly]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|d| format!("Q[x]/({d})"))
        .collect::<Vec<_>>()
        .join(" × ")
}

fn report_text(r: &IsolationReport) -> String {
    match (&r.violating_element, &r.violating_exponent) {
        (Some(g), Some(l)) => format!("not isolated: {g} lies outside H but ({l})·{g} lies in H"),
        _ => "isolated".to_string(),
    }
}

fn witness_text(w: &SeparabilityWitness) -> String {
    let n: Vec<String> =
        w.n.gens
            .columns()
            .iter()
            .map(|c| ModElement::from_coords(c.clone()).to_string())
            .collect();
    format!(
        "N = ⟨{}⟩\nG/N = {}\nω = {}",
        n.join(", "),
        structure(&w.quotient_factors),
        w.omega
    )
}

enum QcOut {
    Elem(QuasiElement),
    Order(Poly),
}

fn quasi(arg: &str) -> Result<QuasiElement, Failure> {
    input::json(arg, "quasicyclic element")
}

fn qc(op: QcOp) -> Result<QcOut, Failure> {
    Ok(match op {
        QcOp::Gen { pi, level } => QcOut::Elem(QuasiElement::generator(input::prime(&pi)?, level)),
        QcOp::Add { a, b } => QcOut::Elem(qc_add(&quasi(&a)?, &quasi(&b)?)?),
        QcOp::Neg { a } => QcOut::Elem(qc_neg(&quasi(&a)?)),
        QcOp::Scale { a, alpha } => QcOut::Elem(qc_scale(&quasi(&a)?, &input::poly(&alpha)?)),
        QcOp::Order { a } => QcOut::Order(qc_order(&quasi(&a)?)),
        QcOp::Root { a, alpha } => QcOut::Elem(qc_root(&quasi(&a)?, &input::poly(&alpha)?)?),
    })
}

/// JSON when it looks like JSON, otherwise a word in `--rank` generators.
fn class2(arg: &str, rank: Option<usize>) -> Result<Class2Element, Failure> {
    let text = input::load(arg)?;
    if text.trim_start().starts_with('{') {
        let g: Class2Element = serde_json::from_str(&text)
            .map_err(|e| Failure::input(format!("invalid class-2 element: {e}")))?;
        return Ok(g);
    }
    let n = rank.ok_or_else(|| Failure::input("words need --rank".into()))?;
    parse_class2(&text, n).map_err(|e| Failure::input(e.to_string()))
}

fn class2_all(args: &[String], rank: Option<usize>) -> Result<Vec<Class2Element>, Failure> {
    args.iter().map(|a| class2(a, rank)).collect()
}

fn c2(op: C2Op, rank: Option<usize>) -> Result<Class2Element, Failure> {
    Ok(match op {
        C2Op::Mul { gs } => {
            let gs = class2_all(&gs, rank)?;
            let mut acc = gs[0].clone();
            for g in &gs[1..] {
                acc = c2_mul(&acc, g)?;
            }
            acc
        }
        C2Op::Pow { g, alpha } => c2_pow(&class2(&g, rank)?, &input::poly(&alpha)?),
        C2Op::Inv { g } => c2_inv(&class2(&g, rank)?),
        C2Op::Comm { g, h } => c2_commutator(&class2(&g, rank)?, &class2(&h, rank)?)?,
        C2Op::Root { gs, beta } => c2_product_root(&class2_all(&gs, rank)?, &input::poly(&beta)?)?,
    })
}
