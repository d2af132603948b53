//! Loading command arguments: inline text, a file path, or `-` for stdin.

use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;

use qx_core::fpmod::{parse_element, FPModule, ModElement, Submodule, SubmoduleRepr};
use qx_core::qmatrix::PolyMatrix;
use qx_core::qpoly::{parse_poly, MonicPrime, Poly};

use crate::Failure;

/// The text behind an argument. Anything that looks like a literal is used
/// as is; otherwise an existing file is read.
pub fn load(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    let t = arg.trim_start();
    if t.starts_with(['{', '[', '(', '"']) || !Path::new(arg).is_file() {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Failure::input(format!("reading {arg}: {e}")))
}

pub fn json<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, Failure> {
    let text = load(arg)?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("invalid {what}: {e}")))
}

/// `{"rows","cols","entries"}` or a bare array of rows.
pub fn matrix(arg: &str) -> Result<PolyMatrix, Failure> {
    let v: Value = json(arg, "matrix")?;
    matrix_value(v)
}

fn matrix_value(v: Value) -> Result<PolyMatrix, Failure> {
    let bad = |e: serde_json::Error| Failure::input(format!("invalid matrix: {e}"));
    if !v.is_array() {
        return serde_json::from_value(v).map_err(bad);
    }
    let rows: Vec<Vec<Poly>> = serde_json::from_value(v).map_err(bad)?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Failure::input("invalid matrix: ragged rows".into()));
    }
    let n = rows.len();
    PolyMatrix::new(n, cols, rows.into_iter().flatten().collect()).map_err(Failure::from)
}

/// `{"ngens","relations"}`; `relations` may also be a bare array of rows.
pub fn module(arg: &str) -> Result<FPModule, Failure> {
    let mut v: Value = json(arg, "module")?;
    module_value(&mut v)
}

pub fn module_value(v: &mut Value) -> Result<FPModule, Failure> {
    if let Some(rel) = v.get_mut("relations") {
        if rel.is_array() {
            *rel = serde_json::to_value(matrix_value(rel.take())?).expect("serializable");
        }
    }
    serde_json::from_value(v.take()).map_err(|e| Failure::input(format!("invalid module: {e}")))
}

/// `{"gens": <matrix>}` or an array of elements (each an array of polys).
pub fn subgroup(arg: &str, g: &FPModule) -> Result<Submodule, Failure> {
    let v: Value = json(arg, "subgroup")?;
    subgroup_value(v, g)
}

pub fn subgroup_value(v: Value, g: &FPModule) -> Result<Submodule, Failure> {
    let bad = |e: serde_json::Error| Failure::input(format!("invalid subgroup: {e}"));
    if let Value::Array(_) = v {
        let elems: Vec<ModElement> = serde_json::from_value(v).map_err(bad)?;
        return Ok(Submodule::from_elements(g, &elems)?);
    }
    let repr: SubmoduleRepr = serde_json::from_value(v).map_err(bad)?;
    Ok(Submodule::from_repr(g, repr)?)
}

pub fn element(arg: &str) -> Result<ModElement, Failure> {
    let text = load(arg)?;
    parse_element(&text).map_err(|e| Failure::input(format!("invalid element: {e}")))
}

pub fn poly(arg: &str) -> Result<Poly, Failure> {
    parse_poly(arg).map_err(|e| Failure::input(format!("invalid polynomial: {e}")))
}

pub fn prime(arg: &str) -> Result<MonicPrime, Failure> {
    MonicPrime::parse(arg).map_err(|e| Failure::input(format!("invalid prime: {e}")))
}
