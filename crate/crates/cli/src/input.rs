//! Loading JSON documents written by hand or by other subcommands.

use std::fs;
use std::path::Path;

use serde_json::Value;

use gammakit_core::{APoly, BiPoly, ComponentPair};

use crate::CliError;

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(
    v: &Value,
    what: &str,
    path: &Path,
) -> Result<T, CliError> {
    serde_json::from_value(v.clone())
        .map_err(|e| CliError::Invalid(format!("{}: malformed {what}: {e}", path.display())))
}

/// A bare APoly, or any document with an `apoly` field.
pub fn apoly(path: &Path) -> Result<APoly, CliError> {
    let v = read_json(path)?;
    if v.get("coeffs").is_some() {
        parse(&v, "APoly", path)
    } else if let Some(inner) = v.get("apoly") {
        parse(inner, "APoly", path)
    } else {
        Err(CliError::Invalid(format!(
            "{}: expected an APoly (`coeffs`) or a document with `apoly`",
            path.display()
        )))
    }
}

pub enum CrInput {
    Pair(ComponentPair),
    Function(APoly),
}

/// An explicit `{u, v}` pair when present, otherwise an APoly.
pub fn cr_input(path: &Path) -> Result<CrInput, CliError> {
    let v = read_json(path)?;
    if v.get("u").is_some() && v.get("v").is_some() {
        let u = parse(&v["u"], "BiPoly", path)?;
        let w = parse(&v["v"], "BiPoly", path)?;
        return Ok(CrInput::Pair(ComponentPair::new(u, w)));
    }
    if v.get("coeffs").is_some() {
        return Ok(CrInput::Function(parse(&v, "APoly", path)?));
    }
    if let Some(inner) = v.get("apoly") {
        return Ok(CrInput::Function(parse(inner, "APoly", path)?));
    }
    Err(CliError::Invalid(format!(
        "{}: expected `u`/`v` components or an APoly",
        path.display()
    )))
}

/// A bare BiPoly, or the first of `keys` present in the document.
pub fn bipoly(path: &Path, keys: &[&str]) -> Result<BiPoly, CliError> {
    let v = read_json(path)?;
    if v.get("terms").is_some() {
        return parse(&v, "BiPoly", path);
    }
    for k in keys {
        if let Some(inner) = v.get(*k) {
            return parse(inner, "BiPoly", path);
        }
    }
    Err(CliError::Invalid(format!(
        "{}: expected a BiPoly (`terms`) or one of {keys:?}",
        path.display()
    )))
}

/// `a,b,...` as exactly `n` numbers.
pub fn numbers(s: &str, n: usize, flag: &str) -> Result<Vec<f64>, CliError> {
    let xs: Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match xs {
        Ok(xs) if xs.len() == n => Ok(xs),
        _ => Err(CliError::Usage(format!(
            "{flag} expects {n} comma-separated numbers, got `{s}`"
        ))),
    }
}
