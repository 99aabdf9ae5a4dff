//! Parsing of command-line inputs into core types. Everything is validated
//! here before any core routine runs.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use vogel_core::configs::ConfigurationTable;
use vogel_core::formula::{adjoint_formula, x2k_adn_formula, FactorProduct};
use vogel_core::identity::DEFAULT_SEED;
use vogel_core::qsearch::builtins::{builtin_q33, builtin_q_prop4};
use vogel_core::rational::{parse_rational, parse_rational_list, Rational};
use vogel_core::vogelplane::{distinguished_line, Basis, LinearForm};

use crate::{FactorSource, TableSource};

/// Seed from `VOGEL_SEED` (decimal or 0x-prefixed hex).
pub fn seed() -> Result<u64> {
    match std::env::var("VOGEL_SEED") {
        Ok(s) => {
            let s = s.trim();
            let parsed = match s.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => s.parse(),
            };
            parsed.map_err(|_| anyhow!("VOGEL_SEED must be an unsigned integer, got {s:?}"))
        }
        Err(_) => Ok(DEFAULT_SEED),
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{}: malformed JSON", path.display()))
}

fn params(src: &FactorSource, n: usize, names: &str) -> Result<Vec<Rational>> {
    let text = src.params.as_deref().ok_or_else(|| anyhow!("--params {names} is required"))?;
    let v = parse_rational_list(text)?;
    if v.len() != n {
        bail!("expected {n} parameters ({names}), got {}", v.len());
    }
    Ok(v)
}

pub fn factor(src: &FactorSource) -> Result<FactorProduct> {
    let f = match (&src.builtin, &src.formula) {
        (Some(name), None) => match name.as_str() {
            "adjoint" => adjoint_formula(),
            "x2k" => x2k_adn_formula(src.k, src.n),
            "q33" => {
                let p = params(src, 4, "c1,c2,x,y")?;
                builtin_q33(&p[0], &p[1], &p[2], &p[3], false)?
            }
            "prop4" => {
                let p = params(src, 4, "n,x,x',y")?;
                builtin_q_prop4(&p[0], &p[1], &p[2], &p[3], false)?
            }
            other => bail!("unknown builtin {other:?}; expected adjoint, x2k, q33 or prop4"),
        },
        (None, Some(path)) => read_json::<FactorProduct>(path)?,
        _ => bail!("give exactly one of --builtin or --formula"),
    };
    if src.quantum {
        Ok(f.as_quantum()?)
    } else {
        Ok(f)
    }
}

/// Comma separated line labels; `sl`, `so`, `exc`, `sp` and the labels of
/// the permuted lines (`sl.ab`, …) are accepted.
pub fn lines(text: &str) -> Result<Vec<(String, LinearForm)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|label| Ok((label.to_string(), distinguished_line(label, Basis::Primed)?)))
        .collect()
}

pub fn table(src: &TableSource) -> Result<ConfigurationTable> {
    match (&src.table, &src.table_file) {
        (Some(t), None) => Ok(ConfigurationTable::parse_columns(t)?),
        (None, Some(path)) => read_json(path),
        _ => bail!("give exactly one of --table or --table-file"),
    }
}

pub fn point_coords(text: &str) -> Result<[Rational; 3]> {
    let v = parse_rational_list(text)?;
    <[Rational; 3]>::try_from(v).map_err(|v| anyhow!("a point needs 3 coordinates, got {}", v.len()))
}

pub fn basis(text: &str) -> Result<Basis> {
    match text {
        "unprimed" => Ok(Basis::Unprimed),
        "primed" => Ok(Basis::Primed),
        other => bail!("unknown basis {other:?}; expected unprimed or primed"),
    }
}

pub fn rational(text: &str) -> Result<Rational> {
    Ok(parse_rational(text)?)
}
