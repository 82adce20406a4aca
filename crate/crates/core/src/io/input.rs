//! Reading variety specs and subspace files.

use serde::Deserialize;

use super::SCHEMA_VERSION;
use crate::algebra::{BinaryForm, Field, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::intersect::Threefold;
use crate::quadspace::{LinearSubspace, N};
use crate::varieties::{builtin, expr::parse_poly, ParamSpace, ParamVariety, Q4Divisor};

const Q: Field = Field::Rational;

/// A rational coefficient: `"n/d"`, `"n"`, or a bare JSON integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Text(String),
    Int(i64),
}

impl Coef {
    pub fn scalar(&self) -> Result<Scalar> {
        match self {
            Coef::Text(s) => Scalar::parse_rational(s),
            Coef::Int(n) => Ok(Q.from_i64(*n)),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorJson {
    pub schema_version: Option<u32>,
    pub p: usize,
    pub gp: Vec<Coef>,
    pub g1: Vec<Coef>,
    pub g2: Vec<Coef>,
    pub g3: Vec<Coef>,
    pub g5: Vec<Coef>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamJson {
    pub schema_version: Option<u32>,
    pub space: String,
    pub coords: Vec<String>,
    #[serde(default)]
    pub vars: Option<Vec<String>>,
    #[serde(default)]
    pub name: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinJson {
    pub schema_version: Option<u32>,
    pub builtin: String,
}

/// The three accepted shapes of a variety description.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum VarietySpec {
    Builtin(BuiltinJson),
    Divisor(DivisorJson),
    Param(ParamJson),
}

fn check_version(v: Option<u32>) -> Result<()> {
    match v {
        Some(v) if v != SCHEMA_VERSION => Err(Error::Invalid(format!("unsupported schema_version {v}"))),
        _ => Ok(()),
    }
}

fn form(c: &[Coef], deg: usize, name: &str) -> Result<BinaryForm> {
    if c.len() != deg + 1 {
        return Err(Error::Dimension(format!("{name} needs {} coefficients, got {}", deg + 1, c.len())));
    }
    BinaryForm::new(c.iter().map(Coef::scalar).collect::<Result<_>>()?, Q)
}

/// Named threefolds: the parametrized builtins plus `segre_divisor`.
pub fn named(name: &str) -> Result<Threefold> {
    if name == "segre_divisor" {
        return Ok(Threefold::Divisor(Q4Divisor::segre()));
    }
    Ok(Threefold::Param(builtin(name)?))
}

impl VarietySpec {
    pub fn build(&self) -> Result<Threefold> {
        match self {
            VarietySpec::Builtin(b) => {
                check_version(b.schema_version)?;
                named(&b.builtin)
            }
            VarietySpec::Divisor(d) => {
                check_version(d.schema_version)?;
                if d.p == 0 {
                    return Err(Error::Invalid("p must be at least 1".into()));
                }
                let p = d.p;
                Ok(Threefold::Divisor(Q4Divisor::new(
                    p,
                    form(&d.gp, p, "gp")?,
                    form(&d.g1, p - 1, "g1")?,
                    form(&d.g2, p - 1, "g2")?,
                    form(&d.g3, p - 1, "g3")?,
                    form(&d.g5, p - 1, "g5")?,
                )?))
            }
            VarietySpec::Param(pj) => {
                check_version(pj.schema_version)?;
                let kind = pj.space.parse()?;
                let space = match &pj.vars {
                    Some(v) => ParamSpace::with_vars(kind, &v.iter().map(String::as_str).collect::<Vec<_>>()),
                    None => ParamSpace::new(kind),
                };
                if space.vars.len() != ParamSpace::new(kind).vars.len() {
                    return Err(Error::Dimension(format!("{} takes {} variables", pj.space, ParamSpace::new(kind).vars.len())));
                }
                let coords = pj.coords.iter().map(|c| parse_poly(c, &space.vars)).collect::<Result<Vec<_>>>()?;
                let name = pj.name.clone().unwrap_or_else(|| "custom".into());
                Ok(Threefold::Param(ParamVariety::new(&name, space, coords, None)?))
            }
        }
    }
}

pub fn parse_spec_json(text: &str) -> Result<Threefold> {
    let spec: VarietySpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("variety spec: {e}")))?;
    spec.build()
}

/// `builtin:NAME`, an inline JSON object, or a path to a JSON file.
pub fn parse_spec(arg: &str) -> Result<Threefold> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return named(name);
    }
    if arg.trim_start().starts_with('{') {
        return parse_spec_json(arg);
    }
    parse_spec_json(&read(arg)?)
}

pub fn parse_divisor(arg: &str) -> Result<Q4Divisor> {
    match parse_spec(arg)? {
        Threefold::Divisor(d) => Ok(d),
        Threefold::Param(p) => Err(Error::Invalid(format!("`{}` is not a divisor on Q4", p.name))),
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read `{path}`: {e}")))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum SubspaceJson {
    Object {
        schema_version: Option<u32>,
        rows: Vec<Vec<Coef>>,
        #[serde(default, rename = "dim")]
        _dim: Option<usize>,
    },
    Rows(Vec<Vec<Coef>>),
}

/// A subspace given by spanning rows, each of length 8.
pub fn parse_subspace_json(text: &str) -> Result<LinearSubspace> {
    let s: SubspaceJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("subspace: {e}")))?;
    let rows = match s {
        SubspaceJson::Object { schema_version, rows, .. } => {
            check_version(schema_version)?;
            rows
        }
        SubspaceJson::Rows(r) => r,
    };
    if rows.is_empty() {
        return Ok(LinearSubspace::zero(Q));
    }
    let rows: Vec<Vec<Scalar>> =
        rows.iter().map(|r| r.iter().map(Coef::scalar).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    if let Some(r) = rows.iter().find(|r| r.len() != N) {
        return Err(Error::Dimension(format!("subspace rows need {N} entries, got {}", r.len())));
    }
    LinearSubspace::from_matrix(&Matrix::from_rows(rows, N, Q)?)
}

/// Inline JSON or a path to a JSON file.
pub fn parse_subspace(arg: &str) -> Result<LinearSubspace> {
    if arg.trim_start().starts_with(['{', '[']) {
        return parse_subspace_json(arg);
    }
    parse_subspace_json(&read(arg)?)
}

/// `a,b` as a point of `P^1`.
pub fn parse_pair(arg: &str) -> Result<(Scalar, Scalar)> {
    let (a, b) = arg.split_once(',').ok_or_else(|| Error::Parse(format!("expected `a,b`, got `{arg}`")))?;
    let (a, b) = (Scalar::parse_rational(a)?, Scalar::parse_rational(b)?);
    if a.is_zero() && b.is_zero() {
        return Err(Error::Invalid("(0:0) is not a point of P^1".into()));
    }
    Ok((a, b))
}
