//! Run configurations. Scalars are strings in the canonical text form of the field.

use crate::field::{FieldCtx, FieldElem};
use crate::quadform::EType;
use crate::verify::VerifyOptions;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use super::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub name: String,
    #[serde(default)]
    pub field: FieldSpec,
    pub construction: ConstructionSpec,
    #[serde(default)]
    pub verify: VerifyOptions,
    /// Treat warnings (undecided anisotropy, degenerate products) as failures.
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    #[default]
    Rationals,
    FunctionField { vars: Vec<String> },
}

impl FieldSpec {
    pub fn ctx(&self) -> FieldCtx {
        match self {
            FieldSpec::Rationals => FieldCtx::Rationals,
            FieldSpec::FunctionField { vars } => FieldCtx::function_field(vars.iter().cloned()),
        }
    }
}

/// A pointed quadratic space `<diag>` with base point `base`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinSpec {
    pub diag: Vec<String>,
    pub base: Vec<String>,
}

/// `X = L^n` with `h(x, y) = sum conj(x_i) gamma_i y_i`; `l` are Cayley-Dickson parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PseudoSpec {
    pub l: Vec<String>,
    pub gamma: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ETypeSpec {
    pub etype: EType,
    pub a: String,
    pub slots: Vec<String>,
    /// Flat skew coordinates of `u`.
    #[serde(default)]
    pub base_point: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSource {
    PseudoQuadratic(PseudoSpec),
    Etype(ETypeSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RootTarget {
    QuadraticForm(SpinSpec),
    Involutory { l: Vec<String> },
    PseudoQuadratic(PseudoSpec),
    Etype(ETypeSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstructionSpec {
    Composition { params: Vec<String> },
    Tensor { c1: Vec<String>, c2: Vec<String> },
    Spin(SpinSpec),
    HermMat2 { l: Vec<String> },
    Jmodule { of: ModuleSource },
    PseudoQuadratic(PseudoSpec),
    Etype(ETypeSpec),
    Rootgroups { target: RootTarget },
}

impl ConstructionSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ConstructionSpec::Composition { .. } => "composition",
            ConstructionSpec::Tensor { .. } => "tensor",
            ConstructionSpec::Spin(_) => "spin",
            ConstructionSpec::HermMat2 { .. } => "herm_mat2",
            ConstructionSpec::Jmodule { .. } => "jmodule",
            ConstructionSpec::PseudoQuadratic(_) => "pseudo_quadratic",
            ConstructionSpec::Etype(_) => "etype",
            ConstructionSpec::Rootgroups { .. } => "rootgroups",
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::ConfigParse { origin: origin.into(), line: e.line(), column: e.column(), message: e.to_string() })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text, &path.display().to_string())
    }
}

pub(crate) fn scalar(ctx: &FieldCtx, s: &str) -> Result<FieldElem, CliError> {
    ctx.parse(s).map_err(|e| CliError::Construction(format!("cannot parse scalar {s:?}: {e}")))
}

pub(crate) fn scalars(ctx: &FieldCtx, v: &[String]) -> Result<Vec<FieldElem>, CliError> {
    v.iter().map(|s| scalar(ctx, s)).collect()
}
