//! JSON surface files.
//!
//! ```json
//! {"basis": ["L","E1","E2"],
//!  "gram": [[1,0,0],[0,-1,0],[0,0,-1]],
//!  "ample": ["3","-1","-1"],
//!  "curves": [{"label": "E1", "class": ["0","1","0"]}],
//!  "canonical": ["-3","1","1"]}
//! ```
//!
//! Gram entries are integers. Class coordinates are rational strings (`"p/q"`)
//! or integers. `canonical` is optional.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use zlab_core::lattice::{DivisorClass, IntersectionLattice};
use zlab_core::scalar::{format_rational, parse_rational};
use zlab_core::surface::NegativeCurve;
use zlab_core::{Error, Rational, SurfaceModel};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coordinate {
    Text(String),
    Int(i64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveEntry {
    pub label: String,
    pub class: Vec<Coordinate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceFile {
    pub basis: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pub ample: Vec<Coordinate>,
    pub curves: Vec<CurveEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<Vec<Coordinate>>,
}

fn coordinates(what: &str, raw: &[Coordinate], rank: usize, issues: &mut Vec<String>) -> Vec<Rational> {
    if raw.len() != rank {
        issues.push(format!("{what}: expected {rank} coordinates, got {}", raw.len()));
    }
    raw.iter()
        .filter_map(|c| match c {
            Coordinate::Int(n) => Some(Rational::from_integer((*n).into())),
            Coordinate::Text(s) => parse_rational(s)
                .map_err(|_| issues.push(format!("{what}: cannot parse {s:?}")))
                .ok(),
        })
        .collect()
}

fn schema_checks(file: &SurfaceFile) -> Vec<String> {
    let n = file.basis.len();
    let mut issues = Vec::new();
    if n == 0 {
        issues.push("basis is empty".into());
    }
    if file.gram.len() != n {
        issues.push(format!("gram has {} rows for a basis of {n}", file.gram.len()));
    }
    for (i, row) in file.gram.iter().enumerate() {
        if row.len() != n {
            issues.push(format!("gram row {i} has {} entries", row.len()));
        }
    }
    for i in 0..file.gram.len() {
        for j in 0..i {
            if file.gram[i].get(j) != file.gram.get(j).and_then(|r| r.get(i)) {
                issues.push(format!("gram is not symmetric at ({i}, {j})"));
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    for b in &file.basis {
        if !seen.insert(b) {
            issues.push(format!("duplicate basis label {b:?}"));
        }
    }
    issues
}

/// Validates a surface file into a model. Structural problems are collected
/// and reported together; geometric checks stop at the first violation.
pub fn parse_surface(json: &str) -> Result<SurfaceModel, CliError> {
    let file: SurfaceFile = serde_json::from_str(json).map_err(|e| CliError::Schema(vec![e.to_string()]))?;
    model_from_file(&file)
}

pub fn model_from_file(file: &SurfaceFile) -> Result<SurfaceModel, CliError> {
    let mut issues = schema_checks(file);
    let n = file.basis.len();
    let ample = coordinates("ample", &file.ample, n, &mut issues);
    let curves: Vec<(String, Vec<Rational>)> = file
        .curves
        .iter()
        .map(|c| (c.label.clone(), coordinates(&format!("curve {}", c.label), &c.class, n, &mut issues)))
        .collect();
    let canonical = file.canonical.as_ref().map(|k| coordinates("canonical", k, n, &mut issues));
    if !issues.is_empty() {
        return Err(CliError::Schema(issues));
    }
    let lattice = Arc::new(IntersectionLattice::new(file.basis.clone(), file.gram.clone()).map_err(geometric)?);
    let class = |coords: Vec<Rational>| DivisorClass::new(&lattice, coords).map_err(geometric);
    let curves = curves
        .into_iter()
        .map(|(label, coords)| Ok(NegativeCurve { label, class: class(coords)? }))
        .collect::<Result<Vec<_>, CliError>>()?;
    let canonical = canonical.map(class).transpose()?;
    SurfaceModel::new(lattice.clone(), class(ample)?, curves, canonical).map_err(geometric)
}

fn geometric(e: Error) -> CliError {
    match e {
        Error::Signature { .. } => CliError::Signature(e.to_string()),
        Error::AmpleWitness(m) => CliError::AmpleWitness(m),
        Error::CurvePairing(m) => CliError::CurvePairing(m),
        other => CliError::Schema(vec![other.to_string()]),
    }
}

fn strings(coords: &[Rational]) -> Vec<Coordinate> {
    coords.iter().map(|c| Coordinate::Text(format_rational(c))).collect()
}

pub fn surface_file(model: &SurfaceModel) -> SurfaceFile {
    SurfaceFile {
        basis: model.lattice().labels().to_vec(),
        gram: model.lattice().gram().to_vec(),
        ample: strings(model.ample().coords()),
        curves: model
            .curves()
            .iter()
            .map(|c| CurveEntry { label: c.label.clone(), class: strings(c.class.coords()) })
            .collect(),
        canonical: model.canonical().map(|k| strings(k.coords())),
    }
}

/// Canonical JSON text: rationals as strings, curves in model order.
pub fn serialize_surface(model: &SurfaceModel) -> String {
    serde_json::to_string(&surface_file(model)).expect("surface files always serialize")
}
