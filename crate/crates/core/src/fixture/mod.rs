//! JSON fixture documents and the models built from them.

pub mod expr;

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use expr::{parse_expression, parse_rational, ExprError, ExprErrorKind};

use crate::algebra::{RatFun, Rational, RfMatrix};
use crate::error::Error;
use crate::exterior::{EndoField, Form, MetricField, Space, SpaceKind, SpaceRef};
use crate::pair::ContactPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Chart,
    Lie,
}

/// One term `coeff · ω^i ∧ ω^j` of a structure equation, 1-based with `i < j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureTerm {
    pub i: usize,
    pub j: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureDoc {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub backend: Backend,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<String>>,
    /// `dω^k` per covector name; covectors without an entry are closed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_equations: Option<BTreeMap<String, Vec<StructureTerm>>>,
    pub alpha1: BTreeMap<String, String>,
    pub alpha2: BTreeMap<String, String>,
    #[serde(rename = "type")]
    pub pair_type: [usize; 2],
    /// `phi[r][c]` is component `r` of `φ(e_c)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux_metric: Option<Vec<Vec<String>>>,
    pub sample_points: Vec<Vec<String>>,
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("expression error in {path}: {source}")]
    Expression { path: String, source: ExprError },
    #[error("invalid model: {0}")]
    Model(#[from] Error),
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> FixtureError {
    FixtureError::Schema { path: path.into(), message: message.into() }
}

/// A fixture with its constructed objects.
#[derive(Clone, Debug)]
pub struct Model {
    pub doc: FixtureDoc,
    pub space: SpaceRef,
    pub pair: ContactPair,
    pub phi: Option<EndoField>,
    pub metric: Option<MetricField>,
    pub aux_metric: Option<MetricField>,
}

const BUNDLED: &[(&str, &str)] = &[
    ("local_model_1_1", include_str!("../../fixtures/local_model_1_1.json")),
    ("r6_example", include_str!("../../fixtures/r6_example.json")),
    ("nilpotent_g6", include_str!("../../fixtures/nilpotent_g6.json")),
    ("degenerate_pair", include_str!("../../fixtures/degenerate_pair.json")),
];

pub fn bundled_names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

/// Source text of a bundled fixture, by name with or without `.json`.
pub fn bundled(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load_bundled(name: &str) -> Result<Model, FixtureError> {
    let src = bundled(name).ok_or_else(|| FixtureError::Io { path: name.into(), message: "no such bundled fixture".into() })?;
    parse_fixture(src)
}

/// Load from disk. `bundled:NAME`, or a missing path whose file name is a
/// bundled fixture, resolves to the bundled copy.
pub fn load_fixture(path: impl AsRef<Path>) -> Result<Model, FixtureError> {
    let path = path.as_ref();
    let shown = path.display().to_string();
    if let Some(name) = shown.strip_prefix("bundled:") {
        return load_bundled(name);
    }
    match std::fs::read_to_string(path) {
        Ok(src) => parse_fixture(&src),
        Err(e) => {
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
            match bundled(name) {
                Some(src) if !path.exists() => parse_fixture(src),
                _ => Err(FixtureError::Io { path: shown, message: e.to_string() }),
            }
        }
    }
}

pub fn parse_doc(src: &str) -> Result<FixtureDoc, FixtureError> {
    let de = &mut serde_json::Deserializer::from_str(src);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema(if path.is_empty() { ".".into() } else { path }, e.into_inner().to_string())
    })
}

pub fn parse_fixture(src: &str) -> Result<Model, FixtureError> {
    build_model(parse_doc(src)?)
}

fn expr(text: &str, names: &[String], path: String) -> Result<RatFun, FixtureError> {
    parse_expression(text, names).map_err(|source| FixtureError::Expression { path, source })
}

fn parse_matrix(rows: &[Vec<String>], n: usize, names: &[String], field: &str) -> Result<RfMatrix, FixtureError> {
    if rows.len() != n {
        return Err(schema(field, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(schema(format!("{field}[{r}]"), format!("expected {n} entries, found {}", row.len())));
        }
        out.push(row.iter().enumerate().map(|(c, t)| expr(t, names, format!("{field}[{r}][{c}]"))).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(RfMatrix::from_rows(out))
}

fn build_space(doc: &FixtureDoc) -> Result<SpaceRef, FixtureError> {
    let n = doc.dimension;
    match doc.backend {
        Backend::Chart => {
            let names = doc.coordinates.as_ref().ok_or_else(|| schema("coordinates", "required for the chart backend"))?;
            if names.len() != n {
                return Err(schema("coordinates", format!("{} names for dimension {n}", names.len())));
            }
            if doc.structure_equations.is_some() {
                return Err(schema("structure_equations", "only allowed for the lie backend"));
            }
            Ok(Space::chart(names.clone())?)
        }
        Backend::Lie => {
            let names = doc.frame.as_ref().ok_or_else(|| schema("frame", "required for the lie backend"))?;
            if names.len() != n {
                return Err(schema("frame", format!("{} names for dimension {n}", names.len())));
            }
            let mut diffs = vec![Vec::new(); n];
            for (key, terms) in doc.structure_equations.iter().flatten() {
                let k = names.iter().position(|x| x == key).ok_or_else(|| schema(format!("structure_equations.{key}"), "unknown covector"))?;
                for (t, term) in terms.iter().enumerate() {
                    let path = format!("structure_equations.{key}[{t}]");
                    if term.i < 1 || term.j > n || term.i >= term.j {
                        return Err(schema(path, format!("need 1 <= i < j <= {n}, found ({}, {})", term.i, term.j)));
                    }
                    let c = parse_rational(&term.coeff).map_err(|source| FixtureError::Expression { path: format!("{path}.coeff"), source })?;
                    diffs[k].push((term.i - 1, term.j - 1, c));
                }
            }
            Ok(Space::lie_from_differentials(names.clone(), &diffs)?)
        }
    }
}

fn build_one_form(space: &SpaceRef, map: &BTreeMap<String, String>, field: &str) -> Result<Form, FixtureError> {
    let n = space.dim();
    let names = space.names();
    let mut coeffs = vec![RatFun::zero(); n];
    for (key, text) in map {
        let a = (0..n).find(|&a| space.covector_name(a) == *key).ok_or_else(|| schema(format!("{field}.{key}"), "unknown covector"))?;
        coeffs[a] = expr(text, if space.is_chart() { names } else { &[] }, format!("{field}.{key}"))?;
    }
    Ok(Form::one_form(space, coeffs)?)
}

pub fn build_model(doc: FixtureDoc) -> Result<Model, FixtureError> {
    let space = build_space(&doc)?;
    let n = space.dim();
    let names: Vec<String> = if space.is_chart() { space.names().to_vec() } else { Vec::new() };
    let alpha1 = build_one_form(&space, &doc.alpha1, "alpha1")?;
    let alpha2 = build_one_form(&space, &doc.alpha2, "alpha2")?;
    if doc.sample_points.is_empty() {
        return Err(schema("sample_points", "at least one sample point is required"));
    }
    let mut points = Vec::with_capacity(doc.sample_points.len());
    for (p, pt) in doc.sample_points.iter().enumerate() {
        if space.is_chart() && pt.len() != n {
            return Err(schema(format!("sample_points[{p}]"), format!("expected {n} coordinates, found {}", pt.len())));
        }
        let v = pt
            .iter()
            .enumerate()
            .map(|(c, t)| parse_rational(t).map_err(|source| FixtureError::Expression { path: format!("sample_points[{p}][{c}]"), source }))
            .collect::<Result<Vec<Rational>, _>>()?;
        points.push(v);
    }
    let [h, k] = doc.pair_type;
    let pair = ContactPair::new(&space, alpha1, alpha2, (h, k), points)?;
    let phi = match &doc.phi {
        Some(m) => Some(EndoField::new(&space, parse_matrix(m, n, &names, "phi")?)?),
        None => None,
    };
    let metric = match &doc.metric {
        Some(m) => Some(MetricField::new(&space, parse_matrix(m, n, &names, "metric")?)?),
        None => None,
    };
    let aux_metric = match &doc.aux_metric {
        Some(m) => Some(MetricField::new(&space, parse_matrix(m, n, &names, "aux_metric")?)?),
        None => None,
    };
    Ok(Model { doc, space, pair, phi, metric, aux_metric })
}

impl Model {
    pub fn id(&self) -> &str {
        &self.doc.id
    }

    /// Serialize the constructed objects (not the source text) back to a document.
    pub fn to_doc(&self) -> FixtureDoc {
        let space = &self.space;
        let n = space.dim();
        let show = |f: &RatFun| space.show(f);
        let one_form = |f: &Form| -> BTreeMap<String, String> {
            f.components().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(a, c)| (space.covector_name(a), show(c))).collect()
        };
        let matrix = |m: &RfMatrix| -> Vec<Vec<String>> { (0..n).map(|r| (0..n).map(|c| show(&m[(r, c)])).collect()).collect() };
        let (coordinates, frame, structure_equations) = match space.kind() {
            SpaceKind::Chart => (Some(space.names().to_vec()), None, None),
            SpaceKind::LieFrame { constants } => {
                let mut eqs = BTreeMap::new();
                for (k, ck) in constants.iter().enumerate() {
                    let mut terms = Vec::new();
                    for i in 0..n {
                        for j in i + 1..n {
                            let a = -ck[i][j].clone();
                            if !num_traits::Zero::is_zero(&a) {
                                terms.push(StructureTerm { i: i + 1, j: j + 1, coeff: a.to_string() });
                            }
                        }
                    }
                    if !terms.is_empty() {
                        eqs.insert(space.names()[k].clone(), terms);
                    }
                }
                (None, Some(space.names().to_vec()), Some(eqs))
            }
        };
        FixtureDoc {
            id: self.doc.id.clone(),
            description: self.doc.description.clone(),
            backend: if space.is_chart() { Backend::Chart } else { Backend::Lie },
            dimension: n,
            coordinates,
            frame,
            structure_equations,
            alpha1: one_form(self.pair.alpha(1)),
            alpha2: one_form(self.pair.alpha(2)),
            pair_type: [self.pair.h(), self.pair.k()],
            phi: self.phi.as_ref().map(|p| matrix(p.matrix())),
            metric: self.metric.as_ref().map(|g| matrix(g.matrix())),
            aux_metric: self.aux_metric.as_ref().map(|g| matrix(g.matrix())),
            sample_points: self.pair.sample_points().iter().map(|p| p.iter().map(ToString::to_string).collect()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }
}
