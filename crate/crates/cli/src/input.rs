//! Parsing of inline points and of the JSON point, graph and function files.

use std::collections::BTreeMap;
use std::path::Path;

use metricspace::function::PLFunction;
use metricspace::graph::Graph;
use metricspace::sphere::UnitVector;
use metricspace::vector::Point;
use metricspace::{Element, MetricKind, Rational};
use serde::Deserialize;
use serde_json::Value;

use crate::UsageError;

/// Unit vectors given on the command line may be off by rounding only.
const UNIT_SLACK: f64 = 1e-9;

pub(crate) fn read_file(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

pub(crate) fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, UsageError> {
    serde_json::from_str(&read_file(path)?)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
struct PointsFile {
    points: Vec<Value>,
}

pub(crate) fn points_from_file(path: &Path) -> Result<Vec<Value>, UsageError> {
    Ok(read_json::<PointsFile>(path)?.points)
}

/// Split inline input into raw values. Vector carriers use a stream of JSON
/// arrays; scalar carriers use whitespace-separated words.
pub(crate) fn points_inline(text: &str, kind: &MetricKind) -> Result<Vec<Value>, UsageError> {
    match base_kind(kind) {
        MetricKind::Vector(_) | MetricKind::SphereGeodesic | MetricKind::Function(_) => {
            serde_json::Deserializer::from_str(text)
                .into_iter::<Value>()
                .collect::<Result<_, _>>()
                .map_err(|e| UsageError(format!("malformed points {text:?}: {e}")))
        }
        _ => Ok(text
            .split_whitespace()
            .map(|w| Value::String(w.to_string()))
            .collect()),
    }
}

fn base_kind(kind: &MetricKind) -> &MetricKind {
    match kind {
        MetricKind::Snowflake { inner, .. } => base_kind(inner),
        k => k,
    }
}

pub(crate) fn coordinates(value: &Value) -> Result<Vec<f64>, UsageError> {
    Vec::<f64>::deserialize(value)
        .map_err(|_| UsageError(format!("expected a coordinate array, got {value}")))
}

pub(crate) fn parse_point(value: &Value) -> Result<Point, UsageError> {
    Ok(Point::new(coordinates(value)?)?)
}

pub(crate) fn parse_unit(value: &Value) -> Result<UnitVector, UsageError> {
    let coords = coordinates(value)?;
    let len = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (len - 1.0).abs() > UNIT_SLACK {
        return Err(UsageError(format!(
            "{value} is not a unit vector (norm {len})"
        )));
    }
    Ok(UnitVector::new(coords)?)
}

pub(crate) fn parse_rational(text: &str) -> Result<Rational, UsageError> {
    Ok(text.trim().parse()?)
}

fn scalar_text(value: &Value) -> Result<String, UsageError> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(UsageError(format!("expected a scalar, got {other}"))),
    }
}

/// Interpret a raw value as a point of the metric's carrier.
pub(crate) fn element(value: &Value, kind: &MetricKind) -> Result<Element, UsageError> {
    Ok(match base_kind(kind) {
        MetricKind::Vector(_) => Element::Vector(parse_point(value)?),
        MetricKind::SphereGeodesic => Element::Unit(parse_unit(value)?),
        MetricKind::Discrete => Element::Token(scalar_text(value)?),
        MetricKind::PAdic(_) => Element::Rational(parse_rational(&scalar_text(value)?)?),
        MetricKind::Graph(g) => {
            let text = scalar_text(value)?;
            let v: usize = text
                .parse()
                .map_err(|_| UsageError(format!("expected a vertex index, got {text}")))?;
            if v >= g.vertex_count() {
                return Err(metricspace::Error::InvalidVertex {
                    vertex: v,
                    count: g.vertex_count(),
                }
                .into());
            }
            Element::Vertex(v)
        }
        MetricKind::Function(_) => Element::Function(PLFunction::deserialize(value)?),
        MetricKind::Snowflake { .. } => unreachable!("base_kind strips snowflakes"),
    })
}

/// On-disk graph: `{"n": 4, "edges": [[0,1], ...], "weights": {"0-1": 2.5}}`
/// with optional vertex `"names"`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub weights: Option<BTreeMap<String, f64>>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
}

impl GraphFile {
    pub fn build(&self) -> metricspace::Result<Graph> {
        match &self.weights {
            None => Graph::new(self.n, &self.edges),
            Some(raw) => {
                let mut weights = BTreeMap::new();
                for (key, &w) in raw {
                    weights.insert(parse_edge_key(key)?, w);
                }
                Graph::with_weights(self.n, &self.edges, &weights)
            }
        }
    }

    /// Resolve a vertex given by index or by name.
    pub fn vertex(&self, label: &str) -> metricspace::Result<usize> {
        if let Some(i) = self
            .names
            .as_ref()
            .and_then(|ns| ns.iter().position(|n| n == label))
        {
            return Ok(i);
        }
        let v: usize = label
            .parse()
            .map_err(|_| metricspace::Error::Input(format!("unknown vertex {label:?}")))?;
        if v >= self.n {
            return Err(metricspace::Error::InvalidVertex {
                vertex: v,
                count: self.n,
            });
        }
        Ok(v)
    }
}

fn parse_edge_key(key: &str) -> metricspace::Result<(usize, usize)> {
    let bad =
        || metricspace::Error::Parse(format!("weight key {key:?} is not of the form \"u-v\""));
    let (u, v) = key.split_once('-').ok_or_else(bad)?;
    Ok((
        u.trim().parse().map_err(|_| bad())?,
        v.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn parse_graph(text: &str) -> Result<(GraphFile, Graph), String> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| format!("malformed graph: {e}"))?;
    if let Some(names) = &file.names {
        if names.len() != file.n {
            return Err(format!(
                "{} names given for {} vertices",
                names.len(),
                file.n
            ));
        }
    }
    let graph = file.build().map_err(|e| e.to_string())?;
    Ok((file, graph))
}
