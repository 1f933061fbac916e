//! The norms ‖·‖₁, ‖·‖₂, ‖·‖∞ on Rⁿ, their induced metrics, and unit-ball
//! geometry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::sampling;

/// A point of Rⁿ with finite coordinates, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Input("a point needs at least one coordinate".into()));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::Input(format!("non-finite coordinate {bad}")));
        }
        Ok(Point(coords))
    }

    pub fn origin(dim: usize) -> Result<Self> {
        Point::new(vec![0.0; dim])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn scale(&self, t: f64) -> Point {
        Point(self.0.iter().map(|c| t * c).collect())
    }

    pub fn add(&self, other: &Point) -> Result<Point> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Point) -> Result<Point> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn dot(&self, other: &Point) -> Result<f64> {
        check_dims(self, other)?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    fn zip_with(&self, other: &Point, f: impl Fn(f64, f64) -> f64) -> Result<Point> {
        check_dims(self, other)?;
        Ok(Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;
    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn check_dims(x: &Point, y: &Point) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            actual: y.dim(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    L1,
    L2,
    Linf,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [NormKind::L1, NormKind::L2, NormKind::Linf];

    pub fn as_str(self) -> &'static str {
        match self {
            NormKind::L1 => "l1",
            NormKind::L2 => "l2",
            NormKind::Linf => "linf",
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" => Ok(NormKind::L1),
            "l2" => Ok(NormKind::L2),
            "linf" => Ok(NormKind::Linf),
            _ => Err(Error::Parse(format!(
                "unknown norm `{s}` (expected l1, l2 or linf)"
            ))),
        }
    }
}

fn norm_of(kind: NormKind, coords: &[f64]) -> f64 {
    match kind {
        NormKind::L1 => coords.iter().map(|c| c.abs()).sum(),
        NormKind::Linf => coords.iter().fold(0.0, |m, c| m.max(c.abs())),
        NormKind::L2 => {
            // scale by the largest magnitude so squares cannot overflow or underflow
            let m = coords.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
            if m == 0.0 {
                return 0.0;
            }
            let s: f64 = coords.iter().map(|c| (c / m) * (c / m)).sum();
            m * s.sqrt()
        }
    }
}

pub fn norm(kind: NormKind, x: &Point) -> f64 {
    norm_of(kind, x.coords())
}

/// `‖x − y‖` in the chosen norm.
pub fn distance(kind: NormKind, x: &Point, y: &Point) -> Result<f64> {
    check_dims(x, y)?;
    let diff: Vec<f64> = x.0.iter().zip(&y.0).map(|(a, b)| a - b).collect();
    Ok(norm_of(kind, &diff))
}

/// `|‖t·x‖ − |t|·‖x‖|`, zero for a norm up to rounding.
pub fn homogeneity_defect(kind: NormKind, t: f64, x: &Point) -> f64 {
    (norm(kind, &x.scale(t)) - t.abs() * norm(kind, x)).abs()
}

/// Metric on Rⁿ induced by one of the three norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VectorMetric(pub NormKind);

impl Metric for VectorMetric {
    type Point = Point;
    type Value = f64;

    fn name(&self) -> String {
        self.0.as_str().into()
    }

    fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        distance(self.0, x, y)
    }

    fn distinguishable(&self, x: &Point, y: &Point, tolerance: f64) -> bool {
        coordinates_differ(x, y, tolerance)
    }
}

/// Whether some coordinate of `x` and `y` differs by more than `tolerance`.
pub(crate) fn coordinates_differ(x: &Point, y: &Point, tolerance: f64) -> bool {
    x.dim() != y.dim() || x.0.iter().zip(&y.0).any(|(a, b)| (a - b).abs() > tolerance)
}

/// Number of sides of the polygon standing in for the Euclidean disc.
pub const L2_BALL_SIDES: usize = 64;

/// Boundary of the planar ball `{v : ‖v − center‖ = radius}`, traced
/// counterclockwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallPolygon {
    pub metric_kind: NormKind,
    pub center: Point,
    pub radius: f64,
    pub vertices: Vec<[f64; 2]>,
}

pub fn unit_ball_polygon(kind: NormKind, center: &Point, radius: f64) -> Result<BallPolygon> {
    if center.dim() != 2 {
        return Err(Error::Parameter(format!(
            "ball polygons are planar; center has dimension {}",
            center.dim()
        )));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::Parameter(format!(
            "radius must be positive and finite, got {radius}"
        )));
    }
    let (cx, cy) = (center.0[0], center.0[1]);
    let r = radius;
    let offsets: Vec<[f64; 2]> = match kind {
        NormKind::L1 => vec![[r, 0.0], [0.0, r], [-r, 0.0], [0.0, -r]],
        NormKind::Linf => vec![[r, r], [-r, r], [-r, -r], [r, -r]],
        NormKind::L2 => (0..L2_BALL_SIDES)
            .map(|k| {
                let theta = std::f64::consts::TAU * k as f64 / L2_BALL_SIDES as f64;
                [r * theta.cos(), r * theta.sin()]
            })
            .collect(),
    };
    Ok(BallPolygon {
        metric_kind: kind,
        center: center.clone(),
        radius,
        vertices: offsets
            .into_iter()
            .map(|[dx, dy]| [cx + dx, cy + dy])
            .collect(),
    })
}

/// `t·x + (1 − t)·y`
pub fn convex_combination(t: f64, x: &Point, y: &Point) -> Result<Point> {
    x.scale(t).add(&y.scale(1.0 - t))
}

/// Slack allowed on `‖·‖ ≤ 1` in the convexity and symmetry checks.
pub const BALL_MEMBERSHIP_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityViolation {
    pub trial: usize,
    pub x: Point,
    pub y: Point,
    pub t: f64,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub kind: NormKind,
    pub dim: usize,
    pub trials: usize,
    pub convexity_violations: Vec<ConvexityViolation>,
    /// Trials where `‖−x‖` left the closed unit ball.
    pub symmetry_violations: Vec<ConvexityViolation>,
}

impl ConvexityReport {
    pub fn passed(&self) -> bool {
        self.convexity_violations.is_empty() && self.symmetry_violations.is_empty()
    }
}

/// Random test of convexity and origin symmetry of the closed unit ball
/// `{‖x‖ ≤ 1}` in dimension `dim`.
pub fn check_convex_symmetric(
    kind: NormKind,
    dim: usize,
    trials: usize,
    seed: u64,
) -> Result<ConvexityReport> {
    if trials == 0 {
        return Err(Error::Parameter("at least one trial is required".into()));
    }
    if dim == 0 {
        return Err(Error::Parameter("dimension must be positive".into()));
    }
    let mut rng = sampling::rng(seed);
    let mut report = ConvexityReport {
        kind,
        dim,
        trials,
        convexity_violations: Vec::new(),
        symmetry_violations: Vec::new(),
    };
    for trial in 0..trials {
        let x = sampling::point_in_closed_ball(&mut rng, kind, dim);
        let y = sampling::point_in_closed_ball(&mut rng, kind, dim);
        let t = sampling::unit_interval(&mut rng);
        let mid = norm(kind, &convex_combination(t, &x, &y)?);
        if mid > 1.0 + BALL_MEMBERSHIP_SLACK {
            report.convexity_violations.push(ConvexityViolation {
                trial,
                x: x.clone(),
                y: y.clone(),
                t,
                norm: mid,
            });
        }
        let reflected = norm(kind, &x.scale(-1.0));
        if reflected > 1.0 + BALL_MEMBERSHIP_SLACK {
            report.symmetry_violations.push(ConvexityViolation {
                trial,
                x,
                y,
                t,
                norm: reflected,
            });
        }
    }
    Ok(report)
}
