use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::{discrete_distance, Alpha, DistanceValue, Metric};
use crate::error::{Error, Result};
use crate::function::{FunctionMetric, PLFunction};
use crate::graph::Graph;
use crate::padic::PAdicContext;
use crate::rational::Rational;
use crate::sphere::{Geodesic, UnitVector};
use crate::vector::{NormKind, Point, VectorMetric};

/// Every metric the toolkit ships, with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricKind {
    Vector(NormKind),
    Discrete,
    PAdic(PAdicContext),
    SphereGeodesic,
    Graph(Arc<Graph>),
    Function(FunctionMetric),
    Snowflake {
        inner: Box<MetricKind>,
        alpha: Alpha,
    },
}

impl MetricKind {
    fn label(&self) -> String {
        match self {
            MetricKind::Vector(k) => k.as_str().into(),
            MetricKind::Discrete => "discrete".into(),
            MetricKind::PAdic(ctx) => format!("padic({})", ctx.prime()),
            MetricKind::SphereGeodesic => "sphere".into(),
            MetricKind::Graph(g) if g.is_weighted() => "weighted-graph".into(),
            MetricKind::Graph(_) => "graph".into(),
            MetricKind::Function(m) => m.name(),
            MetricKind::Snowflake { inner, alpha } => {
                format!("snowflake({}, {})", inner.label(), alpha.get())
            }
        }
    }
}

/// A named metric. Implements [`Metric`] over the [`Element`] carrier, so
/// any shipped metric can be driven through one interface.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricDescriptor {
    name: String,
    kind: MetricKind,
}

impl MetricDescriptor {
    fn from_kind(kind: MetricKind) -> Self {
        MetricDescriptor {
            name: kind.label(),
            kind,
        }
    }

    pub fn vector(kind: NormKind) -> Self {
        Self::from_kind(MetricKind::Vector(kind))
    }

    pub fn discrete() -> Self {
        Self::from_kind(MetricKind::Discrete)
    }

    /// Fails unless `p` is prime.
    pub fn padic(p: u64) -> Result<Self> {
        Ok(Self::from_kind(MetricKind::PAdic(PAdicContext::new(p)?)))
    }

    pub fn sphere() -> Self {
        Self::from_kind(MetricKind::SphereGeodesic)
    }

    /// Fails for disconnected graphs, on which path length is not a metric.
    pub fn graph(graph: impl Into<Arc<Graph>>) -> Result<Self> {
        let graph = graph.into();
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(Self::from_kind(MetricKind::Graph(graph)))
    }

    pub fn function(metric: FunctionMetric) -> Self {
        Self::from_kind(MetricKind::Function(metric))
    }

    /// `d^alpha`; fails unless `0 < alpha ≤ 1`.
    pub fn snowflake(inner: MetricDescriptor, alpha: f64) -> Result<Self> {
        let alpha = Alpha::new(alpha)?;
        Ok(Self::from_kind(MetricKind::Snowflake {
            inner: Box::new(inner.kind),
            alpha,
        }))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn kind(&self) -> &MetricKind {
        &self.kind
    }

    /// Whether distances are computed without rounding, so that a campaign
    /// can run at tolerance 0.
    pub fn is_exact(&self) -> bool {
        match &self.kind {
            MetricKind::PAdic(_) | MetricKind::Discrete => true,
            MetricKind::Graph(g) => !g.is_weighted(),
            _ => false,
        }
    }
}

/// A point of any shipped carrier.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Element {
    Vector(Point),
    Token(String),
    Rational(Rational),
    Unit(UnitVector),
    Vertex(usize),
    Function(PLFunction),
}

impl Element {
    fn carrier(&self) -> &'static str {
        match self {
            Element::Vector(_) => "a vector",
            Element::Token(_) => "a token",
            Element::Rational(_) => "a rational",
            Element::Unit(_) => "a unit vector",
            Element::Vertex(_) => "a vertex",
            Element::Function(_) => "a function",
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vector(p) => p.fmt(f),
            Element::Token(t) => f.write_str(t),
            Element::Rational(q) => q.fmt(f),
            Element::Unit(u) => u.fmt(f),
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Function(g) => {
                write!(f, "pl(")?;
                for (i, (x, y)) in g.breakpoints().iter().zip(g.values()).enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}:{y}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A distance value: floating for real metrics, exact for rational ones.
#[derive(Debug, Clone)]
pub enum Distance {
    Real(f64),
    Exact(Rational),
}

impl Distance {
    pub fn as_f64(&self) -> f64 {
        match self {
            Distance::Real(x) => *x,
            Distance::Exact(q) => q.to_f64(),
        }
    }

    fn exact_of(&self) -> Option<Rational> {
        match self {
            Distance::Real(x) => Rational::from_f64(*x),
            Distance::Exact(q) => Some(q.clone()),
        }
    }
}

impl PartialEq for Distance {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Distance::Real(a), Distance::Real(b)) => a.partial_cmp(b),
            (Distance::Exact(a), Distance::Exact(b)) => a.partial_cmp(b),
            _ => self.exact_of()?.partial_cmp(&other.exact_of()?),
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Real(x) => write!(f, "{x}"),
            Distance::Exact(q) => write!(f, "{q}"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Real(x) => serializer.serialize_f64(*x),
            Distance::Exact(q) => q.serialize(serializer),
        }
    }
}

impl DistanceValue for Distance {
    fn zero() -> Self {
        Distance::Real(0.0)
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Distance::Exact(a), Distance::Exact(b)) => Distance::Exact(a + b),
            _ => Distance::Real(self.as_f64() + other.as_f64()),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (Distance::Exact(a), Distance::Exact(b)) => Distance::Exact(a - b),
            (Distance::Real(z), Distance::Exact(b)) if *z == 0.0 => Distance::Exact(-b),
            _ => Distance::Real(self.as_f64() - other.as_f64()),
        }
    }

    fn abs(&self) -> Self {
        match self {
            Distance::Real(x) => Distance::Real(x.abs()),
            Distance::Exact(q) => Distance::Exact(q.abs()),
        }
    }

    fn to_f64(&self) -> f64 {
        self.as_f64()
    }

    fn exceeds(&self, bound: f64) -> bool {
        match self {
            Distance::Real(x) => x.exceeds(bound),
            Distance::Exact(q) => q.exceeds(bound),
        }
    }

    fn below(&self, bound: f64) -> bool {
        match self {
            Distance::Real(x) => x.below(bound),
            Distance::Exact(q) => q.below(bound),
        }
    }
}

fn kind_distance(kind: &MetricKind, name: &str, x: &Element, y: &Element) -> Result<Distance> {
    let mismatch = |e: &Element| Error::CarrierMismatch {
        metric: name.to_string(),
        found: e.carrier().to_string(),
    };
    let pair_mismatch = || {
        if matches!(x, Element::Token(_)) {
            mismatch(y)
        } else {
            mismatch(x)
        }
    };
    match (kind, x, y) {
        (MetricKind::Vector(k), Element::Vector(a), Element::Vector(b)) => {
            VectorMetric(*k).distance(a, b).map(Distance::Real)
        }
        (MetricKind::Discrete, a, b) => Ok(Distance::Real(discrete_distance(a, b))),
        (MetricKind::PAdic(ctx), Element::Rational(a), Element::Rational(b)) => {
            Ok(Distance::Exact(ctx.distance(a, b)))
        }
        (MetricKind::SphereGeodesic, Element::Unit(a), Element::Unit(b)) => {
            Geodesic.distance(a, b).map(Distance::Real)
        }
        (MetricKind::Graph(g), Element::Vertex(a), Element::Vertex(b)) => {
            if g.is_weighted() {
                g.weighted_distance(*a, *b).map(Distance::Real)
            } else {
                g.distance(*a, *b)
                    .map(|d| Distance::Exact(Rational::from_integer(d)))
            }
        }
        (MetricKind::Function(m), Element::Function(f), Element::Function(g)) => {
            m.distance(f, g).map(Distance::Real)
        }
        (MetricKind::Snowflake { inner, alpha }, a, b) => {
            let base = kind_distance(inner, name, a, b)?.as_f64();
            Ok(Distance::Real(alpha.apply(base.max(0.0))))
        }
        (MetricKind::Vector(_), Element::Vector(_), _)
        | (MetricKind::PAdic(_), Element::Rational(_), _)
        | (MetricKind::SphereGeodesic, Element::Unit(_), _)
        | (MetricKind::Graph(_), Element::Vertex(_), _)
        | (MetricKind::Function(_), Element::Function(_), _) => Err(mismatch(y)),
        _ => Err(pair_mismatch()),
    }
}

fn kind_distinguishable(kind: &MetricKind, x: &Element, y: &Element, tolerance: f64) -> bool {
    match (kind, x, y) {
        (MetricKind::Vector(k), Element::Vector(a), Element::Vector(b)) => {
            VectorMetric(*k).distinguishable(a, b, tolerance)
        }
        (MetricKind::SphereGeodesic, Element::Unit(a), Element::Unit(b)) => {
            Geodesic.distinguishable(a, b, tolerance)
        }
        (MetricKind::Function(m), Element::Function(f), Element::Function(g)) => {
            m.distinguishable(f, g, tolerance)
        }
        (MetricKind::Snowflake { inner, .. }, a, b) => kind_distinguishable(inner, a, b, tolerance),
        _ => x != y,
    }
}

impl Metric for MetricDescriptor {
    type Point = Element;
    type Value = Distance;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn distance(&self, x: &Element, y: &Element) -> Result<Distance> {
        kind_distance(&self.kind, &self.name, x, y)
    }

    fn distinguishable(&self, x: &Element, y: &Element, tolerance: f64) -> bool {
        kind_distinguishable(&self.kind, x, y, tolerance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::verify_metric_axioms;

    fn q(s: &str) -> Element {
        Element::Rational(s.parse().unwrap())
    }

    fn v(c: &[f64]) -> Element {
        Element::Vector(Point::new(c.to_vec()).unwrap())
    }

    #[test]
    fn descriptor_invariants() {
        assert!(matches!(
            MetricDescriptor::padic(4),
            Err(Error::Parameter(_))
        ));
        assert!(MetricDescriptor::padic(7).is_ok());
        let l2 = MetricDescriptor::vector(NormKind::L2);
        for alpha in [0.0, 1.01, -1.0] {
            assert!(matches!(
                MetricDescriptor::snowflake(l2.clone(), alpha),
                Err(Error::Parameter(_))
            ));
        }
        let split = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(MetricDescriptor::graph(split), Err(Error::Disconnected));
        let s = MetricDescriptor::snowflake(l2, 0.5).unwrap();
        assert_eq!(s.name(), "snowflake(l2, 0.5)");
    }

    #[test]
    fn dispatches_to_each_module() {
        let l1 = MetricDescriptor::vector(NormKind::L1);
        assert_eq!(
            l1.distance(&v(&[1.0, 2.0]), &v(&[4.0, 6.0])).unwrap(),
            Distance::Real(7.0)
        );
        let p2 = MetricDescriptor::padic(2).unwrap();
        let d = p2.distance(&q("0"), &q("2")).unwrap();
        assert_eq!(d.to_string(), "1/2");
        let sph = MetricDescriptor::sphere();
        let e1 = Element::Unit(UnitVector::basis(3, 0).unwrap());
        let m1 = Element::Unit(UnitVector::new(vec![-1.0, 0.0, 0.0]).unwrap());
        assert_eq!(
            sph.distance(&e1, &m1).unwrap().to_string(),
            "3.141592653589793"
        );
        let snow =
            MetricDescriptor::snowflake(MetricDescriptor::vector(NormKind::L2), 0.5).unwrap();
        let d = snow
            .distance(&v(&[0.0, 0.0]), &v(&[3.0, 4.0]))
            .unwrap()
            .as_f64();
        assert!((d - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn carrier_mismatch_is_typed() {
        let l2 = MetricDescriptor::vector(NormKind::L2);
        assert!(matches!(
            l2.distance(&v(&[1.0]), &q("1/2")),
            Err(Error::CarrierMismatch { .. })
        ));
        assert!(matches!(
            l2.distance(&q("1/2"), &v(&[1.0])),
            Err(Error::CarrierMismatch { .. })
        ));
        let p = MetricDescriptor::padic(3).unwrap();
        assert!(matches!(
            verify_metric_axioms(&p, &[q("1"), v(&[0.5])], 0.0),
            Err(Error::CarrierMismatch { .. })
        ));
        assert!(matches!(
            l2.distance(&v(&[1.0]), &v(&[1.0, 2.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mixed_distance_comparisons_are_exact() {
        let third = Distance::Exact("1/3".parse().unwrap());
        assert!(third < Distance::Real(0.33333334));
        assert!(third > Distance::Real(0.3333333));
        assert_eq!(Distance::Exact(Rational::one()), Distance::Real(1.0));
        assert!(!third.sub(&third).exceeds(0.0));
    }

    #[test]
    fn exactness_flags() {
        assert!(MetricDescriptor::padic(2).unwrap().is_exact());
        assert!(MetricDescriptor::discrete().is_exact());
        assert!(!MetricDescriptor::vector(NormKind::L1).is_exact());
    }
}
