//! The metric contract and the machinery built on it: axiom verification,
//! the discrete metric, snowflake transforms, and open balls.

mod axioms;
mod descriptor;
mod snowflake;

pub use axioms::{
    verify_metric_axioms, AxiomReport, IdentityFailure, IdentityViolation, PairViolation,
    TripleViolation, MAX_CAMPAIGN_SAMPLE,
};
pub use descriptor::{Distance, Element, MetricDescriptor, MetricKind};
pub use snowflake::{
    snowflake_distance, snowflake_inequality_holds, Alpha, Snowflake, SnowflakeCheck,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Scalar type returned by a metric.
///
/// Implemented for `f64` (floating carriers) and [`Rational`] (exact
/// carriers). Comparisons against an `f64` tolerance are exact for both.
pub trait DistanceValue: Clone + PartialOrd + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// `self > bound`, evaluated without rounding `self`.
    fn exceeds(&self, bound: f64) -> bool;
    /// `self < bound`, evaluated without rounding `self`.
    fn below(&self, bound: f64) -> bool;
}

impl DistanceValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn exceeds(&self, bound: f64) -> bool {
        // NaN counts as a violation.
        !(*self <= bound)
    }
    fn below(&self, bound: f64) -> bool {
        *self < bound
    }
}

impl DistanceValue for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn abs(&self) -> Self {
        Rational::abs(self)
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
    fn exceeds(&self, bound: f64) -> bool {
        match Rational::from_f64(bound) {
            Some(b) => *self > b,
            None => bound.is_nan() || bound == f64::NEG_INFINITY,
        }
    }
    fn below(&self, bound: f64) -> bool {
        match Rational::from_f64(bound) {
            Some(b) => *self < b,
            None => bound == f64::INFINITY,
        }
    }
}

/// A distance function on a carrier set.
pub trait Metric {
    type Point: PartialEq;
    type Value: DistanceValue;

    fn name(&self) -> String;

    /// `d(x, y)`. Errors when a point does not belong to the carrier.
    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Result<Self::Value>;

    /// Whether two sample points are far enough apart that `d(x, y)` must be
    /// positive. Floating carriers override this to require a coordinate gap
    /// larger than `tolerance`; exact carriers use equality.
    fn distinguishable(&self, x: &Self::Point, y: &Self::Point, _tolerance: f64) -> bool {
        x != y
    }
}

impl<M: Metric + ?Sized> Metric for &M {
    type Point = M::Point;
    type Value = M::Value;

    fn name(&self) -> String {
        (**self).name()
    }
    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Result<Self::Value> {
        (**self).distance(x, y)
    }
    fn distinguishable(&self, x: &Self::Point, y: &Self::Point, tolerance: f64) -> bool {
        (**self).distinguishable(x, y, tolerance)
    }
}

/// The discrete metric: 0 on the diagonal, 1 elsewhere.
pub fn discrete_distance<T: PartialEq + ?Sized>(x: &T, y: &T) -> f64 {
    if x == y {
        0.0
    } else {
        1.0
    }
}

/// The discrete metric on any set with equality.
#[derive(Debug, Clone, Copy, Default)]
pub struct Discrete;

impl Discrete {
    pub fn of<T>(&self) -> DiscreteOn<T> {
        DiscreteOn(std::marker::PhantomData)
    }
}

/// [`Discrete`] specialised to a carrier type.
#[derive(Debug, Clone, Copy)]
pub struct DiscreteOn<T>(std::marker::PhantomData<T>);

impl<T: PartialEq> Metric for DiscreteOn<T> {
    type Point = T;
    type Value = f64;

    fn name(&self) -> String {
        "discrete".into()
    }
    fn distance(&self, x: &T, y: &T) -> Result<f64> {
        Ok(discrete_distance(x, y))
    }
}

/// Members of `candidates` strictly inside `B(center, radius)`, in input order.
pub fn open_ball<'a, M: Metric>(
    metric: &M,
    center: &M::Point,
    radius: f64,
    candidates: &'a [M::Point],
) -> Result<Vec<&'a M::Point>> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::Parameter(format!(
            "ball radius must be positive and finite, got {radius}"
        )));
    }
    let mut inside = Vec::new();
    for y in candidates {
        if metric.distance(center, y)?.below(radius) {
            inside.push(y);
        }
    }
    Ok(inside)
}
