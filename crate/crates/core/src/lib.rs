//! Metric-space toolkit.
//!
//! Distance functions on Rⁿ (ℓ₁, ℓ₂, ℓ∞), the rationals with the p-adic
//! metric, the unit sphere, finite graphs and piecewise-linear functions on
//! [0, 1], together with a verifier that checks the metric axioms on finite
//! samples. Exact computations (p-adic distances, geometric series) use
//! arbitrary-precision rationals throughout.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fixtures;
pub mod function;
pub mod graph;
pub mod metric;
pub mod padic;
pub mod rational;
pub mod sampling;
pub mod series;
pub mod sphere;
pub mod vector;

pub use error::{Error, Result};
pub use metric::{
    discrete_distance, open_ball, snowflake_distance, snowflake_inequality_holds,
    verify_metric_axioms, AxiomReport, Distance, DistanceValue, Element, Metric, MetricDescriptor,
    MetricKind,
};
pub use rational::Rational;
