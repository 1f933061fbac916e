//! Distance functions that are *not* metrics, kept as counterexamples for
//! exercising the axiom verifier.

use crate::error::Result;
use crate::metric::Metric;
use crate::vector::Point;

/// `(x − y)²` on the real line. Fails the triangle inequality, e.g. on
/// `0, 1, 2`: `4 > 1 + 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SquaredDifference;

impl Metric for SquaredDifference {
    type Point = f64;
    type Value = f64;

    fn name(&self) -> String {
        "squared-difference".into()
    }

    fn distance(&self, x: &f64, y: &f64) -> Result<f64> {
        Ok((x - y) * (x - y))
    }
}

/// Squared Euclidean distance `‖x − y‖₂²` on Rⁿ.
#[derive(Debug, Clone, Copy, Default)]
pub struct SquaredEuclidean;

impl Metric for SquaredEuclidean {
    type Point = Point;
    type Value = f64;

    fn name(&self) -> String {
        "squared-euclid-fixture".into()
    }

    fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        let diff = x.sub(y)?;
        Ok(diff.coords().iter().map(|c| c * c).sum())
    }
}
