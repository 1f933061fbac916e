use serde::Serialize;

use super::{DistanceValue, Metric};
use crate::error::{Error, Result};

/// Snowflake exponent, always in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 1.0 {
            Ok(Alpha(alpha))
        } else {
            Err(Error::Parameter(format!(
                "snowflake exponent must lie in (0, 1], got {alpha}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `base^alpha` for `base >= 0`, with `0 -> 0` and `alpha = 1` returning
    /// `base` unchanged.
    pub fn apply(self, base: f64) -> f64 {
        if base == 0.0 {
            0.0
        } else if self.0 == 1.0 {
            base
        } else {
            (self.0 * base.ln()).exp()
        }
    }
}

pub fn snowflake_distance(base: f64, alpha: f64) -> Result<f64> {
    let alpha = Alpha::new(alpha)?;
    if !(base >= 0.0) || !base.is_finite() {
        return Err(Error::Input(format!(
            "snowflake base must be finite and >= 0, got {base}"
        )));
    }
    Ok(alpha.apply(base))
}

/// Evaluation of `(a+b)^α ≤ a^α + b^α` together with the chain
/// `a + b ≤ (a^α + b^α)·max(a,b)^(1−α) ≤ (a^α + b^α)^(1/α)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnowflakeCheck {
    pub holds: bool,
    /// `(a+b)^α − (a^α + b^α)`; positive means the inequality fails.
    pub defect: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `a + b`
    pub sum: f64,
    /// `(a^α + b^α)·max(a,b)^(1−α)`
    pub middle: f64,
    /// `(a^α + b^α)^(1/α)`
    pub upper: f64,
}

impl SnowflakeCheck {
    /// Whether `sum ≤ middle ≤ upper`, each step allowed a relative slack of
    /// `rel_tolerance` on the larger side.
    pub fn chain_holds(&self, rel_tolerance: f64) -> bool {
        let le = |x: f64, y: f64| x <= y + rel_tolerance * y.abs().max(1.0);
        le(self.sum, self.middle) && le(self.middle, self.upper)
    }
}

pub fn snowflake_inequality_holds(
    a: f64,
    b: f64,
    alpha: f64,
    tolerance: f64,
) -> Result<SnowflakeCheck> {
    let alpha = Alpha::new(alpha)?;
    for v in [a, b] {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::Input(format!(
                "expected a finite nonnegative value, got {v}"
            )));
        }
    }
    let lhs = alpha.apply(a + b);
    let rhs = alpha.apply(a) + alpha.apply(b);
    let defect = lhs - rhs;
    let m = a.max(b);
    let middle = rhs * m.powf(1.0 - alpha.get());
    let upper = rhs.powf(1.0 / alpha.get());
    Ok(SnowflakeCheck {
        holds: defect <= tolerance,
        defect,
        lhs,
        rhs,
        sum: a + b,
        middle,
        upper,
    })
}

/// The metric `d^α` built on top of another metric `d`.
#[derive(Debug, Clone)]
pub struct Snowflake<M> {
    pub inner: M,
    pub alpha: Alpha,
}

impl<M> Snowflake<M> {
    pub fn new(inner: M, alpha: f64) -> Result<Self> {
        Ok(Snowflake {
            inner,
            alpha: Alpha::new(alpha)?,
        })
    }
}

impl<M: Metric> Metric for Snowflake<M> {
    type Point = M::Point;
    type Value = f64;

    fn name(&self) -> String {
        format!("snowflake({}, {})", self.inner.name(), self.alpha.get())
    }

    fn distance(&self, x: &M::Point, y: &M::Point) -> Result<f64> {
        let base = self.inner.distance(x, y)?.to_f64();
        Ok(self.alpha.apply(base.max(0.0)))
    }

    fn distinguishable(&self, x: &M::Point, y: &M::Point, tolerance: f64) -> bool {
        self.inner.distinguishable(x, y, tolerance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_examples() {
        for d in [0.0, 0.3, 1.0, 17.25, 1e300] {
            assert_eq!(snowflake_distance(d, 1.0).unwrap().to_bits(), d.to_bits());
        }
        assert!((snowflake_distance(4.0, 0.5).unwrap() - 2.0).abs() <= 4.0 * f64::EPSILON);
        assert_eq!(snowflake_distance(0.0, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn distance_errors() {
        for alpha in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(
                snowflake_distance(1.0, alpha),
                Err(Error::Parameter(_))
            ));
        }
        assert!(matches!(
            snowflake_distance(-1.0, 0.5),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            snowflake_distance(f64::INFINITY, 0.5),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn strictly_increasing_on_a_grid() {
        let mut prev = snowflake_distance(0.0, 0.3).unwrap();
        for k in 1..2000 {
            let next = snowflake_distance(k as f64 * 0.05, 0.3).unwrap();
            assert!(next > prev);
            prev = next;
        }
    }

    #[test]
    fn inequality_examples() {
        let c = snowflake_inequality_holds(1.0, 1.0, 0.5, 0.0).unwrap();
        assert!(c.holds);
        assert!((c.lhs - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(c.rhs, 2.0);

        for a in [0.0, 0.7, 5.0, 99.0] {
            for alpha in [0.1, 0.5, 1.0] {
                let c = snowflake_inequality_holds(a, 0.0, alpha, 0.0).unwrap();
                assert!(c.holds);
                assert_eq!(c.defect, 0.0);
            }
        }

        let c = snowflake_inequality_holds(9.0, 16.0, 0.5, 1e-12).unwrap();
        assert!(c.holds);
        assert!((c.lhs - 5.0).abs() < 1e-14);
        assert!((c.rhs - 7.0).abs() < 1e-14);
        assert!(c.chain_holds(1e-12));
        // 25 <= 7 * 16^(1/2) = 28 <= 7^2 = 49
        assert!((c.middle - 28.0).abs() < 1e-12);
        assert!((c.upper - 49.0).abs() < 1e-12);
    }

    #[test]
    fn inequality_rejects_negative_inputs() {
        assert!(matches!(
            snowflake_inequality_holds(-1.0, 1.0, 0.5, 0.0),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            snowflake_inequality_holds(1.0, 1.0, 2.0, 0.0),
            Err(Error::Parameter(_))
        ));
    }
}
