//! Continuous piecewise-linear functions on [0, 1] with the integral metric
//! d₁ and the uniform metric d∞, both evaluated in closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::Metric;

#[derive(Deserialize)]
struct RawPLFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

/// Linear interpolant through `(breakpoints[k], values[k])`, with breakpoints
/// strictly increasing from 0 to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPLFunction")]
pub struct PLFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<RawPLFunction> for PLFunction {
    type Error = Error;
    fn try_from(raw: RawPLFunction) -> Result<Self> {
        PLFunction::new(raw.breakpoints, raw.values)
    }
}

impl PLFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::Input("need at least the breakpoints 0 and 1".into()));
        }
        if breakpoints.len() != values.len() {
            return Err(Error::Input(format!(
                "{} breakpoints but {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints[0] != 0.0 || breakpoints[breakpoints.len() - 1] != 1.0 {
            return Err(Error::Input(
                "breakpoints must start at 0 and end at 1".into(),
            ));
        }
        if !breakpoints.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Input(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Input("function values must be finite".into()));
        }
        Ok(PLFunction {
            breakpoints,
            values,
        })
    }

    pub fn constant(c: f64) -> Result<Self> {
        PLFunction::new(vec![0.0, 1.0], vec![c, c])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn scale(&self, c: f64) -> PLFunction {
        PLFunction {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain { value: x });
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        let bp = &self.breakpoints;
        // first index with bp[k] > x, clamped so that [k-1, k] is a segment
        let k = bp.partition_point(|&b| b <= x).clamp(1, bp.len() - 1);
        let (x0, x1) = (bp[k - 1], bp[k]);
        let (y0, y1) = (self.values[k - 1], self.values[k]);
        if x == x0 {
            return y0;
        }
        if x == x1 {
            return y1;
        }
        y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
    }
}

pub fn plf_eval(f: &PLFunction, x: f64) -> Result<f64> {
    f.eval(x)
}

/// `(t_k, f(t_k) − g(t_k))` over the sorted union of both breakpoint sets.
fn difference_on_merged_grid(f: &PLFunction, g: &PLFunction) -> Vec<(f64, f64)> {
    let (a, b) = (&f.breakpoints, &g.breakpoints);
    let mut grid = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (_, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        grid.push(next);
    }
    grid.into_iter()
        .map(|t| (t, f.eval_unchecked(t) - g.eval_unchecked(t)))
        .collect()
}

/// `∫₀¹ |f − g|`, exact for piecewise-linear inputs up to rounding.
///
/// On each merged segment `f − g` is affine; segments where it changes sign
/// are split at the zero crossing and both triangles integrated separately.
pub fn d1_distance(f: &PLFunction, g: &PLFunction) -> f64 {
    difference_on_merged_grid(f, g)
        .windows(2)
        .map(|w| {
            let ((t0, a), (t1, b)) = (w[0], w[1]);
            let h = t1 - t0;
            let (ma, mb) = (a.abs(), b.abs());
            if (a >= 0.0) == (b >= 0.0) || a == 0.0 || b == 0.0 {
                h * (ma + mb) / 2.0
            } else {
                // triangles of widths h·|a|/(|a|+|b|) and h·|b|/(|a|+|b|)
                h * (ma * ma + mb * mb) / (2.0 * (ma + mb))
            }
        })
        .sum()
}

/// `max₀≤ₓ≤₁ |f − g|`, attained at a merged breakpoint.
pub fn dinf_distance(f: &PLFunction, g: &PLFunction) -> f64 {
    difference_on_merged_grid(f, g)
        .into_iter()
        .fold(0.0, |m, (_, d)| m.max(d.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionMetric {
    D1,
    Dinf,
}

impl Metric for FunctionMetric {
    type Point = PLFunction;
    type Value = f64;

    fn name(&self) -> String {
        match self {
            FunctionMetric::D1 => "fn-d1".into(),
            FunctionMetric::Dinf => "fn-dinf".into(),
        }
    }

    fn distance(&self, f: &PLFunction, g: &PLFunction) -> Result<f64> {
        Ok(match self {
            FunctionMetric::D1 => d1_distance(f, g),
            FunctionMetric::Dinf => dinf_distance(f, g),
        })
    }

    /// Two representations are distinguishable when the functions they
    /// denote differ somewhere by more than `tolerance`.
    fn distinguishable(&self, f: &PLFunction, g: &PLFunction, tolerance: f64) -> bool {
        dinf_distance(f, g) > tolerance
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plf(pts: &[(f64, f64)]) -> PLFunction {
        PLFunction::new(
            pts.iter().map(|p| p.0).collect(),
            pts.iter().map(|p| p.1).collect(),
        )
        .unwrap()
    }

    fn identity() -> PLFunction {
        plf(&[(0.0, 0.0), (1.0, 1.0)])
    }

    #[test]
    fn validation() {
        assert!(PLFunction::new(vec![0.0], vec![1.0]).is_err());
        assert!(PLFunction::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(PLFunction::new(vec![0.1, 1.0], vec![1.0, 2.0]).is_err());
        assert!(PLFunction::new(vec![0.0, 0.9], vec![1.0, 2.0]).is_err());
        assert!(PLFunction::new(vec![0.0, 0.5, 0.5, 1.0], vec![0.0; 4]).is_err());
        assert!(PLFunction::new(vec![0.0, 1.0], vec![f64::NAN, 0.0]).is_err());
        let json = r#"{"breakpoints": [0, 0.5, 1], "values": [0, 1, 0]}"#;
        let tent: PLFunction = serde_json::from_str(json).unwrap();
        assert_eq!(tent.values(), &[0.0, 1.0, 0.0]);
        assert!(serde_json::from_str::<PLFunction>(
            r#"{"breakpoints": [0.5, 1], "values": [0, 0]}"#
        )
        .is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(identity().eval(0.25).unwrap(), 0.25);
        let three = PLFunction::constant(3.0).unwrap();
        for x in [0.0, 0.3, 1.0] {
            assert_eq!(three.eval(x).unwrap(), 3.0);
        }
        let tent = plf(&[(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)]);
        assert_eq!(tent.eval(0.75).unwrap(), 0.5);
        assert_eq!(tent.eval(0.5).unwrap(), 1.0);
        assert_eq!(tent.eval(1.0).unwrap(), 0.0);
        assert_eq!(tent.eval(1.5), Err(Error::Domain { value: 1.5 }));
        assert!(tent.eval(-0.1).is_err());
    }

    #[test]
    fn d1_examples() {
        let f = identity();
        let zero = PLFunction::constant(0.0).unwrap();
        let flip = plf(&[(0.0, 1.0), (1.0, 0.0)]);
        assert_eq!(d1_distance(&f, &f), 0.0);
        assert_eq!(d1_distance(&f, &zero), 0.5);
        assert_eq!(d1_distance(&f, &flip), 0.5);
    }

    #[test]
    fn dinf_examples() {
        let f = identity();
        let zero = PLFunction::constant(0.0).unwrap();
        let flip = plf(&[(0.0, 1.0), (1.0, 0.0)]);
        assert_eq!(dinf_distance(&f, &f), 0.0);
        assert_eq!(dinf_distance(&f, &zero), 1.0);
        assert_eq!(dinf_distance(&f, &flip), 1.0);
    }

    #[test]
    fn different_grids_are_merged() {
        let tent = plf(&[(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)]);
        let step = plf(&[(0.0, 0.0), (0.25, 0.0), (0.75, 1.0), (1.0, 1.0)]);
        // hand integration: |tent − step| on the merged grid 0, .25, .5, .75, 1
        // diffs 0, .5, .5, -.5, -1 ; crossing at 0.625
        let expected = 0.25 * 0.25 + 0.25 * 0.5 + (0.125 * 0.5 / 2.0) * 2.0 + 0.25 * 0.75;
        assert!((d1_distance(&tent, &step) - expected).abs() < 1e-15);
        assert_eq!(dinf_distance(&tent, &step), 1.0);
    }

    #[test]
    fn representation_does_not_matter() {
        let coarse = identity();
        let fine = plf(&[(0.0, 0.0), (0.25, 0.25), (0.5, 0.5), (1.0, 1.0)]);
        assert_eq!(d1_distance(&coarse, &fine), 0.0);
        assert!(!FunctionMetric::D1.distinguishable(&coarse, &fine, 0.0));
    }
}
