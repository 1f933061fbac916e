use serde::Serialize;

use super::{DistanceValue, Metric};
use crate::error::{Error, Result};

/// Largest sample a single campaign accepts; the triangle check is cubic.
pub const MAX_CAMPAIGN_SAMPLE: usize = 100;

/// A pair `(i, j)` of sample indices whose distances break nonnegativity or
/// symmetry. `defect` is the amount by which the axiom fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairViolation<V> {
    pub i: usize,
    pub j: usize,
    pub forward: V,
    pub backward: V,
    pub defect: V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityFailure {
    /// Identical points at positive distance.
    PositiveOnDiagonal,
    /// Points separated by more than the tolerance at (near) zero distance.
    ZeroBetweenDistinct,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityViolation<V> {
    pub i: usize,
    pub j: usize,
    pub distance: V,
    pub failure: IdentityFailure,
}

/// `d(x_i, x_k) > d(x_i, x_j) + d(x_j, x_k) + tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleViolation<V> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub d_ik: V,
    pub d_ij: V,
    pub d_jk: V,
    pub defect: V,
}

/// Outcome of an axiom-verification campaign on a finite sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport<V> {
    pub samples_tested: usize,
    pub nonneg_violations: Vec<PairViolation<V>>,
    pub identity_violations: Vec<IdentityViolation<V>>,
    pub symmetry_violations: Vec<PairViolation<V>>,
    pub triangle_violations: Vec<TripleViolation<V>>,
    pub tolerance: f64,
    pub passed: bool,
}

impl<V> AxiomReport<V> {
    fn empty(samples_tested: usize, tolerance: f64) -> Self {
        AxiomReport {
            samples_tested,
            nonneg_violations: Vec::new(),
            identity_violations: Vec::new(),
            symmetry_violations: Vec::new(),
            triangle_violations: Vec::new(),
            tolerance,
            passed: true,
        }
    }

    fn refresh(&mut self) {
        self.passed = self.nonneg_violations.is_empty()
            && self.identity_violations.is_empty()
            && self.symmetry_violations.is_empty()
            && self.triangle_violations.is_empty();
    }

    pub fn violation_count(&self) -> usize {
        self.nonneg_violations.len()
            + self.identity_violations.len()
            + self.symmetry_violations.len()
            + self.triangle_violations.len()
    }

    /// Combine reports from disjoint parts of one campaign. Violation lists
    /// are concatenated in argument order, so merging is associative.
    pub fn merge(mut self, other: AxiomReport<V>) -> AxiomReport<V> {
        debug_assert_eq!(self.tolerance, other.tolerance);
        self.samples_tested = self.samples_tested.max(other.samples_tested);
        self.nonneg_violations.extend(other.nonneg_violations);
        self.identity_violations.extend(other.identity_violations);
        self.symmetry_violations.extend(other.symmetry_violations);
        self.triangle_violations.extend(other.triangle_violations);
        self.refresh();
        self
    }
}

/// Check the metric axioms on every pair and every ordered triple of `sample`.
///
/// A violation is recorded only when its defect exceeds `tolerance`; use 0
/// for exact carriers. Results are deterministic in the sample order.
pub fn verify_metric_axioms<M: Metric>(
    metric: &M,
    sample: &[M::Point],
    tolerance: f64,
) -> Result<AxiomReport<M::Value>> {
    if sample.is_empty() {
        return Err(Error::Input(
            "axiom campaign needs a nonempty sample".into(),
        ));
    }
    if sample.len() > MAX_CAMPAIGN_SAMPLE {
        return Err(Error::Parameter(format!(
            "sample of {} exceeds the campaign cap of {MAX_CAMPAIGN_SAMPLE}",
            sample.len()
        )));
    }
    if !(tolerance >= 0.0) || !tolerance.is_finite() {
        return Err(Error::Parameter(format!(
            "tolerance must be finite and nonnegative, got {tolerance}"
        )));
    }

    let n = sample.len();
    let mut table = Vec::with_capacity(n * n);
    for x in sample {
        for y in sample {
            table.push(metric.distance(x, y)?);
        }
    }
    let d = |i: usize, j: usize| &table[i * n + j];

    let mut report = AxiomReport::empty(n, tolerance);

    for i in 0..n {
        for j in 0..n {
            let dij = d(i, j);
            let negated = M::Value::zero().sub(dij);
            if negated.exceeds(tolerance) {
                report.nonneg_violations.push(PairViolation {
                    i,
                    j,
                    forward: dij.clone(),
                    backward: d(j, i).clone(),
                    defect: negated,
                });
            }

            if sample[i] == sample[j] {
                if dij.exceeds(tolerance) {
                    report.identity_violations.push(IdentityViolation {
                        i,
                        j,
                        distance: dij.clone(),
                        failure: IdentityFailure::PositiveOnDiagonal,
                    });
                }
            } else if !dij.exceeds(tolerance)
                && metric.distinguishable(&sample[i], &sample[j], tolerance)
            {
                report.identity_violations.push(IdentityViolation {
                    i,
                    j,
                    distance: dij.clone(),
                    failure: IdentityFailure::ZeroBetweenDistinct,
                });
            }

            if i < j {
                let gap = dij.sub(d(j, i)).abs();
                if gap.exceeds(tolerance) {
                    report.symmetry_violations.push(PairViolation {
                        i,
                        j,
                        forward: dij.clone(),
                        backward: d(j, i).clone(),
                        defect: gap,
                    });
                }
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            let dij = d(i, j);
            for k in 0..n {
                let djk = d(j, k);
                let dik = d(i, k);
                let defect = dik.sub(&dij.add(djk));
                if defect.exceeds(tolerance) {
                    report.triangle_violations.push(TripleViolation {
                        i,
                        j,
                        k,
                        d_ik: dik.clone(),
                        d_ij: dij.clone(),
                        d_jk: djk.clone(),
                        defect,
                    });
                }
            }
        }
    }

    report.refresh();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::SquaredDifference;
    use crate::metric::Discrete;
    use crate::vector::{NormKind, Point, VectorMetric};

    fn pts(list: &[&[f64]]) -> Vec<Point> {
        list.iter()
            .map(|c| Point::new(c.to_vec()).unwrap())
            .collect()
    }

    #[test]
    fn euclidean_plane_sample_passes() {
        let sample = pts(&[&[0.0, 0.0], &[3.0, 4.0], &[1.0, 1.0]]);
        let report = verify_metric_axioms(&VectorMetric(NormKind::L2), &sample, 1e-9).unwrap();
        assert!(report.passed);
        assert_eq!(report.samples_tested, 3);
        assert_eq!(report.violation_count(), 0);
    }

    #[test]
    fn squared_difference_breaks_triangle() {
        let report = verify_metric_axioms(&SquaredDifference, &[0.0, 1.0, 2.0], 0.0).unwrap();
        assert!(!report.passed);
        let v = report
            .triangle_violations
            .iter()
            .find(|v| (v.i, v.j, v.k) == (0, 1, 2))
            .expect("(0,1,2) must be flagged");
        assert_eq!((v.d_ik, v.d_ij, v.d_jk, v.defect), (4.0, 1.0, 1.0, 2.0));
        // (2,1,0) is the mirror image; nothing else fails
        assert_eq!(report.triangle_violations.len(), 2);
        assert!(report.nonneg_violations.is_empty());
        assert!(report.symmetry_violations.is_empty());
    }

    #[test]
    fn discrete_tokens_pass_exactly() {
        let tokens = ["a", "b", "c", "d", "e"].map(String::from);
        let report = verify_metric_axioms(&Discrete.of::<String>(), &tokens, 0.0).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn recorded_violations_exceed_tolerance() {
        let sample: Vec<f64> = (0..12).map(|i| i as f64 * 0.37).collect();
        let tol = 0.5;
        let report = verify_metric_axioms(&SquaredDifference, &sample, tol).unwrap();
        assert!(!report.triangle_violations.is_empty());
        assert!(report.triangle_violations.iter().all(|v| v.defect > tol));
    }

    struct Broken;
    impl Metric for Broken {
        type Point = i32;
        type Value = f64;
        fn name(&self) -> String {
            "broken".into()
        }
        fn distance(&self, x: &i32, y: &i32) -> Result<f64> {
            // asymmetric, negative below the diagonal, positive on it
            Ok((x - y) as f64 + if x == y { 0.5 } else { 0.0 })
        }
    }

    #[test]
    fn each_axiom_is_reported() {
        let report = verify_metric_axioms(&Broken, &[0, 1], 0.0).unwrap();
        assert!(!report.passed);
        assert_eq!(report.nonneg_violations.len(), 1);
        assert_eq!(
            (report.nonneg_violations[0].i, report.nonneg_violations[0].j),
            (0, 1)
        );
        assert_eq!(report.symmetry_violations.len(), 1);
        assert_eq!(report.symmetry_violations[0].defect, 2.0);
        let failures: Vec<_> = report
            .identity_violations
            .iter()
            .map(|v| (v.i, v.j, v.failure))
            .collect();
        assert_eq!(
            failures,
            vec![
                (0, 0, IdentityFailure::PositiveOnDiagonal),
                (0, 1, IdentityFailure::ZeroBetweenDistinct),
                (1, 1, IdentityFailure::PositiveOnDiagonal),
            ]
        );
    }

    struct Collapsing;
    impl Metric for Collapsing {
        type Point = i32;
        type Value = f64;
        fn name(&self) -> String {
            "collapsing".into()
        }
        fn distance(&self, _: &i32, _: &i32) -> Result<f64> {
            Ok(0.0)
        }
    }

    #[test]
    fn zero_distance_between_distinct_points() {
        let report = verify_metric_axioms(&Collapsing, &[1, 2], 0.0).unwrap();
        assert_eq!(report.identity_violations.len(), 2);
        assert!(report
            .identity_violations
            .iter()
            .all(|v| v.failure == IdentityFailure::ZeroBetweenDistinct));
    }

    #[test]
    fn near_duplicates_are_not_identity_violations() {
        let sample = pts(&[&[0.0, 0.0], &[1e-12, 0.0]]);
        let report = verify_metric_axioms(&VectorMetric(NormKind::L1), &sample, 1e-9).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn input_errors() {
        let m = VectorMetric(NormKind::L2);
        assert!(matches!(
            verify_metric_axioms(&m, &[], 0.0),
            Err(Error::Input(_))
        ));
        let mixed = pts(&[&[0.0, 0.0], &[1.0]]);
        assert!(matches!(
            verify_metric_axioms(&m, &mixed, 0.0),
            Err(Error::DimensionMismatch { .. })
        ));
        let one = pts(&[&[0.0]]);
        assert!(matches!(
            verify_metric_axioms(&m, &one, -1.0),
            Err(Error::Parameter(_))
        ));
        let many = vec![one[0].clone(); MAX_CAMPAIGN_SAMPLE + 1];
        assert!(matches!(
            verify_metric_axioms(&m, &many, 0.0),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn merge_is_associative() {
        let r = |xs: &[f64]| verify_metric_axioms(&SquaredDifference, xs, 0.0).unwrap();
        let (a, b, c) = (r(&[0.0, 1.0, 2.0]), r(&[0.0, 0.0]), r(&[5.0, 3.0, 1.0]));
        let left = a.clone().merge(b.clone()).merge(c.clone());
        let right = a.merge(b.merge(c));
        assert_eq!(left, right);
        assert!(!left.passed);
    }
}
