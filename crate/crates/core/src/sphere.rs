//! Great-circle distance on the unit sphere Sⁿ ⊂ Rⁿ⁺¹ and the slice
//! construction used to prove its triangle inequality.
//!
//! For a pole `y` and radius `r`, the slice `Σ = {w : d_S(y, w) = r}` is an
//! (n−1)-sphere centred at `σ = cos(r)·y` with Euclidean radius `sin(r)`,
//! lying in the hyperplane `H = {w : ⟨w, y⟩ = cos r}`. The great circle
//! through `x` and `y` is parametrised by the orthonormal frame
//! `(y, ŷ⊥)` with `ŷ⊥ = normalize(x − ⟨x, y⟩·y)`, so it meets `Σ` at the
//! angles `θ = ±r` from `y`.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::vector::{self, check_dims, NormKind, Point};

/// Below this Euclidean norm of `x + y` the pair is treated as antipodal.
pub const ANTIPODAL_THRESHOLD: f64 = 1e-12;

/// A point of the unit sphere, renormalised at construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "Point")]
pub struct UnitVector(Point);

impl UnitVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        UnitVector::from_point(Point::new(coords)?)
    }

    pub fn from_point(p: Point) -> Result<Self> {
        let len = vector::norm(NormKind::L2, &p);
        if len == 0.0 {
            return Err(Error::Input("the zero vector has no direction".into()));
        }
        let coords = p.into_coords().into_iter().map(|c| c / len).collect();
        Ok(UnitVector(Point::new(coords)?))
    }

    /// The `i`-th standard basis vector of R^`dim`.
    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::Parameter(format!(
                "basis index {i} out of range for R^{dim}"
            )));
        }
        let mut c = vec![0.0; dim];
        c[i] = 1.0;
        UnitVector::new(c)
    }

    pub fn point(&self) -> &Point {
        &self.0
    }

    pub fn coords(&self) -> &[f64] {
        self.0.coords()
    }

    /// Dimension of the ambient space, `n + 1` for Sⁿ.
    pub fn ambient_dim(&self) -> usize {
        self.0.dim()
    }

    pub fn negate(&self) -> UnitVector {
        UnitVector(self.0.scale(-1.0))
    }
}

impl From<UnitVector> for Point {
    fn from(u: UnitVector) -> Point {
        u.0
    }
}

impl fmt::Display for UnitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Euclidean distance `‖x − y‖` in the ambient space.
pub fn chord_distance(x: &UnitVector, y: &UnitVector) -> Result<f64> {
    vector::distance(NormKind::L2, &x.0, &y.0)
}

/// Length of the shorter great-circle arc from `x` to `y`, in `[0, π]`.
///
/// Computed as `2·asin(‖x − y‖/2)`; exactly 0 for identical inputs and
/// exactly π for antipodal ones.
pub fn geodesic_distance(x: &UnitVector, y: &UnitVector) -> Result<f64> {
    check_dims(&x.0, &y.0)?;
    if x == y {
        return Ok(0.0);
    }
    if vector::norm(NormKind::L2, &x.0.add(&y.0)?) <= ANTIPODAL_THRESHOLD {
        return Ok(PI);
    }
    let half_chord = chord_distance(x, y)? / 2.0;
    Ok(2.0 * half_chord.clamp(0.0, 1.0).asin())
}

/// The geodesic metric on the sphere.
#[derive(Debug, Clone, Copy, Default)]
pub struct Geodesic;

impl Metric for Geodesic {
    type Point = UnitVector;
    type Value = f64;

    fn name(&self) -> String {
        "sphere".into()
    }

    fn distance(&self, x: &UnitVector, y: &UnitVector) -> Result<f64> {
        geodesic_distance(x, y)
    }

    fn distinguishable(&self, x: &UnitVector, y: &UnitVector, tolerance: f64) -> bool {
        vector::coordinates_differ(&x.0, &y.0, tolerance)
    }
}

/// The two points where the slice `Σ` around `y` meets the great circle
/// through `x` and `y`, labelled so that `u` is the one nearer `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceExtremals {
    pub u: UnitVector,
    pub v: UnitVector,
    /// `σ = cos(r)·y`, the Euclidean centre of `Σ`.
    pub slice_center: Point,
    /// Geodesic radius `r` of `Σ` about `y`.
    pub slice_radius: f64,
}

impl SliceExtremals {
    /// Euclidean radius of `Σ` inside its hyperplane.
    pub fn euclidean_radius(&self) -> f64 {
        self.slice_radius.sin()
    }
}

/// Unit vector orthogonal to `y` in the plane spanned by `x` and `y`.
fn transverse(x: &UnitVector, y: &UnitVector) -> Result<Point> {
    check_dims(&x.0, &y.0)?;
    let along = x.0.dot(&y.0)?;
    let perp = x.0.sub(&y.0.scale(along))?;
    let len = vector::norm(NormKind::L2, &perp);
    if len <= ANTIPODAL_THRESHOLD {
        return Err(Error::Degenerate(
            "x = ±y, so the plane through x, y and 0 is not unique".into(),
        ));
    }
    Ok(perp.scale(1.0 / len))
}

/// Point at angle `theta` from `y` along the great circle with frame `(y, t)`.
fn on_circle(y: &UnitVector, t: &Point, theta: f64) -> Result<UnitVector> {
    UnitVector::from_point(y.0.scale(theta.cos()).add(&t.scale(theta.sin()))?)
}

pub fn slice_extremal_points(x: &UnitVector, y: &UnitVector, r: f64) -> Result<SliceExtremals> {
    if !(r > 0.0 && r < PI) {
        return Err(Error::Parameter(format!(
            "slice radius must lie in (0, π), got {r}"
        )));
    }
    let t = transverse(x, y)?;
    let mut u = on_circle(y, &t, r)?;
    let mut v = on_circle(y, &t, -r)?;
    if chord_distance(x, &u)? > chord_distance(x, &v)? {
        std::mem::swap(&mut u, &mut v);
    }
    Ok(SliceExtremals {
        u,
        v,
        slice_center: y.0.scale(r.cos()),
        slice_radius: r,
    })
}

/// Orthogonal projection of `x` onto the hyperplane `H` containing the slice
/// of geodesic radius `r` about `y`.
pub fn project_to_slice_plane(x: &UnitVector, y: &UnitVector, r: f64) -> Result<Point> {
    let offset = x.0.dot(&y.0)? - r.cos();
    x.0.sub(&y.0.scale(offset))
}

/// Checks `‖x−u‖ ≤ ‖x−w‖ ≤ ‖x−v‖` and `d_S(x,u) ≤ d_S(x,w) ≤ d_S(x,v)`,
/// each with slack `tolerance`, for a point `w` on the slice.
pub fn sandwich_check(
    x: &UnitVector,
    y: &UnitVector,
    w: &UnitVector,
    extremals: &SliceExtremals,
    tolerance: f64,
) -> Result<bool> {
    let radius_gap = (geodesic_distance(y, w)? - extremals.slice_radius).abs();
    if radius_gap > tolerance {
        return Err(Error::Precondition(format!(
            "w is not on the slice: d_S(y, w) differs from the slice radius by {radius_gap:e}"
        )));
    }
    let le = |a: f64, b: f64| a <= b + tolerance;
    let (cu, cw, cv) = (
        chord_distance(x, &extremals.u)?,
        chord_distance(x, w)?,
        chord_distance(x, &extremals.v)?,
    );
    let (gu, gw, gv) = (
        geodesic_distance(x, &extremals.u)?,
        geodesic_distance(x, w)?,
        geodesic_distance(x, &extremals.v)?,
    );
    Ok(le(cu, cw) && le(cw, cv) && le(gu, gw) && le(gw, gv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn e(dim: usize, i: usize) -> UnitVector {
        UnitVector::basis(dim, i).unwrap()
    }

    fn close(a: &UnitVector, b: &[f64], tol: f64) -> bool {
        a.coords().iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn construction_normalizes() {
        let u = UnitVector::new(vec![3.0, 4.0]).unwrap();
        assert_eq!(u.coords(), &[0.6, 0.8]);
        assert!(matches!(
            UnitVector::new(vec![0.0, 0.0]),
            Err(Error::Input(_))
        ));
        let w = UnitVector::new(vec![1e-300, 2e-300, -3e-300]).unwrap();
        assert!((vector::norm(NormKind::L2, w.point()) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn geodesic_examples() {
        let e1 = e(3, 0);
        assert_eq!(geodesic_distance(&e1, &e1.negate()).unwrap(), PI);
        assert_eq!(geodesic_distance(&e1, &e1).unwrap(), 0.0);
        let d = geodesic_distance(&e1, &e(3, 1)).unwrap();
        assert!((d - FRAC_PI_2).abs() < 1e-15);
        assert!(matches!(
            geodesic_distance(&e1, &e(2, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn chord_examples() {
        let e1 = e(3, 0);
        assert_eq!(chord_distance(&e1, &e1.negate()).unwrap(), 2.0);
        assert_eq!(chord_distance(&e1, &e1).unwrap(), 0.0);
        assert!((chord_distance(&e1, &e(3, 1)).unwrap() - SQRT_2).abs() < 1e-15);
        // sin(π/2) = 2/2
        assert!(
            ((PI / 2.0).sin() - chord_distance(&e1, &e1.negate()).unwrap() / 2.0).abs() < 1e-15
        );
    }

    #[test]
    fn extremals_equator() {
        let (x, y) = (e(3, 0), e(3, 2));
        let s = slice_extremal_points(&x, &y, FRAC_PI_2).unwrap();
        assert!(close(&s.u, &[1.0, 0.0, 0.0], 1e-15));
        assert!(close(&s.v, &[-1.0, 0.0, 0.0], 1e-15));
        assert!(s.slice_center.coords().iter().all(|c| c.abs() < 1e-15));
        assert!((s.euclidean_radius() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn extremals_quarter() {
        let (x, y) = (e(3, 0), e(3, 2));
        let s = slice_extremal_points(&x, &y, FRAC_PI_4).unwrap();
        let h = FRAC_PI_4.sin();
        assert!(close(&s.u, &[h, 0.0, FRAC_PI_4.cos()], 1e-15));
        assert!(close(&s.v, &[-h, 0.0, FRAC_PI_4.cos()], 1e-15));
        for w in [&s.u, &s.v] {
            assert!((geodesic_distance(&y, w).unwrap() - FRAC_PI_4).abs() < 1e-9);
        }
        assert!(geodesic_distance(&x, &s.u).unwrap() <= geodesic_distance(&x, &s.v).unwrap());
    }

    #[test]
    fn extremal_u_is_the_circle_point_nearer_x() {
        let x = UnitVector::new(vec![0.3, -0.5, 0.8, 0.1]).unwrap();
        let y = UnitVector::new(vec![-0.2, 0.4, 0.6, -0.7]).unwrap();
        let t = transverse(&x, &y).unwrap();
        // z on C(x, y), on x's side of y
        let z = on_circle(&y, &t, 0.4).unwrap();
        let r = geodesic_distance(&y, &z).unwrap();
        let s = slice_extremal_points(&x, &y, r).unwrap();
        assert!(close(&s.u, z.coords(), 1e-12));
    }

    #[test]
    fn extremal_errors() {
        let (x, y) = (e(3, 0), e(3, 2));
        for r in [0.0, PI, -1.0, 4.0, f64::NAN] {
            assert!(matches!(
                slice_extremal_points(&x, &y, r),
                Err(Error::Parameter(_))
            ));
        }
        assert!(matches!(
            slice_extremal_points(&x, &x, 1.0),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            slice_extremal_points(&x, &x.negate(), 1.0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn sandwich_examples() {
        let (x, y) = (e(3, 0), e(3, 2));
        let s = slice_extremal_points(&x, &y, FRAC_PI_2).unwrap();
        assert!(sandwich_check(&x, &y, &e(3, 1), &s, 1e-9).unwrap());
        assert!(sandwich_check(&x, &y, &s.u.clone(), &s, 1e-9).unwrap());
        assert!(sandwich_check(&x, &y, &s.v.clone(), &s, 1e-9).unwrap());
        assert!(matches!(
            sandwich_check(&x, &y, &y, &s, 1e-9),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn pythagoras_through_projection() {
        let (x, y) = (e(3, 0), e(3, 2));
        let r = 1.1;
        let xp = project_to_slice_plane(&x, &y, r).unwrap();
        let s = slice_extremal_points(&x, &y, r).unwrap();
        for w in [&s.u, &s.v] {
            let lhs = vector::distance(NormKind::L2, x.point(), w.point())
                .unwrap()
                .powi(2);
            let a = vector::distance(NormKind::L2, x.point(), &xp)
                .unwrap()
                .powi(2);
            let b = vector::distance(NormKind::L2, &xp, w.point())
                .unwrap()
                .powi(2);
            assert!((lhs - a - b).abs() < 1e-12);
        }
    }
}
