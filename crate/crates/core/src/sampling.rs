//! Seeded random generators for verification campaigns.
//!
//! All generators take an explicit RNG; [`rng`] builds the ChaCha stream
//! used everywhere so that a seed reproduces a campaign bit for bit.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::function::PLFunction;
use crate::graph::Graph;
use crate::metric::{Element, MetricDescriptor, MetricKind};
use crate::rational::Rational;
use crate::sphere::UnitVector;
use crate::vector::{self, NormKind, Point};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on `[0, 1]`.
pub fn unit_interval<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(0.0..=1.0)
}

/// Uniform in the cube `[-half_width, half_width]^dim`.
pub fn point_in_cube<R: Rng + ?Sized>(rng: &mut R, dim: usize, half_width: f64) -> Point {
    let coords = (0..dim)
        .map(|_| rng.random_range(-half_width..=half_width))
        .collect();
    Point::new(coords).expect("finite nonempty coordinates")
}

/// Point of the closed unit ball `{‖x‖ ≤ 1}`: uniform in the cube
/// `[-1, 1]^dim`, rejected until it lands in the ball.
pub fn point_in_closed_ball<R: Rng + ?Sized>(rng: &mut R, kind: NormKind, dim: usize) -> Point {
    loop {
        let p = point_in_cube(rng, dim, 1.0);
        if vector::norm(kind, &p) <= 1.0 {
            return p;
        }
    }
}

/// Rotation-invariant point of S^(ambient_dim − 1), from normalized Gaussians.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, ambient_dim: usize) -> UnitVector {
    loop {
        let coords: Vec<f64> = (0..ambient_dim)
            .map(|_| rng.sample(StandardNormal))
            .collect();
        if let Ok(u) = UnitVector::new(coords) {
            return u;
        }
    }
}

/// A random point of the slice `{w : d_S(y, w) = r}`.
pub fn point_on_slice<R: Rng + ?Sized>(rng: &mut R, y: &UnitVector, r: f64) -> UnitVector {
    loop {
        let z = unit_vector(rng, y.ambient_dim());
        let along = z.point().dot(y.point()).expect("same dimension");
        let perp = z
            .point()
            .sub(&y.point().scale(along))
            .expect("same dimension");
        let len = vector::norm(NormKind::L2, &perp);
        if len < 1e-6 {
            continue;
        }
        let w = y
            .point()
            .scale(r.cos())
            .add(&perp.scale(r.sin() / len))
            .expect("same dimension");
        if let Ok(u) = UnitVector::from_point(w) {
            return u;
        }
    }
}

/// Numerator uniform in `[-10^6, 10^6]`, denominator uniform in `[1, 10^6]`,
/// reduced.
pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let num: i64 = rng.random_range(-1_000_000..=1_000_000);
    let den: i64 = rng.random_range(1..=1_000_000);
    Rational::new(num, den).expect("positive denominator")
}

pub fn integer<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::from_integer(rng.random_range(-1_000_000_i64..=1_000_000))
}

/// Tokens drawn from a small alphabet so that repeats occur.
pub fn token<R: Rng + ?Sized>(rng: &mut R) -> String {
    format!("t{}", rng.random_range(0..20))
}

/// Connected graph on `n` vertices: a random spanning tree plus each
/// remaining pair with probability `extra_edge_prob`.
pub fn connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, extra_edge_prob: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for k in 1..n {
        let parent = order[rng.random_range(0..k)];
        edges.push((parent.min(order[k]), parent.max(order[k])));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !edges.contains(&(a, b)) && rng.random_bool(extra_edge_prob) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n.max(1), &edges).expect("valid simple graph")
}

/// Piecewise-linear function with up to 8 interior breakpoints on the grid
/// `k/1000` and values uniform in `[-1, 1]`.
pub fn pl_function<R: Rng + ?Sized>(rng: &mut R) -> PLFunction {
    let interior = rng.random_range(0..=8);
    let mut ticks: Vec<u32> = (0..interior).map(|_| rng.random_range(1..1000)).collect();
    ticks.sort_unstable();
    ticks.dedup();
    let mut breakpoints = vec![0.0];
    breakpoints.extend(ticks.iter().map(|&k| k as f64 / 1000.0));
    breakpoints.push(1.0);
    let values = breakpoints
        .iter()
        .map(|_| rng.random_range(-1.0..=1.0))
        .collect();
    PLFunction::new(breakpoints, values).expect("valid breakpoints")
}

/// Shape of a random campaign sample for a descriptor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpec {
    pub count: usize,
    /// Ambient dimension for vector and sphere carriers.
    pub dim: usize,
    /// Half-width of the coordinate cube for vector carriers.
    pub half_width: f64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            count: 50,
            dim: 2,
            half_width: 10.0,
        }
    }
}

/// Random points of the descriptor's carrier. Graph samples draw vertices
/// with replacement.
pub fn sample_for<R: Rng + ?Sized>(
    rng: &mut R,
    descriptor: &MetricDescriptor,
    spec: SampleSpec,
) -> Vec<Element> {
    (0..spec.count)
        .map(|_| element_for(rng, descriptor.kind(), spec))
        .collect()
}

fn element_for<R: Rng + ?Sized>(rng: &mut R, kind: &MetricKind, spec: SampleSpec) -> Element {
    match kind {
        MetricKind::Vector(_) => Element::Vector(point_in_cube(rng, spec.dim, spec.half_width)),
        MetricKind::Discrete => Element::Token(token(rng)),
        MetricKind::PAdic(_) => Element::Rational(rational(rng)),
        MetricKind::SphereGeodesic => Element::Unit(unit_vector(rng, spec.dim)),
        MetricKind::Graph(g) => Element::Vertex(rng.random_range(0..g.vertex_count())),
        MetricKind::Function(_) => Element::Function(pl_function(rng)),
        MetricKind::Snowflake { inner, .. } => element_for(rng, inner, spec),
    }
}
