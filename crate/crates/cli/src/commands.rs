use std::fmt::{Display, Write as _};
use std::path::{Path, PathBuf};

use metricspace::fixtures::SquaredEuclidean;
use metricspace::function::{d1_distance, dinf_distance, PLFunction};
use metricspace::graph::Graph;
use metricspace::metric::IdentityFailure;
use metricspace::padic::PAdicContext;
use metricspace::sampling::{self, SampleSpec};
use metricspace::series::{partial_sum_trace, SeriesMetric};
use metricspace::sphere::{geodesic_distance, sandwich_check, slice_extremal_points};
use metricspace::vector::{unit_ball_polygon, NormKind};
use metricspace::{
    verify_metric_axioms, AxiomReport, Element, Metric, MetricDescriptor, MetricKind,
};
use serde::Serialize;
use serde_json::json;

use crate::input::{self, GraphFile};
use crate::{svg, usage, CommandResult, Format, MetricArgs, SeriesKind, UsageError};

type Outcome = Result<CommandResult, UsageError>;

/// Violations listed per axiom in text output.
const LISTED_VIOLATIONS: usize = 5;

/// Slack for the sandwich checks run by `extremals`.
const SANDWICH_TOLERANCE: f64 = 1e-9;

pub(crate) struct Context {
    pub format: Format,
    pub seed: u64,
}

fn to_json(value: &impl Serialize) -> Result<String, UsageError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

enum Selected {
    Shipped(MetricDescriptor),
    Fixture(SquaredEuclidean),
}

fn load_graph(path: &Path) -> Result<(GraphFile, Graph), UsageError> {
    input::parse_graph(&input::read_file(path)?)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

/// Resolve `--metric` and its parameters. Random graphs for `verify` are
/// drawn from `rng` when no graph file is given.
fn select(
    args: &MetricArgs,
    random_graph: Option<(&mut sampling::SampleRng, usize)>,
) -> Result<Selected, UsageError> {
    let base = match args.metric.as_str() {
        "squared-euclid-fixture" => {
            if args.alpha.is_some() {
                return usage("the fixture cannot be snowflaked");
            }
            return Ok(Selected::Fixture(SquaredEuclidean));
        }
        "l1" | "l2" | "linf" => MetricDescriptor::vector(args.metric.parse::<NormKind>()?),
        "discrete" => MetricDescriptor::discrete(),
        "padic" => match args.p {
            Some(p) => MetricDescriptor::padic(p)?,
            None => return usage("--metric padic needs --p"),
        },
        "sphere" => MetricDescriptor::sphere(),
        "graph" => match (&args.graph, random_graph) {
            (Some(path), _) => MetricDescriptor::graph(load_graph(path)?.1)?,
            (None, Some((rng, n))) => {
                if n == 0 {
                    return usage("--vertices must be at least 1");
                }
                MetricDescriptor::graph(sampling::connected_graph(rng, n, 0.2))?
            }
            (None, None) => return usage("--metric graph needs --graph FILE"),
        },
        "fn-d1" => MetricDescriptor::function(metricspace::function::FunctionMetric::D1),
        "fn-dinf" => MetricDescriptor::function(metricspace::function::FunctionMetric::Dinf),
        other => return usage(format!("unknown metric {other:?}")),
    };
    Ok(Selected::Shipped(match args.alpha {
        Some(alpha) => MetricDescriptor::snowflake(base, alpha)?,
        None => base,
    }))
}

pub(crate) fn dist(
    ctx: &Context,
    args: &MetricArgs,
    points: Option<String>,
    file: Option<PathBuf>,
) -> Outcome {
    let metric = select(args, None)?;
    let kind = match &metric {
        Selected::Shipped(d) => d.kind().clone(),
        Selected::Fixture(_) => MetricKind::Vector(NormKind::L2),
    };
    let raw = match (points, file) {
        (Some(text), None) => input::points_inline(&text, &kind)?,
        (None, Some(path)) => input::points_from_file(&path)?,
        _ => return usage("give the two points with --points or --file"),
    };
    if raw.len() != 2 {
        return usage(format!("expected exactly 2 points, got {}", raw.len()));
    }
    let (x, y) = (
        input::element(&raw[0], &kind)?,
        input::element(&raw[1], &kind)?,
    );
    let (name, text, distance) = match &metric {
        Selected::Shipped(d) => {
            let value = d.distance(&x, &y)?;
            (d.name(), value.to_string(), serde_json::to_value(value)?)
        }
        Selected::Fixture(f) => match (&x, &y) {
            (Element::Vector(a), Element::Vector(b)) => {
                let value = f.distance(a, b)?;
                (f.name(), value.to_string(), json!(value))
            }
            _ => unreachable!("fixture points are vectors"),
        },
    };
    match ctx.format {
        Format::Text => Ok(CommandResult::ok(format!("{text}\n"))),
        Format::Json => Ok(CommandResult::ok(to_json(&json!({
            "metric": name,
            "points": [x, y],
            "distance": distance,
        }))?)),
    }
}

pub(crate) fn verify(
    ctx: &Context,
    args: &MetricArgs,
    samples: usize,
    tolerance: Option<f64>,
    dim: Option<usize>,
    vertices: usize,
) -> Outcome {
    if samples == 0 {
        return usage("--samples must be at least 1");
    }
    let mut rng = sampling::rng(ctx.seed);
    let metric = select(args, Some((&mut rng, vertices)))?;
    match metric {
        Selected::Shipped(descriptor) => {
            let default_dim = match descriptor.kind() {
                MetricKind::SphereGeodesic => 3,
                _ => 2,
            };
            let dim = dim.unwrap_or(default_dim);
            if dim == 0 || (matches!(descriptor.kind(), MetricKind::SphereGeodesic) && dim < 2) {
                return usage(format!(
                    "dimension {dim} is too small for {}",
                    descriptor.name()
                ));
            }
            let tolerance = tolerance.unwrap_or(if descriptor.is_exact() { 0.0 } else { 1e-9 });
            let spec = SampleSpec {
                count: samples,
                dim,
                ..SampleSpec::default()
            };
            let sample = sampling::sample_for(&mut rng, &descriptor, spec);
            let report = verify_metric_axioms(&descriptor, &sample, tolerance)?;
            render_report(ctx, &descriptor.name(), &sample, &report)
        }
        Selected::Fixture(fixture) => {
            let dim = dim.unwrap_or(2);
            if dim == 0 {
                return usage("dimension must be at least 1");
            }
            let sample: Vec<_> = (0..samples)
                .map(|_| sampling::point_in_cube(&mut rng, dim, 10.0))
                .collect();
            let report = verify_metric_axioms(&fixture, &sample, tolerance.unwrap_or(1e-9))?;
            render_report(ctx, &fixture.name(), &sample, &report)
        }
    }
}

fn render_report<P, V>(ctx: &Context, name: &str, sample: &[P], report: &AxiomReport<V>) -> Outcome
where
    P: Display + Serialize,
    V: Display + Serialize,
{
    let out = match ctx.format {
        Format::Json => to_json(&json!({
            "metric": name,
            "seed": ctx.seed,
            "sample": sample,
            "report": report,
        }))?,
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "metric: {name}").unwrap();
            writeln!(s, "seed: {}", ctx.seed).unwrap();
            writeln!(s, "samples: {}", report.samples_tested).unwrap();
            writeln!(s, "tolerance: {:e}", report.tolerance).unwrap();
            let mut offending = Vec::new();
            let mut section = |s: &mut String, label: &str, lines: Vec<(String, Vec<usize>)>| {
                writeln!(s, "{label} violations: {}", lines.len()).unwrap();
                for (line, idx) in lines.iter().take(LISTED_VIOLATIONS) {
                    writeln!(s, "  {line}").unwrap();
                    offending.extend(idx.iter().copied());
                }
                if lines.len() > LISTED_VIOLATIONS {
                    writeln!(s, "  ... and {} more", lines.len() - LISTED_VIOLATIONS).unwrap();
                }
            };
            let nonneg = report
                .nonneg_violations
                .iter()
                .map(|v| {
                    (
                        format!("d(x{}, x{}) = {} < 0", v.i, v.j, v.forward),
                        vec![v.i, v.j],
                    )
                })
                .collect();
            section(&mut s, "nonnegativity", nonneg);
            let identity = report
                .identity_violations
                .iter()
                .map(|v| {
                    let what = match v.failure {
                        IdentityFailure::PositiveOnDiagonal => "positive between equal points",
                        IdentityFailure::ZeroBetweenDistinct => "zero between distinct points",
                    };
                    (
                        format!("d(x{}, x{}) = {} is {what}", v.i, v.j, v.distance),
                        vec![v.i, v.j],
                    )
                })
                .collect();
            section(&mut s, "identity", identity);
            let symmetry = report
                .symmetry_violations
                .iter()
                .map(|v| {
                    (
                        format!(
                            "d(x{i}, x{j}) = {} but d(x{j}, x{i}) = {}",
                            v.forward,
                            v.backward,
                            i = v.i,
                            j = v.j
                        ),
                        vec![v.i, v.j],
                    )
                })
                .collect();
            section(&mut s, "symmetry", symmetry);
            let triangle = report
                .triangle_violations
                .iter()
                .map(|v| {
                    (
                        format!(
                            "d(x{i}, x{k}) = {} > d(x{i}, x{j}) + d(x{j}, x{k}) = {} + {} (excess {})",
                            v.d_ik,
                            v.d_ij,
                            v.d_jk,
                            v.defect,
                            i = v.i,
                            j = v.j,
                            k = v.k
                        ),
                        vec![v.i, v.j, v.k],
                    )
                })
                .collect();
            section(&mut s, "triangle", triangle);
            offending.sort_unstable();
            offending.dedup();
            for i in offending {
                writeln!(s, "x{i} = {}", sample[i]).unwrap();
            }
            writeln!(s, "result: {}", if report.passed { "PASS" } else { "FAIL" }).unwrap();
            s
        }
    };
    Ok(if report.passed {
        CommandResult::ok(out)
    } else {
        CommandResult::violation(out)
    })
}

pub(crate) fn ball(
    ctx: &Context,
    kind: NormKind,
    center: &str,
    radius: f64,
    out: Option<PathBuf>,
) -> Outcome {
    let center_value: serde_json::Value = serde_json::from_str(center)
        .map_err(|e| UsageError(format!("malformed center {center:?}: {e}")))?;
    let center = input::parse_point(&center_value)?;
    let polygon = unit_ball_polygon(kind, &center, radius)?;
    let doc = svg::ball_svg(&polygon);
    if let Some(path) = &out {
        std::fs::write(path, &doc)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }
    let stdout = match (ctx.format, &out) {
        (Format::Text, None) => doc,
        (Format::Text, Some(path)) => format!("wrote {}\n", path.display()),
        (Format::Json, _) => to_json(&json!({
            "polygon": polygon,
            "out": out.as_ref().map(|p| p.display().to_string()),
            "svg": if out.is_none() { Some(doc) } else { None },
        }))?,
    };
    Ok(CommandResult::ok(stdout))
}

pub(crate) fn series(ctx: &Context, x: &str, n: u32, kind: SeriesKind, p: Option<u64>) -> Outcome {
    let x = input::parse_rational(x)?;
    let metric = match (kind, p) {
        (SeriesKind::Standard, None) => SeriesMetric::Standard,
        (SeriesKind::Standard, Some(_)) => return usage("--p only applies to --metric padic"),
        (SeriesKind::Padic, Some(p)) => SeriesMetric::PAdic(PAdicContext::new(p)?),
        (SeriesKind::Padic, None) => return usage("--metric padic needs --p"),
    };
    let trace = partial_sum_trace(&x, n, &metric)?;
    if ctx.format == Format::Json {
        return Ok(CommandResult::ok(to_json(&trace)?));
    }
    let rows: Vec<[String; 3]> =
        std::iter::once(["k".into(), "S_k".into(), "d(S_k, limit)".into()])
            .chain(
                trace
                    .partial_sums
                    .iter()
                    .zip(&trace.distance_to_limit)
                    .enumerate()
                    .map(|(k, (s, d))| [k.to_string(), s.to_string(), d.to_string()]),
            )
            .collect();
    let width = |c: usize| rows.iter().map(|r| r[c].len()).max().unwrap_or(0);
    let (w0, w1) = (width(0), width(1));
    let mut s = format!(
        "x = {}, metric = {}, limit = {}\n",
        trace.x,
        metric.label(),
        trace.limit
    );
    for [k, sum, d] in &rows {
        writeln!(s, "{k:>w0$}  {sum:>w1$}  {d}").unwrap();
    }
    Ok(CommandResult::ok(s))
}

pub(crate) fn graph_dist(ctx: &Context, path: &Path, from: &str, to: &str) -> Outcome {
    let (file, graph) = load_graph(path)?;
    let (v, w) = (file.vertex(from)?, file.vertex(to)?);
    let distance = if graph.is_weighted() {
        json!(graph.weighted_distance(v, w)?)
    } else {
        json!(graph.distance(v, w)?)
    };
    Ok(CommandResult::ok(match ctx.format {
        Format::Text => format!("{distance}\n"),
        Format::Json => to_json(&json!({
            "from": v,
            "to": w,
            "weighted": graph.is_weighted(),
            "distance": distance,
        }))?,
    }))
}

pub(crate) fn fn_dist(ctx: &Context, f: &Path, g: &Path) -> Outcome {
    let f: PLFunction = input::read_json(f)?;
    let g: PLFunction = input::read_json(g)?;
    let (d1, dinf) = (d1_distance(&f, &g), dinf_distance(&f, &g));
    Ok(CommandResult::ok(match ctx.format {
        Format::Text => format!("d1 = {d1}\ndinf = {dinf}\n"),
        Format::Json => to_json(&json!({ "d1": d1, "dinf": dinf }))?,
    }))
}

pub(crate) fn extremals(ctx: &Context, x: &str, y: &str, r: f64, samples: usize) -> Outcome {
    let parse = |text: &str| -> Result<_, UsageError> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| UsageError(format!("malformed point {text:?}: {e}")))?;
        input::parse_unit(&value)
    };
    let (x, y) = (parse(x)?, parse(y)?);
    let ext = slice_extremal_points(&x, &y, r)?;
    let (du, dv) = (
        geodesic_distance(&x, &ext.u)?,
        geodesic_distance(&x, &ext.v)?,
    );

    let mut rng = sampling::rng(ctx.seed);
    let mut failures = Vec::new();
    for k in 0..samples {
        let w = sampling::point_on_slice(&mut rng, &y, r);
        if !sandwich_check(&x, &y, &w, &ext, SANDWICH_TOLERANCE)? {
            failures.push((k, w));
        }
    }

    let out = match ctx.format {
        Format::Json => to_json(&json!({
            "extremals": ext,
            "euclidean_radius": ext.euclidean_radius(),
            "d_xu": du,
            "d_xv": dv,
            "sandwich_samples": samples,
            "sandwich_failures": failures.iter().map(|(_, w)| w).collect::<Vec<_>>(),
        }))?,
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "u = {}", ext.u).unwrap();
            writeln!(s, "v = {}", ext.v).unwrap();
            writeln!(s, "slice center = {}", ext.slice_center).unwrap();
            writeln!(
                s,
                "slice radius = {} (euclidean {})",
                ext.slice_radius,
                ext.euclidean_radius()
            )
            .unwrap();
            writeln!(s, "d(x, u) = {du}").unwrap();
            writeln!(s, "d(x, v) = {dv}").unwrap();
            if samples > 0 {
                writeln!(
                    s,
                    "sandwich checks: {} passed, {} failed",
                    samples - failures.len(),
                    failures.len()
                )
                .unwrap();
                for (k, w) in &failures {
                    writeln!(s, "  sample {k}: w = {w}").unwrap();
                }
            }
            s
        }
    };
    Ok(if failures.is_empty() {
        CommandResult::ok(out)
    } else {
        CommandResult::violation(out)
    })
}
