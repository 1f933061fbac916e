//! Deterministic SVG rendering of planar balls.
//!
//! Every number is printed with six decimals, and a negative zero is printed
//! as `0.000000`, so equal inputs give byte-identical files.

use std::fmt::Write;

use metricspace::vector::BallPolygon;

/// Six-decimal fixed formatting without a signed zero.
pub fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// SVG 1.1 document showing the ball boundary and the coordinate axes.
///
/// The view box is the square of half-width `1.5·radius` around the center.
/// Drawing happens inside a `scale(1,-1)` group so that y points up.
pub fn ball_svg(ball: &BallPolygon) -> String {
    let r = ball.radius;
    let (cx, cy) = (ball.center.coords()[0], ball.center.coords()[1]);
    let half = 1.5 * r;
    let (x0, x1) = (cx - half, cx + half);
    let (y0, y1) = (cy - half, cy + half);
    let stroke = fmt6(r / 100.0);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"400\" height=\"400\" \
         viewBox=\"{} {} {} {}\">",
        fmt6(x0),
        fmt6(-y1),
        fmt6(2.0 * half),
        fmt6(2.0 * half)
    )
    .unwrap();
    writeln!(
        out,
        "  <title>{} ball, center ({}, {}), radius {}</title>",
        ball.metric_kind,
        fmt6(cx),
        fmt6(cy),
        fmt6(r)
    )
    .unwrap();
    out.push_str("  <g transform=\"scale(1,-1)\">\n");
    writeln!(
        out,
        "    <line x1=\"{}\" y1=\"0.000000\" x2=\"{}\" y2=\"0.000000\" stroke=\"gray\" stroke-width=\"{stroke}\"/>",
        fmt6(x0),
        fmt6(x1)
    )
    .unwrap();
    writeln!(
        out,
        "    <line x1=\"0.000000\" y1=\"{}\" x2=\"0.000000\" y2=\"{}\" stroke=\"gray\" stroke-width=\"{stroke}\"/>",
        fmt6(y0),
        fmt6(y1)
    )
    .unwrap();
    let mut d = String::new();
    for (k, [x, y]) in ball.vertices.iter().enumerate() {
        let cmd = if k == 0 { "M" } else { " L" };
        write!(d, "{cmd} {} {}", fmt6(*x), fmt6(*y)).unwrap();
    }
    d.push_str(" Z");
    writeln!(
        out,
        "    <path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\"/>"
    )
    .unwrap();
    out.push_str("  </g>\n</svg>\n");
    out
}
