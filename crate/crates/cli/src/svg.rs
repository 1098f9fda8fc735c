//! SVG 1.1 drawings of geometric graphs.

use std::fmt::Write as _;

use homoplane_core::{ConvexShape, GeometricGraph, Placement, Point2, Scalar};
use num_traits::{One, Signed, Zero};

use crate::oracle::approx;

fn fmt6(v: &Scalar) -> String {
    format!("{:.6}", approx(v))
}

/// Clips the convex polygon `poly` to `normal·x <= bound` (exact).
fn clip(poly: &[Point2], normal: &Point2, bound: &Scalar) -> Vec<Point2> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for (k, cur) in poly.iter().enumerate() {
        let next = &poly[(k + 1) % poly.len()];
        let fc = normal.dot(cur) - bound;
        let fn_ = normal.dot(next) - bound;
        if !fc.is_positive() {
            out.push(cur.clone());
        }
        if (fc.is_negative() && fn_.is_positive()) || (fc.is_positive() && fn_.is_negative()) {
            let s = &fc / (&fc - &fn_);
            out.push(cur + &(&(next - cur) * &s));
        }
    }
    out
}

/// `λ·C + t` intersected with the axis-aligned box `[lo, hi]`.
pub fn placed_polygon(shape: &ConvexShape, w: &Placement, lo: &Point2, hi: &Point2) -> Vec<Point2> {
    let mut poly = vec![
        lo.clone(),
        Point2::new(hi.x.clone(), lo.y.clone()),
        hi.clone(),
        Point2::new(lo.x.clone(), hi.y.clone()),
    ];
    for h in shape.halfplanes() {
        // a·(x - t) <= λb  <=>  a·x <= λb + a·t
        let bound = w.scale() * h.bound() + h.normal().dot(w.translation());
        poly = clip(&poly, h.normal(), &bound);
        if poly.is_empty() {
            break;
        }
    }
    poly
}

/// Renders points as circles and edges as segments, with the optional placed
/// shape drawn underneath and clipped to the view box. The view box is the
/// points' bounding box padded by 20% on every side. Every edge is drawn, even
/// crossing ones.
pub fn render_svg(g: &GeometricGraph, overlay: Option<&Placement>) -> String {
    let pts = g.points().points();
    let (lo, hi) = if pts.is_empty() {
        (Point2::from_ints(-1, -1), Point2::from_ints(1, 1))
    } else {
        let min_x = pts.iter().map(|p| &p.x).min().unwrap();
        let max_x = pts.iter().map(|p| &p.x).max().unwrap();
        let min_y = pts.iter().map(|p| &p.y).min().unwrap();
        let max_y = pts.iter().map(|p| &p.y).max().unwrap();
        let w = (max_x - min_x).max(Scalar::one());
        let h = (max_y - min_y).max(Scalar::one());
        let fifth = Scalar::new(1.into(), 5.into());
        let px = &w * &fifth;
        let py = &h * &fifth;
        (
            Point2::new(min_x - &px, min_y - &py),
            Point2::new(max_x + &px, max_y + &py),
        )
    };
    let width = &hi.x - &lo.x;
    let height = &hi.y - &lo.y;
    let radius = width.clone().min(height.clone()) / Scalar::from_integer(100.into());
    let stroke = &radius / Scalar::from_integer(2.into());
    // SVG's y axis points down; draw (x, y) at (x, -y).
    let sx = |v: &Scalar| fmt6(v);
    let sy = |v: &Scalar| fmt6(&-v);

    let mut out = String::new();
    writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        sx(&lo.x),
        sy(&hi.y),
        fmt6(&width),
        fmt6(&height)
    )
    .unwrap();
    writeln!(
        out,
        "<!-- {} mode, {} points, {} edges -->",
        g.mode(),
        pts.len(),
        g.edges().len()
    )
    .unwrap();

    if let Some(w) = overlay {
        let poly = placed_polygon(g.shape(), w, &lo, &hi);
        if poly.len() >= 3 {
            let coords: Vec<String> = poly
                .iter()
                .map(|p| format!("{},{}", sx(&p.x), sy(&p.y)))
                .collect();
            writeln!(
                out,
                r##"<polygon points="{}" fill="#9ecae1" fill-opacity="0.4" stroke="#3182bd" stroke-width="{}"/>"##,
                coords.join(" "),
                fmt6(&stroke)
            )
            .unwrap();
        } else if !poly.is_empty() {
            // Lower-dimensional shape: draw what remains as a polyline.
            let coords: Vec<String> = poly
                .iter()
                .map(|p| format!("{},{}", sx(&p.x), sy(&p.y)))
                .collect();
            writeln!(
                out,
                r##"<polyline points="{}" fill="none" stroke="#3182bd" stroke-width="{}"/>"##,
                coords.join(" "),
                fmt6(&stroke)
            )
            .unwrap();
        }
    }
    for e in g.edges() {
        let (a, b) = (&pts[e.i], &pts[e.j]);
        writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="{}"/>"#,
            sx(&a.x),
            sy(&a.y),
            sx(&b.x),
            sy(&b.y),
            fmt6(&stroke)
        )
        .unwrap();
    }
    for p in pts {
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            sx(&p.x),
            sy(&p.y),
            fmt6(&radius),
            if radius.is_zero() { "none" } else { "crimson" }
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use homoplane_core::{build_graph, graph::Edge, Mode, PointSet};

    fn square_corners() -> PointSet {
        PointSet::new(vec![
            Point2::from_ints(0, 0),
            Point2::from_ints(2, 0),
            Point2::from_ints(0, 2),
            Point2::from_ints(2, 2),
        ])
        .unwrap()
    }

    #[test]
    fn single_point() {
        let g = build_graph(
            &PointSet::new(vec![Point2::origin()]).unwrap(),
            &ConvexShape::unit_square(),
            Mode::Homothet,
        );
        let svg = render_svg(&g, None);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<line").count(), 0);
    }

    #[test]
    fn four_cycle() {
        let g = build_graph(
            &square_corners(),
            &ConvexShape::unit_square(),
            Mode::Homothet,
        );
        let svg = render_svg(&g, Some(&g.edges()[0].witness));
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<line").count(), 4);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert!(
            svg.contains(r#"viewBox="-0.400000 -2.400000 2.800000 2.800000""#),
            "{svg}"
        );
        assert_eq!(svg, render_svg(&g, Some(&g.edges()[0].witness)));
    }

    #[test]
    fn crossing_edges_rendered_verbatim() {
        let edges = vec![
            Edge {
                i: 0,
                j: 3,
                witness: Placement::translate(Point2::origin()),
            },
            Edge {
                i: 1,
                j: 2,
                witness: Placement::translate(Point2::origin()),
            },
        ];
        let g = homoplane_core::GeometricGraph::from_parts(
            square_corners(),
            ConvexShape::unit_square(),
            Mode::Homothet,
            edges,
        )
        .unwrap();
        assert_eq!(render_svg(&g, None).matches("<line").count(), 2);
    }

    #[test]
    fn unbounded_overlay_is_clipped() {
        let half_plane = ConvexShape::new(ConvexShape::unit_square().halfplanes()[1..2].to_vec());
        let poly = placed_polygon(
            &half_plane,
            &Placement::translate(Point2::origin()),
            &Point2::from_ints(-2, -2),
            &Point2::from_ints(2, 2),
        );
        // x <= 1 inside [-2, 2]²
        assert_eq!(poly.len(), 4);
        assert!(poly.iter().all(|p| p.x <= Scalar::one()));
    }
}
