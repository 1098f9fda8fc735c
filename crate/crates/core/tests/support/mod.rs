//! Reference computations for tests. None of these call into the simplex
//! solver or the library's containment predicates.

#![allow(dead_code)]

use homoplane_core::{ConvexShape, Placement, Point2, Scalar};
use num_traits::{One, Signed, Zero};

/// A 2-D constraint `a·x <= b`, or `< b` when strict.
#[derive(Clone, Debug)]
pub struct Row {
    pub a: [Scalar; 2],
    pub b: Scalar,
    pub strict: bool,
}

/// Half-width of the box the enumeration is confined to. Every test system
/// has small coefficients, so a nonempty system meets this box with
/// positive slack.
pub const BOX: i64 = 1_000_000;

fn det3(m: &[[Scalar; 3]; 3]) -> Scalar {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Cramer's rule for a 3×3 system; `None` when singular.
fn cramer(m: [[Scalar; 3]; 3], rhs: [Scalar; 3]) -> Option<[Scalar; 3]> {
    let d = det3(&m);
    if d.is_zero() {
        return None;
    }
    let column = |k: usize| {
        let mut mk = m.clone();
        for r in 0..3 {
            mk[r][k] = rhs[r].clone();
        }
        det3(&mk) / &d
    };
    Some([column(0), column(1), column(2)])
}

/// Largest `s` in `[0, 1]` such that some `x` in the box satisfies every
/// closed row and `a·x + s <= b` for every strict row, found by
/// enumerating vertices of that polytope in `(x, y, s)`. `None` if the
/// closed rows alone have no point in the box.
pub fn max_slack_by_vertices(rows: &[Row]) -> Option<Scalar> {
    let big = Scalar::from_integer(BOX.into());
    let z = Scalar::zero;
    let o = Scalar::one;
    // Every facet of the lifted polytope as ([a_x, a_y, a_s], b) with <=.
    let mut facets: Vec<([Scalar; 3], Scalar)> = rows
        .iter()
        .map(|r| {
            (
                [
                    r.a[0].clone(),
                    r.a[1].clone(),
                    if r.strict { o() } else { z() },
                ],
                r.b.clone(),
            )
        })
        .collect();
    facets.push(([o(), z(), z()], big.clone()));
    facets.push(([-o(), z(), z()], big.clone()));
    facets.push(([z(), o(), z()], big.clone()));
    facets.push(([z(), -o(), z()], big.clone()));
    facets.push(([z(), z(), o()], o()));
    facets.push(([z(), z(), -o()], z()));

    let inside = |v: &[Scalar; 3]| {
        facets
            .iter()
            .all(|(a, b)| &a[0] * &v[0] + &a[1] * &v[1] + &a[2] * &v[2] <= *b)
    };
    let mut best: Option<Scalar> = None;
    let f = facets.len();
    for i in 0..f {
        for j in i + 1..f {
            for k in j + 1..f {
                let m = [
                    facets[i].0.clone(),
                    facets[j].0.clone(),
                    facets[k].0.clone(),
                ];
                let rhs = [
                    facets[i].1.clone(),
                    facets[j].1.clone(),
                    facets[k].1.clone(),
                ];
                if let Some(v) = cramer(m, rhs) {
                    if inside(&v) && best.as_ref().map_or(true, |b| v[2] > *b) {
                        best = Some(v[2].clone());
                    }
                }
            }
        }
    }
    best
}

/// Whether the 2-D system has a solution, per vertex enumeration.
pub fn nonempty_by_vertices(rows: &[Row]) -> bool {
    match max_slack_by_vertices(rows) {
        None => false,
        Some(s) => !rows.iter().any(|r| r.strict) || s.is_positive(),
    }
}

/// Whether `λ·C + t` contains `p`, by checking `a·(p - t) <= λ·b` directly.
pub fn placed_contains(shape: &ConvexShape, w: &Placement, p: &Point2) -> bool {
    let dx = &p.x - &w.translation().x;
    let dy = &p.y - &w.translation().y;
    shape.halfplanes().iter().all(|h| {
        let lhs = &h.normal().x * &dx + &h.normal().y * &dy;
        let rhs = w.scale() * h.bound();
        if h.is_strict() {
            lhs < rhs
        } else {
            lhs <= rhs
        }
    })
}

/// Whether `w` meets `points` in exactly `{points[i], points[j]}`.
pub fn exact_pair(
    shape: &ConvexShape,
    w: &Placement,
    points: &[Point2],
    i: usize,
    j: usize,
) -> bool {
    w.scale().is_positive()
        && points
            .iter()
            .enumerate()
            .all(|(k, p)| placed_contains(shape, w, p) == (k == i || k == j))
}
