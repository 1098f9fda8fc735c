//! Checks on the straight-line drawing of a geometric graph.

use num_traits::{Signed, Zero};

use crate::geometry::{
    self, on_closed_segment, segments_cross, Point2, Scalar, Segment, SegmentContact,
};
use crate::graph::GeometricGraph;
use crate::region::{self, ConvexRegion, LinearConstraint};
use crate::shape::{self, ConvexShape, Mode, Placement};

pub type EdgeKey = (usize, usize);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlanarityReport {
    /// A vertex lying on an edge it is not an endpoint of.
    pub condition1_violations: Vec<(usize, EdgeKey)>,
    /// Two edges meeting anywhere other than a single shared endpoint.
    pub condition2_violations: Vec<(EdgeKey, EdgeKey)>,
}

impl PlanarityReport {
    pub fn is_plane(&self) -> bool {
        self.condition1_violations.is_empty() && self.condition2_violations.is_empty()
    }
}

/// Exhaustively checks both plane-graph conditions on the drawing of `g`.
pub fn verify_plane(g: &GeometricGraph) -> PlanarityReport {
    let pts = g.points().points();
    let segments: Vec<(EdgeKey, Segment)> = g
        .edges()
        .iter()
        .map(|e| {
            let s = Segment::new(pts[e.i].clone(), pts[e.j].clone()).expect("points are distinct");
            ((e.i, e.j), s)
        })
        .collect();

    let mut report = PlanarityReport::default();
    for (key, s) in &segments {
        for (v, p) in pts.iter().enumerate() {
            if v != key.0 && v != key.1 && on_closed_segment(p, s) {
                report.condition1_violations.push((v, *key));
            }
        }
    }
    for (a, (ka, sa)) in segments.iter().enumerate() {
        for (kb, sb) in &segments[a + 1..] {
            if segments_cross(sa, sb) == SegmentContact::CrossingOrOverlapping {
                report.condition2_violations.push((*ka, *kb));
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationReport {
    pub edge_count: usize,
    pub hull_size: usize,
    /// `3n - 3 - h`, the edge count of any triangulation of the hull.
    pub expected_count: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangulationCheck {
    NotApplicable(&'static str),
    Checked(TriangulationReport),
}

impl TriangulationCheck {
    pub fn report(&self) -> Option<&TriangulationReport> {
        match self {
            TriangulationCheck::Checked(r) => Some(r),
            TriangulationCheck::NotApplicable(_) => None,
        }
    }
}

/// Compares the edge count of `g` with that of a triangulation of the
/// convex hull of its points.
pub fn triangulation_check(g: &GeometricGraph) -> TriangulationCheck {
    let pts = g.points().points();
    let n = pts.len();
    if n < 3 {
        return TriangulationCheck::NotApplicable("fewer than three points");
    }
    let hull = geometry::convex_hull(pts);
    if hull.len() < 3 {
        return TriangulationCheck::NotApplicable("points are collinear");
    }
    let h = hull.len();
    let expected_count = 3 * n - 3 - h;
    let edge_count = g.edges().len();
    TriangulationCheck::Checked(TriangulationReport {
        edge_count,
        hull_size: h,
        expected_count,
        matches: edge_count == expected_count,
    })
}

/// Faces of a plane drawing, found by walking each directed edge with its
/// face on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceStructure {
    /// Connected components, counting isolated vertices.
    pub components: usize,
    /// Lengths of the walks around unbounded faces, one per component with an edge.
    pub outer_walks: Vec<usize>,
    /// Lengths of the walks around bounded faces.
    pub bounded_faces: Vec<usize>,
    /// Convex hull edges that are not edges of the graph.
    pub missing_hull_edges: Vec<EdgeKey>,
}

impl FaceStructure {
    /// Connected, with every bounded face a triangle: a triangulation of the
    /// region enclosed by the outer walk.
    pub fn triangulates_outer_walk(&self) -> bool {
        self.components == 1 && self.bounded_faces.iter().all(|&len| len == 3)
    }
}

// Counterclockwise angular order of directions, starting at the positive x axis.
fn angular_cmp(d1: &Point2, d2: &Point2) -> std::cmp::Ordering {
    let half = |d: &Point2| !(d.y.is_positive() || (d.y.is_zero() && d.x.is_positive()));
    half(d1)
        .cmp(&half(d2))
        .then_with(|| Scalar::zero().cmp(&d1.cross(d2)))
}

/// Face structure of `g`, which must be plane.
pub fn face_structure(g: &GeometricGraph) -> FaceStructure {
    let pts = g.points().points();
    let n = pts.len();
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        around[e.i].push(e.j);
        around[e.j].push(e.i);
    }
    for (v, nbrs) in around.iter_mut().enumerate() {
        nbrs.sort_by(|&a, &b| angular_cmp(&(&pts[a] - &pts[v]), &(&pts[b] - &pts[v])));
    }

    let mut components = n;
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for e in g.edges() {
        let (a, b) = (root(&mut parent, e.i), root(&mut parent, e.j));
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }

    let mut seen = std::collections::BTreeSet::new();
    let mut outer_walks = Vec::new();
    let mut bounded_faces = Vec::new();
    for start in g.edges().iter().flat_map(|e| [(e.i, e.j), (e.j, e.i)]) {
        if seen.contains(&start) {
            continue;
        }
        let (mut u, mut v) = start;
        let mut len = 0;
        let mut twice_area = Scalar::zero();
        loop {
            seen.insert((u, v));
            len += 1;
            twice_area += pts[u].cross(&pts[v]);
            // Next edge out of v: the neighbour just clockwise of u.
            let nbrs = &around[v];
            let at = nbrs
                .iter()
                .position(|&w| w == u)
                .expect("edge is recorded at both ends");
            let w = nbrs[(at + nbrs.len() - 1) % nbrs.len()];
            (u, v) = (v, w);
            if (u, v) == start {
                break;
            }
        }
        if twice_area.is_positive() {
            bounded_faces.push(len);
        } else {
            outer_walks.push(len);
        }
    }

    let mut missing_hull_edges = Vec::new();
    let hull = geometry::convex_hull(pts);
    if hull.len() >= 2 {
        let index = |p: &Point2| {
            pts.iter()
                .position(|q| q == p)
                .expect("hull vertex is an input point")
        };
        let cycle = if hull.len() == 2 { 1 } else { hull.len() };
        for k in 0..cycle {
            let (a, b) = (index(&hull[k]), index(&hull[(k + 1) % hull.len()]));
            let key = (a.min(b), a.max(b));
            if !g.has_edge(key.0, key.1) {
                missing_hull_edges.push(key);
            }
        }
        missing_hull_edges.sort();
    }
    FaceStructure {
        components,
        outer_walks,
        bounded_faces,
        missing_hull_edges,
    }
}

/// Four points lying together on the boundary of one homothet of `shape`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryDegeneracy {
    pub points: [usize; 4],
    pub placement: Placement,
}

enum Solve {
    Inconsistent,
    Unique,
    Underdetermined,
}

// Gaussian elimination on an augmented system with three unknowns.
fn solve3(mut rows: Vec<[Scalar; 4]>) -> Solve {
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..3 {
        let Some(r) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, r);
        let piv = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| !r[3].is_zero()) {
        return Solve::Inconsistent;
    }
    if rank < 3 {
        return Solve::Underdetermined;
    }
    Solve::Unique
}

fn on_boundary(shape: &ConvexShape, placement: &Placement, p: &Point2) -> bool {
    let local = p - placement.translation();
    let mut tight = false;
    for h in shape.halfplanes() {
        let lhs = h.normal().dot(&local);
        let rhs = placement.scale() * h.bound();
        if lhs > rhs {
            return false;
        }
        tight |= lhs == rhs;
    }
    tight
}

/// Looks for four points of `points` on the boundary of a common homothet
/// `λ·cl(C) + t` with `λ > 0`. Strictness of the shape is ignored.
///
/// Each point on the boundary makes some half-plane tight. Triples of
/// tight choices are solved exactly for `(t, λ)`; when a triple leaves a
/// family of homothets, each candidate fourth point and tight choice is
/// decided by a feasibility problem over that family.
pub fn boundary_quadruple(points: &[Point2], shape: &ConvexShape) -> Option<BoundaryDegeneracy> {
    let n = points.len();
    let k = shape.len();
    if n < 4 || k == 0 {
        return None;
    }
    let closed = shape.closure();
    let hp = closed.halfplanes();
    // a_c · p for every point and half-plane.
    let ap: Vec<Vec<Scalar>> = points
        .iter()
        .map(|p| hp.iter().map(|h| h.normal().dot(p)).collect())
        .collect();
    // Tightness of half-plane c at p: a_c·t + b_c·λ = a_c·p.
    let tight_row = |pi: usize, c: usize| -> [Scalar; 4] {
        let h = &hp[c];
        [
            h.normal().x.clone(),
            h.normal().y.clone(),
            h.bound().clone(),
            ap[pi][c].clone(),
        ]
    };
    let tight_constraints = |pi: usize, c: usize| -> [LinearConstraint; 2] {
        let [ax, ay, b, rhs] = tight_row(pi, c);
        let le = LinearConstraint::new(vec![ax, ay, b], rhs, false).unwrap();
        [le.clone(), le.complement().closure()]
    };

    // Per triple of tight half-planes: the adjugate and determinant of the
    // coefficient matrix, so that a unique solution is `adj · rhs / det`.
    let coeff = |c: usize| -> [Scalar; 3] {
        let h = &hp[c];
        [
            h.normal().x.clone(),
            h.normal().y.clone(),
            h.bound().clone(),
        ]
    };
    let mut inverses: Vec<Option<([[Scalar; 3]; 3], Scalar)>> = Vec::with_capacity(k * k * k);
    for ci in 0..k {
        for cj in 0..k {
            for cl in 0..k {
                inverses.push(adjugate([coeff(ci), coeff(cj), coeff(cl)]));
            }
        }
    }

    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                for ci in 0..k {
                    for cj in 0..k {
                        for cl in 0..k {
                            if let Some((adj, det)) = &inverses[(ci * k + cj) * k + cl] {
                                let rhs = [&ap[i][ci], &ap[j][cj], &ap[l][cl]];
                                let row = |r: usize| -> Scalar {
                                    &adj[r][0] * rhs[0] + &adj[r][1] * rhs[1] + &adj[r][2] * rhs[2]
                                };
                                let lambda = row(2);
                                if lambda.is_zero() || lambda.is_positive() != det.is_positive() {
                                    continue;
                                }
                                let v = [row(0) / det, row(1) / det, lambda / det];
                                // Point m is on the boundary iff a·p_m <= a·t + λb for
                                // every half-plane, with equality for at least one.
                                let bounds: Vec<Scalar> = (0..k)
                                    .map(|c| {
                                        let [ax, ay, b] = coeff(c);
                                        ax * &v[0] + ay * &v[1] + b * &v[2]
                                    })
                                    .collect();
                                let boundary = |m: usize| {
                                    ap[m].iter().zip(&bounds).all(|(lhs, r)| lhs <= r)
                                        && ap[m].iter().zip(&bounds).any(|(lhs, r)| lhs == r)
                                };
                                if ![i, j, l].into_iter().all(boundary) {
                                    continue;
                                }
                                let hits: Vec<usize> = (0..n).filter(|&m| boundary(m)).collect();
                                if hits.len() >= 4 {
                                    let placement =
                                        Placement::from_parameters(Mode::Homothet, &v).unwrap();
                                    debug_assert!(hits
                                        .iter()
                                        .all(|&m| on_boundary(&closed, &placement, &points[m])));
                                    return Some(BoundaryDegeneracy {
                                        points: [hits[0], hits[1], hits[2], hits[3]],
                                        placement,
                                    });
                                }
                                continue;
                            }
                            let rows = vec![tight_row(i, ci), tight_row(j, cj), tight_row(l, cl)];
                            if !matches!(solve3(rows), Solve::Underdetermined) {
                                continue;
                            }
                            let base = shape::placement_region(
                                &closed,
                                [&points[i], &points[j], &points[l]],
                                Mode::Homothet,
                            );
                            let base = with_all(
                                base,
                                [(i, ci), (j, cj), (l, cl)]
                                    .iter()
                                    .flat_map(|&(p, c)| tight_constraints(p, c)),
                            );
                            for m in (0..n).filter(|&m| m != i && m != j && m != l) {
                                let with_m = with_all(
                                    base.clone(),
                                    shape::membership_constraints(
                                        &closed,
                                        &points[m],
                                        Mode::Homothet,
                                    ),
                                );
                                for cm in 0..k {
                                    let region = with_all(with_m.clone(), tight_constraints(m, cm));
                                    if let Some(w) = region::feasible(&region).into_witness() {
                                        let mut quad = [i, j, l, m];
                                        quad.sort_unstable();
                                        return Some(BoundaryDegeneracy {
                                            points: quad,
                                            placement: Placement::from_parameters(
                                                Mode::Homothet,
                                                &w,
                                            )
                                            .unwrap(),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Adjugate and determinant of a nonsingular 3×3 matrix; `None` if singular.
fn adjugate(m: [[Scalar; 3]; 3]) -> Option<([[Scalar; 3]; 3], Scalar)> {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
    };
    // adj[r][c] is the cofactor of m[c][r].
    let adj = [
        [minor(1, 2, 1, 2), -minor(0, 2, 1, 2), minor(0, 1, 1, 2)],
        [-minor(1, 2, 0, 2), minor(0, 2, 0, 2), -minor(0, 1, 0, 2)],
        [minor(1, 2, 0, 1), -minor(0, 2, 0, 1), minor(0, 1, 0, 1)],
    ];
    let det = &m[0][0] * &adj[0][0] + &m[0][1] * &adj[1][0] + &m[0][2] * &adj[2][0];
    (!det.is_zero()).then_some((adj, det))
}

fn with_all(
    mut region: ConvexRegion,
    extra: impl IntoIterator<Item = LinearConstraint>,
) -> ConvexRegion {
    for c in extra {
        region.push(c).unwrap();
    }
    region
}
