//! Translate graphs and homothet (generalized Delaunay) graphs.
//!
//! A pair `{p_i, p_j}` is an edge when some placed copy of the shape meets
//! the point set in exactly those two points. The placements containing both
//! endpoints form a convex region of parameter space; every other point `r`
//! removes the convex region of placements containing `r`. The pair is an
//! edge iff something survives, and any surviving parameter point is a
//! witness.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::Error;
use crate::geometry::Point2;
use crate::region::{self, LinearConstraint};
use crate::shape::{self, contains, ConvexShape, Mode, Placement};

/// A finite set of pairwise distinct points, indexed in input order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    points: Vec<Point2>,
}

impl PointSet {
    pub fn new(points: Vec<Point2>) -> Result<Self, Error> {
        let mut seen: HashMap<&Point2, usize> = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if let Some(&first) = seen.get(p) {
                return Err(Error::DuplicatePoint {
                    point: p.clone(),
                    first,
                    second: i,
                });
            }
            seen.insert(p, i);
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Point2> {
        self.points.get(i)
    }
}

impl std::ops::Index<usize> for PointSet {
    type Output = Point2;
    fn index(&self, i: usize) -> &Point2 {
        &self.points[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub witness: Placement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricGraph {
    points: PointSet,
    shape: ConvexShape,
    mode: Mode,
    edges: Vec<Edge>,
}

impl GeometricGraph {
    /// Assembles a graph from given edges without checking their witnesses.
    /// Edges are normalised to `i < j`, sorted, and deduplicated by endpoints.
    pub fn from_parts(
        points: PointSet,
        shape: ConvexShape,
        mode: Mode,
        edges: Vec<Edge>,
    ) -> Result<Self, Error> {
        let n = points.len();
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| {
                if e.i > e.j {
                    Edge {
                        i: e.j,
                        j: e.i,
                        witness: e.witness,
                    }
                } else {
                    e
                }
            })
            .collect();
        for e in &edges {
            for index in [e.i, e.j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, len: n });
                }
            }
            if e.i == e.j {
                return Err(Error::DegenerateSegment(points[e.i].clone()));
            }
        }
        edges.sort_by(|a, b| (a.i, a.j).cmp(&(b.i, b.j)));
        edges.dedup_by(|a, b| (a.i, a.j) == (b.i, b.j));
        Ok(GeometricGraph {
            points,
            shape,
            mode,
            edges,
        })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn shape(&self) -> &ConvexShape {
        &self.shape
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges
            .binary_search_by(|e| (e.i, e.j).cmp(&key))
            .is_ok()
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.i, e.j)).collect()
    }
}

/// Whether `placement` contains exactly points `i` and `j` of `points`.
pub fn witness_is_valid(
    points: &PointSet,
    shape: &ConvexShape,
    i: usize,
    j: usize,
    placement: &Placement,
) -> bool {
    points
        .points()
        .iter()
        .enumerate()
        .all(|(k, p)| contains(shape, placement, p) == (k == i || k == j))
}

/// A placement meeting `points` in exactly `{p_i, p_j}`, or `None` if there is none.
///
/// Other points are excluded in ascending index order and the surviving
/// cells are explored depth first, which visits them in the same order as
/// repeated [`region::subtract`] calls would list them.
pub fn edge_feasible(
    points: &PointSet,
    shape: &ConvexShape,
    i: usize,
    j: usize,
    mode: Mode,
) -> Result<Option<Placement>, Error> {
    let n = points.len();
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
    }
    if i == j {
        return Err(Error::DegenerateSegment(points[i].clone()));
    }
    let start = shape::placement_region(shape, [&points[i], &points[j]], mode);
    let Some(inside) = region::feasible(&start).into_witness() else {
        return Ok(None);
    };
    let holes: Vec<Vec<LinearConstraint>> = (0..n)
        .filter(|&k| k != i && k != j)
        .map(|k| shape::membership_constraints(shape, &points[k], mode))
        .collect();
    let Some(cell) = region::first_surviving_cell(start, inside, &holes) else {
        return Ok(None);
    };
    let witness = region::feasible(&cell)
        .into_witness()
        .expect("surviving cells are nonempty");
    Ok(Some(Placement::from_parameters(mode, &witness)?))
}

/// Builds the translate graph (`Mode::Translate`) or homothet graph
/// (`Mode::Homothet`) of `points` with respect to `shape`.
///
/// Pairs are evaluated in parallel and merged in `(i, j)` order. Every
/// witness is re-checked by direct containment before its edge is admitted;
/// a failing witness is an internal bug and panics with the full instance.
pub fn build_graph(points: &PointSet, shape: &ConvexShape, mode: Mode) -> GeometricGraph {
    match try_build_graph(points, shape, mode) {
        Ok(g) => g,
        Err(e) => panic!("{e}"),
    }
}

/// [`build_graph`], reporting a failed witness check as an error instead of panicking.
pub fn try_build_graph(
    points: &PointSet,
    shape: &ConvexShape,
    mode: Mode,
) -> Result<GeometricGraph, Error> {
    let n = points.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let found: Vec<Option<Edge>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let witness = edge_feasible(points, shape, i, j, mode)?;
            match witness {
                Some(w) if !witness_is_valid(points, shape, i, j, &w) => {
                    Err(Error::WitnessRejected {
                        i,
                        j,
                        detail: format!(
                            "placement {w:?}, mode {mode}, shape {shape:?}, points {:?}",
                            points.points()
                        ),
                    })
                }
                Some(w) => Ok(Some(Edge { i, j, witness: w })),
                None => Ok(None),
            }
        })
        .collect::<Result<_, Error>>()?;
    let edges = found.into_iter().flatten().collect();
    Ok(GeometricGraph {
        points: points.clone(),
        shape: shape.clone(),
        mode,
        edges,
    })
}

/// Whether every edge of `g1` is an edge of `g2`. Both graphs must be on the
/// same point set and shape; their modes may differ.
pub fn is_subgraph(g1: &GeometricGraph, g2: &GeometricGraph) -> Result<bool, Error> {
    if g1.points != g2.points || g1.shape != g2.shape {
        return Err(Error::MismatchedGraphs);
    }
    Ok(g1.edges.iter().all(|e| g2.has_edge(e.i, e.j)))
}
