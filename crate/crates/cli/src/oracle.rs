//! Randomised placement search, used as a one-sided cross-check on the
//! exact edge test: a sampled placement meeting `P` in exactly two points
//! proves that pair is an edge, but failing to find one proves nothing.

use std::collections::BTreeMap;

use homoplane_core::{ConvexShape, Mode, Placement, Point2, Scalar};
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::generate::rng_for;
use crate::instance::Instance;

const GRID: i64 = 1024;
/// log2 of the scale range: `λ ∈ [2^-4, 2^4]`.
const LOG2_SCALE_RANGE: f64 = 4.0;
const SCALE_STEPS: i64 = 64;

/// Draws random placements of an instance's shape around its points.
///
/// A fixed reference point of the shape is carried to a uniformly random
/// point of the points' bounding box, padded by half its size on each side.
/// In homothet mode the scale is log-uniform over `[1/16, 16]`.
pub struct PlacementSampler {
    reference: Point2,
    lo: Point2,
    span: Point2,
    mode: Mode,
}

/// The random choices behind one placement.
#[derive(Clone, Copy, Debug)]
struct Draw {
    ux: i64,
    uy: i64,
    /// Scale numerator over 256; 256 in translate mode.
    scale: i64,
}

impl PlacementSampler {
    /// `None` when the shape is empty.
    pub fn new(instance: &Instance) -> Option<Self> {
        let reference = instance
            .shape
            .interior()
            .sample_point()
            .or_else(|| instance.shape.sample_point())?;
        let pts = instance.points.points();
        let min_x = pts.iter().map(|p| &p.x).min()?.clone();
        let max_x = pts.iter().map(|p| &p.x).max()?.clone();
        let min_y = pts.iter().map(|p| &p.y).min()?.clone();
        let max_y = pts.iter().map(|p| &p.y).max()?.clone();
        let size = (&max_x - &min_x).max(&max_y - &min_y).max(Scalar::one());
        let pad = &size / Scalar::from_integer(2.into());
        let lo = Point2::new(&min_x - &pad, &min_y - &pad);
        let span = Point2::new(
            &max_x - &min_x + &pad * Scalar::from_integer(2.into()),
            &max_y - &min_y + &pad * Scalar::from_integer(2.into()),
        );
        Some(PlacementSampler {
            reference,
            lo,
            span,
            mode: instance.mode,
        })
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> Draw {
        let ux = rng.gen_range(0..=GRID);
        let uy = rng.gen_range(0..=GRID);
        let scale = match self.mode {
            Mode::Translate => 256,
            Mode::Homothet => {
                let exponent = -LOG2_SCALE_RANGE
                    + 2.0 * LOG2_SCALE_RANGE * rng.gen_range(0..=SCALE_STEPS) as f64
                        / SCALE_STEPS as f64;
                // The float only picks which rational to try; all tests are exact.
                ((exponent.exp2() * 256.0).round() as i64).max(1)
            }
        };
        Draw { ux, uy, scale }
    }

    fn placement(&self, d: Draw) -> Placement {
        let ux = Scalar::new(d.ux.into(), GRID.into());
        let uy = Scalar::new(d.uy.into(), GRID.into());
        let target = Point2::new(
            &self.lo.x + &self.span.x * ux,
            &self.lo.y + &self.span.y * uy,
        );
        match self.mode {
            Mode::Translate => Placement::translate(&target - &self.reference),
            Mode::Homothet => {
                let lambda = Scalar::new(d.scale.into(), 256.into());
                let t = &target - &self.reference.scale(&lambda);
                Placement::homothet(t, lambda).unwrap()
            }
        }
    }

    /// `(t_x, t_y, λ)` of the draw's placement, to within rounding.
    fn approx_placement(&self, d: Draw) -> [f64; 3] {
        let lambda = d.scale as f64 / 256.0;
        let grid = GRID as f64;
        let tx = approx(&self.lo.x) + approx(&self.span.x) * d.ux as f64 / grid
            - lambda * approx(&self.reference.x);
        let ty = approx(&self.lo.y) + approx(&self.span.y) * d.uy as f64 / grid
            - lambda * approx(&self.reference.y);
        [tx, ty, lambda]
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Placement {
        let d = self.draw(rng);
        self.placement(d)
    }
}

/// Containment tests against precomputed `a·p` values. For a placement
/// `(t, λ)`, `p` is inside iff `a·p <= a·t + λ·b` for every half-plane.
struct Classifier<'a> {
    shape: &'a ConvexShape,
    ap: Vec<Vec<Scalar>>,
    approx_ap: Vec<Vec<f64>>,
    approx_shape: Vec<[f64; 3]>,
}

/// Relative margin within which a float comparison is not trusted.
const MARGIN: f64 = 1e-9;

impl<'a> Classifier<'a> {
    fn new(instance: &'a Instance) -> Self {
        let ap: Vec<Vec<Scalar>> = instance
            .points
            .points()
            .iter()
            .map(|p| {
                instance
                    .shape
                    .halfplanes()
                    .iter()
                    .map(|h| h.normal().dot(p))
                    .collect()
            })
            .collect();
        let approx_ap = ap
            .iter()
            .map(|row| row.iter().map(approx).collect())
            .collect();
        let approx_shape = instance
            .shape
            .halfplanes()
            .iter()
            .map(|h| {
                [
                    approx(&h.normal().x),
                    approx(&h.normal().y),
                    approx(h.bound()),
                ]
            })
            .collect();
        Classifier {
            shape: &instance.shape,
            ap,
            approx_ap,
            approx_shape,
        }
    }

    /// Indices of contained points, giving up once more than two are found.
    fn contained_pair(&self, w: &Placement) -> Option<(usize, usize)> {
        let rhs: Vec<Scalar> = self
            .shape
            .halfplanes()
            .iter()
            .map(|h| h.normal().dot(w.translation()) + w.scale() * h.bound())
            .collect();
        let mut hits = [0usize; 2];
        let mut count = 0;
        for (m, row) in self.ap.iter().enumerate() {
            let inside = self
                .shape
                .halfplanes()
                .iter()
                .zip(row)
                .zip(&rhs)
                .all(
                    |((h, lhs), r)| {
                        if h.is_strict() {
                            lhs < r
                        } else {
                            lhs <= r
                        }
                    },
                );
            if inside {
                if count == 2 {
                    return None;
                }
                hits[count] = m;
                count += 1;
            }
        }
        (count == 2).then_some((hits[0], hits[1]))
    }

    /// Float version of [`Self::contained_pair`]; `Err` when some comparison
    /// falls within the rounding margin.
    fn approx_contained_pair(
        &self,
        [tx, ty, lambda]: [f64; 3],
    ) -> Result<Option<(usize, usize)>, ()> {
        let rhs: Vec<f64> = self
            .approx_shape
            .iter()
            .map(|[ax, ay, b]| ax * tx + ay * ty + lambda * b)
            .collect();
        let mut hits = [0usize; 2];
        let mut count = 0;
        for (m, row) in self.approx_ap.iter().enumerate() {
            let mut inside = true;
            for (lhs, r) in row.iter().zip(&rhs) {
                let diff = r - lhs;
                if diff.abs() <= MARGIN * (1.0 + lhs.abs() + r.abs()) {
                    return Err(());
                }
                if diff < 0.0 {
                    inside = false;
                    break;
                }
            }
            if inside {
                if count == 2 {
                    return Ok(None);
                }
                hits[count] = m;
                count += 1;
            }
        }
        Ok((count == 2).then_some((hits[0], hits[1])))
    }

    /// The pair contained by the draw's placement, if exactly two points are.
    /// Every reported pair is confirmed exactly.
    fn classify(&self, sampler: &PlacementSampler, d: Draw) -> Option<((usize, usize), Placement)> {
        match self.approx_contained_pair(sampler.approx_placement(d)) {
            Ok(None) => None,
            Ok(Some(_)) | Err(()) => {
                let w = sampler.placement(d);
                self.contained_pair(&w).map(|pair| (pair, w))
            }
        }
    }
}

/// First of `trials` random placements that meets the points in exactly
/// `{p_i, p_j}`.
pub fn sample_witness_search(
    instance: &Instance,
    i: usize,
    j: usize,
    trials: usize,
    seed: u64,
) -> Option<Placement> {
    let key = if i < j { (i, j) } else { (j, i) };
    let sampler = PlacementSampler::new(instance)?;
    let classifier = Classifier::new(instance);
    let mut rng = rng_for(seed);
    (0..trials).find_map(
        |_| match classifier.classify(&sampler, sampler.draw(&mut rng)) {
            Some((pair, w)) if pair == key => Some(w),
            _ => None,
        },
    )
}

/// Every pair hit by some of `trials` random placements, with the first
/// placement that hit it.
pub fn sample_edges(
    instance: &Instance,
    trials: usize,
    seed: u64,
) -> BTreeMap<(usize, usize), Placement> {
    let mut found = BTreeMap::new();
    let Some(sampler) = PlacementSampler::new(instance) else {
        return found;
    };
    let classifier = Classifier::new(instance);
    let mut rng = rng_for(seed);
    for _ in 0..trials {
        let d = sampler.draw(&mut rng);
        if let Some((pair, w)) = classifier.classify(&sampler, d) {
            found.entry(pair).or_insert(w);
        }
    }
    found
}

/// Lossy decimal view of a scalar, for display only.
pub fn approx(v: &Scalar) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use homoplane_core::{contains, graph::witness_is_valid, rat, PointSet};

    fn square_instance(points: Vec<Point2>, mode: Mode) -> Instance {
        Instance {
            points: PointSet::new(points).unwrap(),
            shape: ConvexShape::unit_square(),
            mode,
            seed: None,
        }
    }

    #[test]
    fn finds_two_point_witness() {
        let inst = square_instance(
            vec![Point2::origin(), Point2::new(rat(1, 2), rat(1, 2))],
            Mode::Translate,
        );
        let w = sample_witness_search(&inst, 0, 1, 1000, 5).unwrap();
        assert!(witness_is_valid(&inst.points, &inst.shape, 0, 1, &w));
    }

    #[test]
    fn collinear_blocked_pair_never_found() {
        for mode in [Mode::Translate, Mode::Homothet] {
            let inst = square_instance(
                vec![
                    Point2::origin(),
                    Point2::new(rat(1, 2), rat(0, 1)),
                    Point2::from_ints(1, 0),
                ],
                mode,
            );
            assert_eq!(sample_witness_search(&inst, 0, 2, 20_000, 9), None);
            let edges = sample_edges(&inst, 20_000, 9);
            assert!(!edges.contains_key(&(0, 2)));
            assert!(edges.contains_key(&(0, 1)));
        }
    }

    #[test]
    fn sampled_placements_are_valid_witnesses() {
        let inst = square_instance(
            vec![
                Point2::from_ints(0, 0),
                Point2::from_ints(2, 0),
                Point2::from_ints(0, 2),
                Point2::from_ints(2, 2),
            ],
            Mode::Homothet,
        );
        let edges = sample_edges(&inst, 20_000, 1);
        assert!(!edges.is_empty());
        for (&(i, j), w) in &edges {
            assert!(witness_is_valid(&inst.points, &inst.shape, i, j, w));
            assert!(contains(&inst.shape, w, &inst.points[i]));
        }
        assert!(!edges.contains_key(&(0, 3)) && !edges.contains_key(&(1, 2)));
    }

    #[test]
    fn float_filter_agrees_with_exact_classification() {
        let inst = square_instance(
            vec![
                Point2::from_ints(0, 0),
                Point2::from_ints(2, 0),
                Point2::from_ints(0, 2),
                Point2::new(rat(3, 2), rat(7, 4)),
            ],
            Mode::Homothet,
        );
        let sampler = PlacementSampler::new(&inst).unwrap();
        let classifier = Classifier::new(&inst);
        let mut rng = rng_for(4);
        for _ in 0..5_000 {
            let d = sampler.draw(&mut rng);
            let exact = classifier.contained_pair(&sampler.placement(d));
            assert_eq!(classifier.classify(&sampler, d).map(|(p, _)| p), exact);
        }
    }

    #[test]
    fn empty_shape_yields_nothing() {
        let mut inst = square_instance(
            vec![Point2::origin(), Point2::from_ints(1, 0)],
            Mode::Translate,
        );
        inst.shape = ConvexShape::square(rat(1, 1), rat(0, 1));
        assert!(sample_edges(&inst, 100, 0).is_empty());
    }
}
