//! Convex sets given as finite intersections of open or closed half-planes,
//! and the placement-space constraints for "point lies in a placed copy".

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::geometry::{Point2, Scalar};
use crate::region::{self, ConvexRegion, Feasibility, LinearConstraint};

/// `normal · x <= bound`, or `<` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    normal: Point2,
    bound: Scalar,
    strict: bool,
}

impl HalfPlane {
    pub fn new(normal: Point2, bound: Scalar, strict: bool) -> Result<Self, Error> {
        if normal.x.is_zero() && normal.y.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(HalfPlane {
            normal,
            bound,
            strict,
        })
    }

    pub fn normal(&self) -> &Point2 {
        &self.normal
    }

    pub fn bound(&self) -> &Scalar {
        &self.bound
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    fn as_constraint(&self) -> LinearConstraint {
        LinearConstraint::new(
            vec![self.normal.x.clone(), self.normal.y.clone()],
            self.bound.clone(),
            self.strict,
        )
        .expect("normal is nonzero")
    }
}

/// Whether placed copies are translates `C + t` or homothets `λC + t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Translate,
    Homothet,
}

impl Mode {
    /// Dimension of the placement parameter space: `t` or `(t, λ)`.
    pub fn dimension(self) -> usize {
        match self {
            Mode::Translate => 2,
            Mode::Homothet => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Translate => "translate",
            Mode::Homothet => "homothet",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "translate" => Ok(Mode::Translate),
            "homothet" => Ok(Mode::Homothet),
            other => Err(format!(
                "unknown mode `{other}` (expected translate or homothet)"
            )),
        }
    }
}

/// A copy `scale · C + translation` of the shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Placement {
    translation: Point2,
    scale: Scalar,
}

impl Placement {
    pub fn translate(translation: Point2) -> Self {
        Placement {
            translation,
            scale: Scalar::one(),
        }
    }

    pub fn homothet(translation: Point2, scale: Scalar) -> Result<Self, Error> {
        if !scale.is_positive() {
            return Err(Error::NonPositiveScale);
        }
        Ok(Placement { translation, scale })
    }

    pub fn translation(&self) -> &Point2 {
        &self.translation
    }

    pub fn scale(&self) -> &Scalar {
        &self.scale
    }

    /// Reads a parameter-space point: `(t_x, t_y)` or `(t_x, t_y, λ)`.
    pub fn from_parameters(mode: Mode, params: &[Scalar]) -> Result<Self, Error> {
        if params.len() != mode.dimension() {
            return Err(Error::DimensionMismatch {
                expected: mode.dimension(),
                found: params.len(),
            });
        }
        let t = Point2::new(params[0].clone(), params[1].clone());
        match mode {
            Mode::Translate => Ok(Placement::translate(t)),
            Mode::Homothet => Placement::homothet(t, params[2].clone()),
        }
    }

    /// The parameter-space point for `mode`; the scale is dropped in translate mode.
    pub fn parameters(&self, mode: Mode) -> Vec<Scalar> {
        let mut v = vec![self.translation.x.clone(), self.translation.y.clone()];
        if mode == Mode::Homothet {
            v.push(self.scale.clone());
        }
        v
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConvexShape {
    halfplanes: Vec<HalfPlane>,
}

impl ConvexShape {
    pub fn new(halfplanes: Vec<HalfPlane>) -> Self {
        ConvexShape { halfplanes }
    }

    /// Closed axis-aligned square `[lo, hi]²`.
    pub fn square(lo: Scalar, hi: Scalar) -> Self {
        let hp =
            |x: i64, y: i64, b: Scalar| HalfPlane::new(Point2::from_ints(x, y), b, false).unwrap();
        ConvexShape::new(vec![
            hp(-1, 0, -lo.clone()),
            hp(1, 0, hi.clone()),
            hp(0, -1, -lo),
            hp(0, 1, hi),
        ])
    }

    pub fn unit_square() -> Self {
        ConvexShape::square(Scalar::zero(), Scalar::one())
    }

    pub fn halfplanes(&self) -> &[HalfPlane] {
        &self.halfplanes
    }

    pub fn len(&self) -> usize {
        self.halfplanes.len()
    }

    pub fn is_empty_list(&self) -> bool {
        self.halfplanes.is_empty()
    }

    /// Every half-plane made strict.
    pub fn interior(&self) -> Self {
        self.map_strictness(|_| true)
    }

    /// Every half-plane made closed.
    pub fn closure(&self) -> Self {
        self.map_strictness(|_| false)
    }

    fn map_strictness(&self, f: impl Fn(&HalfPlane) -> bool) -> Self {
        ConvexShape::new(
            self.halfplanes
                .iter()
                .map(|h| HalfPlane {
                    strict: f(h),
                    ..h.clone()
                })
                .collect(),
        )
    }

    /// `λC`, represented with every bound multiplied by `λ`.
    pub fn scaled(&self, factor: &Scalar) -> Self {
        ConvexShape::new(
            self.halfplanes
                .iter()
                .map(|h| HalfPlane {
                    bound: &h.bound * factor,
                    ..h.clone()
                })
                .collect(),
        )
    }

    pub fn contains_point(&self, p: &Point2) -> bool {
        self.halfplanes
            .iter()
            .all(|h| satisfies(&h.normal.dot(p), &h.bound, h.strict))
    }

    pub fn as_region(&self) -> ConvexRegion {
        ConvexRegion::from_constraints(2, self.halfplanes.iter().map(HalfPlane::as_constraint))
            .expect("half-planes are two-dimensional")
    }

    /// Some point of `C`, or `None` if `C` is empty.
    pub fn sample_point(&self) -> Option<Point2> {
        region::feasible(&self.as_region())
            .into_witness()
            .map(|w| Point2::new(w[0].clone(), w[1].clone()))
    }

    pub fn is_empty(&self) -> bool {
        self.sample_point().is_none()
    }

    /// Whether `C` has nonempty interior.
    pub fn is_full_dimensional(&self) -> bool {
        !self.interior().is_empty()
    }

    /// Whether `C` is bounded (the empty set counts as bounded).
    pub fn is_bounded(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        // Bounded iff the recession cone {d : a·d <= 0} is {0}; probe it
        // against the four slabs |d_x| >= 1, |d_y| >= 1.
        let cone: Vec<LinearConstraint> = self
            .halfplanes
            .iter()
            .map(|h| {
                LinearConstraint::new(
                    vec![h.normal.x.clone(), h.normal.y.clone()],
                    Scalar::zero(),
                    false,
                )
                .unwrap()
            })
            .collect();
        let probes = [(-1, 0), (1, 0), (0, -1), (0, 1)];
        probes.iter().all(|&(x, y)| {
            let probe = LinearConstraint::new(
                vec![
                    Scalar::from_integer(x.into()),
                    Scalar::from_integer(y.into()),
                ],
                -Scalar::one(),
                false,
            )
            .unwrap();
            let region =
                ConvexRegion::from_constraints(2, cone.iter().cloned().chain([probe])).unwrap();
            !region::feasible(&region).is_nonempty()
        })
    }
}

fn satisfies(lhs: &Scalar, rhs: &Scalar, strict: bool) -> bool {
    if strict {
        lhs < rhs
    } else {
        lhs <= rhs
    }
}

/// `p ∈ λC + t`, evaluated as `a·(p - t) <= λ·b` for every half-plane.
pub fn contains(shape: &ConvexShape, placement: &Placement, p: &Point2) -> bool {
    let local = p - &placement.translation;
    shape.halfplanes.iter().all(|h| {
        let rhs = if placement.scale.is_one() {
            h.bound.clone()
        } else {
            &placement.scale * &h.bound
        };
        satisfies(&h.normal.dot(&local), &rhs, h.strict)
    })
}

/// Constraints on the placement parameters under which `p` lies in the placed shape.
///
/// Translate mode works over `t` and emits `-a·t <= b - a·p` per half-plane.
/// Homothet mode works over `(t, λ)` and emits `-a·t - b·λ <= -a·p`; the
/// positivity `λ > 0` is not included (see [`positive_scale`]).
pub fn membership_constraints(
    shape: &ConvexShape,
    p: &Point2,
    mode: Mode,
) -> Vec<LinearConstraint> {
    shape
        .halfplanes
        .iter()
        .map(|h| {
            let ap = h.normal.dot(p);
            let (coefficients, bound) = match mode {
                Mode::Translate => (vec![-&h.normal.x, -&h.normal.y], &h.bound - ap),
                Mode::Homothet => (vec![-&h.normal.x, -&h.normal.y, -&h.bound], -ap),
            };
            LinearConstraint::new(coefficients, bound, h.strict).expect("normal is nonzero")
        })
        .collect()
}

/// The strict constraint `λ > 0` on homothet parameters.
pub fn positive_scale() -> LinearConstraint {
    LinearConstraint::new(
        vec![Scalar::zero(), Scalar::zero(), -Scalar::one()],
        Scalar::zero(),
        true,
    )
    .unwrap()
}

/// All placements whose placed shape contains every point in `points`.
pub fn placement_region<'a>(
    shape: &ConvexShape,
    points: impl IntoIterator<Item = &'a Point2>,
    mode: Mode,
) -> ConvexRegion {
    let mut region = ConvexRegion::new(mode.dimension()).unwrap();
    if mode == Mode::Homothet {
        region.push(positive_scale()).unwrap();
    }
    for p in points {
        for c in membership_constraints(shape, p, mode) {
            region.push(c).unwrap();
        }
    }
    region
}

/// Some placement containing all of `points`, if one exists.
pub fn common_placement<'a>(
    shape: &ConvexShape,
    points: impl IntoIterator<Item = &'a Point2>,
    mode: Mode,
) -> Option<Placement> {
    match region::feasible(&placement_region(shape, points, mode)) {
        Feasibility::Nonempty { witness, .. } => {
            Some(Placement::from_parameters(mode, &witness).unwrap())
        }
        Feasibility::Empty => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, rat};

    fn pt(x: Scalar, y: Scalar) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn contains_examples() {
        let sq = ConvexShape::unit_square();
        let id = Placement::translate(Point2::origin());
        assert!(contains(&sq, &id, &pt(rat(1, 2), rat(1, 2))));
        assert!(contains(&sq, &id, &Point2::from_ints(1, 1)));
        assert!(!contains(&sq.interior(), &id, &Point2::from_ints(1, 1)));

        let w = Placement::homothet(pt(int(0), rat(-3, 2)), int(2)).unwrap();
        assert!(contains(&sq, &w, &Point2::from_ints(2, 0)));
        assert!(!contains(&sq, &w, &pt(rat(21, 10), int(0))));
    }

    #[test]
    fn translate_constraints_for_origin_give_negative_unit_square() {
        let cons = membership_constraints(
            &ConvexShape::unit_square(),
            &Point2::origin(),
            Mode::Translate,
        );
        assert_eq!(cons.len(), 4);
        let region = ConvexRegion::from_constraints(2, cons).unwrap();
        for (t, inside) in [
            ([int(0), int(0)], true),
            ([int(-1), int(-1)], true),
            ([rat(-1, 2), int(0)], true),
            ([rat(1, 10), int(0)], false),
            ([int(0), rat(-11, 10)], false),
        ] {
            assert_eq!(region.contains(&t), inside, "{t:?}");
        }
    }

    #[test]
    fn homothet_constraints_at_origin_have_no_point_term() {
        let shape = ConvexShape::new(vec![
            HalfPlane::new(Point2::from_ints(1, 2), rat(3, 2), true).unwrap(),
            HalfPlane::new(Point2::from_ints(-1, 0), int(1), false).unwrap(),
        ]);
        let cons = membership_constraints(&shape, &Point2::origin(), Mode::Homothet);
        assert_eq!(cons[0].coefficients(), &[int(-1), int(-2), rat(-3, 2)]);
        assert!(cons[0].bound().is_zero());
        assert!(cons[0].is_strict());
        assert_eq!(cons[1].coefficients(), &[int(1), int(0), int(-1)]);
        assert!(cons[1].bound().is_zero());
        assert!(!cons[1].is_strict());
    }

    #[test]
    fn empty_shape_admits_no_placement() {
        let empty = ConvexShape::new(vec![
            HalfPlane::new(Point2::from_ints(1, 0), int(0), false).unwrap(),
            HalfPlane::new(Point2::from_ints(-1, 0), int(-1), false).unwrap(),
        ]);
        assert!(empty.is_empty());
        for p in [Point2::origin(), Point2::from_ints(7, -3)] {
            for mode in [Mode::Translate, Mode::Homothet] {
                assert!(common_placement(&empty, [&p], mode).is_none());
            }
        }
    }

    #[test]
    fn scaling_identity() {
        let sq = ConvexShape::unit_square();
        let t = pt(rat(1, 3), int(-1));
        for lambda in [rat(1, 2), int(1), int(3)] {
            let scaled = sq.scaled(&lambda);
            for p in [
                Point2::from_ints(1, 0),
                pt(rat(4, 3), rat(1, 2)),
                Point2::from_ints(3, 2),
            ] {
                let direct = contains(
                    &sq,
                    &Placement::homothet(t.clone(), lambda.clone()).unwrap(),
                    &p,
                );
                let via = contains(&scaled, &Placement::translate(t.clone()), &p);
                assert_eq!(direct, via);
            }
        }
    }

    #[test]
    fn zero_normal_rejected() {
        assert_eq!(
            HalfPlane::new(Point2::origin(), int(1), false),
            Err(Error::ZeroNormal)
        );
        assert_eq!(
            Placement::homothet(Point2::origin(), int(0)),
            Err(Error::NonPositiveScale)
        );
    }

    #[test]
    fn boundedness_and_dimension() {
        let sq = ConvexShape::unit_square();
        assert!(sq.is_bounded() && sq.is_full_dimensional());
        let strip = ConvexShape::new(sq.halfplanes()[..2].to_vec());
        assert!(!strip.is_bounded());
        let segment = ConvexShape::new(
            sq.halfplanes()[..2]
                .iter()
                .cloned()
                .chain([
                    HalfPlane::new(Point2::from_ints(0, 1), int(0), false).unwrap(),
                    HalfPlane::new(Point2::from_ints(0, -1), int(0), false).unwrap(),
                ])
                .collect(),
        );
        assert!(segment.is_bounded());
        assert!(!segment.is_full_dimensional());
        assert!(!segment.is_empty());
    }
}
