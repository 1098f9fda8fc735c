//! Exact planar primitives over arbitrary-precision rationals.
//!
//! Everything here is computed without rounding: coordinates are
//! [`BigRational`] values and every predicate is the sign of an exact
//! polynomial in them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Error;

/// Exact rational scalar. Always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// Builds the scalar `num / den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// A point (or free vector) of the rational plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point2 {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(int(x), int(y))
    }

    pub fn origin() -> Self {
        Point2::new(Scalar::zero(), Scalar::zero())
    }

    pub fn dot(&self, other: &Point2) -> Scalar {
        &self.x * &other.x + &self.y * &other.y
    }

    /// z-component of the cross product `self × other`.
    pub fn cross(&self, other: &Point2) -> Scalar {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn scale(&self, factor: &Scalar) -> Point2 {
        Point2::new(&self.x * factor, &self.y * factor)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<'a> Sub<&'a Point2> for &'a Point2 {
    type Output = Point2;
    fn sub(self, rhs: &'a Point2) -> Point2 {
        Point2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl<'a> Add<&'a Point2> for &'a Point2 {
    type Output = Point2;
    fn add(self, rhs: &'a Point2) -> Point2 {
        Point2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Point2 {
    type Output = Point2;
    fn mul(self, rhs: &'a Scalar) -> Point2 {
        self.scale(rhs)
    }
}

impl Neg for &Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-&self.x, -&self.y)
    }
}

/// Closed segment between two distinct points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    a: Point2,
    b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Result<Self, Error> {
        if a == b {
            return Err(Error::DegenerateSegment(a));
        }
        Ok(Segment { a, b })
    }

    pub fn a(&self) -> &Point2 {
        &self.a
    }

    pub fn b(&self) -> &Point2 {
        &self.b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }

    fn of(value: &Scalar) -> Self {
        if value.is_positive() {
            Orientation::CounterClockwise
        } else if value.is_negative() {
            Orientation::Clockwise
        } else {
            Orientation::Collinear
        }
    }
}

/// Sign of `(q - p) × (r - p)`.
pub fn orient(p: &Point2, q: &Point2, r: &Point2) -> Orientation {
    Orientation::of(&(q - p).cross(&(r - p)))
}

/// Whether `p` lies on the closed segment `s`, endpoints included.
pub fn on_closed_segment(p: &Point2, s: &Segment) -> bool {
    orient(&s.a, &s.b, p) == Orientation::Collinear && in_bounding_box(p, &s.a, &s.b)
}

// Assumes p is collinear with a and b.
fn in_bounding_box(p: &Point2, a: &Point2, b: &Point2) -> bool {
    let (xlo, xhi) = if a.x <= b.x {
        (&a.x, &b.x)
    } else {
        (&b.x, &a.x)
    };
    let (ylo, yhi) = if a.y <= b.y {
        (&a.y, &b.y)
    } else {
        (&b.y, &a.y)
    };
    *xlo <= p.x && p.x <= *xhi && *ylo <= p.y && p.y <= *yhi
}

/// How two closed segments meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentContact {
    Disjoint,
    /// The segments meet in exactly one point, which is an endpoint of both.
    SharedEndpoint,
    /// Proper crossing, T-contact away from an endpoint of one segment, or
    /// collinear overlap.
    CrossingOrOverlapping,
}

pub fn segments_cross(s1: &Segment, s2: &Segment) -> SegmentContact {
    let o1 = orient(&s1.a, &s1.b, &s2.a);
    let o2 = orient(&s1.a, &s1.b, &s2.b);
    let o3 = orient(&s2.a, &s2.b, &s1.a);
    let o4 = orient(&s2.a, &s2.b, &s1.b);

    use Orientation::Collinear;
    if o1 == Collinear && o2 == Collinear {
        // Both on one line: compare the projections onto a non-degenerate axis.
        let key = |p: &Point2| -> Scalar {
            if s1.a.x != s1.b.x {
                p.x.clone()
            } else {
                p.y.clone()
            }
        };
        let (lo1, hi1) = ordered(key(&s1.a), key(&s1.b));
        let (lo2, hi2) = ordered(key(&s2.a), key(&s2.b));
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => SegmentContact::Disjoint,
            std::cmp::Ordering::Equal => SegmentContact::SharedEndpoint,
            std::cmp::Ordering::Less => SegmentContact::CrossingOrOverlapping,
        };
    }

    if o1.sign() * o2.sign() > 0 || o3.sign() * o4.sign() > 0 {
        return SegmentContact::Disjoint;
    }
    // The supporting lines are distinct, so the contact is a single point.
    // An endpoint of one segment is that point iff it lies on the other's line.
    let at_end_of_s1 = o3 == Collinear || o4 == Collinear;
    let at_end_of_s2 = o1 == Collinear || o2 == Collinear;
    if at_end_of_s1 && at_end_of_s2 {
        SegmentContact::SharedEndpoint
    } else {
        SegmentContact::CrossingOrOverlapping
    }
}

fn ordered(a: Scalar, b: Scalar) -> (Scalar, Scalar) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Convex hull vertices in counterclockwise order, starting from the
/// lexicographically smallest point. Points interior to hull edges are
/// dropped; a collinear input yields its two extreme points.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }

    let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2
            && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p)
                != Orientation::CounterClockwise
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p)
                != Orientation::CounterClockwise
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

pub fn all_collinear(points: &[Point2]) -> bool {
    convex_hull(points).len() <= 2
}

/// Returns the first triple `i < j < k` of collinear points, if any.
pub fn collinear_triple(points: &[Point2]) -> Option<[usize; 3]> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient(&points[i], &points[j], &points[k]) == Orientation::Collinear {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}
