//! Seeded random instances.
//!
//! Shapes use normals from a fixed 16-direction grid with offsets in
//! `[-1/2, 4]` (step `1/4`). Points have denominators in `{1, 2, 3, 4}` and
//! lie in the window `[-8, 8]²`. Small denominators keep pivots cheap and make
//! collinearities and boundary contacts common.

use homoplane_core::{ConvexShape, HalfPlane, Mode, Point2, PointSet, Scalar};
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::Instance;

pub const WINDOW: i64 = 8;
pub const POINT_DENOMINATORS: [i64; 4] = [1, 2, 3, 4];
pub const DIRECTIONS: [(i64, i64); 16] = [
    (1, 0),
    (2, 1),
    (1, 1),
    (1, 2),
    (0, 1),
    (-1, 2),
    (-1, 1),
    (-2, 1),
    (-1, 0),
    (-2, -1),
    (-1, -1),
    (-1, -2),
    (0, -1),
    (1, -2),
    (1, -1),
    (2, -1),
];
const OFFSET_QUARTERS: std::ops::RangeInclusive<i64> = -2..=16;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` under `seed`.
pub fn rng_for_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn small_rational(num: i64, den: i64) -> Scalar {
    Scalar::new(num.into(), den.into())
}

/// Draws `true` with probability exactly `p` (`0 <= p <= 1`).
pub fn bernoulli<R: Rng>(rng: &mut R, p: &Scalar) -> bool {
    if p.is_zero() {
        return false;
    }
    if p >= &Scalar::one() {
        return true;
    }
    let num = p
        .numer()
        .to_u64()
        .expect("probability numerator fits in u64");
    let den = p
        .denom()
        .to_u64()
        .expect("probability denominator fits in u64");
    rng.gen_range(0..den) < num
}

pub fn random_shape<R: Rng>(rng: &mut R, k: usize, open_fraction: &Scalar) -> ConvexShape {
    let k = k.min(DIRECTIONS.len());
    let halfplanes = index::sample(rng, DIRECTIONS.len(), k)
        .into_iter()
        .map(|d| {
            let (x, y) = DIRECTIONS[d];
            let b = small_rational(rng.gen_range(OFFSET_QUARTERS), 4);
            let strict = bernoulli(rng, open_fraction);
            HalfPlane::new(Point2::from_ints(x, y), b, strict).unwrap()
        })
        .collect();
    ConvexShape::new(halfplanes)
}

pub fn random_point<R: Rng>(rng: &mut R) -> Point2 {
    let den = POINT_DENOMINATORS[rng.gen_range(0..POINT_DENOMINATORS.len())];
    let lim = WINDOW * den;
    Point2::new(
        small_rational(rng.gen_range(-lim..=lim), den),
        small_rational(rng.gen_range(-lim..=lim), den),
    )
}

pub fn random_points<R: Rng>(rng: &mut R, n: usize) -> PointSet {
    let mut pts: Vec<Point2> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = random_point(rng);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointSet::new(pts).unwrap()
}

/// Deterministic instance for `seed`. Seeds divisible by 10 use at most two
/// half-planes, so their shapes are unbounded.
pub fn generate_instance(
    seed: u64,
    n: usize,
    k: usize,
    mode: Mode,
    open_fraction: &Scalar,
) -> Instance {
    assert!(
        n >= 1 && k >= 1,
        "need at least one point and one half-plane"
    );
    let mut rng = rng_for(seed);
    let k = if seed % 10 == 0 { k.min(2) } else { k };
    let shape = random_shape(&mut rng, k, open_fraction);
    let points = random_points(&mut rng, n);
    Instance {
        points,
        shape,
        mode,
        seed: Some(seed),
    }
}

/// Closed, bounded, full-dimensional shape with `3..=max_k` half-planes.
pub fn random_compact_shape<R: Rng>(rng: &mut R, max_k: usize) -> ConvexShape {
    loop {
        let k = rng.gen_range(3..=max_k.max(3));
        let shape = random_shape(rng, k, &Scalar::zero());
        if shape.is_bounded() && shape.is_full_dimensional() {
            return shape;
        }
    }
}
