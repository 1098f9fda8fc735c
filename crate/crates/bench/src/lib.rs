//! Fixed benchmark inputs.

pub use homoplane_core::{ConvexShape, HalfPlane, Mode, Point2, PointSet, Scalar};

/// Octagon `|x| + |y| <= 3`, `|x|, |y| <= 2`.
pub fn octagon() -> ConvexShape {
    let dirs = [
        (1, 0, 2),
        (-1, 0, 2),
        (0, 1, 2),
        (0, -1, 2),
        (1, 1, 3),
        (1, -1, 3),
        (-1, 1, 3),
        (-1, -1, 3),
    ];
    ConvexShape::new(
        dirs.iter()
            .map(|&(x, y, b)| {
                HalfPlane::new(
                    Point2::from_ints(x, y),
                    Scalar::from_integer(b.into()),
                    false,
                )
                .unwrap()
            })
            .collect(),
    )
}

/// `n` points `(k/2, (k² mod 97)/8)`.
pub fn parabola_points(n: usize) -> PointSet {
    let pts = (0..n as i64)
        .map(|k| {
            Point2::new(
                Scalar::new(k.into(), 2.into()),
                Scalar::new((k * k % 97).into(), 8.into()),
            )
        })
        .collect();
    PointSet::new(pts).unwrap()
}
