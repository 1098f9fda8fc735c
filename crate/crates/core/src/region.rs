//! Convex regions of a low-dimensional rational parameter space.
//!
//! A region is an intersection of half-spaces `coeff·x <= bound`, each of
//! which may be strict. Emptiness is decided exactly by maximising a common
//! slack `s` on the strict rows:
//!
//! ```text
//! maximize s
//!   coeff·x + s <= bound   (strict rows)
//!   coeff·x     <= bound   (closed rows)
//!   0 <= s <= 1
//! ```
//!
//! The region is nonempty iff the program is feasible and either there are no
//! strict rows or the optimum is positive. The optimiser's `x` is returned as
//! a witness lying strictly inside every open constraint.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::geometry::Scalar;
use crate::simplex::{self, LpOutcome};

/// `coefficients · x <= bound`, or `<` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    coefficients: Vec<Scalar>,
    bound: Scalar,
    strict: bool,
}

impl LinearConstraint {
    pub fn new(coefficients: Vec<Scalar>, bound: Scalar, strict: bool) -> Result<Self, Error> {
        if coefficients.iter().all(Zero::is_zero) {
            return Err(Error::ZeroConstraint);
        }
        Ok(LinearConstraint {
            coefficients,
            bound,
            strict,
        })
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    pub fn bound(&self) -> &Scalar {
        &self.bound
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn dimension(&self) -> usize {
        self.coefficients.len()
    }

    /// The set complement: `¬(a·x <= b)` is `-a·x < -b` and `¬(a·x < b)` is `-a·x <= -b`.
    pub fn complement(&self) -> LinearConstraint {
        LinearConstraint {
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
            bound: -&self.bound,
            strict: !self.strict,
        }
    }

    /// Same half-space with the boundary included.
    pub fn closure(&self) -> LinearConstraint {
        LinearConstraint {
            strict: false,
            ..self.clone()
        }
    }

    pub fn evaluate(&self, x: &[Scalar]) -> Scalar {
        debug_assert_eq!(x.len(), self.coefficients.len());
        self.coefficients
            .iter()
            .zip(x)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .fold(Scalar::zero(), |acc, t| acc + t)
    }

    /// `bound - coefficients·x`; nonnegative (positive when strict) iff satisfied.
    pub fn slack_at(&self, x: &[Scalar]) -> Scalar {
        &self.bound - self.evaluate(x)
    }

    pub fn is_satisfied_by(&self, x: &[Scalar]) -> bool {
        let slack = self.slack_at(x);
        if self.strict {
            slack.is_positive()
        } else {
            !slack.is_negative()
        }
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        let op = if self.strict { "<" } else { "<=" };
        write!(f, "[{}]·x {} {}", terms.join(", "), op, self.bound)
    }
}

/// Intersection of linear constraints in dimension 2 or 3.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexRegion {
    dimension: usize,
    constraints: Vec<LinearConstraint>,
}

impl ConvexRegion {
    /// The whole space of the given dimension.
    pub fn new(dimension: usize) -> Result<Self, Error> {
        if !(2..=3).contains(&dimension) {
            return Err(Error::UnsupportedDimension(dimension));
        }
        Ok(ConvexRegion {
            dimension,
            constraints: Vec::new(),
        })
    }

    pub fn from_constraints(
        dimension: usize,
        constraints: impl IntoIterator<Item = LinearConstraint>,
    ) -> Result<Self, Error> {
        let mut region = ConvexRegion::new(dimension)?;
        for c in constraints {
            region.push(c)?;
        }
        Ok(region)
    }

    pub fn push(&mut self, constraint: LinearConstraint) -> Result<(), Error> {
        check_dimension(self.dimension, &constraint)?;
        self.constraints.push(constraint);
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        x.len() == self.dimension && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }

    /// Intersection with another region of the same dimension.
    pub fn intersect(&self, other: &ConvexRegion) -> Result<ConvexRegion, Error> {
        if other.dimension != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: other.dimension,
            });
        }
        let mut out = self.clone();
        out.constraints.extend(other.constraints.iter().cloned());
        Ok(out)
    }

    fn with(&self, extra: impl IntoIterator<Item = LinearConstraint>) -> ConvexRegion {
        let mut out = self.clone();
        out.constraints.extend(extra);
        out
    }
}

fn check_dimension(dimension: usize, c: &LinearConstraint) -> Result<(), Error> {
    if c.dimension() != dimension {
        return Err(Error::DimensionMismatch {
            expected: dimension,
            found: c.dimension(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Empty,
    Nonempty {
        witness: Vec<Scalar>,
        /// Smallest `bound - coeff·witness` over the strict constraints;
        /// `None` when the region has no strict constraints.
        slack: Option<Scalar>,
    },
}

impl Feasibility {
    pub fn is_nonempty(&self) -> bool {
        matches!(self, Feasibility::Nonempty { .. })
    }

    pub fn witness(&self) -> Option<&[Scalar]> {
        match self {
            Feasibility::Nonempty { witness, .. } => Some(witness),
            Feasibility::Empty => None,
        }
    }

    pub fn into_witness(self) -> Option<Vec<Scalar>> {
        match self {
            Feasibility::Nonempty { witness, .. } => Some(witness),
            Feasibility::Empty => None,
        }
    }
}

/// Decides whether `region` is empty and, if not, returns a witness point.
pub fn feasible(region: &ConvexRegion) -> Feasibility {
    let d = region.dimension;
    let merged = merge_parallel(&region.constraints);
    let m = merged.len();
    let any_strict = merged.iter().any(|c| c.strict);

    // Variables: x⁺ (d), x⁻ (d), s. Free x is split as x⁺ - x⁻.
    let n = 2 * d + 1;
    let mut rows = Vec::with_capacity(m + 1);
    let mut rhs = Vec::with_capacity(m + 1);
    for c in &merged {
        let mut row = Vec::with_capacity(n);
        row.extend(c.coefficients.iter().cloned());
        row.extend(c.coefficients.iter().map(|v| -v));
        row.push(if c.strict {
            Scalar::one()
        } else {
            Scalar::zero()
        });
        rows.push(row);
        rhs.push(c.bound.clone());
    }
    let mut cap = vec![Scalar::zero(); n];
    cap[2 * d] = Scalar::one();
    rows.push(cap.clone());
    rhs.push(Scalar::one());

    let (values, best) = match simplex::maximize(&rows, &rhs, &cap) {
        LpOutcome::Optimal { values, objective } => (values, objective),
        LpOutcome::Infeasible => return Feasibility::Empty,
        LpOutcome::Unbounded => unreachable!("slack is capped at 1"),
    };
    if any_strict && !best.is_positive() {
        return Feasibility::Empty;
    }
    let witness: Vec<Scalar> = (0..d).map(|k| &values[k] - &values[d + k]).collect();
    let slack = region
        .constraints
        .iter()
        .filter(|c| c.strict)
        .map(|c| c.slack_at(&witness))
        .min();
    debug_assert!(
        region.contains(&witness),
        "LP witness violates its own region"
    );
    Feasibility::Nonempty { witness, slack }
}

/// Keeps, among constraints whose coefficient vectors are positive multiples
/// of each other, only the tightest; the set they define is unchanged.
/// Directions keep their first-appearance order.
fn merge_parallel(constraints: &[LinearConstraint]) -> Vec<LinearConstraint> {
    let mut slot: HashMap<Vec<Scalar>, usize> = HashMap::new();
    let mut out: Vec<LinearConstraint> = Vec::with_capacity(constraints.len());
    for c in constraints {
        let lead = c
            .coefficients
            .iter()
            .find(|v| !v.is_zero())
            .expect("nonzero coefficients")
            .abs();
        let scaled = LinearConstraint {
            coefficients: c.coefficients.iter().map(|v| v / &lead).collect(),
            bound: &c.bound / &lead,
            strict: c.strict,
        };
        match slot.get(&scaled.coefficients) {
            None => {
                slot.insert(scaled.coefficients.clone(), out.len());
                out.push(scaled);
            }
            Some(&k) => {
                let kept = &mut out[k];
                if scaled.bound < kept.bound {
                    *kept = scaled;
                } else if scaled.bound == kept.bound {
                    kept.strict |= scaled.strict;
                }
            }
        }
    }
    out
}

pub fn is_empty(region: &ConvexRegion) -> bool {
    !feasible(region).is_nonempty()
}

/// Removes the convex set `∩ hole` from the union of `cells`.
///
/// Each cell `K` meeting the hole is split into
/// `K ∩ ¬H₁, K ∩ H₁ ∩ ¬H₂, …, K ∩ H₁ ∩ … ∩ H_{k-1} ∩ ¬H_k`, in hole order.
/// Cells that miss the hole entirely are kept unsplit, and empty pieces are
/// dropped as soon as they are generated. The output cells are pairwise
/// disjoint and their union is `(∪ cells) \ hole`.
pub fn subtract(
    cells: &[ConvexRegion],
    hole: &[LinearConstraint],
) -> Result<Vec<ConvexRegion>, Error> {
    let mut out = Vec::new();
    for cell in cells {
        for h in hole {
            check_dimension(cell.dimension, h)?;
        }
        if is_empty(cell) {
            continue;
        }
        out.extend(split_cell(cell, hole));
    }
    Ok(out)
}

/// Pieces of a nonempty `cell` outside the hole, in decomposition order.
pub(crate) fn split_cell(cell: &ConvexRegion, hole: &[LinearConstraint]) -> Vec<ConvexRegion> {
    if is_empty(&cell.with(hole.iter().cloned())) {
        return vec![cell.clone()];
    }
    (0..hole.len())
        .map(|k| piece(cell, hole, k))
        .filter(|p| !is_empty(p))
        .collect()
}

// `cell ∩ H₁ ∩ … ∩ H_{k-1} ∩ ¬H_k`
fn piece(cell: &ConvexRegion, hole: &[LinearConstraint], k: usize) -> ConvexRegion {
    cell.with(
        hole[..k]
            .iter()
            .cloned()
            .chain(std::iter::once(hole[k].complement())),
    )
}

/// The first cell, in the order [`subtract`] would list them, that survives
/// removing every hole in turn from `cell`. `inside` is any point of `cell`.
///
/// Pieces are generated lazily, and a known point of a cell stands in for a
/// feasibility test wherever it decides one.
pub(crate) fn first_surviving_cell(
    cell: ConvexRegion,
    inside: Vec<Scalar>,
    holes: &[Vec<LinearConstraint>],
) -> Option<ConvexRegion> {
    let Some((hole, rest)) = holes.split_first() else {
        return Some(cell);
    };
    let meets_hole = hole.iter().all(|h| h.is_satisfied_by(&inside))
        || !is_empty(&cell.with(hole.iter().cloned()));
    if !meets_hole {
        return first_surviving_cell(cell, inside, rest);
    }
    (0..hole.len()).find_map(|k| {
        let p = piece(&cell, hole, k);
        let point = if p.contains(&inside) {
            Some(inside.clone())
        } else {
            feasible(&p).into_witness()
        };
        first_surviving_cell(p, point?, rest)
    })
}
