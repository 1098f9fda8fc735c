//! Two-phase primal simplex in exact integer arithmetic.
//!
//! Solves `maximize c·z` subject to `A z <= b`, `z >= 0`. Each constraint
//! row is scaled to integers, and pivoting is fraction free: the dictionary
//! holds integer numerators over one common positive denominator, and every
//! update divides exactly by the previous denominator. Only nonbasic columns
//! are stored. Pivoting follows Bland's rule (lowest-index entering variable,
//! lowest-index basic variable among tied leaving rows), so degenerate
//! programs terminate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::geometry::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        values: Vec<Scalar>,
        objective: Scalar,
    },
}

/// With `D = denominator`, row `i` reads
/// `x[basis[i]] + Σ_j (rows[i][j] / D)·x[nonbasic[j]] = rhs[i] / D`.
/// The objective row stores `-D` times the reduced costs, and `D` times the
/// current objective value, so `x[nonbasic[j]]` improves the objective iff
/// `reduced[j] < 0`.
struct Dictionary {
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    basis: Vec<usize>,
    nonbasic: Vec<usize>,
    reduced: Vec<BigInt>,
    objective: BigInt,
    denominator: BigInt,
}

// (p·v - f·q) / d, exact.
fn update(v: &BigInt, q: &BigInt, p: &BigInt, f: &BigInt, d: &BigInt) -> BigInt {
    let num = p * v - f * q;
    debug_assert!(
        num.is_multiple_of(d),
        "fraction-free update must divide exactly"
    );
    num / d
}

impl Dictionary {
    /// Exchanges `basis[r]` and `nonbasic[c]`.
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        let negative = p.is_negative();
        let d = std::mem::replace(&mut self.denominator, p.abs());
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r].clone();
        let sign = |v: BigInt| if negative { -v } else { v };

        let eliminate = |row: &mut Vec<BigInt>, rhs: &mut BigInt| {
            let f = row[c].clone();
            for (j, (v, q)) in row.iter_mut().zip(&pivot_row).enumerate() {
                *v = if j == c {
                    sign(-f.clone())
                } else {
                    sign(update(v, q, &p, &f, &d))
                };
            }
            *rhs = sign(update(rhs, &pivot_rhs, &p, &f, &d));
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row, &mut self.rhs[i]);
            }
        }
        eliminate(&mut self.reduced, &mut self.objective);

        let mut new_row: Vec<BigInt> = pivot_row.iter().map(|v| sign(v.clone())).collect();
        new_row[c] = sign(d.clone());
        self.rows[r] = new_row;
        self.rhs[r] = sign(pivot_rhs);
        std::mem::swap(&mut self.basis[r], &mut self.nonbasic[c]);
    }

    /// Expresses integer `costs` (indexed by variable) over the current nonbasic variables.
    fn set_objective(&mut self, costs: &[BigInt]) {
        let d = &self.denominator;
        self.reduced = self.nonbasic.iter().map(|&v| -(d * &costs[v])).collect();
        self.objective = BigInt::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (e, a) in self.reduced.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *e += cb * a;
                }
            }
            self.objective += cb * &self.rhs[i];
        }
    }

    /// Runs Bland pivots to optimality. Returns false if unbounded.
    fn run(&mut self) -> bool {
        loop {
            let entering = (0..self.nonbasic.len())
                .filter(|&j| self.reduced[j].is_negative())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(c) = entering else {
                return true;
            };
            // Minimum ratio rhs[i] / rows[i][c] over positive entries.
            let mut leaving: Option<usize> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let better = match leaving {
                    None => true,
                    Some(r) => {
                        let lhs = &self.rhs[i] * &self.rows[r][c];
                        let rhs = &self.rhs[r] * a;
                        lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[r])
                    }
                };
                if better {
                    leaving = Some(i);
                }
            }
            let Some(r) = leaving else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn drop_nonbasic(&mut self, c: usize) {
        self.nonbasic.remove(c);
        for row in &mut self.rows {
            row.remove(c);
        }
    }

    fn value(&self, numerator: &BigInt) -> Scalar {
        Scalar::new(numerator.clone(), self.denominator.clone())
    }
}

/// Least positive integer making every entry of `values` integral.
fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn scaled(v: &Scalar, by: &BigInt) -> BigInt {
    (v.numer() * by) / v.denom()
}

/// Maximizes `costs · z` over `{ z >= 0 : rows · z <= rhs }`.
pub(crate) fn maximize(rows: &[Vec<Scalar>], rhs: &[Scalar], costs: &[Scalar]) -> LpOutcome {
    let m = rows.len();
    let n = costs.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    debug_assert_eq!(rhs.len(), m);

    // Variables: n structural, m slacks, one auxiliary for phase one.
    let aux = n + m;
    let mut d = Dictionary {
        rows: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        basis: (n..n + m).collect(),
        nonbasic: (0..n).chain(std::iter::once(aux)).collect(),
        reduced: vec![BigInt::zero(); n + 1],
        objective: BigInt::zero(),
        denominator: BigInt::one(),
    };
    for (r, b) in rows.iter().zip(rhs) {
        let scale = common_denominator(r.iter().chain(std::iter::once(b)));
        let mut row: Vec<BigInt> = r.iter().map(|v| scaled(v, &scale)).collect();
        row.push(-BigInt::one());
        d.rows.push(row);
        d.rhs.push(scaled(b, &scale));
    }

    let most_negative = (0..m)
        .filter(|&i| d.rhs[i].is_negative())
        .min_by(|&a, &b| d.rhs[a].cmp(&d.rhs[b]).then(a.cmp(&b)));
    if let Some(r) = most_negative {
        d.pivot(r, n);
        let mut phase_one = vec![BigInt::zero(); aux + 1];
        phase_one[aux] = -BigInt::one();
        d.set_objective(&phase_one);
        let bounded = d.run();
        debug_assert!(bounded, "phase one is bounded by construction");
        if d.objective.is_negative() {
            return LpOutcome::Infeasible;
        }
        if let Some(r) = d.basis.iter().position(|&b| b == aux) {
            match (0..d.nonbasic.len()).find(|&j| !d.rows[r][j].is_zero()) {
                Some(c) => d.pivot(r, c),
                None => {
                    d.rows.remove(r);
                    d.rhs.remove(r);
                    d.basis.remove(r);
                }
            }
        }
    }
    let c = d
        .nonbasic
        .iter()
        .position(|&v| v == aux)
        .expect("auxiliary is nonbasic");
    d.drop_nonbasic(c);

    let cost_scale = common_denominator(costs);
    let mut phase_two = vec![BigInt::zero(); aux + 1];
    for (slot, c) in phase_two.iter_mut().zip(costs) {
        *slot = scaled(c, &cost_scale);
    }
    d.set_objective(&phase_two);
    if !d.run() {
        return LpOutcome::Unbounded;
    }
    let mut values = vec![Scalar::zero(); n];
    for (i, &b) in d.basis.iter().enumerate() {
        if b < n {
            values[b] = d.value(&d.rhs[i]);
        }
    }
    let objective = d.value(&d.objective) / Scalar::from_integer(cost_scale);
    LpOutcome::Optimal { values, objective }
}
