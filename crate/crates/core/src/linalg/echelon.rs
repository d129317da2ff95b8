//! Incremental sparse row echelon form.
//!
//! Rows are inserted one at a time in their original order. Each incoming row
//! is reduced against the existing pivots in increasing column order; if
//! anything survives, its lowest column becomes a new pivot and the row is
//! scaled to a leading one. Every pivot row therefore only has entries at or
//! to the right of its pivot column, which is all back substitution needs.
//!
//! When a right-hand side is present it is carried as one extra column to the
//! right of every unknown, so it can only become a pivot when a row reduces to
//! `0 = c` with `c != 0`. The reduction steps of each pivot are recorded so an
//! inconsistent row can be expanded into a left-kernel certificate.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{MatrixQ, Scalar, SparseRow};
use crate::error::{Error, Result};

struct Pivot {
    col: usize,
    /// Leading entry is `(col, 1)`.
    row: SparseRow,
    origin: usize,
    /// `row = scale * (A[origin] - Σ factor * pivots[k].row)`.
    steps: Vec<(usize, Scalar)>,
    scale: Scalar,
}

enum Inserted {
    Pivot,
    Dependent,
    /// Reduced to `0 = c`; carries what is needed to rebuild the combination.
    Inconsistent {
        origin: usize,
        steps: Vec<(usize, Scalar)>,
    },
}

struct Echelon {
    /// Column index of the right-hand side, if any.
    rhs_col: Option<usize>,
    pivot_of_col: Vec<Option<usize>>,
    pivots: Vec<Pivot>,
    track: bool,
}

impl Echelon {
    fn new(width: usize, rhs_col: Option<usize>, track: bool) -> Self {
        Self {
            rhs_col,
            pivot_of_col: vec![None; width],
            pivots: Vec::new(),
            track,
        }
    }

    fn insert(&mut self, origin: usize, row: impl IntoIterator<Item = (usize, Scalar)>) -> Inserted {
        let mut acc: BTreeMap<usize, Scalar> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut steps = Vec::new();
        let mut cursor = 0;
        let lead = loop {
            let Some((&col, _)) = acc.range(cursor..).next() else {
                break None;
            };
            let Some(p) = self.pivot_of_col[col] else {
                break Some(col);
            };
            let factor = acc.remove(&col).expect("present");
            for (j, v) in &self.pivots[p].row[1..] {
                let slot = acc.entry(*j).or_insert_with(Scalar::zero);
                *slot -= &factor * v;
                if slot.is_zero() {
                    acc.remove(j);
                }
            }
            if self.track {
                steps.push((p, factor));
            }
            cursor = col + 1;
        };
        let Some(col) = lead else {
            return Inserted::Dependent;
        };
        if Some(col) == self.rhs_col {
            return Inserted::Inconsistent { origin, steps };
        }
        let lead_val = acc[&col].clone();
        let scale = Scalar::one() / &lead_val;
        let row: SparseRow = acc.into_iter().map(|(j, v)| (j, v * &scale)).collect();
        debug_assert!(row[0].0 == col && row[0].1.is_one());
        let idx = self.pivots.len();
        self.pivot_of_col[col] = Some(idx);
        self.pivots.push(Pivot {
            col,
            row,
            origin,
            steps,
            scale,
        });
        Inserted::Pivot
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot indices ordered by decreasing pivot column.
    fn back_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.pivots.len()).collect();
        order.sort_unstable_by_key(|&p| std::cmp::Reverse(self.pivots[p].col));
        order
    }

    /// Solves the echelon system with the given values for free columns.
    fn back_substitute(&self, order: &[usize], x: &mut [Scalar]) {
        for &p in order {
            let piv = &self.pivots[p];
            // Row `[1, v_j.. | v_rhs]` reads `x_col = v_rhs - Σ v_j x_j`.
            let mut val = Scalar::zero();
            for (j, v) in &piv.row[1..] {
                if Some(*j) == self.rhs_col {
                    val += v;
                } else if !x[*j].is_zero() {
                    val -= v * &x[*j];
                }
            }
            x[piv.col] = val;
        }
    }

    /// Left-kernel combination of the original rows reproducing the
    /// inconsistent row.
    fn certificate(&self, nrows: usize, origin: usize, steps: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut y = vec![Scalar::zero(); nrows];
        let mut coef = vec![Scalar::zero(); self.pivots.len()];
        y[origin] += Scalar::one();
        for (p, f) in steps {
            coef[*p] -= f;
        }
        for p in (0..self.pivots.len()).rev() {
            if coef[p].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut coef[p]) * &self.pivots[p].scale;
            y[self.pivots[p].origin] += &c;
            for (k, f) in &self.pivots[p].steps {
                coef[*k] -= &c * f;
            }
        }
        y
    }
}

/// Row that reduced to `0 = c` with `c != 0`, and the steps that reduced it.
type Inconsistency = (usize, Vec<(usize, Scalar)>);

fn build(a: &MatrixQ, rhs: Option<&[Scalar]>, track: bool) -> (Echelon, Option<Inconsistency>) {
    let n = a.ncols();
    let width = if rhs.is_some() { n + 1 } else { n };
    let mut ech = Echelon::new(width, rhs.map(|_| n), track);
    for (r, row) in a.rows().enumerate() {
        let extra = rhs.and_then(|b| (!b[r].is_zero()).then(|| (n, b[r].clone())));
        let entries = row.iter().cloned().chain(extra);
        if let Inserted::Inconsistent { origin, steps } = ech.insert(r, entries) {
            return (ech, Some((origin, steps)));
        }
    }
    (ech, None)
}

/// Exact rank over ℚ.
pub fn rank(a: &MatrixQ) -> usize {
    build(a, None, false).0.rank()
}

/// Basis of `{x : A x = 0}`, one vector per non-pivot column, in increasing
/// column order.
pub fn nullspace(a: &MatrixQ) -> Vec<Vec<Scalar>> {
    let (ech, _) = build(a, None, false);
    nullspace_of(&ech, a.ncols())
}

fn nullspace_of(ech: &Echelon, n: usize) -> Vec<Vec<Scalar>> {
    let order = ech.back_order();
    (0..n)
        .filter(|&c| ech.pivot_of_col[c].is_none())
        .map(|free| {
            let mut x = vec![Scalar::zero(); n];
            x[free] = Scalar::one();
            for &p in &order {
                let piv = &ech.pivots[p];
                let mut val = Scalar::zero();
                for (j, v) in &piv.row[1..] {
                    if *j < n && !x[*j].is_zero() {
                        val -= v * &x[*j];
                    }
                }
                x[piv.col] = val;
            }
            x
        })
        .collect()
}

/// Particular solution plus homogeneous basis of a consistent system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub nullspace_basis: Vec<Vec<Scalar>>,
}

/// Left-kernel vector `y` with `yᵀA = 0` and `yᵀb != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub y: Vec<Scalar>,
}

impl Certificate {
    pub fn verify(&self, a: &MatrixQ, b: &[Scalar]) -> bool {
        self.y.len() == a.nrows()
            && super::is_zero_vec(&a.left_mul_vec(&self.y))
            && !super::dot(&self.y, b).is_zero()
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.y.iter().enumerate().filter(|(_, v)| !v.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineOutcome {
    Feasible(AffineSolution),
    Infeasible(Certificate),
}

impl AffineOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Feasible(_))
    }
}

/// Solves `A x = b` exactly.
///
/// Free variables are set to zero in the particular solution; the nullspace
/// basis has one vector per free column.
pub fn solve_affine(a: &MatrixQ, b: &[Scalar]) -> Result<AffineOutcome> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, right-hand side has {} entries",
            a.nrows(),
            b.len()
        )));
    }
    let (ech, bad) = build(a, Some(b), true);
    if let Some((origin, steps)) = bad {
        let y = ech.certificate(a.nrows(), origin, &steps);
        return Ok(AffineOutcome::Infeasible(Certificate { y }));
    }
    let n = a.ncols();
    let mut x = vec![Scalar::zero(); n + 1];
    let order = ech.back_order();
    ech.back_substitute(&order, &mut x);
    x.truncate(n);
    Ok(AffineOutcome::Feasible(AffineSolution {
        particular: x,
        nullspace_basis: nullspace_of(&ech, n),
    }))
}
