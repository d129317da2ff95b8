use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{MatrixQ, Scalar};

/// Small dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_fn(rows.len(), cols, |r, c| rows[r][c].clone())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows).map(|r| super::dot(self.row(r), v)).collect()
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        (0..k).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        (0..self.rows).fold(Scalar::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Largest absolute row sum.
    pub fn inf_norm(&self) -> Scalar {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .fold(Scalar::zero(), |acc, x| acc + num_traits::abs(x.clone()))
            })
            .max()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn to_sparse(&self) -> MatrixQ {
        MatrixQ::from_triplets(
            self.rows,
            self.cols,
            (0..self.rows).flat_map(|r| {
                (0..self.cols)
                    .filter(move |&c| !self[(r, c)].is_zero())
                    .map(move |c| (r, c, self[(r, c)].clone()))
            }),
        )
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &Self) -> Self {
        assert_eq!(self.cols, below.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Self {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        super::rank(&self.to_sparse())
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let a = self.to_sparse();
        let mut columns = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[j] = Scalar::one();
            match super::solve_affine(&a, &e).ok()? {
                super::AffineOutcome::Feasible(sol) if sol.nullspace_basis.is_empty() => {
                    columns.push(sol.particular)
                }
                _ => return None,
            }
        }
        Some(Self::from_columns(n, &columns))
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Scalar;

    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;

    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions");
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &DenseMatrix {
    type Output = DenseMatrix;

    fn add(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &DenseMatrix {
    type Output = DenseMatrix;

    fn sub(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &DenseMatrix {
    type Output = DenseMatrix;

    fn neg(self) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
