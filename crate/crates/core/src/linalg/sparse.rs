use num_traits::Zero;

use super::{DenseMatrix, Scalar};

/// A sparse row: `(column, value)` pairs sorted by column, no stored zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Row-major sparse rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixQ {
    cols: usize,
    rows: Vec<SparseRow>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| vec![(i, super::one())]).collect(),
        }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            m.add_to(r, c, &v);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(0, cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged dense input");
            m.push_row(
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect(),
            );
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.rows[r]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(usize, Scalar)]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Appends a row. Entries must be sorted, in range and nonzero.
    pub fn push_row(&mut self, row: SparseRow) {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(row.iter().all(|(c, v)| *c < self.cols && !v.is_zero()));
        self.rows.push(row);
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.rows[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.rows[r][k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(c < self.cols, "column {c} out of range");
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (c, v)),
        }
    }

    fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| !x[*c].is_zero())
                    .fold(Scalar::zero(), |acc, (c, v)| acc + v * &x[*c])
            })
            .collect()
    }

    /// `yᵀ A`.
    pub fn left_mul_vec(&self, y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(y.len(), self.rows.len());
        let mut out = vec![Scalar::zero(); self.cols];
        for (row, w) in self.rows.iter().zip(y) {
            if w.is_zero() {
                continue;
            }
            for (c, v) in row {
                out[*c] += v * w;
            }
        }
        out
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows.len(), self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                d[(r, *c)] = v.clone();
            }
        }
        d
    }

    /// Sparse `(row, col, value)` triplets in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }
}
