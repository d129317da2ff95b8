//! Naive dense Gauss-Jordan elimination over ℚ, used as an oracle for the
//! sparse solver. Deliberately shares no code with the library.
#![allow(dead_code)]

use nilconn::{MatrixQ, Scalar};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Reduced {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form of a dense matrix.
pub fn rref(mut rows: Vec<Vec<Scalar>>, ncols: usize) -> Reduced {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Scalar::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let k = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &k * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Reduced { rows, pivots }
}

pub fn dense(a: &MatrixQ) -> Vec<Vec<Scalar>> {
    let mut out = vec![vec![Scalar::zero(); a.ncols()]; a.nrows()];
    for (r, c, v) in a.triplets() {
        out[r][c] = v.clone();
    }
    out
}

pub fn oracle_rank(a: &MatrixQ) -> usize {
    rref(dense(a), a.ncols()).pivots.len()
}

/// `Some(x)` with `A x = b` when consistent.
pub fn oracle_solve(a: &MatrixQ, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.ncols();
    let aug: Vec<Vec<Scalar>> = dense(a)
        .into_iter()
        .zip(b)
        .map(|(mut row, v)| {
            row.push(v.clone());
            row
        })
        .collect();
    let red = rref(aug, n + 1);
    if red.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (i, &c) in red.pivots.iter().enumerate() {
        x[c] = red.rows[i][n].clone();
    }
    Some(x)
}

pub fn mat_vec(a: &MatrixQ, x: &[Scalar]) -> Vec<Scalar> {
    dense(a)
        .iter()
        .map(|row| row.iter().zip(x).fold(Scalar::zero(), |acc, (p, q)| acc + p * q))
        .collect()
}

/// Random sparse integer system with one to four nonzeros per row, the
/// shape of the assembled connection systems. Roughly a third of the
/// instances are inconsistent by construction, another third consistent.
pub fn random_system(rng: &mut ChaCha8Rng, max_dim: usize) -> (MatrixQ, Vec<Scalar>) {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let mut triplets = Vec::new();
    for r in 0..rows {
        for _ in 0..rng.gen_range(1..=4usize) {
            let c = rng.gen_range(0..cols);
            triplets.push((r, c, Scalar::from_integer(rng.gen_range(-4i64..=4).into())));
        }
    }
    let mut a = MatrixQ::from_triplets(rows, cols, triplets);
    let b: Vec<Scalar> = match rng.gen_range(0..3) {
        0 => {
            let x: Vec<Scalar> = (0..cols)
                .map(|_| Scalar::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=3).into()))
                .collect();
            mat_vec(&a, &x)
        }
        1 if rows >= 2 => {
            // Duplicate a row with a different right-hand side.
            let src = rng.gen_range(0..rows);
            let dst = (src + 1) % rows;
            let row: Vec<(usize, Scalar)> = a.row(src).to_vec();
            for c in 0..cols {
                a.set(dst, c, Scalar::zero());
            }
            for (c, v) in row {
                a.set(dst, c, v);
            }
            let mut b: Vec<Scalar> = (0..rows).map(|_| Scalar::from_integer(rng.gen_range(-3i64..=3).into())).collect();
            b[dst] = &b[src] + Scalar::one();
            b
        }
        _ => (0..rows).map(|_| Scalar::from_integer(rng.gen_range(-3i64..=3).into())).collect(),
    };
    (a, b)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
