//! Faithful matrix realizations of the Chevalley generators `e_i`, `f_i`.
//!
//! Classical types use the defining representations (`sl_{n+1}`, `so_{2n+1}`,
//! `sp_{2n}`, `so_{2n}` with the split forms pairing `ε_k` with `−ε_k`). `G_2`
//! is the fixed-point algebra of triality inside `so_8`, generated by
//! `e_1 + e_3 + e_4` (short) and `e_2` (long) of `D_4`.

use super::roots::{AlgebraId, TypeLetter};
use crate::linalg::{int, DenseMatrix};

pub(crate) struct Generators {
    pub e: Vec<DenseMatrix>,
    pub f: Vec<DenseMatrix>,
}

fn unit(n: usize, r: usize, c: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(n, n);
    m[(r, c)] = int(1);
    m
}

pub(crate) fn generators(id: AlgebraId) -> Generators {
    let n = id.rank;
    match id.letter {
        TypeLetter::A => {
            let e: Vec<_> = (0..n).map(|i| unit(n + 1, i, i + 1)).collect();
            let f = e.iter().map(DenseMatrix::transpose).collect();
            Generators { e, f }
        }
        TypeLetter::C | TypeLetter::D => {
            // Basis ε_1..ε_n, then −ε_1..−ε_n.
            let size = 2 * n;
            let pos = |k: usize| k - 1;
            let neg = |k: usize| n + k - 1;
            let mut e: Vec<_> = (1..n)
                .map(|i| &unit(size, pos(i), pos(i + 1)) - &unit(size, neg(i + 1), neg(i)))
                .collect();
            e.push(if id.letter == TypeLetter::C {
                unit(size, pos(n), neg(n))
            } else {
                &unit(size, pos(n - 1), neg(n)) - &unit(size, pos(n), neg(n - 1))
            });
            let f = e.iter().map(DenseMatrix::transpose).collect();
            Generators { e, f }
        }
        TypeLetter::B => {
            // Basis ε_0 (the zero weight), ε_1..ε_n, −ε_1..−ε_n.
            let size = 2 * n + 1;
            let pos = |k: usize| k;
            let neg = |k: usize| n + k;
            let mut e: Vec<_> = (1..n)
                .map(|i| &unit(size, pos(i), pos(i + 1)) - &unit(size, neg(i + 1), neg(i)))
                .collect();
            let mut f: Vec<_> = e.iter().map(DenseMatrix::transpose).collect();
            let short = &unit(size, pos(n), 0) - &unit(size, 0, neg(n));
            e.push(short.scale(&int(2)));
            f.push(short.transpose());
            Generators { e, f }
        }
        TypeLetter::G => {
            let d4 = generators(AlgebraId { letter: TypeLetter::D, rank: 4 });
            let fold = |g: &[DenseMatrix]| vec![&(&g[0] + &g[2]) + &g[3], g[1].clone()];
            Generators {
                e: fold(&d4.e),
                f: fold(&d4.f),
            }
        }
    }
}
