use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{int, DenseMatrix, Scalar};

/// Largest supported rank for the classical families.
pub const MAX_RANK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    G,
}

/// A supported simple type such as `C3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId {
    pub letter: TypeLetter,
    pub rank: usize,
}

impl AlgebraId {
    pub fn new(letter: TypeLetter, rank: usize) -> Result<Self> {
        let ok = match letter {
            TypeLetter::A => (1..=MAX_RANK).contains(&rank),
            TypeLetter::B | TypeLetter::C => (2..=MAX_RANK).contains(&rank),
            TypeLetter::D => rank == 4 && rank <= MAX_RANK,
            TypeLetter::G => rank == 2,
        };
        if ok {
            Ok(Self { letter, rank })
        } else {
            Err(Error::UnsupportedType(format!("{letter:?}{rank}")))
        }
    }

    /// All supported algebras, ordered by rank and then by letter.
    pub fn supported() -> Vec<Self> {
        let mut out = Vec::new();
        for rank in 1..=MAX_RANK {
            for letter in [TypeLetter::A, TypeLetter::B, TypeLetter::C, TypeLetter::D, TypeLetter::G] {
                if let Ok(id) = Self::new(letter, rank) {
                    out.push(id);
                }
            }
        }
        out
    }

    /// Dimension from the classical formulas.
    pub fn dimension(&self) -> usize {
        let n = self.rank;
        match self.letter {
            TypeLetter::A => n * (n + 2),
            TypeLetter::B | TypeLetter::C => n * (2 * n + 1),
            TypeLetter::D => n * (2 * n - 1),
            TypeLetter::G => 14,
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.letter, self.rank)
    }
}

impl FromStr for AlgebraId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedType(s.to_string());
        let mut chars = s.chars();
        let letter = match chars.next().ok_or_else(bad)? {
            'A' => TypeLetter::A,
            'B' => TypeLetter::B,
            'C' => TypeLetter::C,
            'D' => TypeLetter::D,
            'G' => TypeLetter::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Self::new(letter, rank).map_err(|_| bad())
    }
}

/// A root system with integer ambient coordinates.
///
/// Roots are stored in simple-root coordinates. The ambient realization is
/// the standard one: `A_n` in the sum-zero sublattice of `ℤ^{n+1}`, `B_n`,
/// `C_n`, `D_n` in `ℤ^n` with the usual `ε` basis, and `G_2` in the sum-zero
/// sublattice of `ℤ^3` with `α1 = ε1 − ε2` short and `α2 = −2ε1 + ε2 + ε3`.
///
/// `cartan[i][j] = ⟨α_i^∨, α_j⟩`, so `[h_i, e_{α_j}] = cartan[i][j] e_{α_j}`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    id: AlgebraId,
    simple_ambient: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    highest: usize,
}

impl RootSystem {
    pub fn new(id: AlgebraId) -> Self {
        let simple_ambient = simple_roots_ambient(id);
        let l = id.rank;
        let ip = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let num = 2 * ip(&simple_ambient[i], &simple_ambient[j]);
                        let den = ip(&simple_ambient[i], &simple_ambient[i]);
                        assert_eq!(num % den, 0);
                        num / den
                    })
                    .collect()
            })
            .collect();
        let positive = positive_roots(&cartan);
        let highest = positive.len() - 1;
        let rs = Self {
            id,
            simple_ambient,
            cartan,
            positive,
            highest,
        };
        debug_assert!(rs.positive.iter().all(|b| b.iter().zip(&rs.positive[highest]).all(|(x, y)| x <= y)));
        rs
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn letter(&self) -> TypeLetter {
        self.id.letter
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_ambient[0].len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|i| unit(self.rank(), i)).collect()
    }

    /// Positive roots ordered by height, then lexicographically decreasing,
    /// so the simple roots come first in index order.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Positive roots followed by their negatives.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut all = self.positive.clone();
        all.extend(self.positive.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        all
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.positive[self.highest]
    }

    pub fn positive_index(&self, root: &[i64]) -> Option<usize> {
        self.positive.iter().position(|r| r == root)
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.positive_index(v).is_some() || self.positive_index(&neg).is_some()
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    /// Ambient coordinates of a vector given in simple-root coordinates.
    pub fn ambient(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.ambient_dim()];
        for (k, s) in v.iter().zip(&self.simple_ambient) {
            for (o, x) in out.iter_mut().zip(s) {
                *o += k * x;
            }
        }
        out
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        self.ambient(a).iter().zip(self.ambient(b)).map(|(x, y)| x * y).sum()
    }

    /// `⟨α_i^∨, v⟩` for `v` in simple-root coordinates.
    pub fn pairing(&self, v: &[i64], i: usize) -> i64 {
        v.iter().zip(&self.cartan[i]).map(|(k, a)| k * a).sum()
    }

    /// Coroot `β^∨` expanded in the simple coroots.
    pub fn coroot(&self, beta: &[i64]) -> Vec<i64> {
        let bb = self.inner(beta, beta);
        (0..self.rank())
            .map(|i| {
                let ai = unit(self.rank(), i);
                let num = beta[i] * self.inner(&ai, &ai);
                assert_eq!(num % bb, 0, "coroot coefficient not integral");
                num / bb
            })
            .collect()
    }

    /// Ambient coordinates of the weight with Dynkin labels `labels`, i.e.
    /// the `λ` in the span of the roots with `⟨α_i^∨, λ⟩ = labels[i]`.
    pub fn weight_ambient(&self, labels: &[i64]) -> Vec<Scalar> {
        let l = self.rank();
        let a = DenseMatrix::from_fn(l, l, |i, j| int(self.cartan[i][j]));
        let inv = a.inverse().expect("Cartan matrix is invertible");
        let c = inv.apply(&labels.iter().map(|&x| int(x)).collect::<Vec<_>>());
        (0..self.ambient_dim())
            .map(|k| {
                c.iter()
                    .zip(&self.simple_ambient)
                    .fold(int(0), |acc, (cj, s)| acc + cj * int(s[k]))
            })
            .collect()
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn simple_roots_ambient(id: AlgebraId) -> Vec<Vec<i64>> {
    let n = id.rank;
    let eps = |dim: usize, i: usize, j: Option<(usize, i64)>, ci: i64| {
        let mut v = vec![0; dim];
        v[i] += ci;
        if let Some((j, cj)) = j {
            v[j] += cj;
        }
        v
    };
    match id.letter {
        TypeLetter::A => (0..n).map(|i| eps(n + 1, i, Some((i + 1, -1)), 1)).collect(),
        TypeLetter::G => vec![vec![1, -1, 0], vec![-2, 1, 1]],
        letter => {
            let mut s: Vec<Vec<i64>> = (0..n - 1).map(|i| eps(n, i, Some((i + 1, -1)), 1)).collect();
            s.push(match letter {
                TypeLetter::B => eps(n, n - 1, None, 1),
                TypeLetter::C => eps(n, n - 1, None, 2),
                TypeLetter::D => eps(n, n - 2, Some((n - 1, 1)), 1),
                _ => unreachable!(),
            });
            s
        }
    }
}

/// Positive roots from the Cartan matrix via root strings: for a positive
/// root `β ≠ α_i`, the `α_i`-string through `β` is `β − rα_i, …, β + qα_i`
/// with `r − q = ⟨α_i^∨, β⟩`.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let pairing = |v: &[i64], i: usize| v.iter().zip(&cartan[i]).map(|(k, a)| k * a).sum::<i64>();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut level: Vec<Vec<i64>> = (0..l).map(|i| unit(l, i)).collect();
    while !level.is_empty() {
        for r in &level {
            seen.insert(r.clone());
        }
        all.extend(level.iter().cloned());
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..l {
                if *beta == unit(l, i) {
                    continue;
                }
                let mut r = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if seen.contains(&down) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                let q = r - pairing(beta, i);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !seen.contains(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        level = next;
    }
    all.sort_by(|a, b| {
        RootSystem::height(a)
            .cmp(&RootSystem::height(b))
            .then_with(|| b.cmp(a))
    });
    all
}
