use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::reps;
use super::roots::{AlgebraId, RootSystem, TypeLetter};
use crate::error::Result;
use crate::linalg::{self, int, AffineOutcome, DenseMatrix, MatrixQ, Scalar};

/// Coordinates of an element of `g` in the Chevalley basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    pub coords: Vec<Scalar>,
}

impl LieElement {
    pub fn zeros(dim: usize) -> Self {
        Self {
            coords: vec![Scalar::zero(); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut x = Self::zeros(dim);
        x.coords[i] = Scalar::one();
        x
    }

    pub fn from_coords(coords: Vec<Scalar>) -> Self {
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.coords)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self {
            coords: self.coords.iter().map(|x| x * k).collect(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coords.iter().enumerate().filter(|(_, v)| !v.is_zero())
    }
}

impl Add for &LieElement {
    type Output = LieElement;

    fn add(self, rhs: &LieElement) -> LieElement {
        LieElement {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &LieElement {
    type Output = LieElement;

    fn sub(self, rhs: &LieElement) -> LieElement {
        LieElement {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &LieElement {
    type Output = LieElement;

    fn neg(self) -> LieElement {
        LieElement {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

/// What a Chevalley basis vector is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// Simple coroot `h_i`.
    Cartan(usize),
    /// `e_β` for the `k`-th positive root.
    Raising(usize),
    /// `f_β = e_{−β}` for the `k`-th positive root.
    Lowering(usize),
}

type Sparse = Vec<(usize, Scalar)>;

/// A simple Lie algebra in a Chevalley basis.
///
/// Basis order: `h_1 … h_l`, then `e_β, f_β` for each positive root `β` in
/// the order of [`RootSystem::positive_roots`].
///
/// Signs: for every non-simple positive root `ξ`, let `i` be the smallest
/// index with `ξ − α_i` a root and `r` the largest integer with
/// `ξ − α_i − rα_i` a root. Then `[e_{α_i}, e_{ξ−α_i}] = (r+1) e_ξ`, i.e. the
/// pair `(α_i, ξ − α_i)` is the extraspecial pair of `ξ` and its structure
/// constant is positive. `f_β = −ω(e_β)` for the Chevalley involution `ω`, so
/// `[e_β, f_β] = h_β` is the coroot of `β`.
#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    roots: RootSystem,
    labels: Vec<String>,
    weights: Vec<Vec<i64>>,
    structure: Vec<Sparse>,
}

/// Matrices of `h_1..h_l, e_β, f_β, ...` in the defining representation.
fn basis_matrices(roots: &RootSystem, gens: &reps::Generators, hs: &[DenseMatrix]) -> Vec<DenseMatrix> {
    let l = roots.rank();
    let positive = roots.positive_roots();
    let mut e_mats: Vec<DenseMatrix> = Vec::with_capacity(positive.len());
    let mut f_mats: Vec<DenseMatrix> = Vec::with_capacity(positive.len());
    for xi in positive {
        if RootSystem::height(xi) == 1 {
            let i = xi.iter().position(|&k| k == 1).expect("simple root");
            e_mats.push(gens.e[i].clone());
            f_mats.push(gens.f[i].clone());
            continue;
        }
        let (i, beta) = (0..l)
            .find_map(|i| {
                let mut b = xi.clone();
                b[i] -= 1;
                roots.positive_index(&b).map(|k| (i, k))
            })
            .expect("every non-simple positive root has a simple predecessor");
        let mut r = 0;
        let mut down = positive[beta].clone();
        loop {
            down[i] -= 1;
            if roots.positive_index(&down).is_none() {
                break;
            }
            r += 1;
        }
        let inv = Scalar::new(1.into(), (r + 1).into());
        e_mats.push(gens.e[i].commutator(&e_mats[beta]).scale(&inv));
        f_mats.push(gens.f[i].commutator(&f_mats[beta]).scale(&-inv));
    }
    let mut basis: Vec<DenseMatrix> = hs.to_vec();
    for (e, f) in e_mats.into_iter().zip(f_mats) {
        basis.push(e);
        basis.push(f);
    }
    basis
}

/// Builds the algebra of the given type and rank.
pub fn build_algebra(letter: TypeLetter, rank: usize) -> Result<LieAlgebraData> {
    Ok(LieAlgebraData::build(AlgebraId::new(letter, rank)?))
}

impl LieAlgebraData {
    pub fn build(id: AlgebraId) -> Self {
        let roots = RootSystem::new(id);
        let l = id.rank;
        let gens = reps::generators(id);
        let hs: Vec<DenseMatrix> = (0..l).map(|i| gens.e[i].commutator(&gens.f[i])).collect();
        for (i, h) in hs.iter().enumerate() {
            for j in 0..l {
                let a = int(roots.cartan_matrix()[i][j]);
                assert_eq!(h.commutator(&gens.e[j]), gens.e[j].scale(&a), "{id}: [h{i}, e{j}]");
                assert_eq!(h.commutator(&gens.f[j]), gens.f[j].scale(&-a), "{id}: [h{i}, f{j}]");
            }
        }

        let positive = roots.positive_roots().to_vec();
        let basis = basis_matrices(&roots, &gens, &hs);
        let mut labels: Vec<String> = (1..=l).map(|i| format!("h{i}")).collect();
        let mut weights: Vec<Vec<i64>> = vec![vec![0; l]; l];
        for root in &positive {
            let tag = root.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            labels.push(format!("e({tag})"));
            labels.push(format!("f({tag})"));
            weights.push(root.clone());
            weights.push(root.iter().map(|x| -x).collect());
        }

        let dim = basis.len();
        assert_eq!(dim, id.dimension());
        let cartan_system = {
            let size = hs[0].nrows();
            MatrixQ::from_triplets(
                size * size,
                l,
                hs.iter().enumerate().flat_map(|(c, h)| {
                    h.entries()
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(move |(r, v)| (r, c, v.clone()))
                }),
            )
        };
        let mut structure = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let m = basis[i].commutator(&basis[j]);
                let w: Vec<i64> = weights[i].iter().zip(&weights[j]).map(|(a, b)| a + b).collect();
                structure.push(decompose(&m, &w, &basis, &weights, &cartan_system, l));
            }
        }
        let data = Self {
            roots,
            labels,
            weights,
            structure,
        };
        for (k, root) in positive.iter().enumerate() {
            let expected: Sparse = data
                .roots
                .coroot(root)
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(i, c)| (i, int(c)))
                .collect();
            assert_eq!(data.structure_constant(data.e_index(k), data.f_index(k)), &expected[..]);
        }
        data
    }

    pub fn id(&self) -> AlgebraId {
        self.roots.id()
    }

    /// The basis in the defining matrix representation (`G_2` acts on the
    /// 8-dimensional space of its `so_8` realization).
    pub fn defining_representation(&self) -> Vec<DenseMatrix> {
        let gens = reps::generators(self.id());
        let hs: Vec<DenseMatrix> = (0..self.rank()).map(|i| gens.e[i].commutator(&gens.f[i])).collect();
        basis_matrices(&self.roots, &gens, &hs)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Root (or zero) weight of a basis vector, in simple-root coordinates.
    pub fn basis_weight(&self, i: usize) -> &[i64] {
        &self.weights[i]
    }

    pub fn kind(&self, i: usize) -> BasisKind {
        let l = self.rank();
        if i < l {
            BasisKind::Cartan(i)
        } else if (i - l).is_multiple_of(2) {
            BasisKind::Raising((i - l) / 2)
        } else {
            BasisKind::Lowering((i - l) / 2)
        }
    }

    pub fn e_index(&self, k: usize) -> usize {
        self.rank() + 2 * k
    }

    pub fn f_index(&self, k: usize) -> usize {
        self.rank() + 2 * k + 1
    }

    /// Basis index of the root vector `e_β` for any root `β` (negative roots
    /// give the corresponding `f`).
    pub fn root_vector_index(&self, root: &[i64]) -> Option<usize> {
        if let Some(k) = self.roots.positive_index(root) {
            return Some(self.e_index(k));
        }
        let neg: Vec<i64> = root.iter().map(|x| -x).collect();
        self.roots.positive_index(&neg).map(|k| self.f_index(k))
    }

    pub fn basis_element(&self, i: usize) -> LieElement {
        LieElement::basis(self.dim(), i)
    }

    pub fn zero(&self) -> LieElement {
        LieElement::zeros(self.dim())
    }

    /// `Σ t_i h_i`.
    pub fn cartan_element(&self, t: &[Scalar]) -> LieElement {
        let mut x = self.zero();
        x.coords[..t.len()].clone_from_slice(t);
        x
    }

    /// `[b_i, b_j]` as a sparse coordinate list.
    pub fn structure_constant(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.structure[i * self.dim() + j]
    }

    /// Overwrites `[b_i, b_j]` without any consistency check.
    pub fn set_structure_constant(&mut self, i: usize, j: usize, value: Vec<(usize, Scalar)>) {
        let d = self.dim();
        self.structure[i * d + j] = value.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut out = self.zero();
        for (i, a) in x.support() {
            for (j, b) in y.support() {
                let ab = a * b;
                for (k, c) in self.structure_constant(i, j) {
                    out.coords[*k] += &ab * c;
                }
            }
        }
        out
    }

    fn bracket_basis_with(&self, i: usize, y: &[(usize, Scalar)], out: &mut [Scalar]) {
        for (j, b) in y {
            for (k, c) in self.structure_constant(i, *j) {
                out[*k] += b * c;
            }
        }
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn ad_matrix(&self, x: &LieElement) -> MatrixQ {
        self.ad_dense(x).to_sparse()
    }

    pub fn ad_dense(&self, x: &LieElement) -> DenseMatrix {
        let d = self.dim();
        let mut m = DenseMatrix::zeros(d, d);
        for (i, a) in x.support() {
            for j in 0..d {
                for (k, c) in self.structure_constant(i, j) {
                    m[(*k, j)] += a * c;
                }
            }
        }
        m
    }

    /// Jacobi identity on every ordered triple of basis vectors.
    pub fn verify_jacobi(&self) -> bool {
        let d = self.dim();
        let mut acc = vec![Scalar::zero(); d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    acc.iter_mut().for_each(Zero::set_zero);
                    self.bracket_basis_with(i, self.structure_constant(j, k), &mut acc);
                    self.bracket_basis_with(j, self.structure_constant(k, i), &mut acc);
                    self.bracket_basis_with(k, self.structure_constant(i, j), &mut acc);
                    if !linalg::is_zero_vec(&acc) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `[x, y] = −[y, x]` on all basis pairs.
    pub fn verify_antisymmetry(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let a = self.structure_constant(i, j);
                let b = self.structure_constant(j, i);
                a.len() == b.len() && a.iter().zip(b).all(|((k1, v1), (k2, v2))| k1 == k2 && *v1 == -v2)
            })
        })
    }
}

fn decompose(
    m: &DenseMatrix,
    weight: &[i64],
    basis: &[DenseMatrix],
    weights: &[Vec<i64>],
    cartan_system: &MatrixQ,
    l: usize,
) -> Sparse {
    if m.is_zero() {
        return Vec::new();
    }
    let out: Sparse = if weight.iter().all(|&w| w == 0) {
        match linalg::solve_affine(cartan_system, m.entries()).expect("shapes agree") {
            AffineOutcome::Feasible(sol) => {
                assert!(sol.nullspace_basis.is_empty());
                sol.particular
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            }
            AffineOutcome::Infeasible(_) => panic!("weight-zero bracket outside the Cartan subalgebra"),
        }
    } else {
        let t = (l..basis.len())
            .find(|&t| weights[t] == weight)
            .expect("nonzero bracket must land on a root space");
        let b = &basis[t];
        let p = b.entries().iter().position(|v| !v.is_zero()).expect("nonzero basis");
        let c = &m.entries()[p] / &b.entries()[p];
        assert_eq!(&b.scale(&c), m, "bracket is not a multiple of the root vector");
        vec![(t, c)]
    };
    assert!(out.iter().all(|(_, v)| v.is_integer()), "non-integral structure constant");
    out
}
