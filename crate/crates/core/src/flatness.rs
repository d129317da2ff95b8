//! Curvature, torsion and the representation-theoretic checks on a solved `Γ`.
//!
//! `ρ(ξ̄, η̄) = Γ_{[ξ,η]} − [Γ_ξ, Γ_η]` and
//! `σ(ξ̄, η̄) = Γ_ξ η̄ − Γ_η ξ̄ − [ξ,η]‾`. A connection is locally flat when
//! both vanish, which happens exactly when `Γ` is a transitive representation.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connection::GammaTensor;
use crate::error::{Error, Result};
use crate::lie::LieElement;
use crate::linalg::{self, AffineOutcome, DenseMatrix, MatrixQ, Scalar};
use crate::orbits::{CosetVector, OrbitContext};

const WITNESS_SEED: u64 = 0x5EED_F1A7;
const RANDOM_WITNESSES: usize = 32;

/// `⟨ℱ, ℋ, ℰ⟩ ⊂ End(g/h)` with `ℰ = ad̄ e` and `ℋ = ad̄ h + Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoTriple {
    pub f_op: DenseMatrix,
    pub h_op: DenseMatrix,
    pub e_op: DenseMatrix,
}

impl EndoTriple {
    pub fn relations_hold(&self) -> bool {
        let two = linalg::int(2);
        self.h_op.commutator(&self.e_op) == self.e_op.scale(&two)
            && self.h_op.commutator(&self.f_op) == self.f_op.scale(&-two)
            && self.e_op.commutator(&self.f_op) == self.h_op
    }

    /// Relations plus the defining formulas for `ℰ` and `ℋ`.
    pub fn verify(&self, ctx: &OrbitContext) -> bool {
        let Ok(e) = ctx.induced_operator(&ctx.triple().e) else {
            return false;
        };
        let Ok(h) = ctx.induced_operator(&ctx.triple().h) else {
            return false;
        };
        self.relations_hold() && self.e_op == e && self.h_op == &h + &DenseMatrix::identity(ctx.dim_m())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub curvature_zero: bool,
    pub torsion_zero: bool,
    pub is_representation: bool,
    pub is_transitive: bool,
    pub hrep_holds: bool,
    pub lemma4_holds: bool,
    /// The vector `v` with `Γ_g v = g/h`, if one was found.
    pub witness: Option<CosetVector>,
    /// Whether the witness is `f̄`.
    pub witness_is_fbar: bool,
}

pub fn curvature(gamma: &GammaTensor, xi: &LieElement, eta: &LieElement) -> DenseMatrix {
    let g = gamma.ctx().algebra();
    let gx = gamma.gamma(xi);
    let gy = gamma.gamma(eta);
    &gamma.gamma(&g.bracket(xi, eta)) - &gx.commutator(&gy)
}

pub fn torsion(gamma: &GammaTensor, xi: &LieElement, eta: &LieElement) -> CosetVector {
    let ctx = gamma.ctx();
    let a = gamma.apply(xi, &ctx.coset_project(eta));
    let b = gamma.apply(eta, &ctx.coset_project(xi));
    let c = ctx.coset_project(&ctx.algebra().bracket(xi, eta));
    CosetVector {
        coords: a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&c.coords)
            .map(|((a, b), c)| a - b - c)
            .collect(),
    }
}

fn basis_pairs(dim: usize) -> impl ParallelIterator<Item = (usize, usize)> {
    (0..dim).into_par_iter().flat_map_iter(move |i| (0..dim).map(move |j| (i, j)))
}

/// `ρ = 0` on every ordered pair of basis vectors.
pub fn curvature_vanishes(gamma: &GammaTensor) -> bool {
    let g = gamma.ctx().algebra();
    basis_pairs(g.dim()).all(|(i, j)| curvature(gamma, &g.basis_element(i), &g.basis_element(j)).is_zero())
}

/// `σ = 0` on every ordered pair of basis vectors.
pub fn torsion_vanishes(gamma: &GammaTensor) -> bool {
    let g = gamma.ctx().algebra();
    basis_pairs(g.dim()).all(|(i, j)| torsion(gamma, &g.basis_element(i), &g.basis_element(j)).is_zero())
}

/// `Γ_{[b_i,b_j]} = [Γ_{b_i}, Γ_{b_j}]` for all ordered basis pairs, read
/// directly off the structure constants and the stored slices.
pub fn is_representation(gamma: &GammaTensor) -> bool {
    let ctx = gamma.ctx();
    let g = ctx.algebra();
    let m = ctx.dim_m();
    basis_pairs(g.dim()).all(|(i, j)| {
        let mut lhs = DenseMatrix::zeros(m, m);
        for (k, c) in g.structure_constant(i, j) {
            lhs = &lhs + &gamma.slice(*k).scale(c);
        }
        lhs == gamma.slice(i).commutator(gamma.slice(j))
    })
}

/// Rank of `span{Γ_b v : b ∈ basis of g}`.
fn orbit_rank(gamma: &GammaTensor, v: &CosetVector) -> usize {
    let dim_g = gamma.ctx().dim_g();
    let columns: Vec<Vec<Scalar>> = (0..dim_g).map(|i| gamma.slice(i).apply(&v.coords)).collect();
    DenseMatrix::from_columns(v.dim(), &columns).rank()
}

/// Searches for `v` with `Γ_g v = g/h`: first `f̄`, then seeded random
/// vectors with small integer coordinates.
pub fn is_transitive(gamma: &GammaTensor) -> (bool, Option<CosetVector>) {
    let ctx = gamma.ctx();
    let m = ctx.dim_m();
    let fbar = ctx.coset_project(&ctx.triple().f);
    if orbit_rank(gamma, &fbar) == m {
        return (true, Some(fbar));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    for _ in 0..RANDOM_WITNESSES {
        let v = CosetVector {
            coords: (0..m).map(|_| linalg::int(rng.gen_range(-3..=3))).collect(),
        };
        if !v.is_zero() && orbit_rank(gamma, &v) == m {
            return (true, Some(v));
        }
    }
    (false, None)
}

/// `Γ_b h̄ = b̄` for every basis vector `b`.
pub fn check_hrep(gamma: &GammaTensor) -> bool {
    let ctx = gamma.ctx();
    let g = ctx.algebra();
    let hbar = ctx.coset_project(&ctx.triple().h);
    (0..g.dim()).all(|i| gamma.slice(i).apply(&hbar.coords) == ctx.coset_project(&g.basis_element(i)).coords)
}

/// Builds `ℰ`, `ℋ` and solves `[ℰ,ℱ] = ℋ`, `[ℋ,ℱ] = −2ℱ` for `ℱ`.
pub fn lemma4_triple(ctx: &OrbitContext) -> Result<EndoTriple> {
    let m = ctx.dim_m();
    let e_op = ctx.induced_operator(&ctx.triple().e)?;
    let h_op = &ctx.induced_operator(&ctx.triple().h)? + &DenseMatrix::identity(m);
    // Unknown F[k][l] sits at column k*m + l. Row (p, q) of [X, F] is
    // Σ_k X[p,k] F[k,q] − Σ_k F[p,k] X[k,q].
    let commutator_rows = |x: &DenseMatrix, shift: i64| {
        let mut rows = Vec::with_capacity(m * m);
        for p in 0..m {
            for q in 0..m {
                let mut row = std::collections::BTreeMap::<usize, Scalar>::new();
                for k in 0..m {
                    *row.entry(k * m + q).or_insert_with(Scalar::zero) += &x[(p, k)];
                    *row.entry(p * m + k).or_insert_with(Scalar::zero) -= &x[(k, q)];
                }
                *row.entry(p * m + q).or_insert_with(Scalar::zero) += linalg::int(shift);
                rows.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
            }
        }
        rows
    };
    let mut a = MatrixQ::zeros(0, m * m);
    let mut b = Vec::with_capacity(2 * m * m);
    for (p, row) in commutator_rows(&e_op, 0).into_iter().enumerate() {
        a.push_row(row);
        b.push(h_op[(p / m, p % m)].clone());
    }
    for row in commutator_rows(&h_op, 2) {
        a.push_row(row);
        b.push(Scalar::zero());
    }
    let AffineOutcome::Feasible(sol) = linalg::solve_affine(&a, &b)? else {
        return Err(Error::NoFSolution);
    };
    let f_op = DenseMatrix::from_fn(m, m, |p, q| sol.particular[p * m + q].clone());
    let triple = EndoTriple { f_op, h_op, e_op };
    if !triple.relations_hold() {
        return Err(Error::NoFSolution);
    }
    Ok(triple)
}

/// One joint weight of the Cartan operators `Γ_{h_1}, …, Γ_{h_l}` with its
/// multiplicity. `labels[i]` is the eigenvalue of `Γ_{h_i}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightEntry {
    pub labels: Vec<i64>,
    pub multiplicity: usize,
}

/// Columns spanning `span(basis) ∩ ker(a)`.
fn restrict_kernel(a: &DenseMatrix, basis: &DenseMatrix) -> DenseMatrix {
    let image = a * basis;
    let ns = linalg::nullspace(&image.to_sparse());
    let columns: Vec<Vec<Scalar>> = ns.iter().map(|x| basis.apply(x)).collect();
    DenseMatrix::from_columns(basis.nrows(), &columns)
}

/// Joint integer eigenspaces of `Γ_{h_i}`, sorted by decreasing labels.
pub fn identify_representation(gamma: &GammaTensor) -> Result<Vec<WeightEntry>> {
    let ctx = gamma.ctx();
    let g = ctx.algebra();
    let m = ctx.dim_m();
    let ops: Vec<&DenseMatrix> = (0..g.rank()).map(|i| gamma.slice(i)).collect();
    let mut spaces: Vec<(Vec<i64>, DenseMatrix)> = vec![(Vec::new(), DenseMatrix::identity(m))];
    for op in ops {
        let bound = op.inf_norm().floor().to_integer();
        let bound: i64 = bound.try_into().map_err(|_| Error::NonIntegralWeights)?;
        let mut next = Vec::new();
        for (labels, basis) in &spaces {
            for c in (-bound..=bound).rev() {
                let shifted = op - &DenseMatrix::identity(m).scale(&linalg::int(c));
                let sub = restrict_kernel(&shifted, basis);
                if sub.ncols() > 0 {
                    let mut l = labels.clone();
                    l.push(c);
                    next.push((l, sub));
                }
            }
        }
        spaces = next;
    }
    let total: usize = spaces.iter().map(|(_, b)| b.ncols()).sum();
    if total != m {
        return Err(Error::NonIntegralWeights);
    }
    let mut out: Vec<WeightEntry> = spaces
        .into_iter()
        .map(|(labels, b)| WeightEntry {
            labels,
            multiplicity: b.ncols(),
        })
        .collect();
    out.sort_by(|a, b| b.labels.cmp(&a.labels));
    Ok(out)
}

pub fn run_checks(gamma: &GammaTensor) -> CheckReport {
    let ctx = gamma.ctx();
    let lemma4_holds = lemma4_triple(ctx).map(|t| t.verify(ctx)).unwrap_or(false);
    let is_representation = is_representation(gamma);
    let (is_transitive, witness) = if is_representation {
        is_transitive(gamma)
    } else {
        (false, None)
    };
    let fbar = ctx.coset_project(&ctx.triple().f);
    CheckReport {
        curvature_zero: curvature_vanishes(gamma),
        torsion_zero: torsion_vanishes(gamma),
        is_representation,
        is_transitive,
        hrep_holds: check_hrep(gamma),
        lemma4_holds,
        witness_is_fbar: witness.as_ref() == Some(&fbar),
        witness,
    }
}
