//! Nilpotent orbits: sl2-triples, centralizers and the quotient `g/h`.
//!
//! For a nilpotent `e` the isotropy algebra is `h = z(e)`. Both `h` and the
//! chosen complement `m` are spanned by `ad h`-eigenvectors, so every vector
//! and operator on `g/h` is written in the graded basis of `m`.

mod file;

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use file::{load_orbit_file, parse_orbit_file, OrbitSpec};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebraData, LieElement};
use crate::linalg::{self, int, AffineOutcome, DenseMatrix, MatrixQ, Scalar};

/// `(f, h, e)` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub f: LieElement,
    pub h: LieElement,
    pub e: LieElement,
}

impl Sl2Triple {
    pub fn verify(&self, g: &LieAlgebraData) -> bool {
        g.bracket(&self.h, &self.e) == self.e.scale(&int(2))
            && g.bracket(&self.h, &self.f) == self.f.scale(&int(-2))
            && g.bracket(&self.e, &self.f) == self.h
    }
}

/// Coordinates of `ξ + h ∈ g/h` in the complement basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CosetVector {
    #[serde(with = "linalg::serde_pq::vec")]
    pub coords: Vec<Scalar>,
}

impl CosetVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            coords: vec![Scalar::zero(); dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitKind {
    Minimal,
    Regular,
    Custom,
}

/// Everything the connection engine needs about one orbit point `e`.
#[derive(Clone, Debug)]
pub struct OrbitContext {
    algebra: Arc<LieAlgebraData>,
    label: String,
    kind: OrbitKind,
    triple: Sl2Triple,
    centralizer_basis: Vec<LieElement>,
    centralizer_weights: Vec<i64>,
    complement_basis: Vec<LieElement>,
    weights: Vec<i64>,
    dynkin_labels: Vec<i64>,
    /// Inverse of `[centralizer | complement]`.
    to_split: DenseMatrix,
}

/// Basis of `z(e) = ker ad e`.
pub fn centralizer(g: &LieAlgebraData, e: &LieElement) -> Vec<LieElement> {
    linalg::nullspace(&g.ad_matrix(e))
        .into_iter()
        .map(LieElement::from_coords)
        .collect()
}

pub fn is_nilpotent(g: &LieAlgebraData, e: &LieElement) -> bool {
    let ad = g.ad_dense(e);
    let mut p = ad.clone();
    for _ in 1..g.dim() {
        if p.is_zero() {
            return true;
        }
        p = &p * &ad;
    }
    p.is_zero()
}

/// Completes a nilpotent `e` to an sl2-triple.
///
/// `h` is looked for in `im(ad e)` with `[h, e] = 2e`, preferring the Cartan
/// subalgebra; `f` is then the unique solution of `[e, f] = h`,
/// `[h, f] = −2f`.
pub fn jacobson_morozov(g: &LieAlgebraData, e: &LieElement) -> Result<Sl2Triple> {
    if e.is_zero() {
        return Err(Error::Invalid("the zero element has no sl2-triple".into()));
    }
    if !is_nilpotent(g, e) {
        return Err(Error::NotNilpotent);
    }
    let d = g.dim();
    let l = g.rank();
    let ad_e = g.ad_dense(e);

    // Unknowns (z, t): [e, z] = Σ t_i h_i and Σ t_i [h_i, e] = 2e.
    let mut trip = Vec::new();
    for r in 0..d {
        for c in 0..d {
            if !ad_e[(r, c)].is_zero() {
                trip.push((r, c, ad_e[(r, c)].clone()));
            }
        }
        if r < l {
            trip.push((r, d + r, -Scalar::one()));
        }
    }
    for i in 0..l {
        let hie = g.bracket(&g.basis_element(i), e);
        for (r, v) in hie.support() {
            trip.push((d + r, d + i, v.clone()));
        }
    }
    let sys = MatrixQ::from_triplets(2 * d, d + l, trip);
    let mut rhs = vec![Scalar::zero(); d];
    rhs.extend(e.coords.iter().map(|x| x * int(2)));
    let h = match linalg::solve_affine(&sys, &rhs)? {
        AffineOutcome::Feasible(sol) => g.cartan_element(&sol.particular[d..]),
        AffineOutcome::Infeasible(_) => {
            // (ad e)^2 z = −2e, h = [e, z].
            let sq = (&ad_e * &ad_e).to_sparse();
            let target: Vec<Scalar> = e.coords.iter().map(|x| x * int(-2)).collect();
            match linalg::solve_affine(&sq, &target)? {
                AffineOutcome::Feasible(sol) => g.bracket(e, &LieElement::from_coords(sol.particular)),
                AffineOutcome::Infeasible(_) => return Err(Error::NoTriple("no h in im(ad e)".into())),
            }
        }
    };

    let ad_h = g.ad_dense(&h);
    let shifted = &ad_h + &DenseMatrix::identity(d).scale(&int(2));
    let stacked = ad_e.stack(&shifted).to_sparse();
    let mut rhs = h.coords.clone();
    rhs.extend(std::iter::repeat_with(Scalar::zero).take(d));
    let f = match linalg::solve_affine(&stacked, &rhs)? {
        AffineOutcome::Feasible(sol) => LieElement::from_coords(sol.particular),
        AffineOutcome::Infeasible(_) => return Err(Error::NoTriple("no f completes (h, e)".into())),
    };
    let triple = Sl2Triple { f, h, e: e.clone() };
    if !triple.verify(g) {
        return Err(Error::NoTriple("relations fail".into()));
    }
    Ok(triple)
}

/// Integer eigenvalues of a semisimple operator with their eigenspaces, in
/// increasing order. Errors if the eigenspaces do not fill the space.
fn integer_eigenspaces(op: &DenseMatrix) -> Result<Vec<(i64, Vec<Vec<Scalar>>)>> {
    let n = op.nrows();
    let bound = op.inf_norm().ceil().to_integer();
    let bound: i64 = bound.try_into().map_err(|_| Error::Invalid("eigenvalue bound overflow".into()))?;
    let mut out = Vec::new();
    let mut total = 0;
    for k in -bound..=bound {
        let shifted = op - &DenseMatrix::identity(n).scale(&int(k));
        let ker = linalg::nullspace(&shifted.to_sparse());
        if !ker.is_empty() {
            total += ker.len();
            out.push((k, ker));
        }
    }
    if total != n {
        return Err(Error::NonIntegralWeights);
    }
    Ok(out)
}

/// Graded pieces `(weight, centralizer part, complement part)` of `g`.
type Graded = Vec<(i64, Vec<LieElement>, Vec<LieElement>)>;

fn graded_split(g: &LieAlgebraData, triple: &Sl2Triple) -> Result<Graded> {
    let ad_e = g.ad_dense(&triple.e);
    let mut out = Vec::new();
    for (k, space) in integer_eigenspaces(&g.ad_dense(&triple.h))? {
        let basis = DenseMatrix::from_columns(g.dim(), &space);
        let restricted = (&ad_e * &basis).to_sparse();
        let z: Vec<LieElement> = linalg::nullspace(&restricted)
            .iter()
            .map(|c| LieElement::from_coords(basis.apply(c)))
            .collect();
        let mut chosen: Vec<Vec<Scalar>> = z.iter().map(|x| x.coords.clone()).collect();
        let mut complement = Vec::new();
        for v in &space {
            chosen.push(v.clone());
            if DenseMatrix::from_rows(&chosen).rank() == chosen.len() {
                complement.push(LieElement::from_coords(v.clone()));
            } else {
                chosen.pop();
            }
        }
        debug_assert_eq!(z.len() + complement.len(), space.len());
        out.push((k, z, complement));
    }
    Ok(out)
}

/// Complement `m` to `h = z(e)` spanned by `ad h`-eigenvectors, with the
/// eigenvalue of each basis vector.
pub fn graded_complement(
    g: &LieAlgebraData,
    triple: &Sl2Triple,
    centralizer_basis: &[LieElement],
) -> Result<(Vec<LieElement>, Vec<i64>)> {
    let ad_h = g.ad_dense(&triple.h);
    for x in centralizer_basis {
        let hx = LieElement::from_coords(ad_h.apply(&x.coords));
        if !g.bracket(&hx, &triple.e).is_zero() {
            return Err(Error::Invalid("centralizer is not ad h-stable".into()));
        }
    }
    let mut basis = Vec::new();
    let mut weights = Vec::new();
    for (k, _, m) in graded_split(g, triple)? {
        weights.extend(std::iter::repeat_n(k, m.len()));
        basis.extend(m);
    }
    Ok((basis, weights))
}

/// Weighted Dynkin diagram of the neutral element `h`.
///
/// A Cartan `h` is moved into the dominant chamber by simple reflections and
/// its simple-root values are read off. A non-Cartan `h` is matched by its
/// `ad h` spectrum against all label vectors in `{0, 1, 2}^l`.
pub fn weighted_dynkin(g: &LieAlgebraData, h: &LieElement) -> Result<Vec<i64>> {
    let l = g.rank();
    let rs = g.root_system();
    let cartan = rs.cartan_matrix();
    if h.coords[l..].iter().all(Zero::is_zero) {
        let mut t: Vec<Scalar> = h.coords[..l].to_vec();
        loop {
            let labels: Vec<Scalar> = (0..l)
                .map(|j| (0..l).fold(Scalar::zero(), |acc, i| acc + &t[i] * int(cartan[i][j])))
                .collect();
            match labels.iter().position(|x| x < &Scalar::zero()) {
                Some(j) => t[j] -= &labels[j],
                None => {
                    return labels
                        .iter()
                        .map(|x| {
                            if x.is_integer() {
                                x.to_integer().try_into().map_err(|_| Error::NonIntegralWeights)
                            } else {
                                Err(Error::NonIntegralWeights)
                            }
                        })
                        .collect();
                }
            }
        }
    }
    let mut spectrum: Vec<i64> = Vec::new();
    for (k, space) in integer_eigenspaces(&g.ad_dense(h))? {
        spectrum.extend(std::iter::repeat_n(k, space.len()));
    }
    let positive = rs.positive_roots();
    let mut candidate = vec![0i64; l];
    loop {
        let mut values: Vec<i64> = vec![0; l];
        for r in positive {
            let v: i64 = r.iter().zip(&candidate).map(|(a, b)| a * b).sum();
            values.push(v);
            values.push(-v);
        }
        values.sort_unstable();
        if values == spectrum {
            return Ok(candidate);
        }
        let mut i = 0;
        loop {
            if i == l {
                return Err(Error::Invalid("no weighted Dynkin diagram matches the spectrum".into()));
            }
            candidate[i] += 1;
            if candidate[i] <= 2 {
                break;
            }
            candidate[i] = 0;
            i += 1;
        }
    }
}

impl OrbitContext {
    pub fn new(algebra: Arc<LieAlgebraData>, label: impl Into<String>, kind: OrbitKind, e: &LieElement) -> Result<Self> {
        let g = &*algebra;
        let triple = jacobson_morozov(g, e)?;
        let mut centralizer_basis = Vec::new();
        let mut centralizer_weights = Vec::new();
        let mut complement_basis = Vec::new();
        let mut weights = Vec::new();
        for (k, z, m) in graded_split(g, &triple)? {
            centralizer_weights.extend(std::iter::repeat_n(k, z.len()));
            centralizer_basis.extend(z);
            weights.extend(std::iter::repeat_n(k, m.len()));
            complement_basis.extend(m);
        }
        let columns: Vec<Vec<Scalar>> = centralizer_basis
            .iter()
            .chain(&complement_basis)
            .map(|x| x.coords.clone())
            .collect();
        let to_split = DenseMatrix::from_columns(g.dim(), &columns)
            .inverse()
            .ok_or_else(|| Error::Invalid("centralizer and complement do not span g".into()))?;
        let dynkin_labels = weighted_dynkin(g, &triple.h)?;
        let ctx = Self {
            label: label.into(),
            kind,
            triple,
            centralizer_basis,
            centralizer_weights,
            complement_basis,
            weights,
            dynkin_labels,
            to_split,
            algebra,
        };
        ctx.check_invariants()?;
        Ok(ctx)
    }

    fn check_invariants(&self) -> Result<()> {
        let g = &*self.algebra;
        if !self.triple.verify(g) {
            return Err(Error::NoTriple("relations fail".into()));
        }
        if self.centralizer_basis.iter().any(|x| !g.bracket(x, &self.triple.e).is_zero()) {
            return Err(Error::Invalid("centralizer basis does not commute with e".into()));
        }
        if !self.dim_m().is_multiple_of(2) {
            return Err(Error::Invalid("odd-dimensional orbit".into()));
        }
        let ad_h = g.ad_dense(&self.triple.h);
        for (m, k) in self.complement_basis.iter().zip(&self.weights) {
            if ad_h.apply(&m.coords) != m.scale(&int(*k)).coords {
                return Err(Error::Invalid("complement vector is not an ad h-eigenvector".into()));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<LieAlgebraData> {
        &self.algebra
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> OrbitKind {
        self.kind
    }

    pub fn triple(&self) -> &Sl2Triple {
        &self.triple
    }

    pub fn centralizer_basis(&self) -> &[LieElement] {
        &self.centralizer_basis
    }

    pub fn centralizer_weights(&self) -> &[i64] {
        &self.centralizer_weights
    }

    pub fn complement_basis(&self) -> &[LieElement] {
        &self.complement_basis
    }

    /// `ad h`-eigenvalue of each complement basis vector.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn dynkin_labels(&self) -> &[i64] {
        &self.dynkin_labels
    }

    pub fn dim_g(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.centralizer_basis.len()
    }

    pub fn dim_m(&self) -> usize {
        self.complement_basis.len()
    }

    /// Splits `x = a + m` with `a ∈ h`, `m ∈ m`: returns the coordinates of
    /// `a` in the centralizer basis and of `m` in the complement basis.
    pub fn split(&self, x: &LieElement) -> (Vec<Scalar>, CosetVector) {
        let mut all = self.to_split.apply(&x.coords);
        let m = all.split_off(self.dim_h());
        (all, CosetVector { coords: m })
    }

    /// `x̄ = x + h`.
    pub fn coset_project(&self, x: &LieElement) -> CosetVector {
        self.split(x).1
    }

    /// The representative of `v` inside the complement.
    pub fn lift(&self, v: &CosetVector) -> LieElement {
        let mut x = self.algebra.zero();
        for (c, m) in v.coords.iter().zip(&self.complement_basis) {
            if !c.is_zero() {
                x = &x + &m.scale(c);
            }
        }
        x
    }

    /// Matrix of the operator induced by `ad x` on `g/h`; requires
    /// `[x, h] ⊆ h`.
    pub fn induced_operator(&self, x: &LieElement) -> Result<DenseMatrix> {
        let g = &*self.algebra;
        for a in &self.centralizer_basis {
            if !self.coset_project(&g.bracket(x, a)).is_zero() {
                return Err(Error::NotHStable);
            }
        }
        let columns: Vec<Vec<Scalar>> = self
            .complement_basis
            .iter()
            .map(|m| self.coset_project(&g.bracket(x, m)).coords)
            .collect();
        Ok(DenseMatrix::from_columns(self.dim_m(), &columns))
    }
}

/// `e_θ` for the highest root `θ`.
pub fn minimal_representative(g: &LieAlgebraData) -> LieElement {
    let i = g.root_vector_index(g.root_system().highest_root()).expect("θ is a root");
    g.basis_element(i)
}

/// `Σ e_{α_i}` over the simple roots.
pub fn regular_representative(g: &LieAlgebraData) -> LieElement {
    let mut x = g.zero();
    for k in 0..g.rank() {
        x.coords[g.e_index(k)] = Scalar::one();
    }
    x
}

/// Minimal and regular orbits; collapsed to a single `minimal` entry when
/// they coincide.
pub fn orbit_catalog(g: &Arc<LieAlgebraData>) -> Result<Vec<OrbitContext>> {
    orbit_catalog_with(g, &[])
}

/// [`orbit_catalog`] plus user-supplied orbits, deduplicated by
/// `(dim h, weighted Dynkin diagram)` keeping the first occurrence.
pub fn orbit_catalog_with(g: &Arc<LieAlgebraData>, extra: &[OrbitSpec]) -> Result<Vec<OrbitContext>> {
    let mut out: Vec<OrbitContext> = Vec::new();
    let mut push = |ctx: OrbitContext| {
        if !out
            .iter()
            .any(|o| o.dim_h() == ctx.dim_h() && o.dynkin_labels() == ctx.dynkin_labels())
        {
            out.push(ctx);
        }
    };
    push(OrbitContext::new(g.clone(), "minimal", OrbitKind::Minimal, &minimal_representative(g))?);
    push(OrbitContext::new(g.clone(), "regular", OrbitKind::Regular, &regular_representative(g))?);
    for spec in extra {
        push(OrbitContext::new(g.clone(), spec.label.clone(), OrbitKind::Custom, &spec.element(g)?)?);
    }
    Ok(out)
}
