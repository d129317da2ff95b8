//! Invariant connections as linear maps `Γ: g → End(g/h)`.
//!
//! Condition I pins `Γ_α = ad̄ α` on `h`, so only the slices `Γ_m` for the
//! complement basis are unknown. Condition II′ (`Γ_{[α,ξ]} = [Γ_α, Γ_ξ]` for
//! `α ∈ h`) and the grading condition (`Γ_{[h,ξ]} = [ad̄ h, Γ_ξ]`) are then
//! affine-linear in those unknowns: the pinned part moves to the right-hand
//! side.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::LieElement;
use crate::linalg::{self, AffineOutcome, Certificate, DenseMatrix, MatrixQ, Scalar, SparseRow};
use crate::orbits::{CosetVector, OrbitContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    /// `Γ_α = ad̄ α` for `α ∈ h`.
    #[serde(rename = "I")]
    I,
    /// `Γ_{[α,ξ]} = [Γ_α, Γ_ξ]` for `α ∈ h`, `ξ ∈ g`.
    #[serde(rename = "IIp")]
    IIp,
    /// `Γ_{[h,ξ]} = [ad̄ h, Γ_ξ]` for the neutral element `h`.
    #[serde(rename = "adh")]
    Adh,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::I => "I",
            Self::IIp => "IIp",
            Self::Adh => "adh",
        })
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" => Ok(Self::I),
            "IIp" | "IIP" | "II'" => Ok(Self::IIp),
            "adh" | "ADH" => Ok(Self::Adh),
            other => Err(Error::Invalid(format!("unknown condition {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ConditionSet(BTreeSet<Condition>);

impl ConditionSet {
    pub fn new(items: impl IntoIterator<Item = Condition>) -> Self {
        Self(items.into_iter().collect())
    }

    /// `{I, IIp}`.
    pub fn infinitesimal() -> Self {
        Self::new([Condition::I, Condition::IIp])
    }

    /// `{I, IIp, adh}`.
    pub fn graded() -> Self {
        Self::new([Condition::I, Condition::IIp, Condition::Adh])
    }

    pub fn contains(&self, c: Condition) -> bool {
        self.0.contains(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = Condition> + '_ {
        self.0.iter().copied()
    }

    pub fn names(&self) -> Vec<String> {
        self.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(","))
    }
}

impl FromStr for ConditionSet {
    type Err = Error;

    /// Comma-separated list such as `I,IIp,adh`.
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<BTreeSet<_>>>()
            .map(Self)
    }
}

/// Provenance of an assembled row. II′ rows whose right-hand side is nonzero
/// carry pinned condition-I values and are tagged `CondIFolded`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RowTag {
    #[serde(rename = "COND_I_FOLDED")]
    CondIFolded,
    #[serde(rename = "COND_IIP")]
    CondIIp,
    #[serde(rename = "COND_ADH")]
    CondAdh,
}

/// Flat index of the unknown `Γ_{m_a}[p, q]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnknownLayout {
    pub dim_m: usize,
}

impl UnknownLayout {
    pub fn len(&self) -> usize {
        self.dim_m.pow(3)
    }

    pub fn is_empty(&self) -> bool {
        self.dim_m == 0
    }

    pub fn index(&self, a: usize, p: usize, q: usize) -> usize {
        (a * self.dim_m + p) * self.dim_m + q
    }

    /// `(complement index, row, col)`.
    pub fn coords(&self, idx: usize) -> (usize, usize, usize) {
        let m = self.dim_m;
        (idx / (m * m), (idx / m) % m, idx % m)
    }
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub matrix: MatrixQ,
    pub rhs: Vec<Scalar>,
    pub layout: UnknownLayout,
    pub tags: Vec<RowTag>,
    /// Row count before deduplication.
    pub raw_rows: usize,
    pub conditions: ConditionSet,
}

/// Precomputed splitting data for one orbit.
struct Frame {
    /// `ad̄ α` for each centralizer basis vector.
    centralizer_ops: Vec<DenseMatrix>,
    /// Centralizer and complement coordinates of each Chevalley basis vector.
    basis_split: Vec<(Vec<Scalar>, CosetVector)>,
}

impl Frame {
    fn new(ctx: &OrbitContext) -> Result<Self> {
        let centralizer_ops = ctx
            .centralizer_basis()
            .iter()
            .map(|a| ctx.induced_operator(a))
            .collect::<Result<Vec<_>>>()?;
        let g = ctx.algebra();
        let basis_split = (0..g.dim()).map(|i| ctx.split(&g.basis_element(i))).collect();
        Ok(Self {
            centralizer_ops,
            basis_split,
        })
    }

    /// `Σ c_j ad̄ α_j` for centralizer coordinates `c`.
    fn pinned(&self, dim_m: usize, c: &[Scalar]) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(dim_m, dim_m);
        for (cj, op) in c.iter().zip(&self.centralizer_ops) {
            if !cj.is_zero() {
                out = &out + &op.scale(cj);
            }
        }
        out
    }
}

/// Emits the `(dim m)^2` rows of `Γ_{[x,ξ]} − [A, Γ_ξ] = 0` where `A` is the
/// known operator standing for `Γ_x`.
fn push_block(
    ctx: &OrbitContext,
    frame: &Frame,
    op: &DenseMatrix,
    bracket: &LieElement,
    xi: usize,
    tag: RowTag,
    out: &mut Vec<(SparseRow, Scalar, RowTag)>,
) {
    let m = ctx.dim_m();
    let layout = UnknownLayout { dim_m: m };
    let (by_c, by_m) = ctx.split(bracket);
    let (xi_c, xi_m) = &frame.basis_split[xi];
    let pinned_bracket = frame.pinned(m, &by_c);
    let pinned_xi = frame.pinned(m, xi_c);
    let known = &op.commutator(&pinned_xi) - &pinned_bracket;
    let by_support: Vec<(usize, &Scalar)> = by_m.coords.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
    let xi_support: Vec<(usize, &Scalar)> = xi_m.coords.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
    for p in 0..m {
        for q in 0..m {
            let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
            let mut add = |col: usize, v: Scalar| {
                let slot = row.entry(col).or_insert_with(Scalar::zero);
                *slot += v;
            };
            for &(a, c) in &by_support {
                add(layout.index(a, p, q), c.clone());
            }
            for &(b, c) in &xi_support {
                for k in 0..m {
                    let apk = &op[(p, k)];
                    if !apk.is_zero() {
                        add(layout.index(b, k, q), -(c * apk));
                    }
                    let akq = &op[(k, q)];
                    if !akq.is_zero() {
                        add(layout.index(b, p, k), c * akq);
                    }
                }
            }
            let row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            let b = known[(p, q)].clone();
            let tag = if tag == RowTag::CondIIp && !b.is_zero() { RowTag::CondIFolded } else { tag };
            out.push((row, b, tag));
        }
    }
}

/// Builds the affine system for the unknown slices `Γ_m`.
pub fn assemble(ctx: &OrbitContext, conditions: &ConditionSet) -> Result<ConstraintSystem> {
    if !conditions.contains(Condition::I) {
        return Err(Error::MissingConditionI);
    }
    let g = ctx.algebra();
    let frame = Frame::new(ctx)?;
    let layout = UnknownLayout { dim_m: ctx.dim_m() };
    let mut raw: Vec<(SparseRow, Scalar, RowTag)> = Vec::new();
    if conditions.contains(Condition::IIp) {
        for (a, op) in ctx.centralizer_basis().iter().zip(&frame.centralizer_ops) {
            for xi in 0..g.dim() {
                let br = g.bracket(a, &g.basis_element(xi));
                push_block(ctx, &frame, op, &br, xi, RowTag::CondIIp, &mut raw);
            }
        }
    }
    if conditions.contains(Condition::Adh) {
        let h = &ctx.triple().h;
        let op = ctx.induced_operator(h)?;
        for xi in 0..g.dim() {
            let br = g.bracket(h, &g.basis_element(xi));
            push_block(ctx, &frame, &op, &br, xi, RowTag::CondAdh, &mut raw);
        }
    }
    let raw_rows = raw.len();
    let mut seen: HashSet<(SparseRow, Scalar)> = HashSet::new();
    let mut matrix = MatrixQ::zeros(0, layout.len());
    let mut rhs = Vec::new();
    let mut tags = Vec::new();
    for (row, b, tag) in raw {
        let lead = match row.first() {
            Some((_, v)) => v.clone(),
            None if b.is_zero() => continue,
            None => b.clone(),
        };
        let inv = Scalar::one() / lead;
        let key: (SparseRow, Scalar) = (row.iter().map(|(c, v)| (*c, v * &inv)).collect(), &b * &inv);
        if !seen.insert(key) {
            continue;
        }
        matrix.push_row(row);
        rhs.push(b);
        tags.push(tag);
    }
    Ok(ConstraintSystem {
        matrix,
        rhs,
        layout,
        tags,
        raw_rows,
        conditions: conditions.clone(),
    })
}

/// `Γ` stored as one `dim m × dim m` slice per Chevalley basis vector.
#[derive(Clone, Debug)]
pub struct GammaTensor {
    ctx: Arc<OrbitContext>,
    slices: Vec<DenseMatrix>,
}

impl PartialEq for GammaTensor {
    fn eq(&self, other: &Self) -> bool {
        self.slices == other.slices
    }
}

impl GammaTensor {
    pub fn from_slices(ctx: Arc<OrbitContext>, slices: Vec<DenseMatrix>) -> Result<Self> {
        let m = ctx.dim_m();
        if slices.len() != ctx.dim_g() || slices.iter().any(|s| s.nrows() != m || s.ncols() != m) {
            return Err(Error::DimensionMismatch("gamma slices".into()));
        }
        Ok(Self { ctx, slices })
    }

    pub fn zero(ctx: Arc<OrbitContext>) -> Self {
        let m = ctx.dim_m();
        let slices = vec![DenseMatrix::zeros(m, m); ctx.dim_g()];
        Self { ctx, slices }
    }

    /// `Γ_α = ad̄ α` on `h` and zero on the complement.
    pub fn pinned_only(ctx: Arc<OrbitContext>) -> Result<Self> {
        let frame = Frame::new(&ctx)?;
        let x = vec![Scalar::zero(); UnknownLayout { dim_m: ctx.dim_m() }.len()];
        Ok(Self::from_unknowns(&ctx, &frame, &x, true))
    }

    /// Tensor defined by the unknown vector `x`; with `pinned` the condition-I
    /// part is added, otherwise `Γ` vanishes on `h` (a homogeneous solution).
    fn from_unknowns(ctx: &Arc<OrbitContext>, frame: &Frame, x: &[Scalar], pinned: bool) -> Self {
        let m = ctx.dim_m();
        let layout = UnknownLayout { dim_m: m };
        let unknown: Vec<DenseMatrix> = (0..m)
            .map(|a| DenseMatrix::from_fn(m, m, |p, q| x[layout.index(a, p, q)].clone()))
            .collect();
        let slices = frame
            .basis_split
            .iter()
            .map(|(c, v)| {
                let mut s = if pinned { frame.pinned(m, c) } else { DenseMatrix::zeros(m, m) };
                for (a, k) in v.coords.iter().enumerate() {
                    if !k.is_zero() {
                        s = &s + &unknown[a].scale(k);
                    }
                }
                s
            })
            .collect();
        Self { ctx: ctx.clone(), slices }
    }

    pub fn ctx(&self) -> &Arc<OrbitContext> {
        &self.ctx
    }

    /// `Γ_{b_i}` for the `i`-th Chevalley basis vector.
    pub fn slice(&self, i: usize) -> &DenseMatrix {
        &self.slices[i]
    }

    pub fn entry(&self, i: usize, p: usize, q: usize) -> &Scalar {
        &self.slices[i][(p, q)]
    }

    /// `Γ_x` by linearity.
    pub fn gamma(&self, x: &LieElement) -> DenseMatrix {
        let m = self.ctx.dim_m();
        let mut out = DenseMatrix::zeros(m, m);
        for (i, c) in x.support() {
            out = &out + &self.slices[i].scale(c);
        }
        out
    }

    pub fn apply(&self, x: &LieElement, v: &CosetVector) -> CosetVector {
        CosetVector {
            coords: self.gamma(x).apply(&v.coords),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            slices: self.slices.iter().zip(&other.slices).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            slices: self.slices.iter().zip(&other.slices).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Affine space of solutions: `particular + span(homogeneous_basis)`.
#[derive(Clone, Debug)]
pub struct ConnectionSpace {
    pub particular: GammaTensor,
    pub homogeneous_basis: Vec<GammaTensor>,
    pub conditions_used: ConditionSet,
}

impl ConnectionSpace {
    pub fn dimension(&self) -> usize {
        self.homogeneous_basis.len()
    }

    /// The particular solution followed by `particular ± n` for each
    /// homogeneous basis tensor `n`.
    pub fn sample_points(&self) -> Vec<GammaTensor> {
        let mut out = vec![self.particular.clone()];
        for n in &self.homogeneous_basis {
            out.push(self.particular.add(n));
            out.push(self.particular.sub(n));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Feasible(ConnectionSpace),
    Infeasible(Certificate),
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Feasible(_))
    }
}

pub fn solve_connection_space(sys: &ConstraintSystem, ctx: &Arc<OrbitContext>) -> Result<SolveOutcome> {
    if sys.layout.dim_m != ctx.dim_m() {
        return Err(Error::DimensionMismatch("system and orbit context disagree".into()));
    }
    let frame = Frame::new(ctx)?;
    Ok(match linalg::solve_affine(&sys.matrix, &sys.rhs)? {
        AffineOutcome::Infeasible(cert) => SolveOutcome::Infeasible(cert),
        AffineOutcome::Feasible(sol) => SolveOutcome::Feasible(ConnectionSpace {
            particular: GammaTensor::from_unknowns(ctx, &frame, &sol.particular, true),
            homogeneous_basis: sol
                .nullspace_basis
                .iter()
                .map(|n| GammaTensor::from_unknowns(ctx, &frame, n, false))
                .collect(),
            conditions_used: sys.conditions.clone(),
        }),
    })
}

/// Assembles and solves in one go.
pub fn solve_orbit(ctx: &Arc<OrbitContext>, conditions: &ConditionSet) -> Result<(ConstraintSystem, SolveOutcome)> {
    let sys = assemble(ctx, conditions)?;
    let out = solve_connection_space(&sys, ctx)?;
    Ok((sys, out))
}

/// `∇_{ξ*} η*(o) = Γ_ξ η̄ + [ξ, η]‾`.
pub fn covariant_derivative(gamma: &GammaTensor, xi: &LieElement, eta: &LieElement) -> CosetVector {
    let ctx = gamma.ctx();
    let first = gamma.apply(xi, &ctx.coset_project(eta));
    let second = ctx.coset_project(&ctx.algebra().bracket(xi, eta));
    CosetVector {
        coords: first.coords.iter().zip(&second.coords).map(|(a, b)| a + b).collect(),
    }
}

/// Feasibility with `{I, IIp}` equals feasibility with `{I, IIp, adh}`.
pub fn average_equivalence_check(ctx: &Arc<OrbitContext>) -> Result<bool> {
    let (_, plain) = solve_orbit(ctx, &ConditionSet::infinitesimal())?;
    let (_, graded) = solve_orbit(ctx, &ConditionSet::graded())?;
    Ok(plain.is_feasible() == graded.is_feasible())
}

/// `Γ_α = ad̄ α` on the centralizer basis.
pub fn satisfies_condition_i(gamma: &GammaTensor) -> bool {
    let ctx = gamma.ctx();
    ctx.centralizer_basis()
        .iter()
        .all(|a| ctx.induced_operator(a).map(|op| op == gamma.gamma(a)).unwrap_or(false))
}

/// `Γ_{[x,ξ]} = [ad̄ x, Γ_ξ]` for all basis `ξ`, with `ad̄ x` taken from the
/// orbit, not from `Γ`. Holds for solutions and, in homogenized form, for
/// homogeneous basis tensors.
fn equivariant_under(gamma: &GammaTensor, x: &LieElement) -> bool {
    let ctx = gamma.ctx();
    let g = ctx.algebra();
    let Ok(op) = ctx.induced_operator(x) else {
        return false;
    };
    (0..g.dim()).all(|i| {
        let br = g.bracket(x, &g.basis_element(i));
        gamma.gamma(&br) == op.commutator(gamma.slice(i))
    })
}

/// Condition II′ re-checked directly on `Γ`, independent of assembly.
pub fn satisfies_condition_iip(gamma: &GammaTensor) -> bool {
    gamma.ctx().centralizer_basis().iter().all(|a| equivariant_under(gamma, a))
}

pub fn satisfies_condition_adh(gamma: &GammaTensor) -> bool {
    equivariant_under(gamma, &gamma.ctx().triple().h)
}
