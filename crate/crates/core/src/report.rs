//! Structured reports for single orbits and for the classification sweep.
//!
//! Reports are JSON with rationals written as `"p/q"` strings and sparse
//! data as index/value lists. Field order is fixed by the struct layouts and
//! nothing time-dependent is written unless timings are requested, so equal
//! inputs produce byte-identical files.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::connection::{solve_orbit, ConditionSet, ConstraintSystem, GammaTensor, SolveOutcome};
use crate::error::{Error, Result};
use crate::flatness::{self, CheckReport, WeightEntry};
use crate::lie::{AlgebraId, LieAlgebraData, TypeLetter};
use crate::linalg::{to_pq, Certificate, Scalar};
use crate::orbits::{
    minimal_representative, orbit_catalog, regular_representative, OrbitContext, OrbitKind, OrbitSpec,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub g: usize,
    pub h: usize,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemStats {
    pub unknowns: usize,
    pub rows: usize,
    pub raw_rows: usize,
}

/// Left-kernel certificate `y` with `yᵀA = 0`, `yᵀb ≠ 0`, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    /// `(row, value)` for every nonzero entry of `y`.
    pub entries: Vec<(usize, String)>,
    pub support: usize,
    /// SHA-256 of the lines `"<row> <p/q>\n"` in row order.
    pub sha256: String,
    pub verified: bool,
}

impl CertificateReport {
    pub fn new(cert: &Certificate, sys: &ConstraintSystem) -> Self {
        let entries: Vec<(usize, String)> = cert.support().map(|(r, v)| (r, to_pq(v))).collect();
        let mut hasher = Sha256::new();
        for (r, v) in &entries {
            hasher.update(format!("{r} {v}\n").as_bytes());
        }
        Self {
            support: entries.len(),
            sha256: hex::encode(hasher.finalize()),
            entries,
            verified: cert.verify(&sys.matrix, &sys.rhs),
        }
    }
}

/// One nonzero slice `Γ_b` as `(row, col, value)` triplets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReport {
    pub basis: String,
    pub entries: Vec<(usize, usize, String)>,
}

fn slices_of(gamma: &GammaTensor) -> Vec<SliceReport> {
    let g = gamma.ctx().algebra();
    (0..g.dim())
        .filter_map(|i| {
            let s = gamma.slice(i);
            let entries: Vec<(usize, usize, String)> = (0..s.nrows())
                .flat_map(|p| (0..s.ncols()).map(move |q| (p, q)))
                .filter(|&(p, q)| !s[(p, q)].is_zero())
                .map(|(p, q)| (p, q, to_pq(&s[(p, q)])))
                .collect();
            (!entries.is_empty()).then(|| SliceReport {
                basis: g.labels()[i].clone(),
                entries,
            })
        })
        .collect()
}

/// A joint weight in Dynkin labels and in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub labels: Vec<i64>,
    pub ambient: Vec<String>,
    pub multiplicity: usize,
}

/// Outcome of the flatness checks on every sampled point of the solution
/// space: the particular solution and `particular ± n` per basis tensor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub points: usize,
    pub all_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub algebra: String,
    pub orbit_label: String,
    pub orbit_kind: OrbitKind,
    pub dynkin_labels: Vec<i64>,
    pub dims: Dims,
    pub conditions: Vec<String>,
    pub system: SystemStats,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solution_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub checks: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<SampleSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weights: Option<Vec<WeightReport>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub representation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub connection: Option<Vec<SliceReport>>,
    /// Milliseconds per stage; only present when requested.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<BTreeMap<String, u64>>,
}

impl AnalysisReport {
    /// `"ALGEBRA orbit FEASIBLE|INFEASIBLE dim(M)=k"`, with `k = -1` when
    /// infeasible.
    pub fn summary_line(&self) -> String {
        let dim = self.solution_dim.map_or(-1, |d| d as i64);
        let verdict = if self.feasible { "FEASIBLE" } else { "INFEASIBLE" };
        format!("{} {} {verdict} dim(M)={dim}", self.algebra, self.orbit_label)
    }
}

/// All flatness conditions at once.
pub fn lemma_chain_holds(c: &CheckReport) -> bool {
    c.curvature_zero && c.torsion_zero && c.is_representation && c.is_transitive && c.hrep_holds
}

/// Builds the orbit context for a catalog orbit or a parsed orbit-file entry.
pub fn build_orbit(id: AlgebraId, kind: OrbitKind, spec: Option<&OrbitSpec>) -> Result<Arc<OrbitContext>> {
    let g = Arc::new(LieAlgebraData::build(id));
    let ctx = match kind {
        OrbitKind::Minimal => OrbitContext::new(g.clone(), "minimal", kind, &minimal_representative(&g))?,
        OrbitKind::Regular => OrbitContext::new(g.clone(), "regular", kind, &regular_representative(&g))?,
        OrbitKind::Custom => {
            let spec = spec.ok_or_else(|| Error::Invalid("custom orbit needs an orbit file entry".into()))?;
            let e = spec.element(&g)?;
            OrbitContext::new(g.clone(), spec.label.clone(), kind, &e)?
        }
    };
    Ok(Arc::new(ctx))
}

fn weight_reports(g: &LieAlgebraData, weights: &[WeightEntry]) -> Vec<WeightReport> {
    weights
        .iter()
        .map(|w| WeightReport {
            labels: w.labels.clone(),
            ambient: g.root_system().weight_ambient(&w.labels).iter().map(to_pq).collect(),
            multiplicity: w.multiplicity,
        })
        .collect()
}

/// Weyl group orbit of a weight given by Dynkin labels.
fn weyl_orbit(g: &LieAlgebraData, labels: &[i64]) -> BTreeSet<Vec<i64>> {
    let cartan = g.root_system().cartan_matrix();
    let mut seen = BTreeSet::from([labels.to_vec()]);
    let mut stack = vec![labels.to_vec()];
    while let Some(w) = stack.pop() {
        for i in 0..w.len() {
            if w[i] == 0 {
                continue;
            }
            let s: Vec<i64> = (0..w.len()).map(|j| w[j] - w[i] * cartan[j][i]).collect();
            if seen.insert(s.clone()) {
                stack.push(s);
            }
        }
    }
    seen
}

/// `R(pi_k)` when the weights are exactly the Weyl orbit of the
/// fundamental weight `π_k`, each with multiplicity one.
pub fn name_representation(g: &LieAlgebraData, weights: &[WeightEntry]) -> Option<String> {
    if weights.iter().any(|w| w.multiplicity != 1) {
        return None;
    }
    let have: BTreeSet<Vec<i64>> = weights.iter().map(|w| w.labels.clone()).collect();
    let l = g.rank();
    (0..l).find_map(|k| {
        let mut pi = vec![0; l];
        pi[k] = 1;
        (weyl_orbit(g, &pi) == have).then(|| format!("R(pi_{})", k + 1))
    })
}

/// Runs assembly, solve, checks and weight identification for one orbit.
pub fn analyze(ctx: &Arc<OrbitContext>, conditions: &ConditionSet, record_timings: bool) -> Result<AnalysisReport> {
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, u64>| {
        timings.insert(name.to_string(), clock.elapsed().as_millis() as u64);
        clock = Instant::now();
    };
    let (sys, outcome) = solve_orbit(ctx, conditions)?;
    lap("solve", &mut timings);
    let g = ctx.algebra();
    let mut report = AnalysisReport {
        algebra: g.id().to_string(),
        orbit_label: ctx.label().to_string(),
        orbit_kind: ctx.kind(),
        dynkin_labels: ctx.dynkin_labels().to_vec(),
        dims: Dims {
            g: ctx.dim_g(),
            h: ctx.dim_h(),
            m: ctx.dim_m(),
        },
        conditions: conditions.names(),
        system: SystemStats {
            unknowns: sys.layout.len(),
            rows: sys.matrix.nrows(),
            raw_rows: sys.raw_rows,
        },
        feasible: outcome.is_feasible(),
        solution_dim: None,
        certificate: None,
        checks: None,
        samples: None,
        weights: None,
        representation: None,
        connection: None,
        timings: None,
    };
    match outcome {
        SolveOutcome::Infeasible(cert) => {
            report.certificate = Some(CertificateReport::new(&cert, &sys));
        }
        SolveOutcome::Feasible(space) => {
            report.solution_dim = Some(space.dimension());
            let checks = flatness::run_checks(&space.particular);
            let points = space.sample_points();
            let all_pass = points.par_iter().all(|p| lemma_chain_holds(&flatness::run_checks(p)));
            lap("checks", &mut timings);
            if checks.is_representation {
                let w = flatness::identify_representation(&space.particular)?;
                report.representation = name_representation(g, &w);
                report.weights = Some(weight_reports(g, &w));
            }
            lap("weights", &mut timings);
            report.checks = Some(checks);
            report.samples = Some(SampleSummary {
                points: points.len(),
                all_pass,
            });
            report.connection = Some(slices_of(&space.particular));
        }
    }
    if record_timings {
        report.timings = Some(timings);
    }
    Ok(report)
}

pub fn write_report<T: Serialize>(value: &T, path: impl AsRef<Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_report(path: impl AsRef<Path>) -> Result<AnalysisReport> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

pub fn read_theorem(path: impl AsRef<Path>) -> Result<TheoremTable> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

/// The classification: only highest-root orbits of type C, counting
/// `A1 = C1` and `B2 ≅ C2`.
pub fn expected_feasible(id: AlgebraId, kind: OrbitKind) -> bool {
    kind == OrbitKind::Minimal
        && match id.letter {
            TypeLetter::C => true,
            TypeLetter::A => id.rank == 1,
            TypeLetter::B => id.rank == 2,
            TypeLetter::D | TypeLetter::G => false,
        }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremRow {
    pub algebra: String,
    pub orbit: String,
    pub dim_h: usize,
    pub dim_m: usize,
    pub feasible: bool,
    pub expected: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solution_dim: Option<usize>,
    /// Flatness chain on every sampled solution, for feasible rows.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub flat: Option<bool>,
}

impl TheoremRow {
    pub fn summary_line(&self) -> String {
        let dim = self.solution_dim.map_or(-1, |d| d as i64);
        let verdict = if self.feasible { "FEASIBLE" } else { "INFEASIBLE" };
        format!("{} {} {verdict} dim(M)={dim}", self.algebra, self.orbit)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremTable {
    pub max_rank: usize,
    pub conditions: Vec<String>,
    pub rows: Vec<TheoremRow>,
    pub agreement: bool,
}

/// Catalog orbits of every supported algebra of rank at most `max_rank`, in
/// deterministic order.
pub fn theorem_catalog(max_rank: usize) -> Result<Vec<Arc<OrbitContext>>> {
    let mut out = Vec::new();
    for id in AlgebraId::supported().into_iter().filter(|id| id.rank <= max_rank) {
        let g = Arc::new(LieAlgebraData::build(id));
        out.extend(orbit_catalog(&g)?.into_iter().map(Arc::new));
    }
    Ok(out)
}

fn theorem_row(ctx: &Arc<OrbitContext>, conditions: &ConditionSet) -> Result<TheoremRow> {
    let (_, outcome) = solve_orbit(ctx, conditions)?;
    let id = ctx.algebra().id();
    let (solution_dim, flat) = match &outcome {
        SolveOutcome::Feasible(space) => (
            Some(space.dimension()),
            Some(
                space
                    .sample_points()
                    .iter()
                    .all(|p| lemma_chain_holds(&flatness::run_checks(p))),
            ),
        ),
        SolveOutcome::Infeasible(_) => (None, None),
    };
    log::info!("{} {} done", id, ctx.label());
    Ok(TheoremRow {
        algebra: id.to_string(),
        orbit: ctx.label().to_string(),
        dim_h: ctx.dim_h(),
        dim_m: ctx.dim_m(),
        feasible: outcome.is_feasible(),
        expected: expected_feasible(id, ctx.kind()),
        solution_dim,
        flat,
    })
}

/// Sweeps the catalog up to `max_rank`. Rows are solved in parallel and
/// collected in catalog order.
pub fn run_theorem(max_rank: usize, conditions: &ConditionSet) -> Result<TheoremTable> {
    if max_rank == 0 || max_rank > crate::lie::MAX_RANK {
        return Err(Error::Invalid(format!("max rank must be in 1..={}", crate::lie::MAX_RANK)));
    }
    let catalog = theorem_catalog(max_rank)?;
    let rows = catalog
        .par_iter()
        .map(|ctx| theorem_row(ctx, conditions))
        .collect::<Result<Vec<_>>>()?;
    let agreement = rows.iter().all(|r| r.feasible == r.expected);
    Ok(TheoremTable {
        max_rank,
        conditions: conditions.names(),
        rows,
        agreement,
    })
}

/// Entries of `y` as exact rationals, for consumers re-verifying a stored
/// certificate.
pub fn certificate_vector(report: &CertificateReport, nrows: usize) -> Result<Vec<Scalar>> {
    let mut y = vec![Scalar::zero(); nrows];
    for (r, v) in &report.entries {
        let slot = y
            .get_mut(*r)
            .ok_or_else(|| Error::Invalid(format!("certificate row {r} out of range")))?;
        *slot = crate::linalg::parse_pq(v).ok_or_else(|| Error::Invalid(format!("bad rational {v:?}")))?;
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_predicate() {
        let id = |s: &str| s.parse::<AlgebraId>().unwrap();
        assert!(expected_feasible(id("A1"), OrbitKind::Minimal));
        assert!(expected_feasible(id("B2"), OrbitKind::Minimal));
        assert!(expected_feasible(id("C4"), OrbitKind::Minimal));
        assert!(!expected_feasible(id("C3"), OrbitKind::Regular));
        assert!(!expected_feasible(id("B3"), OrbitKind::Minimal));
        assert!(!expected_feasible(id("G2"), OrbitKind::Minimal));
        assert!(!expected_feasible(id("A2"), OrbitKind::Minimal));
    }

    #[test]
    fn fundamental_orbits() {
        let c3 = LieAlgebraData::build("C3".parse().unwrap());
        assert_eq!(weyl_orbit(&c3, &[1, 0, 0]).len(), 6);
        let b2 = LieAlgebraData::build("B2".parse().unwrap());
        assert_eq!(weyl_orbit(&b2, &[0, 1]).len(), 4);
        assert_eq!(weyl_orbit(&b2, &[1, 0]).len(), 4);
    }

    #[test]
    fn summary_lines() {
        let ctx = build_orbit("A2".parse().unwrap(), OrbitKind::Regular, None).unwrap();
        let r = analyze(&ctx, &ConditionSet::infinitesimal(), false).unwrap();
        assert_eq!(r.summary_line(), "A2 regular INFEASIBLE dim(M)=-1");
        assert!(r.certificate.as_ref().unwrap().verified);
        assert!(r.timings.is_none());
        let ctx = build_orbit("C2".parse().unwrap(), OrbitKind::Minimal, None).unwrap();
        let r = analyze(&ctx, &ConditionSet::graded(), false).unwrap();
        assert_eq!(r.summary_line(), "C2 minimal FEASIBLE dim(M)=0");
        assert_eq!(r.representation.as_deref(), Some("R(pi_1)"));
    }

    #[test]
    fn custom_orbit_needs_spec() {
        assert!(build_orbit("C2".parse().unwrap(), OrbitKind::Custom, None).is_err());
    }
}
