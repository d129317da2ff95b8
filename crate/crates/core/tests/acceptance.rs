//! Acceptance gate. Each test checks one criterion exactly and prints a
//! single PASS/FAIL line before asserting.

mod common;

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use nilconn::connection::{average_equivalence_check, solve_orbit};
use nilconn::flatness::{lemma4_triple, run_checks};
use nilconn::linalg::{int, nullspace, rank, solve_affine};
use nilconn::orbits::orbit_catalog;
use nilconn::report::{analyze, run_theorem, theorem_catalog};
use nilconn::{
    AffineOutcome, AlgebraId, ConditionSet, LieAlgebraData, OrbitContext, Scalar, SolveOutcome, TheoremTable,
};

fn verdict(n: u32, title: &str, ok: bool, detail: &str) {
    println!("criterion {n} [{title}]: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn table3() -> &'static TheoremTable {
    static T: OnceLock<TheoremTable> = OnceLock::new();
    T.get_or_init(|| run_theorem(3, &ConditionSet::graded()).expect("theorem sweep"))
}

fn catalog3() -> &'static [Arc<OrbitContext>] {
    static C: OnceLock<Vec<Arc<OrbitContext>>> = OnceLock::new();
    C.get_or_init(|| theorem_catalog(3).expect("catalog"))
}

fn key(ctx: &OrbitContext) -> String {
    format!("{} {}", ctx.algebra().id(), ctx.label())
}

#[test]
fn criterion_1_theorem_reproduction() {
    let table = table3();
    let feasible: BTreeSet<String> = table
        .rows
        .iter()
        .filter(|r| r.feasible)
        .map(|r| format!("{} {}", r.algebra, r.orbit))
        .collect();
    let want: BTreeSet<String> = ["A1 minimal", "B2 minimal", "C2 minimal", "C3 minimal"]
        .into_iter()
        .map(String::from)
        .collect();
    let all_rows: BTreeSet<String> = table.rows.iter().map(|r| format!("{} {}", r.algebra, r.orbit)).collect();
    let expected_rows: BTreeSet<String> = [
        "A1 minimal",
        "A2 minimal",
        "A2 regular",
        "A3 minimal",
        "A3 regular",
        "B2 minimal",
        "B2 regular",
        "B3 minimal",
        "B3 regular",
        "C2 minimal",
        "C2 regular",
        "C3 minimal",
        "C3 regular",
        "G2 minimal",
        "G2 regular",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    let ok = feasible == want && all_rows == expected_rows && table.agreement;
    verdict(
        1,
        "theorem reproduction",
        ok,
        &format!("{} rows, feasible = {feasible:?}, agreement = {}", table.rows.len(), table.agreement),
    );
}

#[test]
fn criterion_2_basic_lemma_chain() {
    let mut checked = Vec::new();
    let mut ok = true;
    for ctx in catalog3() {
        let (_, outcome) = solve_orbit(ctx, &ConditionSet::graded()).unwrap();
        let SolveOutcome::Feasible(space) = outcome else {
            continue;
        };
        for point in space.sample_points() {
            let c = run_checks(&point);
            let pass = c.is_representation
                && c.is_transitive
                && c.witness_is_fbar
                && c.hrep_holds
                && c.curvature_zero
                && c.torsion_zero;
            ok &= pass;
        }
        checked.push(format!("{} ({} points)", key(ctx), 1 + 2 * space.dimension()));
    }
    ok &= checked.len() == 4;
    verdict(2, "basic lemma chain", ok, &format!("checked {checked:?}"));
}

#[test]
fn criterion_3_averaging_equivalence() {
    let mut bad = Vec::new();
    for ctx in catalog3() {
        if !average_equivalence_check(ctx).unwrap() {
            bad.push(key(ctx));
        }
    }
    verdict(
        3,
        "averaging equivalence",
        bad.is_empty(),
        &format!("{} rows, disagreements {bad:?}", catalog3().len()),
    );
}

#[test]
fn criterion_4_endomorphism_triple() {
    let mut bad = Vec::new();
    for ctx in catalog3() {
        match lemma4_triple(ctx) {
            Ok(t) if t.verify(ctx) => {}
            _ => bad.push(key(ctx)),
        }
    }
    verdict(
        4,
        "endomorphism sl2-triple",
        bad.is_empty(),
        &format!("{} rows, failures {bad:?}", catalog3().len()),
    );
}

#[test]
fn criterion_5_standard_representation() {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, l) in [("C2", 2usize), ("C3", 3)] {
        let id: AlgebraId = name.parse().unwrap();
        let ctx = catalog3()
            .iter()
            .find(|c| c.algebra().id() == id && c.label() == "minimal")
            .unwrap();
        let report = analyze(ctx, &ConditionSet::graded(), false).unwrap();
        let weights = report.weights.unwrap_or_default();
        let got: Vec<(Vec<String>, usize)> = weights.iter().map(|w| (w.ambient.clone(), w.multiplicity)).collect();
        let mut want: Vec<(Vec<String>, usize)> = Vec::new();
        for i in 0..l {
            for sign in [1, -1] {
                let v: Vec<String> = (0..l)
                    .map(|j| nilconn::linalg::to_pq(&int(if i == j { sign } else { 0 })))
                    .collect();
                want.push((v, 1));
            }
        }
        let as_set = |v: &[(Vec<String>, usize)]| v.iter().cloned().collect::<BTreeSet<_>>();
        let total: usize = weights.iter().map(|w| w.multiplicity).sum();
        let pass = as_set(&got) == as_set(&want) && got.len() == 2 * l && total == 2 * l && total == ctx.dim_m();
        ok &= pass;
        detail.push(format!("{name}: {} weights, dim m = {}", got.len(), ctx.dim_m()));
    }
    verdict(5, "standard representation of C_l", ok, &detail.join("; "));
}

#[test]
fn criterion_6_structural_gates() {
    let mut failures = Vec::new();
    for id in AlgebraId::supported() {
        let g = Arc::new(LieAlgebraData::build(id));
        if !g.verify_jacobi() || !g.verify_antisymmetry() || g.dim() != id.dimension() {
            failures.push(format!("{id} algebra"));
            continue;
        }
        for ctx in orbit_catalog(&g).unwrap() {
            let t = ctx.triple();
            if !t.verify(&g) {
                failures.push(format!("{id} {} triple", ctx.label()));
            }
            if ctx.centralizer_basis().iter().any(|a| !g.bracket(a, &t.e).is_zero()) {
                failures.push(format!("{id} {} centralizer", ctx.label()));
            }
            if ctx.label() == "regular" && ctx.dim_h() != id.rank {
                failures.push(format!("{id} regular dim h = {}", ctx.dim_h()));
            }
        }
    }
    // Exceptional isomorphism B2 ≅ C2.
    let minimal = |name: &str| {
        let id: AlgebraId = name.parse().unwrap();
        catalog3()
            .iter()
            .find(|c| c.algebra().id() == id && c.label() == "minimal")
            .unwrap()
            .clone()
    };
    for set in [ConditionSet::infinitesimal(), ConditionSet::graded()] {
        let b = analyze(&minimal("B2"), &set, false).unwrap();
        let c = analyze(&minimal("C2"), &set, false).unwrap();
        if b.feasible != c.feasible || b.solution_dim != c.solution_dim {
            failures.push(format!("B2/C2 disagree under {set}"));
        }
    }
    verdict(
        6,
        "structural gates",
        failures.is_empty(),
        &format!("{} algebras, failures {failures:?}", AlgebraId::supported().len()),
    );
}

fn agrees_with_oracle(a: &nilconn::MatrixQ, b: &[Scalar]) -> bool {
    let r = rank(a);
    let ns = nullspace(a);
    let oracle_r = common::oracle_rank(a);
    let oracle_x = common::oracle_solve(a, b);
    let solved = solve_affine(a, b).unwrap();
    let feasible_ok = match (&solved, &oracle_x) {
        (AffineOutcome::Feasible(s), Some(_)) => {
            common::mat_vec(a, &s.particular) == b && s.nullspace_basis.len() == a.ncols() - oracle_r
        }
        (AffineOutcome::Infeasible(c), None) => c.verify(a, b),
        _ => false,
    };
    r == oracle_r && ns.len() + oracle_r == a.ncols() && feasible_ok
}

#[test]
fn criterion_7_oracle_equivalence() {
    let mut rng = common::rng(7);
    let mut random_ok = 0;
    for _ in 0..100 {
        let (a, b) = common::random_system(&mut rng, 200);
        if agrees_with_oracle(&a, &b) {
            random_ok += 1;
        }
    }
    let mut assembled = Vec::new();
    let mut assembled_ok = true;
    for ctx in catalog3().iter().filter(|c| c.algebra().rank() <= 2 && c.algebra().id().letter == nilconn::TypeLetter::A) {
        for set in [ConditionSet::infinitesimal(), ConditionSet::graded()] {
            let sys = nilconn::assemble(ctx, &set).unwrap();
            assembled_ok &= agrees_with_oracle(&sys.matrix, &sys.rhs);
            assembled.push(format!("{} {set} {}x{}", key(ctx), sys.matrix.nrows(), sys.matrix.ncols()));
        }
    }
    verdict(
        7,
        "oracle equivalence",
        random_ok == 100 && assembled_ok && assembled.len() == 6,
        &format!("random {random_ok}/100, assembled {assembled:?}"),
    );
}
