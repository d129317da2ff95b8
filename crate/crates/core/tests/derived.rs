//! Frozen values computed once and cross-checked against the dense oracle.

mod common;

use std::sync::Arc;

use nilconn::connection::solve_orbit;
use nilconn::linalg::{int, rank, to_pq};
use nilconn::orbits::{minimal_representative, regular_representative};
use nilconn::{
    assemble, build_algebra, covariant_derivative, ConditionSet, LieAlgebraData, OrbitContext, OrbitKind, Scalar,
    SolveOutcome, TypeLetter,
};
use num_traits::Zero;

fn orbit(letter: TypeLetter, rank: usize, kind: OrbitKind) -> Arc<OrbitContext> {
    let g = Arc::new(build_algebra(letter, rank).unwrap());
    let (label, e) = match kind {
        OrbitKind::Regular => ("regular", regular_representative(&g)),
        _ => ("minimal", minimal_representative(&g)),
    };
    Arc::new(OrbitContext::new(g, label, kind, &e).unwrap())
}

fn dense_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = b[0].len();
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(Scalar::zero(), |acc, (x, r)| acc + x * &r[j]))
                .collect()
        })
        .collect()
}

fn pq(v: &[Scalar]) -> Vec<String> {
    v.iter().map(to_pq).collect()
}

#[test]
fn a1_ad_h_is_diagonal() {
    let g = build_algebra(TypeLetter::A, 1).unwrap();
    assert_eq!(g.labels(), ["h1", "e(1)", "f(1)"]);
    let ad = common::dense(&g.ad_matrix(&g.basis_element(0)));
    let want = [[0, 0, 0], [0, 2, 0], [0, 0, -2]];
    for (r, row) in want.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            assert_eq!(ad[r][c], int(v));
        }
    }
}

#[test]
fn a2_regular_nilpotency_and_centralizer() {
    let ctx = orbit(TypeLetter::A, 2, OrbitKind::Regular);
    let g = ctx.algebra();
    let ad = common::dense(&g.ad_matrix(&ctx.triple().e));
    let mut power = ad.clone();
    for _ in 1..4 {
        power = dense_mul(&power, &ad);
    }
    assert!(power.iter().flatten().any(|x| !x.is_zero()), "(ad e)^4 vanished");
    let fifth = dense_mul(&power, &ad);
    assert!(fifth.iter().flatten().all(Zero::is_zero), "(ad e)^5 nonzero");

    let oracle_rank = common::rref(ad, g.dim()).pivots.len();
    assert_eq!(g.dim() - oracle_rank, 2);
    assert_eq!(ctx.dim_h(), 2);
    assert_eq!(ctx.dim_m(), 6);
}

#[test]
fn a2_regular_coset_projection_of_f1() {
    let ctx = orbit(TypeLetter::A, 2, OrbitKind::Regular);
    let g = ctx.algebra();
    let f1 = g.basis_element(g.f_index(0));
    assert_eq!(pq(&ctx.coset_project(&f1).coords), ["0/1", "1/1", "0/1", "0/1", "0/1", "0/1"]);
}

#[test]
fn a2_regular_system_rank_matches_oracle() {
    let ctx = orbit(TypeLetter::A, 2, OrbitKind::Regular);
    for (set, rows, raw, frozen) in [
        (ConditionSet::infinitesimal(), 357, 576, 184),
        (ConditionSet::graded(), 506, 864, 216),
    ] {
        let sys = assemble(&ctx, &set).unwrap();
        assert_eq!(sys.matrix.ncols(), 216);
        assert_eq!((sys.matrix.nrows(), sys.raw_rows), (rows, raw), "{set}");
        assert_eq!(rank(&sys.matrix), frozen, "{set}");
        assert_eq!(common::oracle_rank(&sys.matrix), frozen, "{set}");
    }
}

#[test]
fn c2_minimal_graded_row_count() {
    let ctx = orbit(TypeLetter::C, 2, OrbitKind::Minimal);
    let sys = assemble(&ctx, &ConditionSet::graded()).unwrap();
    assert_eq!(sys.matrix.ncols(), 64);
    assert_eq!((sys.matrix.nrows(), sys.raw_rows), (149, 1120));
}

#[test]
fn rank_two_minimal_infinitesimal_dimensions() {
    for letter in [TypeLetter::B, TypeLetter::C] {
        let ctx = orbit(letter, 2, OrbitKind::Minimal);
        let (sys, out) = solve_orbit(&ctx, &ConditionSet::infinitesimal()).unwrap();
        let SolveOutcome::Feasible(space) = out else {
            panic!("{letter:?}2 minimal infeasible under I,IIp");
        };
        assert_eq!(sys.matrix.nrows(), 139);
        assert_eq!(space.dimension(), 4);
    }
}

#[test]
fn a1_covariant_derivative_fixture() {
    let ctx = orbit(TypeLetter::A, 1, OrbitKind::Minimal);
    let g: &LieAlgebraData = ctx.algebra();
    let (_, out) = solve_orbit(&ctx, &ConditionSet::graded()).unwrap();
    let SolveOutcome::Feasible(space) = out else {
        panic!("A1 minimal infeasible");
    };
    assert_eq!(space.dimension(), 0);
    let gamma = &space.particular;
    let h_slice: Vec<Vec<String>> = (0..2).map(|r| pq(gamma.slice(0).row(r))).collect();
    assert_eq!(h_slice, [["-1/1", "0/1"], ["0/1", "1/1"]]);

    let nabla = |x: &nilconn::LieElement| pq(&covariant_derivative(gamma, x, x).coords);
    assert_eq!(nabla(&g.basis_element(0)), ["0/1", "1/1"]);
    assert_eq!(nabla(&g.basis_element(1)), ["0/1", "0/1"]);
    assert_eq!(nabla(&g.basis_element(2)), ["0/1", "0/1"]);
    let sum = &(&g.basis_element(0) + &g.basis_element(1)) + &g.basis_element(2);
    assert_eq!(nabla(&sum), ["0/1", "2/1"]);
}

#[test]
fn g2_jacobi_and_root_counts() {
    let g2 = build_algebra(TypeLetter::G, 2).unwrap();
    assert_eq!(g2.dim(), 14);
    assert!(g2.verify_jacobi());
    let c2 = build_algebra(TypeLetter::C, 2).unwrap();
    assert_eq!(c2.root_system().roots().len(), 8);
    assert_eq!(c2.root_system().highest_root(), [2, 1]);
}
