mod common;

use std::sync::{Arc, OnceLock};

use nilconn::linalg::{is_normalized, nullspace, rank, ratio, solve_affine};
use nilconn::orbits::minimal_representative;
use nilconn::{
    build_algebra, covariant_derivative, AffineOutcome, GammaTensor, LieAlgebraData, LieElement, MatrixQ,
    OrbitContext, OrbitKind, Scalar, TypeLetter,
};
use num_traits::Zero;
use proptest::prelude::*;

fn system() -> impl Strategy<Value = (MatrixQ, Vec<Scalar>)> {
    (1usize..12, 1usize..12).prop_flat_map(|(rows, cols)| {
        (
            prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows),
            prop::collection::vec(-3i64..=3, rows),
        )
            .prop_map(|(a, b)| {
                let dense: Vec<Vec<Scalar>> = a.iter().map(|r| r.iter().map(|&v| ratio(v, 1)).collect()).collect();
                (MatrixQ::from_dense(&dense), b.into_iter().map(|v| ratio(v, 1)).collect())
            })
    })
}

fn c2() -> &'static Arc<LieAlgebraData> {
    static G: OnceLock<Arc<LieAlgebraData>> = OnceLock::new();
    G.get_or_init(|| Arc::new(build_algebra(TypeLetter::C, 2).unwrap()))
}

fn c2_minimal() -> &'static Arc<OrbitContext> {
    static C: OnceLock<Arc<OrbitContext>> = OnceLock::new();
    C.get_or_init(|| {
        let g = c2().clone();
        let e = minimal_representative(&g);
        Arc::new(OrbitContext::new(g, "minimal", OrbitKind::Minimal, &e).unwrap())
    })
}

fn element(dim: usize) -> impl Strategy<Value = LieElement> {
    prop::collection::vec((-3i64..=3, 1i64..=2), dim)
        .prop_map(|v| LieElement::from_coords(v.into_iter().map(|(p, q)| ratio(p, q)).collect()))
}

fn tensor() -> impl Strategy<Value = GammaTensor> {
    let ctx = c2_minimal();
    let (dim_g, m) = (ctx.dim_g(), ctx.dim_m());
    prop::collection::vec(-2i64..=2, dim_g * m * m).prop_map(move |v| {
        let slices = v
            .chunks(m * m)
            .map(|c| nilconn::DenseMatrix::from_fn(m, m, |p, q| ratio(c[p * m + q], 1)))
            .collect();
        GammaTensor::from_slices(c2_minimal().clone(), slices).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_matches_oracle((a, b) in system()) {
        let n = a.ncols();
        let r = rank(&a);
        prop_assert_eq!(r, common::oracle_rank(&a));
        let ns = nullspace(&a);
        prop_assert_eq!(r + ns.len(), n);
        for v in &ns {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        match solve_affine(&a, &b).unwrap() {
            AffineOutcome::Feasible(s) => {
                prop_assert!(common::oracle_solve(&a, &b).is_some());
                prop_assert_eq!(a.mul_vec(&s.particular), b);
                prop_assert!(s.particular.iter().all(is_normalized));
                prop_assert_eq!(s.nullspace_basis.len(), n - r);
            }
            AffineOutcome::Infeasible(c) => {
                prop_assert!(common::oracle_solve(&a, &b).is_none());
                prop_assert!(c.verify(&a, &b));
            }
        }
    }

    #[test]
    fn bracket_is_antisymmetric_and_jacobi(x in element(10), y in element(10), z in element(10)) {
        let g = c2();
        prop_assert_eq!(g.bracket(&x, &y), -&g.bracket(&y, &x));
        let cyc = &(&g.bracket(&x, &g.bracket(&y, &z)) + &g.bracket(&y, &g.bracket(&z, &x)))
            + &g.bracket(&z, &g.bracket(&x, &y));
        prop_assert!(cyc.is_zero());
    }

    #[test]
    fn split_and_lift_round_trip(x in element(10)) {
        let ctx = c2_minimal();
        let (h_part, v) = ctx.split(&x);
        let mut back = ctx.lift(&v);
        for (k, c) in h_part.iter().enumerate() {
            back = &back + &ctx.centralizer_basis()[k].scale(c);
        }
        prop_assert_eq!(back, x.clone());
        prop_assert_eq!(ctx.coset_project(&ctx.lift(&v)), v);
    }

    #[test]
    fn covariant_derivative_is_linear_in_eta(
        gamma in tensor(),
        xi in element(10),
        a in element(10),
        b in element(10),
        k in -3i64..=3,
    ) {
        let k = ratio(k, 1);
        let combo = &a + &b.scale(&k);
        let lhs = covariant_derivative(&gamma, &xi, &combo);
        let ra = covariant_derivative(&gamma, &xi, &a);
        let rb = covariant_derivative(&gamma, &xi, &b);
        let rhs: Vec<Scalar> = ra.coords.iter().zip(&rb.coords).map(|(p, q)| p + &k * q).collect();
        prop_assert_eq!(lhs.coords, rhs);
    }
}
