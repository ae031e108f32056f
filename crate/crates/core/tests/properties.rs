use proptest::prelude::*;

use ouflow::analytic::{
    burgers_characteristics, heat_evolve_acp, heat_evolve_qdet, lamperti_map, radial_polynomial,
    stationary_burgers_residual, zero_start_profile, LampertiVariant, PolynomialInZ, RadialPolynomial,
};
use ouflow::diffusion::{standard_ginibre, step_gue, DiffusionState};
use ouflow::dynamics::{dyson_step, jitter_degenerate};
use ouflow::eigen::{eigen_decompose, overlaps};
use ouflow::linalg::det;
use ouflow::rng::rng_stream;
use ouflow::types::quaternionic_block;
use ouflow::{block_trace, GinibreMatrix, HermitianMatrix, OUParams, QuaternionArgument, SquareComplexMatrix, C64};

fn complex() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| C64::new(a, b))
}

fn poly(deg: usize) -> impl Strategy<Value = PolynomialInZ> {
    proptest::collection::vec(complex(), deg + 1).prop_map(|coeffs| PolynomialInZ { coeffs })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gue_step_keeps_exact_hermiticity(seed in any::<u64>(), n in 1usize..6) {
        let p = OUParams::new(0.5, n, 1e-3, seed).unwrap();
        let mut rng = rng_stream(seed, 0);
        let mut s = DiffusionState::new(HermitianMatrix::zeros(n), p);
        for _ in 0..5 {
            s = step_gue(&s, &mut rng).unwrap();
        }
        prop_assert!(s.matrix.matrix().is_hermitian());
    }

    #[test]
    fn overlap_invariants_hold(seed in any::<u64>(), n in 2usize..10) {
        let x = standard_ginibre(n, &mut rng_stream(seed, 1));
        let sys = eigen_decompose(x.matrix()).unwrap();
        prop_assert!(sys.biorthogonality_residual() < 1e-10);
        let o = overlaps(&sys);
        for s in o.row_sums() {
            prop_assert!((s - 1.0).norm() < 1e-8);
        }
        for d in o.diagonal() {
            prop_assert!(d >= 1.0 - 1e-10);
        }
    }

    #[test]
    fn quaternion_block_determinant_is_real_and_positive(seed in any::<u64>(), z in complex(), w in complex()) {
        prop_assume!(w.norm() > 1e-3);
        let x = standard_ginibre(3, &mut rng_stream(seed, 2));
        let d = det(&quaternionic_block(x.matrix(), &QuaternionArgument::new(z, w))).unwrap();
        prop_assert!(d.re > 0.0);
        prop_assert!(d.im.abs() < 1e-10 * d.re.max(1.0));
    }

    #[test]
    fn block_trace_of_embedded_quaternion(z in complex(), w in complex(), n in 1usize..5) {
        let q = QuaternionArgument::new(z, w);
        let m = quaternionic_block(&SquareComplexMatrix::zeros(n), &q);
        let bt = block_trace(&m, n).unwrap();
        let e = q.embed();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((bt.0[i][j] - e.0[i][j] * n as f64).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn acp_heat_operator_is_linear(p in poly(5), q in poly(5), t in 0.0..2.0f64, alpha in complex()) {
        let sum = PolynomialInZ { coeffs: p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| a * alpha + b).collect() };
        let lhs = heat_evolve_acp(&sum, t, 5);
        let (ep, eq) = (heat_evolve_acp(&p, t, 5), heat_evolve_acp(&q, t, 5));
        for k in 0..6 {
            prop_assert!((lhs.coeffs[k] - (ep.coeffs[k] * alpha + eq.coeffs[k])).norm() < 1e-10);
        }
    }

    #[test]
    fn acp_heat_operator_commutes_with_translation(p in poly(4), t in 0.0..2.0f64, shift in complex(), z in complex()) {
        // evolving p(z + c) equals the evolution of p evaluated at z + c
        let shifted = translate(&p, shift);
        let a = heat_evolve_acp(&shifted, t, 4).eval(z);
        let b = heat_evolve_acp(&p, t, 4).eval(z + shift);
        prop_assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()));
    }

    #[test]
    fn qdet_heat_operator_keeps_real_monic(seed in any::<u64>(), z in complex(), t in 0.0..3.0f64) {
        let x0 = standard_ginibre(4, &mut rng_stream(seed, 3));
        let d0 = radial_polynomial(&x0, z).unwrap();
        let d: RadialPolynomial = heat_evolve_qdet(&d0, t, 4);
        prop_assert!((d.coeffs[4] - 1.0).norm() < 1e-12);
        for c in &d.coeffs {
            prop_assert!(c.im.abs() < 1e-12 * (1.0 + c.re.abs()));
            prop_assert!(c.re >= -1e-12);
        }
    }

    #[test]
    fn lamperti_prefactor_identity(tau in 0.0..5.0f64, a in 0.0..2.0f64, n in 1usize..20) {
        let img = lamperti_map(C64::new(0.3, 0.1), tau, a, n, LampertiVariant::Hermitian).unwrap();
        prop_assert!(img.tau_prime >= 0.0);
        prop_assert!((img.prefactor * (1.0 + 2.0 * a * img.tau_prime).powf(n as f64 / 2.0) - 1.0).abs() < 1e-12);
        let later = lamperti_map(C64::new(0.3, 0.1), tau + 0.1, a, n, LampertiVariant::Hermitian).unwrap();
        prop_assert!(later.tau_prime > img.tau_prime);
    }

    #[test]
    fn stationary_burgers_quadratic_holds(x in -3.0..3.0f64, y in 0.01..3.0f64, sign in prop::bool::ANY, a in 0.1..3.0f64) {
        let z = C64::new(x, if sign { y } else { -y });
        let (alg, _) = stationary_burgers_residual(z, a, 1e-4).unwrap();
        prop_assert!(alg < 1e-12 * (1.0 + a * z.norm()));
    }

    #[test]
    fn characteristic_root_solves_implicit_equation(z in complex(), r in 0.0..2.0f64, t in 0.05..3.0f64) {
        let v0 = zero_start_profile(z);
        if let Ok(v) = burgers_characteristics(z, r, t, &v0) {
            prop_assert!(v >= 0.0);
            prop_assert!((v - v0(r + t * v)).abs() < 1e-9 * (1.0 + v));
        }
    }

    #[test]
    fn dyson_step_preserves_order(seed in any::<u64>(), n in 2usize..12) {
        let init: Vec<f64> = (0..n).map(|i| (i / 2) as f64).collect();
        let lam = jitter_degenerate(&init, 1e-6);
        let p = OUParams::new(0.5, n, 1e-3, seed).unwrap();
        let out = dyson_step(&lam, &p, &mut rng_stream(seed, 4)).unwrap();
        prop_assert!(out.windows(2).all(|w| w[1] - w[0] >= 1e-8));
    }

    #[test]
    fn ginibre_matrix_rejects_non_finite(v in prop::sample::select(vec![f64::NAN, f64::INFINITY])) {
        let m = SquareComplexMatrix::from_fn(2, |i, j| if i == j { C64::new(v, 0.0) } else { C64::new(0.0, 0.0) });
        prop_assert!(GinibreMatrix::new(m).is_err());
    }
}

fn translate(p: &PolynomialInZ, c: C64) -> PolynomialInZ {
    // coefficients of p(z + c) by repeated Horner shifts
    let mut a = p.coeffs.clone();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1] * c;
            a[j] += t;
        }
    }
    PolynomialInZ { coeffs: a }
}
