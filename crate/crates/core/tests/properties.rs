use gausssep::bounds::physical_fold;
use gausssep::canonical::e;
use gausssep::linalg::min_eigenvalue_hermitian;
use gausssep::sampling::{
    random_local_symplectic, random_physical_state, stream_rng, SamplerConfig, SamplingMode,
};
use gausssep::sweep::{run_sweep, SweepSpec};
use gausssep::{
    apply_local, classify, invariants, partial_transpose, physicality_closed_form, physicality_eig,
    separability_closed_form, Complex64, CovarianceMatrix, GaussianParams, Method, Tolerances,
};
use proptest::prelude::*;

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..=r, 0.0..std::f64::consts::TAU).prop_map(|(m, a)| Complex64::from_polar(m, a))
}

fn params() -> impl Strategy<Value = GaussianParams> {
    (
        0.4..3.0f64,
        0.4..3.0f64,
        complex(1.0),
        complex(1.0),
        complex(1.0),
        complex(1.0),
    )
        .prop_map(|(n1, n2, m1, m2, ms, mc)| {
            GaussianParams::from_parts(n1, n2, m1, m2, ms, mc).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn closed_form_matches_oracle_away_from_boundary(p in params()) {
        let tol = Tolerances::default();
        let closed = classify(&p, Method::ClosedForm, &tol);
        let eig = classify(&p, Method::EigenOracle, &tol);
        if closed.margin_physical.abs() > 1e-8 && eig.margin_physical.abs() > 1e-8 {
            prop_assert_eq!(closed.physical, eig.physical);
        }
        let pairs = [
            (closed.margin_separable, eig.margin_separable, closed.separable, eig.separable),
            (closed.margin_prep, eig.margin_prep, closed.p_representable, eig.p_representable),
        ];
        for (mc, me, vc, ve) in pairs {
            if let (Some(mc), Some(me)) = (mc, me) {
                if mc.abs() > 1e-8 && me.abs() > 1e-8 {
                    prop_assert_eq!(vc, ve);
                }
            }
        }
    }

    #[test]
    fn mirror_identity_is_exact(p in params()) {
        let tol = Tolerances::default();
        prop_assert_eq!(separability_closed_form(&p, &tol), physicality_closed_form(&p.mirror(), &tol));
        prop_assert_eq!(p.mirror().mirror(), p);
    }

    #[test]
    fn partial_transpose_is_an_involution(p in params()) {
        let v = CovarianceMatrix::from_params(&p);
        let w = partial_transpose(&v);
        prop_assert_eq!(partial_transpose(&w), v);
        prop_assert_eq!(w, CovarianceMatrix::from_params(&p.mirror()));
    }

    #[test]
    fn invariants_survive_local_symplectics(seed in any::<u64>()) {
        let tol = Tolerances::default();
        let mut rng = stream_rng(seed, 0);
        let p = random_physical_state(&mut rng, SamplingMode::Reject, &SamplerConfig::default(), &tol).unwrap();
        let v = CovarianceMatrix::from_params(&p);
        let w = apply_local(&random_local_symplectic(&mut rng, 1.5), &v);
        prop_assert!(invariants(&v).max_relative_difference(&invariants(&w)) <= 1e-9);
        prop_assert!(w.layout_deviation() <= 1e-9 * w.matrix().camax().max(1.0));
    }

    #[test]
    fn construct_mode_keeps_the_layout(seed in any::<u64>()) {
        let tol = Tolerances::default();
        let mut rng = stream_rng(seed, 3);
        let p = random_physical_state(&mut rng, SamplingMode::Construct, &SamplerConfig::default(), &tol).unwrap();
        let v = CovarianceMatrix::from_params(&p);
        prop_assert_eq!(v.to_params(tol.herm).unwrap(), p);
        prop_assert!(physicality_eig(&v, &tol).holds);
    }

    #[test]
    fn physical_fold_saturates_uncertainty(p in params()) {
        let tol = Tolerances::default();
        if let Ok(fold) = physical_fold(&p, &tol) {
            if p.n1() * p.n1() - 0.25 - p.m1().norm_sqr() > 1e-3 && fold >= 0.0 {
                let v = CovarianceMatrix::from_params(&p.with_n2(fold).unwrap());
                let shifted = v.matrix() + e().scale(0.5);
                let lambda = min_eigenvalue_hermitian(&shifted, 1e-9).unwrap();
                prop_assert!(lambda.abs() < 1e-9, "lambda = {}", lambda);
            }
        }
    }

    #[test]
    fn plain_spectrum_dominates_shifted(p in params()) {
        let v = CovarianceMatrix::from_params(&p);
        let plain = min_eigenvalue_hermitian(v.matrix(), 1e-12).unwrap();
        let shifted = min_eigenvalue_hermitian(&(v.matrix() + e().scale(0.5)), 1e-12).unwrap();
        prop_assert!(plain >= shifted - 1e-12);
    }
}

#[test]
fn gap_states_are_never_p_representable() {
    let tol = Tolerances::default();
    let spec = SweepSpec::fold_comparison();
    for row in run_sweep(&spec, &tol)
        .unwrap()
        .iter()
        .filter(|r| r.prep_below_sep)
    {
        let (p_fold, s_fold) = (row.n2_min_prep.unwrap(), row.n2_min_separable.unwrap());
        let base = spec.point(row.axis1, row.axis2).unwrap();
        for k in 0..8 {
            let n2 = p_fold.max(0.0) + (s_fold - p_fold.max(0.0)) * k as f64 / 8.0;
            let verdict = classify(&base.with_n2(n2).unwrap(), Method::EigenOracle, &tol);
            assert_ne!(verdict.p_representable, Some(true));
        }
    }
}
