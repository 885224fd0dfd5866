mod common;

use common::eigen::hermitian_spectrum;
use num_complex::Complex64;
use proptest::prelude::*;
use udw_harvest::elements::{DetectorParams, PairElements};
use udw_harvest::linalg::hermitian_eigenvalues;
use udw_harvest::two_detector::{
    assemble_two, coherence_l1_two, negativity_two, negativity_two_numeric, rec_two, rec_two_numeric,
};

fn rows(state: &udw_harvest::two_detector::TwoDetectorState) -> Vec<Vec<Complex64>> {
    let m = state.rho().matrix();
    (0..4).map(|i| (0..4).map(|j| m[(i, j)]).collect()).collect()
}

fn physical(lambda: f64, gap: f64, l: f64) -> PairElements {
    PairElements::compute(&DetectorParams::new(lambda, gap).unwrap(), l).unwrap()
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_spectrum_matches_both_eigensolvers(
        lambda in 0.01f64..0.2, gap in 0.0f64..3.0, l in 0.3f64..8.0,
    ) {
        let state = assemble_two(physical(lambda, gap, l));
        let closed = sorted(&state.closed_form_spectrum());
        let jacobi = hermitian_eigenvalues(state.rho().matrix()).unwrap();
        let embedded = hermitian_spectrum(&rows(&state));
        for k in 0..4 {
            prop_assert!((closed[k] - jacobi[k]).abs() <= 1e-12);
            prop_assert!((closed[k] - embedded[k]).abs() <= 1e-12);
        }
        prop_assert!((closed.iter().sum::<f64>() - 1.0).abs() <= 1e-13);
        prop_assert!(state.closed_form_spectrum()[2] <= 0.0);
    }

    #[test]
    fn l1_matches_generic_sum(
        p in 0.0f64..0.01, c in -0.01f64..0.01, xr in -0.01f64..0.01, xi in -0.01f64..0.01,
    ) {
        let state = assemble_two(PairElements::new(p, c, Complex64::new(xr, xi), 1.0));
        let generic = state.rho().coherence_l1();
        prop_assert!((coherence_l1_two(&state) - generic).abs() <= 1e-15);
        prop_assert!(coherence_l1_two(&state) >= 0.0);
    }

    #[test]
    fn negativity_ignores_c(lambda in 0.01f64..0.2, gap in 0.0f64..3.0, l in 0.3f64..8.0, factor in -2.0f64..2.0) {
        let e = physical(lambda, gap, l);
        let base = negativity_two(&assemble_two(e));
        let other = negativity_two(&assemble_two(PairElements { c: e.c * factor, ..e }));
        prop_assert_eq!(base.to_bits(), other.to_bits());
    }

    #[test]
    fn rec_routes_agree(lambda in 0.01f64..0.2, gap in 0.0f64..3.0, l in 0.3f64..8.0) {
        let state = assemble_two(physical(lambda, gap, l));
        let closed = rec_two(&state).unwrap();
        let numeric = rec_two_numeric(&state).unwrap();
        prop_assert!((closed.bits - numeric.bits).abs() <= 1e-12);
        prop_assert!(closed.bits >= -1e-10);
        prop_assert!(closed.structural_eigenvalue <= 0.0);
    }
}

#[test]
fn rec_at_generic_point() {
    let state = assemble_two(physical(0.1, 1.0, 1.0));
    let closed = rec_two(&state).unwrap().bits;
    assert!((closed - rec_two_numeric(&state).unwrap().bits).abs() <= 1e-12);
    assert!(closed > 0.0);
}

#[test]
fn negativity_closed_form_vs_partial_transpose() {
    for k in 0..=110 {
        let l = 0.5 + 0.05 * k as f64;
        let state = assemble_two(physical(0.1, 1.0, l));
        let diff = (negativity_two(&state) - negativity_two_numeric(&state).unwrap()).abs();
        assert!(diff <= 5e-6, "L {l}: {diff}");
    }
}

#[test]
fn l1_decreases_with_separation_and_outlives_negativity() {
    for gap in [0.5, 1.0, 2.0] {
        let mut last = f64::INFINITY;
        let mut died = false;
        for k in 0..=190 {
            let l = 0.5 + 0.05 * k as f64;
            let state = assemble_two(physical(0.1, gap, l));
            let l1 = coherence_l1_two(&state);
            assert!(l1 < last && l1 > 0.0, "gap {gap} L {l}");
            last = l1;
            let n = negativity_two(&state);
            if n == 0.0 {
                died = true;
            } else {
                assert!(!died, "negativity revived at gap {gap} L {l}");
            }
        }
        assert!(died, "no sudden death at gap {gap}");
    }
}
