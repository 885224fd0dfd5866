mod common;

use common::oracle;
use proptest::prelude::*;
use udw_harvest::special::{erf_complex, erfc_complex, erfcx_scaled, ComplexValue};

fn rel_err(got: ComplexValue, want: (f64, f64)) -> f64 {
    let want = ComplexValue::new(want.0, want.1);
    (got - want).norm() / want.norm()
}

#[test]
fn oracle_reproduces_reference_digits() {
    let (re, im) = oracle::erf_f64(1.0, 0.0);
    assert!((re - 0.842700792949715).abs() < 1e-15 && im == 0.0);
    let (re, im) = oracle::erf_f64(0.0, 1.0);
    assert!(re == 0.0 && (im - 1.650425758797543).abs() < 1e-15);
    let (re, _) = oracle::erfcx_f64(2.0, 0.0);
    assert!((re - 0.255395676310506).abs() < 1e-15);
}

#[test]
fn erf_matches_oracle_on_grid() {
    let mut worst = (0.0, 0.0, 0.0);
    for i in 0..41 {
        for j in 0..41 {
            let x = -6.0 + 0.3 * i as f64;
            let y = -6.0 + 0.3 * j as f64;
            if x == 0.0 && y == 0.0 {
                continue;
            }
            let got = erf_complex(ComplexValue::new(x, y)).unwrap();
            let err = rel_err(got, oracle::erf_f64(x, y));
            if err > worst.0 {
                worst = (err, x, y);
            }
        }
    }
    assert!(worst.0 <= 1e-12, "worst relative error {:e} at {}+{}i", worst.0, worst.1, worst.2);
}

#[test]
fn erfcx_matches_oracle_off_axis() {
    for &(x, y) in &[(2.0, 0.0), (0.5, 0.5), (1.5, 2.0), (3.0, -1.0), (0.0, 4.0), (4.0, 4.0), (-1.0, 0.7)] {
        let got = erfcx_scaled(ComplexValue::new(x, y)).unwrap();
        let err = rel_err(got, oracle::erfcx_f64(x, y));
        assert!(err < 1e-12, "erfcx({x}+{y}i): relative error {err:e}");
    }
}

proptest! {
    #[test]
    fn erf_is_odd_and_conjugate_symmetric(r in 0.0f64..6.0, theta in 0.0f64..std::f64::consts::TAU) {
        let z = ComplexValue::from_polar(r, theta);
        let w = erf_complex(z).unwrap();
        prop_assert_eq!(erf_complex(-z).unwrap(), -w);
        prop_assert_eq!(erf_complex(z.conj()).unwrap(), w.conj());
    }

    #[test]
    fn erf_on_imaginary_axis_is_imaginary(y in -6.0f64..6.0) {
        let w = erf_complex(ComplexValue::new(0.0, y)).unwrap();
        prop_assert!(w.re.abs() <= 1e-15 * w.im.abs());
    }

    #[test]
    fn erf_plus_erfc_is_one(x in -6.0f64..6.0, y in -6.0f64..6.0) {
        let z = ComplexValue::new(x, y);
        let e = erf_complex(z).unwrap();
        let sum = e + erfc_complex(z).unwrap();
        prop_assert!((sum - 1.0).norm() <= 2.0 * f64::EPSILON * (1.0 + e.norm()));
    }
}
