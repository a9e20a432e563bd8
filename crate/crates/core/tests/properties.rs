use kjet_core::circle::{fourier_transform, inverse_transform, real_completion, winding_number, CircleFunction, FourierSpectrum};
use kjet_core::discs::{blaschke_product, reparametrize, schwarz_bound_check};
use kjet_core::jets::{jet_of_disc, jet_scale, JetVector};
use kjet_core::kobayashi::k2_disc_closed_form;
use kjet_core::stationarity::{pairing_sum, scalar_stationarity_exact};
use kjet_core::Complex64;
use proptest::prelude::*;

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| Complex64::new(a, b))
}

fn in_disc(max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip(coeffs in prop::collection::vec(complex(1.0), 64)) {
        let u = inverse_transform(&FourierSpectrum::from_fft_order(vec![coeffs]).unwrap());
        let back = inverse_transform(&fourier_transform(&u));
        prop_assert!(u.max_distance(&back) <= 1e-12 * (1.0 + u.mean_square().sqrt() * 64.0));
    }

    #[test]
    fn completion_is_real_and_cancels(coeffs in prop::collection::vec(complex(1.0), 64)) {
        let u = inverse_transform(&FourierSpectrum::from_fft_order(vec![coeffs]).unwrap());
        let h = real_completion(&u).unwrap();
        prop_assert!(h.component(0).iter().all(|z| z.im == 0.0));
        let sum = CircleFunction::scalar(u.component(0).iter().zip(h.component(0)).map(|(a, b)| a + b).collect()).unwrap();
        let s = fourier_transform(&sum);
        for j in 1..32 {
            prop_assert!(s.coeff(0, -j).norm() <= 1e-12 * (1.0 + u.mean_square().sqrt()));
        }
    }

    #[test]
    fn blaschke_winding_is_degree(zeros in prop::collection::vec(in_disc(0.9), 0..6)) {
        let f = blaschke_product(&zeros).unwrap();
        prop_assert_eq!(winding_number(&f.boundary_trace(512).unwrap(), 1e-8).unwrap(), zeros.len() as i64);
    }

    #[test]
    fn schwarz_slack_nonnegative(zeros in prop::collection::vec(in_disc(0.95), 0..4), t in 0.0..std::f64::consts::TAU) {
        let mut zeros = zeros;
        zeros.push(Complex64::new(0.0, 0.0));
        let f = blaschke_product(&zeros).unwrap().rotate(t);
        prop_assert!(schwarz_bound_check(&f).unwrap() >= -1e-10);
    }

    #[test]
    fn closed_form_homogeneous(a in complex(2.0), b in complex(2.0), c in complex(2.0)) {
        prop_assume!(a.norm() + b.norm() > 1e-3 && c.norm() > 1e-3);
        let xi = JetVector::scalar(&[a, b]).unwrap();
        let lhs = k2_disc_closed_form(&jet_scale(c, &xi)).unwrap();
        let rhs = c.norm() * k2_disc_closed_form(&xi).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn reparametrized_jet_scales(zeros in prop::collection::vec(in_disc(0.8), 1..4), lambda in 0.05..1.0f64) {
        let f = blaschke_product(&zeros).unwrap();
        let k = zeros.len();
        let a = jet_of_disc(&reparametrize(&f, lambda).unwrap(), k).unwrap();
        let b = jet_scale(lambda.into(), &jet_of_disc(&f, k).unwrap());
        prop_assert!(a.component_distance(&b) <= 1e-12);
    }

    #[test]
    fn blaschke_family_pairing_positive(zeros in prop::collection::vec(in_disc(0.7), 1..5)) {
        let k = zeros.len();
        let f = blaschke_product(&zeros).unwrap();
        let cert = scalar_stationarity_exact(&f, k, 512).unwrap();
        prop_assert!(cert.residual <= 1e-8);
        prop_assert!(cert.c.iter().all(|c| *c > 0.0));
        for lambda in [0.5, 0.7, 0.9, 0.99] {
            prop_assert!((1.0 - lambda) * pairing_sum(&f, &cert.lift, lambda, k).unwrap() > 0.0);
        }
    }
}
