use mwall_core::analytic::{
    boost_phase, classify_regime, comoving_wavefunction, probability_current, probability_density,
    total_wavefunction, PhysicalParams, PlaneWaveScattering, RegimeClass,
};
use proptest::prelude::*;

fn params() -> PhysicalParams {
    PhysicalParams::default()
}

proptest! {
    #[test]
    fn field_vanishes_on_the_wall(k in 0.01f64..10.0, v in -10.0f64..10.0, t in -10.0f64..10.0) {
        let s = PlaneWaveScattering::new(k, v, params()).unwrap();
        prop_assert!(total_wavefunction(v * t, t, &s).norm() < 1e-12);
    }

    #[test]
    fn current_is_velocity_times_density(k in 0.01f64..10.0, v in -5.0f64..5.0, x in -20.0f64..0.0, t in -2.0f64..2.0) {
        let s = PlaneWaveScattering::new(k, v, params()).unwrap();
        let rho = probability_density(x, t, &s);
        prop_assert!((probability_current(x, t, &s) - v * rho).abs() < 1e-12);
        prop_assert!((total_wavefunction(x, t, &s).norm_sqr() - rho).abs() < 1e-10);
    }

    #[test]
    fn lift_reproduces_lab_field(k in 0.01f64..5.0, v in -5.0f64..5.0, xb in -10.0f64..0.0, t in -2.0f64..2.0) {
        let p = params();
        let s = PlaneWaveScattering::new(k, v, p).unwrap();
        let x = xb + v * t;
        let lifted = num_complex::Complex64::cis(boost_phase(x, t, v, &p)) * comoving_wavefunction(xb, t, s.k_bar(), &p);
        prop_assert!((lifted - total_wavefunction(x, t, &s)).norm() < 1e-12);
    }

    #[test]
    fn regimes_follow_the_thresholds(k in 0.1f64..10.0, f in -1.0f64..3.0) {
        let v = f * k;
        let regime = classify_regime(k, v, &params()).unwrap();
        let expected = if f < 0.5 {
            RegimeClass::CounterPropagating
        } else if f == 0.5 {
            RegimeClass::ZeroReflectedWavenumber
        } else if f < 1.0 {
            RegimeClass::CoPropagating
        } else if f == 1.0 {
            RegimeClass::Degenerate
        } else {
            RegimeClass::CoPropagatingFaster
        };
        prop_assert_eq!(regime, expected);
    }
}
