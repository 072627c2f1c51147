use proptest::prelude::*;

use su11_core::interferometer::conversions::{delta_lambda_nm, delta_omega};
use su11_core::interferometer::{presets, Arm, Gap, Interferometer};
use su11_core::propagation::{rescale_mode_profile, SpatialPropagation, TemporalPropagation};
use su11_core::schmidt::{effective_mode_number, renormalize_weights, ModeFamily, ModeKind};

/// Normalised, strictly descending eigenvalues with λ₀ > λ₁.
fn eigenvalue_set() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-6f64..1.0, 2..40).prop_map(|mut raw| {
        raw.sort_by(|a, b| b.total_cmp(a));
        raw[0] *= 1.5;
        let total: f64 = raw.iter().sum();
        raw.iter().map(|x| x / total).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gain_concentrates_the_spectrum(lambdas in eigenvalue_set()) {
        let mut previous = f64::INFINITY;
        for g in 0..=20 {
            let w = renormalize_weights(&lambdas, g as f64).unwrap();
            let k = effective_mode_number(&w).unwrap();
            prop_assert!(k <= previous * (1.0 + 1e-12), "K rose from {} to {} at G = {}", previous, k, g);
            previous = k;
        }
    }

    #[test]
    fn renormalised_weights_sum_to_one(lambdas in eigenvalue_set(), g in 0.0f64..1e4) {
        let w = renormalize_weights(&lambdas, g).unwrap();
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(w.windows(2).all(|p| p[1] <= p[0] * (1.0 + 1e-12)));
    }

    #[test]
    fn spectral_unit_round_trip(dw in 1e-6f64..10.0, lam in 0.2f64..5.0) {
        let back = delta_omega(delta_lambda_nm(dw, lam), lam);
        prop_assert!((back / dw - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diffraction_and_dispersion_are_dual(
        w0 in 1.0f64..500.0, lam in 0.3f64..2.0, l in 0.0f64..1000.0, m in 0usize..200,
    ) {
        let s = SpatialPropagation::new(w0, lam, l).unwrap();
        let t = TemporalPropagation::new(w0, lam * l * 1e3 / std::f64::consts::PI).unwrap();
        prop_assert_eq!(s.waist(m), t.duration(m));
    }

    #[test]
    fn mode_size_grows_with_order(tau0 in 1.0f64..1e4, k2d in 1.0f64..1e6, m in 0usize..500) {
        let t = TemporalPropagation::new(tau0, k2d).unwrap();
        prop_assert!(t.duration(m + 1) > t.duration(m));
    }

    #[test]
    fn stretching_preserves_the_mode_norm(order in 0usize..12, stretch in 1.0f64..3.0) {
        let family = ModeFamily::new(ModeKind::Temporal, 1.0, 1.0, 12).unwrap();
        let len = 12001;
        let dx = 60.0 / (len - 1) as f64;
        let xs: Vec<f64> = (0..len).map(|i| -30.0 + i as f64 * dx).collect();
        let psi = family.mode(order, &xs).unwrap();
        let out = rescale_mode_profile(&xs, &psi, stretch).unwrap();
        let norm: f64 = out.iter().map(|v| v * v).sum::<f64>() * dx;
        prop_assert!((norm - 1.0).abs() < 1e-4, "norm {}", norm);
    }
}

fn spatial_config() -> impl Strategy<Value = su11_core::interferometer::InterferometerConfig> {
    (50.0f64..600.0, 0.5f64..5.0, 0.6f64..1.0).prop_map(|(fwhm, crystal, lam)| {
        let mut c = presets::paper_angular();
        c.pump_fwhm_um = Some(fwhm);
        c.crystal_length_mm = crystal;
        c.pdc_wavelength_um = lam;
        c
    })
}

fn temporal_config() -> impl Strategy<Value = su11_core::interferometer::InterferometerConfig> {
    (500.0f64..12000.0, 0.5f64..5.0, prop::option::of(5.0f64..80.0)).prop_map(|(tc, crystal, baseline)| {
        let mut c = presets::paper_spectral();
        c.pump_coherence_time_fs = Some(tc);
        c.crystal_length_mm = crystal;
        c.baseline_fwhm_nm = baseline;
        c.gap = Gap::Dispersive { material: "vacuum".into(), length_mm: 0.0 };
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn width_curves_never_rise(
        config in prop_oneof![spatial_config(), temporal_config()],
        xs in prop::collection::vec(0.0f64..1e5, 1..30),
    ) {
        let arm = config.arm;
        let model = Interferometer::new(config).unwrap();
        let xs: Vec<f64> = match arm {
            Arm::Spatial => xs.iter().map(|x| x * 1e-2).collect(),
            Arm::Temporal => xs,
        };
        let curve = model.sweep_width(&xs).unwrap();
        prop_assert!(curve.is_non_increasing());
        prop_assert!(curve.width.iter().all(|w| *w > 0.0));
    }
}
