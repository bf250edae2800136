use std::f64::consts::PI;

use approx::assert_relative_eq;
use proptest::prelude::*;

use dirac2d::quad::{fit_log_divergence, pair_delta, MollifierFamily, Profile};
use dirac2d::specfun::{k0, EULER_GAMMA};
use dirac2d::spectrum::{b_from_energy, closed_form_energy, energy_from_b, solve_eeq, PhysicalParams};
use dirac2d::testfn::BumpFunction;

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn signed(s: impl Strategy<Value = f64>) -> impl Strategy<Value = f64> {
    (s, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v })
}

fn params() -> impl Strategy<Value = PhysicalParams> {
    (0.5f64..2.0, 0.5f64..2.0, signed(log_uniform(1.0, 50.0)), signed(log_uniform(0.1, 10.0)))
        .prop_map(|(h, m, a, l)| PhysicalParams::new(h, m, a, l).unwrap())
}

proptest! {
    #[test]
    fn k0_is_positive_and_decreasing(x in log_uniform(1e-8, 600.0), factor in 1.001f64..3.0) {
        let (a, b) = (k0(x).unwrap(), k0(x * factor).unwrap());
        prop_assert!(a > 0.0);
        prop_assert!(b < a);
    }

    #[test]
    fn k0_rejects_nonpositive_arguments(x in -10.0f64..=0.0) {
        prop_assert!(k0(x).is_err());
    }

    #[test]
    fn energy_and_rate_invert(p in params(), b in log_uniform(1e-3, 1e3)) {
        let e = energy_from_b(b, &p).unwrap();
        prop_assert!(e < 0.0);
        assert_relative_eq!(b_from_energy(e, &p).unwrap(), b, max_relative = 1e-14);
    }

    #[test]
    fn root_finding_matches_closed_form(p in params()) {
        let state = solve_eeq(&p).unwrap();
        assert_relative_eq!(state.energy, closed_form_energy(&p), max_relative = 1e-12);
        prop_assert!(p.condition(state.b).abs() <= 1e-12 * p.alpha().abs().max(p.kinetic_scale() * PI));
    }

    #[test]
    fn energy_is_even_in_l_and_scales_as_inverse_square(p in params(), s in log_uniform(0.1, 10.0)) {
        let flip = PhysicalParams::new(p.hbar(), p.mass(), p.alpha(), -p.length_scale()).unwrap();
        let stretched = PhysicalParams::new(p.hbar(), p.mass(), p.alpha(), s * p.length_scale()).unwrap();
        let e = closed_form_energy(&p);
        prop_assert_eq!(closed_form_energy(&flip), e);
        assert_relative_eq!(closed_form_energy(&stretched) * s * s, e, max_relative = 1e-13);
    }

    #[test]
    fn fit_recovers_synthetic_coefficients(
        phi0 in signed(log_uniform(0.1, 10.0)),
        c in -3.0f64..3.0,
        p in -2.0f64..2.0,
        q in -2.0f64..2.0,
    ) {
        let data: Vec<(f64, f64)> = (4..=14)
            .map(|k| {
                let eps = 2f64.powi(-k);
                let e2 = eps * eps;
                (eps, phi0 * eps.ln() + c + e2 * (p * eps.ln() + q))
            })
            .collect();
        let fit = fit_log_divergence(&data, phi0, None).unwrap();
        assert_relative_eq!(fit.slope, phi0, max_relative = 1e-9);
        assert_relative_eq!(fit.intercept, c, epsilon = 1e-8 * phi0.abs().max(1.0));
        assert_relative_eq!(fit.effective_scale_constant, (-c / phi0).exp(), max_relative = 1e-8);
    }

    #[test]
    fn rescaled_bump_is_composition(
        amp in 0.5f64..2.0,
        radius in 0.3f64..3.0,
        cx in -1.0f64..1.0,
        s in signed(log_uniform(0.2, 5.0)),
        x in -2.0f64..2.0,
        y in -2.0f64..2.0,
    ) {
        let phi = BumpFunction::new(amp, radius, [cx, 0.5 * cx]).unwrap();
        let scaled = phi.rescale(s).unwrap();
        assert_relative_eq!(scaled.value([x, y]), phi.value([s * x, s * y]), epsilon = 1e-14);
    }

    #[test]
    fn delta_pairs_to_scaled_origin_value(c in -5.0f64..5.0, amp in 0.5f64..2.0, radius in 0.3f64..3.0) {
        let phi = BumpFunction::centered(amp, radius).unwrap();
        assert_relative_eq!(pair_delta(c, &phi), c * phi.at_origin(), max_relative = 1e-15);
    }
}

#[test]
fn mollifiers_have_unit_mass() {
    for profile in [Profile::Gaussian, Profile::Bump] {
        let family = MollifierFamily::with_default_epsilons(profile);
        for &eps in family.epsilons() {
            assert_relative_eq!(family.mass(eps).unwrap(), 1.0, max_relative = 1e-10);
        }
    }
}

#[test]
fn k0_meets_its_logarithmic_form_near_zero() {
    for x in [1e-8, 1e-6, 1e-4] {
        let form = -(0.5 * EULER_GAMMA.exp() * x).ln();
        assert!((k0(x).unwrap() - form).abs() <= x * x * (1.0 + x.ln().abs()));
    }
}
