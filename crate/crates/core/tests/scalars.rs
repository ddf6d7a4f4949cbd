mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use rsvortex_core::fields::phasor_from_time_samples;
use rsvortex_core::scalars::{
    c_scalar, coincidence_phase_relation, electric_phasor, l_vector, magnetic_phasor, psi_harmonics,
    rs_polarization_scalar, time_averaged_scalar, time_averaged_scalar_from_phasors,
};
use rsvortex_core::{Complex64, ComplexVec3, Error, FieldSuperposition, Helicity, MonochromaticField, Vec3};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

proptest! {
    #[test]
    fn plane_waves_have_null_psi(seed in seed()) {
        let mut rng = rng(seed);
        let h = if rng.gen_bool(0.5) { Helicity::Positive } else { Helicity::Negative };
        let w = rng.gen_range(0.1..5.0);
        let field = FieldSuperposition::new(vec![mode(&mut rng, w, h)]).unwrap();
        let f2 = field.modes()[0].amplitude().norm_squared();
        for _ in 0..20 {
            let r = point(&mut rng, 50.0);
            let t = rng.gen_range(-50.0..50.0);
            prop_assert!(rs_polarization_scalar(&field, r, t).norm() <= 1e-12 * f2);
        }
    }

    #[test]
    fn c_scalar_splits_into_p_and_q(px in -5.0f64..5.0, py in -5.0f64..5.0, pz in -5.0f64..5.0,
                                    qx in -5.0f64..5.0, qy in -5.0f64..5.0, qz in -5.0f64..5.0) {
        let p = Vec3::new(px, py, pz);
        let q = Vec3::new(qx, qy, qz);
        let psi = c_scalar(ComplexVec3::from_parts(p, q));
        let tol = 1e-14 * (p.norm_squared() + q.norm_squared()).max(1.0);
        prop_assert!((psi.re - (p.norm_squared() - q.norm_squared())).abs() <= tol);
        prop_assert!((psi.im - 2.0 * p.dot(q)).abs() <= tol);
    }

    #[test]
    fn definite_helicity_phase_relation(seed in seed(), positive in any::<bool>()) {
        let mut rng = rng(seed);
        let h = if positive { Helicity::Positive } else { Helicity::Negative };
        let w = rng.gen_range(0.5..2.0);
        let field = mono_field(&mut rng, 4, w, h, false);
        let mono = MonochromaticField::from_field(&field).unwrap();
        let scale = field.amplitude_bound().powi(2);
        for _ in 0..10 {
            let r = point(&mut rng, 5.0);
            let t = rng.gen_range(-5.0..5.0);
            let rel = coincidence_phase_relation(&mono, r, t).unwrap();
            prop_assert!(rel.electric_residual <= 1e-10 * scale);
            prop_assert!(rel.magnetic_residual <= 1e-10 * scale);
            // |ψ| does not depend on t.
            let later = rs_polarization_scalar(&field, r, t + rng.gen_range(0.0..mono.period()));
            prop_assert!((later.norm() - rel.psi.norm()).abs() <= 1e-12 * scale);
        }
    }
}

#[test]
fn psi_modulus_is_constant_for_two_modes() {
    let mut rng = rng(31);
    let a = rsvortex_core::make_helicity_mode(Vec3::Z, Helicity::Positive, c(1.0, 0.0)).unwrap();
    let b = rsvortex_core::make_helicity_mode(Vec3::X, Helicity::Positive, c(1.0, 0.0)).unwrap();
    let field = FieldSuperposition::new(vec![a, b]).unwrap();
    let expected = (a.amplitude().dot(b.amplitude()) * 2.0).norm();
    assert!(expected > 0.1);
    for _ in 0..100 {
        let r = point(&mut rng, 10.0);
        let t = rng.gen_range(-10.0..10.0);
        assert!((rs_polarization_scalar(&field, r, t).norm() - expected).abs() < 1e-13);
    }
}

#[test]
fn zero_field_has_zero_psi() {
    assert_eq!(rs_polarization_scalar(&FieldSuperposition::empty(), Vec3::X, 1.0), c(0.0, 0.0));
}

#[test]
fn phasors_of_single_helicity_parts() {
    let mut rng = rng(32);
    let pos = mono_field(&mut rng, 2, 1.0, Helicity::Positive, false);
    let neg = mono_field(&mut rng, 2, 1.0, Helicity::Negative, false);
    let r = point(&mut rng, 3.0);
    let mono_pos = MonochromaticField::from_field(&pos).unwrap();
    let mono_neg = MonochromaticField::from_field(&neg).unwrap();
    let mono_mix = MonochromaticField::from_field(&pos.concat(&neg)).unwrap();

    let f_pos = pos.eval_f(r, 0.0);
    let f_neg = neg.eval_f(r, 0.0);
    let i = c(0.0, 1.0);
    assert!((electric_phasor(&mono_pos, r) - f_pos).max_abs() < 1e-15);
    assert!((magnetic_phasor(&mono_pos, r) - f_pos.scale(-i)).max_abs() < 1e-15);
    assert!((electric_phasor(&mono_pos, r) - magnetic_phasor(&mono_pos, r).scale(i)).max_abs() < 1e-15);
    assert!((electric_phasor(&mono_neg, r) - f_neg.conj()).max_abs() < 1e-15);
    assert!((magnetic_phasor(&mono_neg, r) - f_neg.conj().scale(i)).max_abs() < 1e-15);
    let sum = electric_phasor(&mono_pos, r) + electric_phasor(&mono_neg, r);
    assert!((electric_phasor(&mono_mix, r) - sum).max_abs() < 1e-14);
}

#[test]
fn c_scalar_and_l_vector_examples() {
    let circular = ComplexVec3::new(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0));
    let linear = ComplexVec3::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
    assert_eq!(c_scalar(circular), c(0.0, 0.0));
    assert_eq!(c_scalar(linear), c(1.0, 0.0));
    assert_eq!(l_vector(linear), Vec3::ZERO);
    assert_eq!(l_vector(circular), Vec3::Z);
    for eps in [1e-1, 1e-4, 1e-8] {
        let v = ComplexVec3::new(c(1.0, 0.0), c(0.0, eps), c(0.0, 0.0));
        assert!((l_vector(v).norm() - eps).abs() <= 1e-15 * eps);
    }
}

#[test]
fn time_average_matches_period_quadrature() {
    let mut rng = rng(33);
    let w = 1.3;
    let field = mono_field(&mut rng, 5, w, Helicity::Positive, true);
    let mono = MonochromaticField::from_field(&field).unwrap();
    let scale = field.amplitude_bound().powi(2);
    for _ in 0..20 {
        let r = point(&mut rng, 4.0);
        let n = 1024;
        let p = 2.0 * PI / w;
        let mean = (0..n).map(|j| rs_polarization_scalar(&field, r, j as f64 * p / n as f64)).sum::<Complex64>() / n as f64;
        assert!((mean - time_averaged_scalar(&mono, r)).norm() <= 1e-10 * scale);

        // Phasors recovered from real time samples of E and B.
        let e = phasor_from_time_samples(|q, t| field.eval_eb(q, t).0, w, r).unwrap();
        let b = phasor_from_time_samples(|q, t| field.eval_eb(q, t).1, w, r).unwrap();
        assert!((time_averaged_scalar_from_phasors(e, b) - time_averaged_scalar(&mono, r)).norm() <= 1e-12 * scale);
    }
}

#[test]
fn time_average_vanishes_for_definite_helicity() {
    let mut rng = rng(34);
    for h in [Helicity::Positive, Helicity::Negative] {
        let mono = MonochromaticField::from_field(&mono_field(&mut rng, 3, 1.0, h, false)).unwrap();
        assert_eq!(time_averaged_scalar(&mono, point(&mut rng, 2.0)), c(0.0, 0.0));
    }
}

#[test]
fn psi_oscillates_at_twice_the_frequency() {
    let mut rng = rng(35);
    let field = mono_field(&mut rng, 6, 0.8, Helicity::Negative, true);
    let mono = MonochromaticField::from_field(&field).unwrap();
    for _ in 0..20 {
        let r = point(&mut rng, 5.0);
        let (pos, neg) = mono.spatial_phasors(r);
        let expected = [neg.dot(neg), pos.dot(neg) * 2.0, pos.dot(pos)];
        let got = psi_harmonics(&mono, r, 64).unwrap();
        let scale = expected.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).norm() <= 1e-8 * scale, "{g} vs {e}");
        }
    }
}

#[test]
fn quarter_period_lag() {
    let mut rng = rng(36);
    for (h, lag) in [(Helicity::Positive, -0.25), (Helicity::Negative, 0.25)] {
        let field = mono_field(&mut rng, 4, 1.1, h, false);
        let mono = MonochromaticField::from_field(&field).unwrap();
        let scale = field.amplitude_bound();
        for _ in 0..100 {
            let r = point(&mut rng, 5.0);
            let t = rng.gen_range(-5.0..5.0);
            let e = field.eval_eb(r, t).0;
            let b = field.eval_eb(r, t + lag * mono.period()).1;
            assert!((e - b).norm() <= 1e-10 * scale);
        }
    }
}

#[test]
fn plane_wave_phase_relation_is_all_zero() {
    let mut rng = rng(37);
    let field = FieldSuperposition::new(vec![mode(&mut rng, 1.0, Helicity::Positive)]).unwrap();
    let mono = MonochromaticField::from_field(&field).unwrap();
    let rel = coincidence_phase_relation(&mono, point(&mut rng, 2.0), 0.3).unwrap();
    for v in [rel.psi, rel.psi_electric, rel.psi_magnetic] {
        assert!(v.norm() < 1e-15);
    }
}

#[test]
fn phase_relation_rejects_mixed_helicity() {
    let mut rng = rng(38);
    let mono = MonochromaticField::from_field(&mono_field(&mut rng, 2, 1.0, Helicity::Positive, true)).unwrap();
    assert_eq!(coincidence_phase_relation(&mono, Vec3::ZERO, 0.0), Err(Error::MixedHelicity));
}
