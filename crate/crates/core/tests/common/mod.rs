#![allow(dead_code)]

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rsvortex_core::{make_helicity_mode, Complex64, FieldSuperposition, Helicity, PlaneWaveMode, Vec3};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn unit_vector(rng: &mut impl Rng) -> Vec3 {
    loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

pub fn complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn point(rng: &mut impl Rng, half: f64) -> Vec3 {
    Vec3::new(rng.gen_range(-half..half), rng.gen_range(-half..half), rng.gen_range(-half..half))
}

pub fn mode(rng: &mut impl Rng, omega_abs: f64, helicity: Helicity) -> PlaneWaveMode {
    make_helicity_mode(unit_vector(rng) * omega_abs, helicity, complex(rng)).unwrap()
}

/// `n` modes at frequency `omega_abs`; helicities alternate when `mixed`.
pub fn mono_field(rng: &mut impl Rng, n: usize, omega_abs: f64, helicity: Helicity, mixed: bool) -> FieldSuperposition {
    let modes = (0..n)
        .map(|i| {
            let h = if mixed && i % 2 == 1 { helicity.flip() } else { helicity };
            mode(rng, omega_abs, h)
        })
        .collect();
    FieldSuperposition::new(modes).unwrap()
}

/// Modes with random directions, frequencies in [0.5, 2) and random helicity.
pub fn broadband_field(rng: &mut impl Rng, n: usize) -> FieldSuperposition {
    let modes = (0..n)
        .map(|_| {
            let h = if rng.gen_bool(0.5) { Helicity::Positive } else { Helicity::Negative };
            let w = rng.gen_range(0.5..2.0);
            mode(rng, w, h)
        })
        .collect();
    FieldSuperposition::new(modes).unwrap()
}

pub fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}
