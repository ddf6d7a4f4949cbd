//! Duality rotations and Lorentz boosts of RS fields.
//!
//! A boost acts on `F` as the complex 3×3 matrix
//! `F′ = γ(F − iβ×F) − γ²/(γ+1)·β(β·F)`, which is complex-orthogonal, so
//! `F′·F′ = F·F`. Wavevectors and spacetime points transform with the usual
//! vector boost, keeping every phase `k·r − ωt` invariant.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fields::{FieldSuperposition, PlaneWaveMode};
use crate::vector::{cis, ComplexVec3, Vec3};

/// Frame velocity `β` with `|β| < 1` (c = 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoostSpec {
    beta: Vec3,
    gamma: f64,
}

impl BoostSpec {
    pub fn new(beta: Vec3) -> Result<Self> {
        let speed = beta.norm();
        if !beta.is_finite() || speed >= 1.0 {
            return Err(Error::Superluminal(speed));
        }
        Ok(Self {
            beta,
            gamma: 1.0 / (1.0 - speed * speed).sqrt(),
        })
    }

    pub fn beta(&self) -> Vec3 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn speed(&self) -> f64 {
        self.beta.norm()
    }

    /// Boost with the opposite velocity.
    pub fn inverse(&self) -> Self {
        Self {
            beta: -self.beta,
            gamma: self.gamma,
        }
    }

    /// Applies the boost to a 4-vector `(time, space)`:
    /// `t′ = γ(t − β·x)`, `x′ = x + (γ−1)(β̂·x)β̂ − γβt`.
    fn boost_four_vector(&self, time: f64, space: Vec3) -> (f64, Vec3) {
        let speed2 = self.beta.norm_squared();
        let bx = self.beta.dot(space);
        // (γ−1)/β² = γ²/(γ+1), finite as β → 0.
        let coef = self.gamma * self.gamma / (self.gamma + 1.0);
        let t_new = self.gamma * (time - bx);
        let x_new = if speed2 == 0.0 {
            space
        } else {
            space + self.beta * (coef * bx) - self.beta * (self.gamma * time)
        };
        (t_new, x_new)
    }

    /// Complex-linear action on an RS vector.
    pub fn apply_to_rs(&self, f: ComplexVec3) -> ComplexVec3 {
        let coef = self.gamma * self.gamma / (self.gamma + 1.0);
        let beta_c = ComplexVec3::from_real(self.beta);
        let bxf = f.cross_real_left(self.beta);
        (f - bxf.scale(Complex64::new(0.0, 1.0))) * self.gamma - beta_c.scale(f.dot_real(self.beta) * coef)
    }
}

/// Multiplies every amplitude by `e^{iχ}`; `χ = π/2` maps `(E, B)` to
/// `(−B, E)`.
pub fn duality_rotate(field: &FieldSuperposition, chi: f64) -> FieldSuperposition {
    let phase = cis(chi);
    field.map_modes(|m| m.with_amplitude(m.amplitude().scale(phase)))
}

/// The mode as seen in the frame moving with velocity `β`.
pub fn boost_mode(mode: &PlaneWaveMode, boost: &BoostSpec) -> PlaneWaveMode {
    let (omega, k) = boost.boost_four_vector(mode.omega(), mode.k());
    PlaneWaveMode::new_unchecked(k, omega, boost.apply_to_rs(mode.amplitude()))
}

pub fn boost_field(field: &FieldSuperposition, boost: &BoostSpec) -> FieldSuperposition {
    field.map_modes(|m| boost_mode(m, boost))
}

/// Coordinates `(r′, t′)` in the moving frame of the event `(r, t)`.
pub fn boost_point(r: Vec3, t: f64, boost: &BoostSpec) -> (Vec3, f64) {
    let (t_new, r_new) = boost.boost_four_vector(t, r);
    (r_new, t_new)
}
