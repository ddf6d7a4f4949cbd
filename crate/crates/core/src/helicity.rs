//! Helicity decomposition `F = F₊ + F₋` and the helicity operator `S`.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fields::FieldSuperposition;
use crate::vector::{ComplexVec3, Vec3};

/// Positive- and negative-helicity parts of a field.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HelicityPair {
    pub positive: FieldSuperposition,
    pub negative: FieldSuperposition,
}

impl HelicityPair {
    /// `positive` followed by `negative`.
    pub fn recombine(&self) -> FieldSuperposition {
        self.positive.concat(&self.negative)
    }
}

/// Partitions modes by the sign of `ω`, preserving their relative order.
pub fn split_by_helicity(field: &FieldSuperposition) -> HelicityPair {
    let (pos, neg): (alloc::vec::Vec<_>, alloc::vec::Vec<_>) =
        field.modes().iter().partition(|m| m.omega() > 0.0);
    HelicityPair {
        positive: FieldSuperposition::from_modes_unchecked(pos),
        negative: FieldSuperposition::from_modes_unchecked(neg),
    }
}

/// `S F_ω = sgn(ω) F_ω`: negates every negative-frequency amplitude.
pub fn apply_helicity_operator(field: &FieldSuperposition) -> FieldSuperposition {
    field.map_modes(|m| {
        if m.omega() < 0.0 {
            m.with_amplitude(-m.amplitude())
        } else {
            *m
        }
    })
}

/// `(i/π)·PV∫ F(r, t′)/(t′ − t) dt′` over `t′ ∈ [t − window/2, t + window/2]`.
///
/// Uses the trapezoid rule on `n_samples` uniform intervals placed
/// symmetrically about `t`; the singular sample `t′ = t` is omitted so the
/// odd part of the kernel cancels pairwise. With `θ = |ω|·window/n_samples`
/// the omitted sample leaves a bias of about `θ/π`, and truncation to a
/// window holding `m` full periods on each side leaves about `1/(π²m)`.
pub fn numeric_hilbert(
    field: &FieldSuperposition,
    r: Vec3,
    t: f64,
    window: f64,
    n_samples: usize,
) -> Result<ComplexVec3> {
    if !(window > 0.0) || !window.is_finite() {
        return Err(Error::NonPositive("window"));
    }
    if n_samples < 2 || n_samples % 2 != 0 {
        return Err(Error::InvalidSampleCount(n_samples));
    }
    let half = n_samples / 2;
    let dt = window / n_samples as f64;
    let mut acc = ComplexVec3::ZERO;
    for j in 1..=half {
        let tau = j as f64 * dt;
        let weight = if j == half { 0.5 } else { 1.0 };
        let diff = field.eval_f(r, t + tau) - field.eval_f(r, t - tau);
        acc += diff * (weight / j as f64);
    }
    // Δ·Σ (F(t+τ) − F(t−τ))/τ with τ = jΔ reduces to Σ (…)/j.
    Ok(acc.scale(Complex64::new(0.0, 1.0 / core::f64::consts::PI)))
}
