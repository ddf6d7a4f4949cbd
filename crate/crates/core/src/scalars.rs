//! Polarization scalars and the L-line field.
//!
//! All squares here are unconjugated bilinear products. Conjugation enters
//! only through the phasor reconstruction `E_ω = F_ω + F̄_{−ω}`,
//! `iB_ω = F_ω − F̄_{−ω}` and through the L-field `P × Q`.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fields::{FieldSuperposition, Helicity, MonochromaticField};
use crate::vector::{cis, ComplexVec3, Vec3};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `ψ(r, t) = F(r, t)·F(r, t)`.
pub fn rs_polarization_scalar(field: &FieldSuperposition, r: Vec3, t: f64) -> Complex64 {
    let f = field.eval_f(r, t);
    f.dot(f)
}

/// Electric phasor `E_ω(r) = F_ω(r) + F̄_{−ω}(r)`; its real and imaginary
/// parts are the ellipse vectors `P`, `Q`.
pub fn electric_phasor(mono: &MonochromaticField, r: Vec3) -> ComplexVec3 {
    let (pos, neg) = mono.spatial_phasors(r);
    pos + neg.conj()
}

/// Magnetic phasor `B_ω(r) = −i(F_ω(r) − F̄_{−ω}(r))`.
pub fn magnetic_phasor(mono: &MonochromaticField, r: Vec3) -> ComplexVec3 {
    let (pos, neg) = mono.spatial_phasors(r);
    (pos - neg.conj()).scale(-I)
}

/// `Ψ = phasor·phasor`; vanishes where the polarization is circular.
pub fn c_scalar(phasor: ComplexVec3) -> Complex64 {
    phasor.dot(phasor)
}

/// `Ψ_E(r) = E_ω(r)²`.
pub fn electric_c_scalar(mono: &MonochromaticField, r: Vec3) -> Complex64 {
    c_scalar(electric_phasor(mono, r))
}

/// `Ψ_B(r) = B_ω(r)²`.
pub fn magnetic_c_scalar(mono: &MonochromaticField, r: Vec3) -> Complex64 {
    c_scalar(magnetic_phasor(mono, r))
}

/// `P × Q` for the phasor `P + iQ`; vanishes where the polarization is
/// linear.
pub fn l_vector(phasor: ComplexVec3) -> Vec3 {
    phasor.re().cross(phasor.im())
}

/// L-line field `P × Q` of the electric phasor at `r`.
pub fn l_field(mono: &MonochromaticField, r: Vec3) -> Vec3 {
    l_vector(electric_phasor(mono, r))
}

/// Time average of `ψ` over one period: `2 F_ω(r)·F_{−ω}(r)`.
pub fn time_averaged_scalar(mono: &MonochromaticField, r: Vec3) -> Complex64 {
    let (pos, neg) = mono.spatial_phasors(r);
    pos.dot(neg) * 2.0
}

/// The same average written through the positive-frequency parts,
/// `½(E₊ + iB₊)·(Ē₊ + iB̄₊)`, evaluated from the phasors at `t = 0`.
pub fn time_averaged_scalar_from_phasors(e: ComplexVec3, b: ComplexVec3) -> Complex64 {
    let lhs = e + b.scale(I);
    let rhs = e.conj() + b.conj().scale(I);
    lhs.dot(rhs) * 0.5
}

/// Fourier coefficients of `ψ(r, ·)` over one period at frequencies
/// `−2ω, 0, +2ω` (convention `ψ = Σ c_ν e^{−iνt}`), from `n_samples`
/// uniform samples. For a monochromatic field these are
/// `F_{−ω}², 2F_ω·F_{−ω}, F_ω²`.
pub fn psi_harmonics(mono: &MonochromaticField, r: Vec3, n_samples: usize) -> Result<[Complex64; 3]> {
    if n_samples < 5 {
        return Err(Error::InvalidSampleCount(n_samples));
    }
    let field = mono.to_field();
    let w = mono.omega_abs();
    let dt = mono.period() / n_samples as f64;
    let mut coeffs = [Complex64::new(0.0, 0.0); 3];
    for n in 0..n_samples {
        let t = n as f64 * dt;
        let psi = rs_polarization_scalar(&field, r, t);
        for (c, nu) in coeffs.iter_mut().zip([-2.0 * w, 0.0, 2.0 * w]) {
            *c += psi * cis(nu * t);
        }
    }
    Ok(coeffs.map(|c| c / n_samples as f64))
}

/// Residuals of the coincidence relation between `ψ`, `Ψ_E` and `Ψ_B` for a
/// definite-helicity monochromatic field.
///
/// For `ω > 0`: `ψ·e^{2iωt} = Ψ_E = −Ψ_B`. For `ω < 0` the phasors carry the
/// conjugate amplitudes, so the mirrored relation `ψ·e^{−2iωt} = Ψ̄_E = −Ψ̄_B`
/// is checked (`ω` here is `|ω|`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseRelation {
    pub helicity: Helicity,
    pub psi: Complex64,
    pub psi_electric: Complex64,
    pub psi_magnetic: Complex64,
    /// `|ψ·e^{±2iωt} − Ψ_E|` (conjugated for negative helicity).
    pub electric_residual: f64,
    /// `|ψ·e^{±2iωt} + Ψ_B|` (conjugated for negative helicity).
    pub magnetic_residual: f64,
}

pub fn coincidence_phase_relation(mono: &MonochromaticField, r: Vec3, t: f64) -> Result<PhaseRelation> {
    let helicity = mono.definite_helicity().ok_or(Error::MixedHelicity)?;
    let psi = rs_polarization_scalar(&mono.to_field(), r, t);
    let psi_e = electric_c_scalar(mono, r);
    let psi_b = magnetic_c_scalar(mono, r);
    let w = mono.omega_abs();
    let (rotated, target_e, target_b) = match helicity {
        Helicity::Positive => (psi * cis(2.0 * w * t), psi_e, psi_b),
        Helicity::Negative => (psi * cis(-2.0 * w * t), psi_e.conj(), psi_b.conj()),
    };
    Ok(PhaseRelation {
        helicity,
        psi,
        psi_electric: psi_e,
        psi_magnetic: psi_b,
        electric_residual: (rotated - target_e).norm(),
        magnetic_residual: (rotated + target_b).norm(),
    })
}
