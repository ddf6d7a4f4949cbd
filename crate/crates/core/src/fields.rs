//! Plane-wave mode model of the Riemann–Silberstein field `F = E + iB`.
//!
//! A field is a finite sum of modes `f·exp(i(k·r − ωt))` with `ω = ±|k|`.
//! The sign of `ω` is the helicity of the mode. Units have `c = 1`.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::error::{Error, ModeDefect, Result};
use crate::vector::{cis, ComplexVec3, Vec3};

/// Relative tolerance for the mode invariants (dispersion, transversality,
/// helicity eigen-condition).
pub const MODE_TOLERANCE: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Sign of the frequency of a mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Helicity {
    Positive,
    Negative,
}

impl Helicity {
    pub fn sign(self) -> f64 {
        match self {
            Self::Positive => 1.0,
            Self::Negative => -1.0,
        }
    }

    pub fn of_frequency(omega: f64) -> Option<Self> {
        if omega > 0.0 {
            Some(Self::Positive)
        } else if omega < 0.0 {
            Some(Self::Negative)
        } else {
            None
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Self::Positive => Self::Negative,
            Self::Negative => Self::Positive,
        }
    }
}

impl TryFrom<i8> for Helicity {
    type Error = Error;

    fn try_from(value: i8) -> Result<Self> {
        match value {
            1 => Ok(Self::Positive),
            -1 => Ok(Self::Negative),
            other => Err(Error::InvalidHelicity(other)),
        }
    }
}

impl From<Helicity> for i8 {
    fn from(h: Helicity) -> i8 {
        match h {
            Helicity::Positive => 1,
            Helicity::Negative => -1,
        }
    }
}

/// Deterministic right-handed orthonormal pair `(e₁, e₂)` transverse to `k̂`.
///
/// The seed axis is the standard basis vector with the smallest `|k̂ᵢ|`
/// (ties go to x, then y, then z); `e₁` is its component orthogonal to `k̂`,
/// normalized, and `e₂ = k̂ × e₁`.
pub fn transverse_triad(k_hat: Vec3) -> (Vec3, Vec3) {
    let comps = [k_hat.x.abs(), k_hat.y.abs(), k_hat.z.abs()];
    let mut axis = 0;
    for (i, c) in comps.iter().enumerate().skip(1) {
        if *c < comps[axis] {
            axis = i;
        }
    }
    let seed = [Vec3::X, Vec3::Y, Vec3::Z][axis];
    let e1 = (seed - k_hat * seed.dot(k_hat)).normalize();
    let e2 = k_hat.cross(e1);
    (e1, e2)
}

/// Unit circular polarization vector `(e₁ + i·s·e₂)/√2` for direction `k`.
pub fn circular_polarization(k: Vec3, helicity: Helicity) -> Result<ComplexVec3> {
    let norm = k.norm();
    if !(norm > 0.0) || !k.is_finite() {
        return Err(Error::ZeroWavevector);
    }
    let (e1, e2) = transverse_triad(k / norm);
    Ok(ComplexVec3::from_parts(e1, e2 * helicity.sign()) / core::f64::consts::SQRT_2)
}

/// One plane-wave mode `f·exp(i(k·r − ωt))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWaveMode {
    k: Vec3,
    omega: f64,
    f: ComplexVec3,
}

impl PlaneWaveMode {
    /// Checked constructor; rejects modes that break any invariant.
    pub fn new(k: Vec3, omega: f64, f: ComplexVec3) -> Result<Self> {
        let mode = Self::new_unchecked(k, omega, f);
        match mode.defect() {
            None => Ok(mode),
            Some(reason) => Err(Error::InvalidMode { index: 0, reason }),
        }
    }

    /// Builds a mode without validation, e.g. to probe residual checks with a
    /// deliberately corrupted amplitude.
    pub const fn new_unchecked(k: Vec3, omega: f64, f: ComplexVec3) -> Self {
        Self { k, omega, f }
    }

    pub fn k(&self) -> Vec3 {
        self.k
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn amplitude(&self) -> ComplexVec3 {
        self.f
    }

    pub fn helicity(&self) -> Option<Helicity> {
        Helicity::of_frequency(self.omega)
    }

    /// Copy with the amplitude replaced.
    pub fn with_amplitude(&self, f: ComplexVec3) -> Self {
        Self { f, ..*self }
    }

    /// Phase `k·r − ωt`.
    pub fn phase(&self, r: Vec3, t: f64) -> f64 {
        self.k.dot(r) - self.omega * t
    }

    pub fn eval(&self, r: Vec3, t: f64) -> ComplexVec3 {
        self.f.scale(cis(self.phase(r, t)))
    }

    /// Spatial factor `f·exp(ik·r)`.
    pub fn eval_spatial(&self, r: Vec3) -> ComplexVec3 {
        self.f.scale(cis(self.k.dot(r)))
    }

    /// First broken invariant, if any. A zero amplitude is a valid mode.
    pub fn defect(&self) -> Option<ModeDefect> {
        let k_norm = self.k.norm();
        let f_norm = self.f.norm();
        if !self.k.is_finite() || !self.omega.is_finite() || !self.f.is_finite() {
            return Some(ModeDefect::NonFinite);
        }
        if (self.omega.abs() - k_norm).abs() > MODE_TOLERANCE * k_norm {
            return Some(ModeDefect::Dispersion);
        }
        let scale = MODE_TOLERANCE * k_norm * f_norm;
        if self.f.dot_real(self.k).norm() > scale {
            return Some(ModeDefect::Transversality);
        }
        let lhs = self.f.cross_real_left(self.k).scale(I);
        if (lhs - self.f * self.omega).max_abs() > scale {
            return Some(ModeDefect::Helicity);
        }
        None
    }
}

/// Mode of definite helicity with `ω = s·|k|` and `f = a·(e₁ + i s e₂)/√2`.
pub fn make_helicity_mode(k: Vec3, helicity: Helicity, amplitude: Complex64) -> Result<PlaneWaveMode> {
    let pol = circular_polarization(k, helicity)?;
    Ok(PlaneWaveMode::new_unchecked(k, helicity.sign() * k.norm(), pol.scale(amplitude)))
}

/// Finite superposition of plane-wave modes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FieldSuperposition {
    modes: Vec<PlaneWaveMode>,
}

impl FieldSuperposition {
    /// Validates every mode and rejects zero-frequency modes.
    pub fn new(modes: Vec<PlaneWaveMode>) -> Result<Self> {
        for (index, mode) in modes.iter().enumerate() {
            if mode.omega == 0.0 {
                return Err(Error::ZeroFrequency { index });
            }
            if let Some(reason) = mode.defect() {
                return Err(Error::InvalidMode { index, reason });
            }
        }
        Ok(Self { modes })
    }

    pub fn from_modes_unchecked(modes: Vec<PlaneWaveMode>) -> Self {
        Self { modes }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn modes(&self) -> &[PlaneWaveMode] {
        &self.modes
    }

    pub fn into_modes(self) -> Vec<PlaneWaveMode> {
        self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Mode list of `self` followed by that of `other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        Self { modes }
    }

    /// Applies `map` to every mode.
    pub fn map_modes(&self, map: impl Fn(&PlaneWaveMode) -> PlaneWaveMode) -> Self {
        Self {
            modes: self.modes.iter().map(map).collect(),
        }
    }

    /// Index and defect of the first invalid mode.
    pub fn first_defect(&self) -> Option<(usize, ModeDefect)> {
        self.modes
            .iter()
            .enumerate()
            .find_map(|(i, m)| m.defect().map(|d| (i, d)))
    }

    /// `F(r, t) = Σ f·exp(i(k·r − ωt))`.
    pub fn eval_f(&self, r: Vec3, t: f64) -> ComplexVec3 {
        self.modes
            .iter()
            .fold(ComplexVec3::ZERO, |acc, m| acc + m.eval(r, t))
    }

    /// Positive- and negative-frequency parts `(F₊, F₋)` at `(r, t)`.
    pub fn eval_split(&self, r: Vec3, t: f64) -> (ComplexVec3, ComplexVec3) {
        let mut pos = ComplexVec3::ZERO;
        let mut neg = ComplexVec3::ZERO;
        for m in &self.modes {
            if m.omega > 0.0 {
                pos += m.eval(r, t);
            } else {
                neg += m.eval(r, t);
            }
        }
        (pos, neg)
    }

    /// Real fields `(E, B)` from `E₊ = F₊ + F̄₋`, `iB₊ = F₊ − F̄₋`,
    /// `E = Re E₊`, `B = Re B₊`.
    pub fn eval_eb(&self, r: Vec3, t: f64) -> (Vec3, Vec3) {
        let (pos, neg) = self.eval_split(r, t);
        let e_plus = pos + neg.conj();
        let b_plus = (pos - neg.conj()).scale(-I);
        (e_plus.re(), b_plus.re())
    }

    /// Largest `|ω|` over the modes, or 0 for an empty field.
    pub fn max_frequency(&self) -> f64 {
        self.modes.iter().map(|m| m.omega.abs()).fold(0.0, f64::max)
    }

    /// Smallest `|ω|` over the modes, or 0 for an empty field.
    pub fn min_frequency(&self) -> f64 {
        self.modes
            .iter()
            .map(|m| m.omega.abs())
            .reduce(f64::min)
            .unwrap_or(0.0)
    }

    /// `Σ|f|`, an upper bound on `|F|` anywhere.
    pub fn amplitude_bound(&self) -> f64 {
        self.modes.iter().map(|m| m.f.norm()).sum()
    }
}

/// Field whose modes share a single `|ω|`, split by frequency sign.
#[derive(Clone, Debug, PartialEq)]
pub struct MonochromaticField {
    omega_abs: f64,
    pos_modes: Vec<PlaneWaveMode>,
    neg_modes: Vec<PlaneWaveMode>,
}

impl MonochromaticField {
    /// Groups the modes of `field`; all `|ω|` must agree to
    /// [`MODE_TOLERANCE`] relative.
    pub fn from_field(field: &FieldSuperposition) -> Result<Self> {
        let first = field.modes.first().ok_or(Error::EmptyField)?;
        let omega_abs = first.omega.abs();
        let mut pos_modes = Vec::new();
        let mut neg_modes = Vec::new();
        for (index, m) in field.modes.iter().enumerate() {
            if m.omega == 0.0 {
                return Err(Error::ZeroFrequency { index });
            }
            if (m.omega.abs() - omega_abs).abs() > MODE_TOLERANCE * omega_abs {
                return Err(Error::NotMonochromatic {
                    expected: omega_abs,
                    found: m.omega.abs(),
                });
            }
            if m.omega > 0.0 {
                pos_modes.push(*m);
            } else {
                neg_modes.push(*m);
            }
        }
        Ok(Self {
            omega_abs,
            pos_modes,
            neg_modes,
        })
    }

    pub fn omega_abs(&self) -> f64 {
        self.omega_abs
    }

    pub fn period(&self) -> f64 {
        core::f64::consts::TAU / self.omega_abs
    }

    pub fn pos_modes(&self) -> &[PlaneWaveMode] {
        &self.pos_modes
    }

    pub fn neg_modes(&self) -> &[PlaneWaveMode] {
        &self.neg_modes
    }

    /// `Some` when exactly one helicity is present.
    /// Sum of mode amplitude norms, an upper bound on `|E_ω|` and `|B_ω|`.
    pub fn amplitude_bound(&self) -> f64 {
        self.pos_modes.iter().chain(&self.neg_modes).map(|m| m.f.norm()).sum()
    }

    pub fn definite_helicity(&self) -> Option<Helicity> {
        match (self.pos_modes.is_empty(), self.neg_modes.is_empty()) {
            (false, true) => Some(Helicity::Positive),
            (true, false) => Some(Helicity::Negative),
            _ => None,
        }
    }

    pub fn to_field(&self) -> FieldSuperposition {
        let mut modes = self.pos_modes.clone();
        modes.extend_from_slice(&self.neg_modes);
        FieldSuperposition { modes }
    }

    /// Spatial phasors `(F_ω(r), F_{−ω}(r))` with
    /// `F(r,t) = e^{−iωt}F_ω(r) + e^{iωt}F_{−ω}(r)`.
    pub fn spatial_phasors(&self, r: Vec3) -> (ComplexVec3, ComplexVec3) {
        let sum = |modes: &[PlaneWaveMode]| {
            modes
                .iter()
                .fold(ComplexVec3::ZERO, |acc, m| acc + m.eval_spatial(r))
        };
        (sum(&self.pos_modes), sum(&self.neg_modes))
    }
}

/// Spatial phasor of a real time-harmonic field from two samples a quarter
/// period apart: `E_ω(r) = E(r, 0) + i·E(r, π/(2ω))`.
pub fn phasor_from_time_samples<S>(sampler: S, omega: f64, r: Vec3) -> Result<ComplexVec3>
where
    S: Fn(Vec3, f64) -> Vec3,
{
    if !(omega > 0.0) {
        return Err(Error::NonPositive("omega"));
    }
    let quarter = core::f64::consts::FRAC_PI_2 / omega;
    Ok(ComplexVec3::from_parts(sampler(r, 0.0), sampler(r, quarter)))
}

/// Finite-difference residuals of `div F = 0` and `i∂ₜF = curl F`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxwellResiduals {
    /// `|div F|`.
    pub divergence: f64,
    /// `‖i∂ₜF − curl F‖`.
    pub evolution: f64,
}

impl MaxwellResiduals {
    pub fn max(&self) -> f64 {
        self.divergence.max(self.evolution)
    }
}

/// Central-difference spatial derivatives `∂ⱼF` of a complex vector field.
fn partials<G>(g: &G, r: Vec3, h: f64) -> [ComplexVec3; 3]
where
    G: Fn(Vec3) -> ComplexVec3,
{
    let axes = [Vec3::X, Vec3::Y, Vec3::Z];
    axes.map(|e| (g(r + e * h) - g(r - e * h)) / (2.0 * h))
}

fn div_and_curl(d: &[ComplexVec3; 3]) -> (Complex64, ComplexVec3) {
    let div = d[0].x + d[1].y + d[2].z;
    let curl = ComplexVec3::new(d[1].z - d[2].y, d[2].x - d[0].z, d[0].y - d[1].x);
    (div, curl)
}

/// Maxwell residuals at `(r, t)` with central differences of step `h` in
/// both space and time.
pub fn check_maxwell(field: &FieldSuperposition, r: Vec3, t: f64, h: f64) -> Result<MaxwellResiduals> {
    if !(h > 0.0) {
        return Err(Error::NonPositive("step"));
    }
    let d = partials(&|p| field.eval_f(p, t), r, h);
    let (div, curl) = div_and_curl(&d);
    let dt = (field.eval_f(r, t + h) - field.eval_f(r, t - h)) / (2.0 * h);
    Ok(MaxwellResiduals {
        divergence: div.norm(),
        evolution: (dt.scale(I) - curl).norm(),
    })
}

/// Residual of the Beltrami condition `curl F_{±ω} = ±ω F_{±ω}` for both
/// spatial phasors, with central differences of step `h`. Returns the larger
/// of the two residual norms.
pub fn beltrami_residual(mono: &MonochromaticField, r: Vec3, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::NonPositive("step"));
    }
    let pos = partials(&|p| mono.spatial_phasors(p).0, r, h);
    let neg = partials(&|p| mono.spatial_phasors(p).1, r, h);
    let (fp, fn_) = mono.spatial_phasors(r);
    let w = mono.omega_abs;
    let res_pos = (div_and_curl(&pos).1 - fp * w).norm();
    let res_neg = (div_and_curl(&neg).1 + fn_ * w).norm();
    Ok(res_pos.max(res_neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::{PI, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cv(a: [(f64, f64); 3]) -> ComplexVec3 {
        ComplexVec3::new(c(a[0].0, a[0].1), c(a[1].0, a[1].1), c(a[2].0, a[2].1))
    }

    fn assert_cv_close(a: ComplexVec3, b: ComplexVec3, tol: f64) {
        assert!((a - b).max_abs() <= tol, "{a:?} != {b:?}");
    }

    #[test]
    fn helicity_mode_along_z() {
        let m = make_helicity_mode(Vec3::Z, Helicity::Positive, c(SQRT_2, 0.0)).unwrap();
        assert_eq!(m.omega(), 1.0);
        assert_cv_close(m.amplitude(), cv([(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]), 1e-15);
        let ikxf = m.amplitude().cross_real_left(m.k()).scale(I);
        assert_cv_close(ikxf, m.amplitude(), 1e-15);
        assert!(m.defect().is_none());
    }

    #[test]
    fn helicity_mode_along_x() {
        let m = make_helicity_mode(Vec3::X, Helicity::Positive, c(SQRT_2, 0.0)).unwrap();
        assert_eq!(m.omega(), 1.0);
        assert_cv_close(m.amplitude(), cv([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]), 1e-15);
        let ikxf = m.amplitude().cross_real_left(m.k()).scale(I);
        assert_cv_close(ikxf, m.amplitude() * m.omega(), 1e-15);
    }

    #[test]
    fn negative_helicity_is_conjugate() {
        let m = make_helicity_mode(Vec3::Z, Helicity::Negative, c(SQRT_2, 0.0)).unwrap();
        assert_eq!(m.omega(), -1.0);
        assert_cv_close(m.amplitude(), cv([(1.0, 0.0), (0.0, -1.0), (0.0, 0.0)]), 1e-15);
        assert!(m.defect().is_none());
    }

    #[test]
    fn zero_wavevector_rejected() {
        assert_eq!(
            make_helicity_mode(Vec3::ZERO, Helicity::Positive, c(1.0, 0.0)),
            Err(Error::ZeroWavevector)
        );
    }

    #[test]
    fn triad_is_right_handed_orthonormal() {
        for k in [Vec3::new(0.3, -0.4, 0.2), Vec3::new(-1.0, 1.0, 1.0), Vec3::Y] {
            let kh = k.normalize();
            let (e1, e2) = transverse_triad(kh);
            assert_abs_diff_eq!(e1.norm(), 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(e2.norm(), 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(e1.dot(kh), 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(e1.cross(e2).dot(kh), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn polarization_has_unit_conjugate_norm() {
        let m = make_helicity_mode(Vec3::new(1.0, 2.0, -0.5), Helicity::Negative, c(0.6, -0.8)).unwrap();
        assert_abs_diff_eq!(m.amplitude().norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn eval_single_mode_phases() {
        let m = make_helicity_mode(Vec3::Z, Helicity::Positive, c(SQRT_2, 0.0)).unwrap();
        let field = FieldSuperposition::new(vec![m]).unwrap();
        assert_cv_close(field.eval_f(Vec3::ZERO, 0.0), cv([(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]), 1e-15);
        assert_cv_close(
            field.eval_f(Vec3::new(0.0, 0.0, PI), 0.0),
            cv([(-1.0, 0.0), (0.0, -1.0), (0.0, 0.0)]),
            1e-15,
        );
    }

    #[test]
    fn eval_eb_positive_only_is_re_im() {
        let m = make_helicity_mode(Vec3::new(0.2, 0.7, -0.1), Helicity::Positive, c(0.3, 1.1)).unwrap();
        let field = FieldSuperposition::new(vec![m]).unwrap();
        let r = Vec3::new(0.4, -2.0, 1.3);
        let (e, b) = field.eval_eb(r, 0.7);
        let f = field.eval_f(r, 0.7);
        assert_abs_diff_eq!((e - f.re()).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((b - f.im()).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn eval_eb_zero_amplitude() {
        let m = make_helicity_mode(Vec3::X, Helicity::Negative, c(0.0, 0.0)).unwrap();
        let field = FieldSuperposition::new(vec![m]).unwrap();
        assert_eq!(field.eval_eb(Vec3::new(1.0, 2.0, 3.0), 4.0), (Vec3::ZERO, Vec3::ZERO));
    }

    #[test]
    fn zero_frequency_rejected() {
        let m = PlaneWaveMode::new_unchecked(Vec3::ZERO, 0.0, ComplexVec3::ZERO);
        assert_eq!(FieldSuperposition::new(vec![m]), Err(Error::ZeroFrequency { index: 0 }));
    }

    #[test]
    fn corrupted_mode_rejected() {
        let m = PlaneWaveMode::new_unchecked(Vec3::Z, 1.0, cv([(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]));
        assert!(matches!(
            FieldSuperposition::new(vec![m]),
            Err(Error::InvalidMode { index: 0, reason: ModeDefect::Transversality })
        ));
    }

    #[test]
    fn phasor_of_cosine_sampler() {
        let sampler = |_r: Vec3, t: f64| Vec3::new((2.0 * t).cos(), 0.0, 0.0);
        let p = phasor_from_time_samples(sampler, 2.0, Vec3::ZERO).unwrap();
        assert_cv_close(p, cv([(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]), 1e-15);
        let zero = phasor_from_time_samples(|_, _| Vec3::ZERO, 1.0, Vec3::ZERO).unwrap();
        assert_eq!(zero, ComplexVec3::ZERO);
        assert_eq!(
            phasor_from_time_samples(sampler, 0.0, Vec3::ZERO),
            Err(Error::NonPositive("omega"))
        );
    }

    #[test]
    fn maxwell_residuals_of_zero_field_vanish() {
        let res = check_maxwell(&FieldSuperposition::empty(), Vec3::new(1.0, 2.0, 3.0), 0.5, 1e-3).unwrap();
        assert_eq!(res.max(), 0.0);
        assert!(check_maxwell(&FieldSuperposition::empty(), Vec3::ZERO, 0.0, 0.0).is_err());
    }

    #[test]
    fn monochromatic_grouping() {
        let a = make_helicity_mode(Vec3::X, Helicity::Positive, c(1.0, 0.0)).unwrap();
        let b = make_helicity_mode(Vec3::Y, Helicity::Negative, c(1.0, 0.0)).unwrap();
        let d = make_helicity_mode(Vec3::Y * 2.0, Helicity::Negative, c(1.0, 0.0)).unwrap();
        let mono = MonochromaticField::from_field(&FieldSuperposition::new(vec![a, b]).unwrap()).unwrap();
        assert_eq!(mono.pos_modes().len(), 1);
        assert_eq!(mono.neg_modes().len(), 1);
        assert_eq!(mono.definite_helicity(), None);
        assert!(matches!(
            MonochromaticField::from_field(&FieldSuperposition::new(vec![a, d]).unwrap()),
            Err(Error::NotMonochromatic { .. })
        ));
        assert_eq!(
            MonochromaticField::from_field(&FieldSuperposition::empty()),
            Err(Error::EmptyField)
        );
    }
}
