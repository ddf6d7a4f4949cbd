//! Uniform 3D grids, zero-curve extraction and curve-set comparison.
//!
//! The zero set of a complex scalar `ψ` is `{Re ψ = 0} ∩ {Im ψ = 0}`,
//! generically a set of curves. Each grid cell is split into six
//! tetrahedra sharing the cell's main diagonal (Kuhn split); inside a
//! tetrahedron both real fields are linear, so their common zero set is a
//! single segment. Segments are joined across shared faces into polylines.

mod distance;
mod kernel;
mod lines;
mod predicates;

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fields::{FieldSuperposition, MonochromaticField};
use crate::scalars::{electric_c_scalar, magnetic_c_scalar, rs_polarization_scalar, time_averaged_scalar};
use crate::vector::Vec3;

pub use distance::{curve_set_distance, densify, CurveDistance};
pub use kernel::{extract_zero_curves, extract_zero_curves_with};
pub use lines::{extract_l_lines, extract_l_lines_with, LLineExtraction};

/// Box `[lo, hi]` sampled at `n` points per axis, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    lo: Vec3,
    hi: Vec3,
    n: [usize; 3],
}

impl GridSpec {
    pub fn new(lo: Vec3, hi: Vec3, n: [usize; 3]) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidGrid("corners must be finite"));
        }
        if !(hi.x > lo.x && hi.y > lo.y && hi.z > lo.z) {
            return Err(Error::InvalidGrid("hi must exceed lo on every axis"));
        }
        if n.iter().any(|&c| c < 2) {
            return Err(Error::InvalidGrid("need at least 2 samples per axis"));
        }
        if n.iter().any(|&c| c > u32::MAX as usize) {
            return Err(Error::InvalidGrid("too many samples per axis"));
        }
        Ok(Self { lo, hi, n })
    }

    /// Cube `[−half, half]³` with `n` samples per axis.
    pub fn cube(half: f64, n: usize) -> Result<Self> {
        Self::new(Vec3::new(-half, -half, -half), Vec3::new(half, half, half), [n; 3])
    }

    pub fn lo(&self) -> Vec3 {
        self.lo
    }

    pub fn hi(&self) -> Vec3 {
        self.hi
    }

    pub fn counts(&self) -> [usize; 3] {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cell spacing per axis, `(hi − lo)/(n − 1)`.
    pub fn spacing(&self) -> Vec3 {
        Vec3::new(
            (self.hi.x - self.lo.x) / (self.n[0] - 1) as f64,
            (self.hi.y - self.lo.y) / (self.n[1] - 1) as f64,
            (self.hi.z - self.lo.z) / (self.n[2] - 1) as f64,
        )
    }

    /// Largest cell spacing `h`.
    pub fn max_spacing(&self) -> f64 {
        let s = self.spacing();
        s.x.max(s.y).max(s.z)
    }

    /// Row-major index with z fastest.
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n[1] + j) * self.n[2] + k
    }

    pub fn point(&self, i: usize, j: usize, k: usize) -> Vec3 {
        // Interpolate from both ends so the far corner is exactly `hi`.
        let axis = |lo: f64, hi: f64, idx: usize, n: usize| {
            let s = idx as f64 / (n - 1) as f64;
            lo * (1.0 - s) + hi * s
        };
        Vec3::new(
            axis(self.lo.x, self.hi.x, i, self.n[0]),
            axis(self.lo.y, self.hi.y, j, self.n[1]),
            axis(self.lo.z, self.hi.z, k, self.n[2]),
        )
    }

    /// Same grid with the x and y axes exchanged.
    pub fn swap_xy(&self) -> Self {
        let swap = |v: Vec3| Vec3::new(v.y, v.x, v.z);
        Self {
            lo: swap(self.lo),
            hi: swap(self.hi),
            n: [self.n[1], self.n[0], self.n[2]],
        }
    }
}

/// Complex samples on a [`GridSpec`], indexed by [`GridSpec::index`].
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarGrid {
    spec: GridSpec,
    values: Vec<Complex64>,
    reference: f64,
}

impl ScalarGrid {
    pub fn from_values(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::GridSizeMismatch {
                expected: spec.len(),
                found: values.len(),
            });
        }
        Ok(Self { spec, values, reference: 0.0 })
    }

    /// Sets the magnitude the zero test is measured against when it exceeds
    /// `max |value|`. A sampled quantity that should vanish identically is
    /// rounding noise, so its own maximum is no yardstick; pass the natural
    /// scale instead (e.g. `|F|²` for `ψ`).
    pub fn with_reference(mut self, reference: f64) -> Self {
        self.reference = reference;
        self
    }

    pub fn reference(&self) -> f64 {
        self.reference
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.values[self.spec.index(i, j, k)]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Grid with x and y exchanged; the values move with their points.
    pub fn swap_xy(&self) -> Self {
        let spec = self.spec.swap_xy();
        let [nx, ny, nz] = self.spec.n;
        let mut values = alloc::vec![Complex64::new(0.0, 0.0); self.values.len()];
        for i in 0..nx {
            for j in 0..ny {
                for k in 0..nz {
                    values[spec.index(j, i, k)] = self.get(i, j, k);
                }
            }
        }
        Self {
            spec,
            values,
            reference: self.reference,
        }
    }
}

/// Real 3-vector samples on a [`GridSpec`].
#[derive(Clone, Debug, PartialEq)]
pub struct VectorGrid {
    spec: GridSpec,
    values: Vec<Vec3>,
}

impl VectorGrid {
    pub fn from_values(spec: GridSpec, values: Vec<Vec3>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::GridSizeMismatch {
                expected: spec.len(),
                found: values.len(),
            });
        }
        Ok(Self { spec, values })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Vec3] {
        &self.values
    }

    pub fn max_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `min..max` range of one component over the grid.
    pub fn component_range(&self, axis: usize) -> f64 {
        let (lo, hi) = self
            .values
            .iter()
            .map(|v| v[axis])
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| (lo.min(c), hi.max(c)));
        hi - lo
    }

    /// Packs components `a` and `b` as `V_a + i·V_b`.
    pub fn component_pair(&self, a: usize, b: usize) -> ScalarGrid {
        ScalarGrid {
            spec: self.spec,
            values: self.values.iter().map(|v| Complex64::new(v[a], v[b])).collect(),
            reference: 0.0,
        }
    }
}

/// Ordered points of one extracted curve. A closed curve does not repeat its
/// first point at the end.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Polyline {
    pub points: Vec<Vec3>,
    pub closed: bool,
}

impl Polyline {
    pub fn open(points: Vec<Vec3>) -> Self {
        Self { points, closed: false }
    }

    pub fn closed(points: Vec<Vec3>) -> Self {
        Self { points, closed: true }
    }

    /// Segments including the closing one for closed curves.
    pub fn segments(&self) -> impl Iterator<Item = (Vec3, Vec3)> + '_ {
        let n = self.points.len();
        let count = if self.closed && n > 2 { n } else { n.saturating_sub(1) };
        (0..count).map(move |i| (self.points[i], self.points[(i + 1) % n]))
    }

    pub fn length(&self) -> f64 {
        self.segments().map(|(a, b)| a.distance(b)).sum()
    }
}

/// Polylines extracted from one diagnostic; curve ids are vector indices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CurveSet {
    pub curves: Vec<Polyline>,
}

impl CurveSet {
    pub fn new(curves: Vec<Polyline>) -> Self {
        Self { curves }
    }

    pub fn is_empty(&self) -> bool {
        self.curves.iter().all(|c| c.points.is_empty())
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn point_count(&self) -> usize {
        self.curves.iter().map(|c| c.points.len()).sum()
    }

    pub fn points(&self) -> impl Iterator<Item = Vec3> + '_ {
        self.curves.iter().flat_map(|c| c.points.iter().copied())
    }

    pub fn total_length(&self) -> f64 {
        self.curves.iter().map(Polyline::length).sum()
    }

    /// Applies `f` to every point (axis relabelings, translations).
    pub fn map_points(&self, f: impl Fn(Vec3) -> Vec3) -> Self {
        Self {
            curves: self
                .curves
                .iter()
                .map(|c| Polyline {
                    points: c.points.iter().map(|&p| f(p)).collect(),
                    closed: c.closed,
                })
                .collect(),
        }
    }
}

/// Thresholds for the extraction kernels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtractOptions {
    /// A sample counts as zero when `|ψ| < zero_threshold·max|ψ|`.
    pub zero_threshold: f64,
    /// Grids with more than this fraction of zero samples are degenerate.
    pub degenerate_fraction: f64,
    /// Endpoints closer than `link_tolerance·h` are identified.
    pub link_tolerance: f64,
    /// L-line validation: `|third component| ≤ validation_threshold·max|V|`.
    pub validation_threshold: f64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            zero_threshold: 1e-10,
            degenerate_fraction: 0.5,
            link_tolerance: 1e-9,
            validation_threshold: 1e-6,
        }
    }
}

fn for_each_slab<T, F>(count: usize, fill: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let slabs: Vec<Vec<T>> = (0..count).into_par_iter().map(fill).collect();
        slabs.into_iter().flatten().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).flat_map(fill).collect()
    }
}

/// Samples `function(point, t)` at every grid point.
pub fn sample_grid<F>(spec: &GridSpec, t: f64, function: F) -> ScalarGrid
where
    F: Fn(Vec3, f64) -> Complex64 + Sync + Send,
{
    let [_, ny, nz] = spec.n;
    let values = for_each_slab(spec.n[0], |i| {
        let mut slab = Vec::with_capacity(ny * nz);
        for j in 0..ny {
            for k in 0..nz {
                slab.push(function(spec.point(i, j, k), t));
            }
        }
        slab
    });
    ScalarGrid {
        spec: *spec,
        values,
        reference: 0.0,
    }
}

/// Samples a real vector function at every grid point.
pub fn sample_vector_grid<F>(spec: &GridSpec, function: F) -> VectorGrid
where
    F: Fn(Vec3) -> Vec3 + Sync + Send,
{
    let [_, ny, nz] = spec.n;
    let values = for_each_slab(spec.n[0], |i| {
        let mut slab = Vec::with_capacity(ny * nz);
        for j in 0..ny {
            for k in 0..nz {
                slab.push(function(spec.point(i, j, k)));
            }
        }
        slab
    });
    VectorGrid { spec: *spec, values }
}

/// `ψ = F²` at time `t`, referenced to the squared amplitude bound.
pub fn psi_grid(field: &FieldSuperposition, spec: &GridSpec, t: f64) -> ScalarGrid {
    sample_grid(spec, t, |p, t| rs_polarization_scalar(field, p, t)).with_reference(field.amplitude_bound().powi(2))
}

/// `Ψ_E = E_ω²`; its zeros are the electric C-lines.
pub fn electric_c_grid(mono: &MonochromaticField, spec: &GridSpec) -> ScalarGrid {
    sample_grid(spec, 0.0, |p, _| electric_c_scalar(mono, p)).with_reference(mono.amplitude_bound().powi(2))
}

/// `Ψ_B = B_ω²`; its zeros are the magnetic C-lines.
pub fn magnetic_c_grid(mono: &MonochromaticField, spec: &GridSpec) -> ScalarGrid {
    sample_grid(spec, 0.0, |p, _| magnetic_c_scalar(mono, p)).with_reference(mono.amplitude_bound().powi(2))
}

/// Time-averaged `ψ`, `2 F_ω·F_{−ω}`.
pub fn time_average_grid(mono: &MonochromaticField, spec: &GridSpec) -> ScalarGrid {
    sample_grid(spec, 0.0, |p, _| time_averaged_scalar(mono, p)).with_reference(mono.amplitude_bound().powi(2))
}
