//! Riemann–Silberstein plane-wave fields, helicity decomposition,
//! polarization scalars and extraction of their singular curves.
//!
//! The crate is `no_std` and needs only `alloc`. The default `parallel`
//! feature fills grids and generates curve segments with rayon.
//!
//! - [`fields`]: plane-wave modes, superpositions, `F`, `E`, `B`, phasors,
//!   Maxwell and Beltrami residuals.
//! - [`helicity`]: the split `F = F₊ + F₋` and the helicity operator.
//! - [`scalars`]: `ψ = F²`, `Ψ_E`, `Ψ_B`, the time average and the L-field.
//! - [`transforms`]: duality rotations and Lorentz boosts.
//! - [`extraction`]: grids, zero-curve and L-line extraction, curve metrics.

#![no_std]

extern crate alloc;

pub mod error;
pub mod extraction;
pub mod fields;
pub mod helicity;
pub mod scalars;
pub mod transforms;
pub mod vector;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use extraction::{
    curve_set_distance, electric_c_grid, extract_l_lines, extract_zero_curves, magnetic_c_grid, psi_grid,
    sample_grid, time_average_grid, CurveDistance, CurveSet, ExtractOptions, GridSpec, LLineExtraction, Polyline,
    ScalarGrid, VectorGrid,
};
pub use fields::{
    make_helicity_mode, FieldSuperposition, Helicity, MonochromaticField, PlaneWaveMode,
};
pub use helicity::{apply_helicity_operator, split_by_helicity, HelicityPair};
pub use transforms::{boost_field, boost_mode, boost_point, duality_rotate, BoostSpec};
pub use vector::{ComplexVec3, Vec3};
