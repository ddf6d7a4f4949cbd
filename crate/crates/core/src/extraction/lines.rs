//! L-lines: curves where the electric phasor `P + iQ` has `P × Q = 0`.
//!
//! `P × Q = 0` is three equations of rank two, so the two components of
//! `V = P × Q` with the widest range over the grid are traced with the
//! two-scalar kernel. The result also contains curves where `V` is merely
//! parallel to the third axis; each traced point is therefore pulled onto
//! `V = 0` by a few damped Gauss–Newton steps (never farther than one cell)
//! and kept only if the third component then vanishes to the validation
//! threshold.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use super::kernel::{check_degeneracy, extract_zero_curves_with, finish_curves};
use super::{sample_vector_grid, CurveSet, ExtractOptions, GridSpec, Polyline};
use crate::error::Result;
use crate::fields::MonochromaticField;
use crate::scalars::l_field;
use crate::vector::{cis, ComplexVec3, Vec3};

const I: Complex64 = Complex64::new(0.0, 1.0);
const MAX_PROJECTION_STEPS: usize = 24;

/// Extracted L-lines with validation bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct LLineExtraction {
    pub curves: CurveSet,
    /// Components of `V` used as the two traced scalars.
    pub components: [usize; 2],
    /// Traced points rejected by validation.
    pub discarded: usize,
    /// Points kept.
    pub kept: usize,
    /// `max |V|` over the grid.
    pub max_norm: f64,
    /// Absolute bound applied to the third component.
    pub validation_bound: f64,
}

pub fn extract_l_lines(mono: &MonochromaticField, spec: &GridSpec) -> Result<LLineExtraction> {
    extract_l_lines_with(mono, spec, &ExtractOptions::default())
}

pub fn extract_l_lines_with(
    mono: &MonochromaticField,
    spec: &GridSpec,
    opts: &ExtractOptions,
) -> Result<LLineExtraction> {
    let grid = sample_vector_grid(spec, |p| l_field(mono, p));
    // |P × Q| ≤ |E_ω|², bounded by the squared sum of mode amplitudes.
    let reference = mono.amplitude_bound().powi(2);
    check_degeneracy(grid.values().iter().map(|v| v.norm()), reference, opts)?;
    let max_norm = grid.max_norm();

    let mut axes = [0usize, 1, 2];
    let ranges = [0, 1, 2].map(|a| grid.component_range(a));
    axes.sort_by(|&a, &b| ranges[b].total_cmp(&ranges[a]).then(a.cmp(&b)));
    let mut components = [axes[0], axes[1]];
    components.sort_unstable();
    let third = axes[2];

    let traced = extract_zero_curves_with(&grid.component_pair(components[0], components[1]), opts)?;
    let bound = opts.validation_threshold * max_norm;
    let h = spec.max_spacing();

    let mut kept = 0;
    let mut discarded = 0;
    let mut pieces = Vec::new();
    for curve in &traced.curves {
        let projected: Vec<Option<Vec3>> = curve
            .points
            .iter()
            .map(|&p| project_to_l_line(mono, p, h).filter(|q| l_field(mono, *q)[third].abs() <= bound))
            .collect();
        let valid = projected.iter().filter(|p| p.is_some()).count();
        kept += valid;
        discarded += projected.len() - valid;
        if curve.closed && valid == projected.len() {
            pieces.push(Polyline::closed(projected.into_iter().flatten().collect()));
            continue;
        }
        let mut runs: Vec<Vec<Vec3>> = Vec::new();
        let mut current = Vec::new();
        for p in projected.iter() {
            match p {
                Some(q) => current.push(*q),
                None if !current.is_empty() => runs.push(core::mem::take(&mut current)),
                None => {}
            }
        }
        if !current.is_empty() {
            runs.push(current);
        }
        // A broken closed curve wraps: its last run continues into its first.
        if curve.closed && runs.len() > 1 && projected[0].is_some() && projected[projected.len() - 1].is_some() {
            let mut last = runs.pop().expect("two runs");
            last.extend_from_slice(&runs[0]);
            runs[0] = last;
        }
        pieces.extend(runs.into_iter().map(Polyline::open));
    }

    Ok(LLineExtraction {
        curves: finish_curves(pieces, opts.link_tolerance * h),
        components,
        discarded,
        kept,
        max_norm,
        validation_bound: bound,
    })
}

/// `V = P × Q` and its Jacobian `J[r][c] = ∂V_r/∂x_c` at `r`.
fn l_field_and_jacobian(mono: &MonochromaticField, r: Vec3) -> (Vec3, [[f64; 3]; 3]) {
    let mut e = ComplexVec3::ZERO;
    let mut de = [ComplexVec3::ZERO; 3];
    for m in mono.pos_modes() {
        let term = m.amplitude().scale(cis(m.k().dot(r)));
        e += term;
        for (axis, d) in de.iter_mut().enumerate() {
            *d += term.scale(I * m.k()[axis]);
        }
    }
    for m in mono.neg_modes() {
        let term = m.amplitude().conj().scale(cis(-m.k().dot(r)));
        e += term;
        for (axis, d) in de.iter_mut().enumerate() {
            *d += term.scale(-I * m.k()[axis]);
        }
    }
    let (p, q) = (e.re(), e.im());
    let mut jac = [[0.0; 3]; 3];
    for (c, d) in de.iter().enumerate() {
        let col = d.re().cross(q) + p.cross(d.im());
        for (row, value) in jac.iter_mut().zip(col.to_array()) {
            row[c] = value;
        }
    }
    (p.cross(q), jac)
}

/// Minimum-norm Gauss–Newton projection onto `V = 0`, staying within
/// `max_move` of the start.
fn project_to_l_line(mono: &MonochromaticField, start: Vec3, max_move: f64) -> Option<Vec3> {
    let mut p = start;
    let mut best = (start, f64::INFINITY);
    for _ in 0..MAX_PROJECTION_STEPS {
        let (v, j) = l_field_and_jacobian(mono, p);
        let norm = v.norm();
        if !(norm < best.1) {
            break;
        }
        let stalled = norm > 0.999 * best.1;
        best = (p, norm);
        if norm == 0.0 || stalled {
            break;
        }
        // δ = −Jᵀ(JJᵀ + μI)⁻¹V
        let mut a = [[0.0; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                a[r][c] = (0..3).map(|k| j[r][k] * j[c][k]).sum();
            }
        }
        let trace = a[0][0] + a[1][1] + a[2][2];
        if !(trace > 0.0) {
            break;
        }
        let mu = 1e-12 * trace;
        for (r, row) in a.iter_mut().enumerate() {
            row[r] += mu;
        }
        let Some(y) = solve3(&a, v.to_array()) else { break };
        let step = Vec3::new(
            -(j[0][0] * y[0] + j[1][0] * y[1] + j[2][0] * y[2]),
            -(j[0][1] * y[0] + j[1][1] * y[1] + j[2][1] * y[2]),
            -(j[0][2] * y[0] + j[1][2] * y[1] + j[2][2] * y[2]),
        );
        p += step;
        if p.distance(start) > max_move || !p.is_finite() {
            return None;
        }
    }
    Some(best.0)
}

fn solve3(a: &[[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det3 = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let det = det3(a);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let mut x = [0.0; 3];
    for (col, xc) in x.iter_mut().enumerate() {
        let mut m = *a;
        for row in 0..3 {
            m[row][col] = b[row];
        }
        *xc = det3(&m) / det;
    }
    Some(x)
}
