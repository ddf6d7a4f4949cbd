//! Machine-readable verification reports.

use std::collections::BTreeMap;

use rsvortex_core::GridSpec;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The diagnostic vanishes on a region, not along curves.
    Degenerate,
    /// The check does not apply to this field.
    Skipped,
}

/// Grid used by a check, recorded for reproducibility.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub n: [usize; 3],
    pub h: f64,
}

impl From<&GridSpec> for GridParams {
    fn from(spec: &GridSpec) -> Self {
        Self {
            lo: spec.lo().to_array(),
            hi: spec.hi().to_array(),
            n: spec.counts(),
            h: spec.max_spacing(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// Named residuals; the check compares the largest relevant one to `tolerance`.
    pub residuals: BTreeMap<String, f64>,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridParams>,
    pub wall_time_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Acceptance thresholds. Relative tolerances are measured against `A` or
/// `A²`, where `A` is the sum of mode amplitude norms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Mode invariants, relative.
    pub mode: f64,
    /// `|ψ|` of each mode alone, relative to `|f|²`.
    pub plane_wave: f64,
    /// Minimum observed convergence order of finite-difference residuals.
    pub fd_order: f64,
    /// `ψ e^{2iωt}` against `Ψ_E` and `−Ψ_B`, relative to `A²`.
    pub phase: f64,
    /// `E(t)` against `B(t ∓ p/4)`, relative to `A`.
    pub lag: f64,
    /// Period-Fourier coefficients of `ψ`, relative to `A²`.
    pub harmonics: f64,
    /// Period average of `ψ`, relative to `A²`.
    pub time_average: f64,
    /// Boosted `ψ` at boosted points, relative to `A²`.
    pub boost: f64,
    /// Hausdorff distance between vortex curves before and after a duality rotation.
    pub duality: f64,
    /// Hausdorff bound for coincident curves, in units of the grid spacing.
    pub coincidence: f64,
    /// Hausdorff bound for C-lines a quarter period apart, in units of the grid spacing.
    pub stationarity: f64,
    /// Relative error of the numeric Hilbert transform at the widest window.
    pub hilbert: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            mode: 1e-12,
            plane_wave: 1e-12,
            fd_order: 1.8,
            phase: 1e-10,
            lag: 1e-10,
            harmonics: 1e-8,
            time_average: 1e-10,
            boost: 1e-10,
            duality: 1e-9,
            coincidence: 2.0,
            stationarity: 2.0,
            hilbert: 1e-2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub modes: usize,
    pub grid: GridParams,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckResult>,
    pub wall_time_s: f64,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// 1 if any check failed, else 2 if any input was degenerate, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.checks.iter().any(|c| c.status == Status::Degenerate) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }
}
