//! JSON field specifications.
//!
//! ```json
//! {
//!   "label": "three waves",
//!   "modes": [
//!     { "k": [0, 0, 1], "helicity": 1, "amplitude": [1.0, 0.0] },
//!     { "k": [1, 0, 0], "omega": -1, "f": [[0, 0], [1, 0], [0, -1]] }
//!   ]
//! }
//! ```
//!
//! A mode is given either by helicity and a complex amplitude along the
//! unit circular polarization of `k`, or raw as a signed frequency and an
//! amplitude vector of `[re, im]` pairs.

use std::path::Path;

use rsvortex_core::fields::circular_polarization;
use rsvortex_core::{Complex64, ComplexVec3, FieldSuperposition, Helicity, PlaneWaveMode, Vec3};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Relative mismatch below which a mode is written in helicity form.
const HELICITY_FORM_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<String>,
    pub modes: Vec<ModeEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeEntry {
    pub k: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub helicity: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<[[f64; 2]; 3]>,
}

impl ModeEntry {
    fn mode(&self, index: usize) -> Result<PlaneWaveMode> {
        let k = Vec3::from_array(self.k);
        let bad = |msg: &str| CliError::Parse(format!("mode {index}: {msg}"));
        match (self.helicity, self.amplitude, self.omega, self.f) {
            (Some(h), Some([re, im]), None, None) => {
                let helicity = Helicity::try_from(h).map_err(|_| bad("`helicity` must be 1 or -1"))?;
                let e = circular_polarization(k, helicity)
                    .map_err(|e| CliError::Parse(format!("mode {index}: {e}")))?;
                let omega = helicity.sign() * k.norm();
                Ok(PlaneWaveMode::new_unchecked(k, omega, e.scale(Complex64::new(re, im))))
            }
            (None, None, Some(omega), Some(f)) => {
                let [x, y, z] = f.map(|[re, im]| Complex64::new(re, im));
                Ok(PlaneWaveMode::new_unchecked(k, omega, ComplexVec3::new(x, y, z)))
            }
            (Some(_), None, None, None) => Err(bad("missing field `amplitude`")),
            (None, Some(_), None, None) => Err(bad("missing field `helicity`")),
            (None, None, Some(_), None) => Err(bad("missing field `f`")),
            (None, None, None, Some(_)) => Err(bad("missing field `omega`")),
            (None, None, None, None) => Err(bad("needs `helicity` and `amplitude`, or `omega` and `f`")),
            _ => Err(bad("give either `helicity` and `amplitude` or `omega` and `f`, not both")),
        }
    }

    /// Helicity form when the amplitude is a multiple of the circular
    /// polarization of `k`, raw form otherwise.
    pub fn from_mode(mode: &PlaneWaveMode) -> Self {
        let k = mode.k();
        let f = mode.amplitude();
        let helicity_form = mode.helicity().and_then(|h| {
            let e = circular_polarization(k, h).ok()?;
            let a = e.conj().dot(f);
            let ok = mode.defect().is_none() && (e.scale(a) - f).norm() <= HELICITY_FORM_TOLERANCE * f.norm();
            ok.then(|| Self {
                k: k.to_array(),
                helicity: Some(i8::from(h)),
                amplitude: Some([a.re, a.im]),
                omega: None,
                f: None,
            })
        });
        helicity_form.unwrap_or_else(|| Self {
            k: k.to_array(),
            helicity: None,
            amplitude: None,
            omega: Some(mode.omega()),
            f: Some(f.to_array().map(|c| [c.re, c.im])),
        })
    }
}

impl FieldSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if spec.modes.is_empty() {
            return Err(CliError::Parse("`modes` must list at least one mode".into()));
        }
        Ok(spec)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn from_field(field: &FieldSuperposition, label: Option<String>) -> Self {
        Self {
            label,
            units: None,
            modes: field.modes().iter().map(ModeEntry::from_mode).collect(),
        }
    }

    /// Modes exactly as written, without checking the plane-wave invariants.
    pub fn to_field_unchecked(&self) -> Result<FieldSuperposition> {
        let modes = self.modes.iter().enumerate().map(|(i, m)| m.mode(i)).collect::<Result<_>>()?;
        Ok(FieldSuperposition::from_modes_unchecked(modes))
    }

    /// Validated field; rejects modes that break dispersion, transversality
    /// or the helicity condition.
    pub fn to_field(&self) -> Result<FieldSuperposition> {
        let field = self.to_field_unchecked()?;
        Ok(FieldSuperposition::new(field.into_modes())?)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("spec files always serialize");
        text.push('\n');
        text
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }
}
