use core::fmt;

/// Errors raised by field construction, transforms and curve extraction.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A wavevector of zero length was supplied.
    ZeroWavevector,
    /// Helicity must be +1 or −1.
    InvalidHelicity(i8),
    /// A mode violates dispersion, transversality or the helicity condition.
    InvalidMode {
        index: usize,
        reason: ModeDefect,
    },
    /// A mode with zero frequency; only propagating waves are represented.
    ZeroFrequency { index: usize },
    /// The operation needs at least one mode.
    EmptyField,
    /// Modes do not share a single `|ω|`.
    NotMonochromatic { expected: f64, found: f64 },
    /// A definite-helicity field was required but both helicities are present.
    MixedHelicity,
    /// Frequencies, steps, windows and similar parameters must be positive.
    NonPositive(&'static str),
    /// `n_samples` for the numeric Hilbert transform must be even and ≥ 2.
    InvalidSampleCount(usize),
    /// Boost speed must satisfy `|β| < 1`.
    Superluminal(f64),
    /// Grid corners or sample counts are invalid.
    InvalidGrid(&'static str),
    /// Sample count does not match the grid shape.
    GridSizeMismatch { expected: usize, found: usize },
    /// The diagnostic vanishes on too much of the grid to define curves.
    Degenerate(Degeneracy),
    /// Curve distance needs both sets nonempty.
    EmptyCurveSet,
}

/// Which invariant a rejected mode breaks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModeDefect {
    Dispersion,
    Transversality,
    Helicity,
    NonFinite,
}

/// Statistics attached to a degenerate extraction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Degeneracy {
    /// Fraction of samples below the relative zero threshold.
    pub zero_fraction: f64,
    /// Largest sample modulus on the grid.
    pub max_abs: f64,
}

impl fmt::Display for ModeDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Dispersion => "|omega| != |k|",
            Self::Transversality => "k . f != 0",
            Self::Helicity => "i k x f != omega f",
            Self::NonFinite => "non-finite component",
        })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroWavevector => write!(f, "wavevector has zero length"),
            Self::InvalidHelicity(h) => write!(f, "helicity must be +1 or -1, got {h}"),
            Self::InvalidMode { index, reason } => write!(f, "mode {index} is invalid: {reason}"),
            Self::ZeroFrequency { index } => write!(f, "mode {index} has zero frequency"),
            Self::EmptyField => write!(f, "field has no modes"),
            Self::NotMonochromatic { expected, found } => {
                write!(f, "field is not monochromatic: |omega| = {expected} and {found}")
            }
            Self::MixedHelicity => write!(f, "field mixes positive and negative helicity"),
            Self::NonPositive(what) => write!(f, "{what} must be positive"),
            Self::InvalidSampleCount(n) => write!(f, "sample count must be even and >= 2, got {n}"),
            Self::Superluminal(b) => write!(f, "boost speed |beta| = {b} is not below 1"),
            Self::InvalidGrid(why) => write!(f, "invalid grid: {why}"),
            Self::GridSizeMismatch { expected, found } => {
                write!(f, "grid expects {expected} samples, got {found}")
            }
            Self::Degenerate(d) => write!(
                f,
                "degenerate zero set: {:.1}% of samples vanish (max |value| = {:e})",
                100.0 * d.zero_fraction,
                d.max_abs
            ),
            Self::EmptyCurveSet => write!(f, "curve set is empty"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
