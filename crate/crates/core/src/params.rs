//! Detector tunables and the published presets.
//!
//! The constant block (`k`, `t0`, `m`, `t_mp`, `n_sp`) is shared by every
//! preset. Presets 1–9 differ in the latency constants, the spatial spreads,
//! and the kernel radius. Sets 1–3 use `alpha = beta = lambda = 0`, which
//! collapses the latency map to a constant one-frame delay.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How a fractional latency is mapped onto whole-frame delays.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LatencyQuantization {
    /// Round half-up to the nearest frame, never below one frame.
    #[default]
    Round,
    /// Split each weight linearly between the two neighbouring frame delays.
    Linear,
}

impl FromStr for LatencyQuantization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "round" => Ok(Self::Round),
            "linear" => Ok(Self::Linear),
            other => Err(format!("unknown latency quantization `{other}` (round|linear)")),
        }
    }
}

impl fmt::Display for LatencyQuantization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Round => "round",
            Self::Linear => "linear",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParameterSet {
    /// Spatial spread of excitation, pixels.
    pub sigma_e: f64,
    /// Spatial spread of inhibition, pixels.
    pub sigma_i: f64,
    /// Inhibition strength.
    pub a: f64,
    /// Latency offset.
    pub alpha: f64,
    /// Latency far-field term; far offsets approach `alpha + 1/beta` frames.
    pub beta: f64,
    /// Latency radial steepness.
    pub lambda: f64,
    /// Kernel half-width in pixels; kernels are `(2r+1)x(2r+1)`.
    pub radius: usize,
    /// Grouping amplification.
    pub k: f64,
    /// Baseline of the decay threshold.
    pub t0: f64,
    /// Coefficient in the decay threshold denominator.
    pub m: f64,
    /// Spiking threshold on the normalized membrane potential.
    pub t_mp: f64,
    /// Consecutive spikes required to raise an alarm.
    pub n_sp: usize,
    /// Side of the square grouping window.
    pub omega: usize,
    pub quantization: LatencyQuantization,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ValidationWarning {
    /// The radius cuts the Gaussian tail before two standard deviations.
    KernelTruncated { radius: usize, sigma: f64, suggested: usize },
}

impl fmt::Display for ValidationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::KernelTruncated {
                radius,
                sigma,
                suggested,
            } => write!(
                f,
                "radius {radius} truncates a Gaussian with sigma {sigma} (2 sigma needs radius {suggested})"
            ),
        }
    }
}

pub const PRESET_COUNT: usize = 9;

impl ParameterSet {
    /// Constant block shared by every preset, with placeholder distribution values
    /// taken from preset 7.
    pub fn constants() -> Self {
        Self {
            sigma_e: 1.0,
            sigma_i: 5.0,
            a: 1.5,
            alpha: -0.1,
            beta: 0.5,
            lambda: 0.7,
            radius: 4,
            k: 1.0,
            t0: 0.5,
            m: 0.4,
            t_mp: 0.4,
            n_sp: 2,
            omega: 4,
            quantization: LatencyQuantization::Round,
        }
    }

    /// Presets 1 through 9.
    pub fn preset(index: usize) -> Result<Self> {
        // (alpha, beta, lambda, sigma_e, sigma_i, a, t0, r)
        const TABLE: [(f64, f64, f64, f64, f64, f64, f64, usize); PRESET_COUNT] = [
            (0.0, 0.0, 0.0, 0.35, 1.0, 1.5, 0.5, 4),
            (0.0, 0.0, 0.0, 0.35, 1.8, 1.5, 0.5, 4),
            (0.0, 0.0, 0.0, 0.35, 2.5, 1.5, 0.5, 4),
            (-0.1, 0.5, 0.7, 0.35, 1.0, 1.5, 0.5, 4),
            (-0.1, 0.5, 0.7, 0.35, 1.8, 1.5, 0.5, 4),
            (-0.1, 0.5, 0.7, 0.35, 2.5, 1.5, 0.5, 4),
            (-0.1, 0.5, 0.7, 1.0, 5.0, 1.5, 0.5, 4),
            (-0.1, 0.5, 0.7, 1.0, 5.0, 1.5, 0.5, 6),
            (-0.1, 0.5, 0.7, 1.5, 5.0, 1.5, 0.5, 6),
        ];
        if index == 0 || index > PRESET_COUNT {
            return Err(Error::InvalidParameter {
                field: "preset",
                reason: format!("no preset {index}, expected 1..={PRESET_COUNT}"),
            });
        }
        let (alpha, beta, lambda, sigma_e, sigma_i, a, t0, radius) = TABLE[index - 1];
        Ok(Self {
            alpha,
            beta,
            lambda,
            sigma_e,
            sigma_i,
            a,
            t0,
            radius,
            ..Self::constants()
        })
    }

    /// Looks a preset up by name: `set1` … `set9` (a bare digit also works).
    pub fn by_name(name: &str) -> Result<Self> {
        let digits = name.trim().strip_prefix("set").unwrap_or(name.trim());
        let index = digits.parse::<usize>().map_err(|_| Error::InvalidParameter {
            field: "preset",
            reason: format!("unknown preset `{name}`, expected set1..set{PRESET_COUNT}"),
        })?;
        Self::preset(index)
    }

    /// True when the latency map is the constant one-frame delay.
    pub fn has_constant_latency(&self) -> bool {
        self.alpha == 0.0 && self.beta == 0.0 && self.lambda == 0.0
    }

    /// Checks every hard invariant and returns the set unchanged.
    /// Soft problems are logged; see [`ParameterSet::warnings`].
    pub fn validate(self) -> Result<Self> {
        for (field, value) in [("sigma_e", self.sigma_e), ("sigma_i", self.sigma_i)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveSigma { field, value });
            }
        }
        if self.radius < 1 {
            return Err(Error::NonPositiveRadius {
                field: "radius",
                value: self.radius,
            });
        }
        if self.omega < 1 {
            return Err(Error::InvalidWindow {
                field: "omega",
                value: self.omega,
            });
        }
        if self.n_sp < 1 {
            return Err(Error::InvalidParameter {
                field: "n_sp",
                reason: "at least one spike is needed to raise an alarm".into(),
            });
        }
        let non_negative = [("a", self.a), ("k", self.k), ("t0", self.t0)];
        for (field, value) in non_negative {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::InvalidParameter {
                    field,
                    reason: format!("must be finite and non-negative, got {value}"),
                });
            }
        }
        if !(self.m > 0.0) || !self.m.is_finite() {
            return Err(Error::InvalidParameter {
                field: "m",
                reason: format!("must be positive, got {}", self.m),
            });
        }
        if !(0.0..=1.0).contains(&self.t_mp) {
            return Err(Error::InvalidParameter {
                field: "t_mp",
                reason: format!("must lie in [0, 1], got {}", self.t_mp),
            });
        }
        for (field, value) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("lambda", self.lambda),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    field,
                    reason: format!("must be finite, got {value}"),
                });
            }
        }
        for w in self.warnings() {
            log::warn!("{w}");
        }
        Ok(self)
    }

    pub fn warnings(&self) -> Vec<ValidationWarning> {
        let sigma = self.sigma_e.max(self.sigma_i);
        let suggested = (2.0 * sigma).ceil() as usize;
        if self.radius < suggested {
            vec![ValidationWarning::KernelTruncated {
                radius: self.radius,
                sigma,
                suggested,
            }]
        } else {
            Vec::new()
        }
    }
}

impl Default for ParameterSet {
    fn default() -> Self {
        Self::preset(7).expect("preset 7 exists")
    }
}
