//! Metrics over detector runs: attenuation of the presynaptic layer,
//! distinguish-ability (DA) of a looming peak against a false-positive point,
//! sharpness of the normalized response, and attenuation sweeps over speed
//! and kernel spreads.

use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::params::ParameterSet;
use crate::pipeline::{Detector, FrameReport, Normalization};
use crate::stimulus::{speed_sweep, SceneSpec};

/// Ratios above this are reported as [`CappedRatio::AboveCap`].
pub const RATIO_CAP: f64 = 10_000.0;

/// DA above this marks a detector that separates looming from clutter well.
pub const COMPETENT_DA: f64 = 10.0;

/// Default half-width of the DA averaging windows, frames.
pub const DA_HALF_WINDOW: usize = 5;

/// `10 log10(s_sum / p_sum)`; `None` when either sum is zero.
pub fn attenuation(p_sum: f64, s_sum: f64) -> Option<f64> {
    if p_sum > 0.0 && s_sum > 0.0 {
        Some(10.0 * (s_sum / p_sum).log10())
    } else {
        None
    }
}

/// A ratio that saturates when its denominator vanishes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CappedRatio {
    Finite(f64),
    AboveCap,
}

impl CappedRatio {
    pub fn from_means(numerator: f64, denominator: f64) -> Self {
        if denominator > 0.0 {
            let ratio = numerator / denominator;
            if ratio > RATIO_CAP {
                CappedRatio::AboveCap
            } else {
                CappedRatio::Finite(ratio)
            }
        } else if numerator > 0.0 {
            CappedRatio::AboveCap
        } else {
            CappedRatio::Finite(0.0)
        }
    }

    /// Numeric value, `+inf` above the cap.
    pub fn value(self) -> f64 {
        match self {
            CappedRatio::Finite(v) => v,
            CappedRatio::AboveCap => f64::INFINITY,
        }
    }

    pub fn is_competent(self) -> bool {
        self.value() > COMPETENT_DA
    }
}

impl PartialOrd for CappedRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value().partial_cmp(&other.value())
    }
}

impl fmt::Display for CappedRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CappedRatio::Finite(v) => write!(f, "{v:.2}"),
            CappedRatio::AboveCap => write!(f, ">{RATIO_CAP}"),
        }
    }
}

/// Per-frame record of one detector run.
#[derive(Clone, Debug)]
pub struct RunTrace {
    pub reports: Vec<FrameReport>,
    pub p_sums: Vec<f64>,
    pub s_sums: Vec<f64>,
    pub params: ParameterSet,
    pub label: String,
    pub d_max: usize,
}

impl RunTrace {
    pub fn len(&self) -> usize {
        self.reports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reports.is_empty()
    }

    pub fn k_raw(&self) -> Vec<f64> {
        self.reports.iter().map(|r| r.k_raw).collect()
    }

    pub fn k_norm(&self) -> Vec<f64> {
        self.reports.iter().map(|r| r.k_norm).collect()
    }

    /// Frame with the largest raw MP (earliest on ties).
    pub fn peak_frame(&self) -> usize {
        let mut best = 0;
        for (i, r) in self.reports.iter().enumerate() {
            if r.k_raw > self.reports[best].k_raw {
                best = i;
            }
        }
        best
    }

    /// Frames past warm-up and boundary effects: drops the first `d_max + 2`
    /// and the last 2 frames.
    pub fn steady_state(&self) -> std::ops::Range<usize> {
        let start = self.d_max + 2;
        let end = self.len().saturating_sub(2);
        start..end.max(start)
    }

    /// Mean of the defined attenuation values over `range`.
    pub fn mean_attenuation(&self, range: std::ops::Range<usize>) -> Option<f64> {
        let values: Vec<f64> = self.reports[range]
            .iter()
            .filter_map(|r| r.attenuation_db)
            .collect();
        if values.is_empty() {
            None
        } else {
            Some(values.iter().sum::<f64>() / values.len() as f64)
        }
    }

    /// Mean raw MP over an inclusive window; errors if it leaves the trace.
    pub fn window_mean(&self, centre: usize, half_window: usize) -> Result<f64> {
        let start = centre as i64 - half_window as i64;
        let end = centre as i64 + half_window as i64;
        if start < 0 || end >= self.len() as i64 {
            return Err(Error::WindowOutOfRange {
                start,
                end,
                len: self.len(),
            });
        }
        let window = &self.reports[start as usize..=end as usize];
        Ok(window.iter().map(|r| r.k_raw).sum::<f64>() / window.len() as f64)
    }
}

/// Runs `frames` through a fresh detector.
pub fn run_trace(
    frames: &[Frame],
    params: &ParameterSet,
    mode: Normalization,
    label: impl Into<String>,
) -> Result<RunTrace> {
    let first = frames
        .first()
        .ok_or_else(|| Error::InvalidScene("empty frame sequence".into()))?;
    let mut detector = Detector::new(params.clone(), first.width(), first.height(), mode)?;
    let out = detector.run(frames)?;
    Ok(RunTrace {
        reports: out.reports,
        p_sums: out.p_sums,
        s_sums: out.s_sums,
        params: detector.params().clone(),
        label: label.into(),
        d_max: detector.d_max(),
    })
}

/// Mean raw MP around `peak_frame` over mean raw MP around `fp_frame`.
pub fn distinguishability(
    trace: &RunTrace,
    peak_frame: usize,
    fp_frame: usize,
    half_window: usize,
) -> Result<CappedRatio> {
    let peak = trace.window_mean(peak_frame, half_window)?;
    let fp = trace.window_mean(fp_frame, half_window)?;
    Ok(CappedRatio::from_means(peak, fp))
}

/// DA-style ratio between two runs: mean raw MP in the peak window of
/// `looming` over mean raw MP across the steady state of `distractor`.
///
/// A looming run usually ends close to contact, so the peak window is clipped
/// to the trace instead of failing.
pub fn contrast_ratio(looming: &RunTrace, distractor: &RunTrace, half_window: usize) -> Result<CappedRatio> {
    if looming.is_empty() {
        return Err(Error::WindowOutOfRange { start: 0, end: 0, len: 0 });
    }
    let centre = looming.peak_frame();
    let window = &looming.reports[centre.saturating_sub(half_window)..=(centre + half_window).min(looming.len() - 1)];
    let peak = window.iter().map(|r| r.k_raw).sum::<f64>() / window.len() as f64;
    let steady = distractor.steady_state();
    if steady.is_empty() {
        return Err(Error::WindowOutOfRange {
            start: steady.start as i64,
            end: steady.end as i64 - 1,
            len: distractor.len(),
        });
    }
    let k = distractor.k_raw();
    let background = k[steady.clone()].iter().sum::<f64>() / steady.len() as f64;
    Ok(CappedRatio::from_means(peak, background))
}

/// Peak normalized MP over the mean normalized MP outside `looming_window`.
pub fn sharpness(trace: &RunTrace, looming_window: RangeInclusive<usize>) -> Result<CappedRatio> {
    let (start, end) = (*looming_window.start(), *looming_window.end());
    if start > end || end >= trace.len() {
        return Err(Error::WindowOutOfRange {
            start: start as i64,
            end: end as i64,
            len: trace.len(),
        });
    }
    let k_norm = trace.k_norm();
    let peak = k_norm.iter().copied().fold(0.0, f64::max);
    let outside: Vec<f64> = k_norm
        .iter()
        .enumerate()
        .filter(|(i, _)| !looming_window.contains(i))
        .map(|(_, &v)| v)
        .collect();
    if outside.is_empty() {
        return Err(Error::WindowOutOfRange {
            start: start as i64,
            end: end as i64,
            len: trace.len(),
        });
    }
    let mean = outside.iter().sum::<f64>() / outside.len() as f64;
    Ok(CappedRatio::from_means(peak, mean))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepCell {
    pub speed: f64,
    pub sigma_e: f64,
    pub sigma_i: f64,
    /// `None` when no steady-state frame had a defined attenuation.
    pub mean_attenuation_db: Option<f64>,
}

/// Mean steady-state attenuation of the translating `scene` for every
/// combination of speed, excitation spread and inhibition spread.
pub fn attenuation_sweep(
    scene: &SceneSpec,
    speeds: &[f64],
    sigma_e_grid: &[f64],
    sigma_i_grid: &[f64],
    base: &ParameterSet,
) -> Result<Vec<SweepCell>> {
    if sigma_e_grid.is_empty() || sigma_i_grid.is_empty() {
        return Err(Error::InvalidParameter {
            field: "sweep",
            reason: "sigma grids must be non-empty".into(),
        });
    }
    let sequences = speed_sweep(scene, speeds)?;
    let mut cells = Vec::with_capacity(speeds.len() * sigma_e_grid.len() * sigma_i_grid.len());
    for (&speed, frames) in speeds.iter().zip(&sequences) {
        for &sigma_e in sigma_e_grid {
            for &sigma_i in sigma_i_grid {
                let params = ParameterSet {
                    sigma_e,
                    sigma_i,
                    ..base.clone()
                };
                let trace = run_trace(frames, &params, Normalization::Offline, scene.label())?;
                let mean_attenuation_db = trace.mean_attenuation(trace.steady_state());
                cells.push(SweepCell {
                    speed,
                    sigma_e,
                    sigma_i,
                    mean_attenuation_db,
                });
            }
        }
    }
    Ok(cells)
}
