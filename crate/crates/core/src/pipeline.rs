//! Layered looming detector.
//!
//! Per frame: photoreceptor change `P`, distributed excitation `E` and
//! delayed inhibition `I`, rectified presynaptic sum `S`, neighbourhood
//! grouping `G`, a decay threshold driven by the previous frame's total
//! change (feed-forward inhibition), the membrane potential `K`, and the
//! spike / alarm decision.

use std::str::FromStr;

use crate::analysis::attenuation;
use crate::conv::{convolve, convolve_accumulate};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::kernels::{gaussian_kernel, InhibitionKernelBank, SpatialKernel};
use crate::params::ParameterSet;
use crate::state::DetectorState;

/// Floor of the running peak in online normalization.
pub const ONLINE_PEAK_FLOOR: f64 = 1.0;

#[derive(Clone, Debug, PartialEq)]
pub struct FrameReport {
    pub frame_index: usize,
    pub ffi: f64,
    pub t_de: f64,
    pub k_raw: f64,
    pub k_norm: f64,
    pub attenuation_db: Option<f64>,
    pub spike: bool,
    pub alarm: bool,
}

#[derive(Clone, Debug)]
pub struct LayerOutputs {
    pub p: Frame,
    pub e: Frame,
    pub i: Frame,
    pub s: Frame,
    pub g: Frame,
    pub g_thresholded: Frame,
}

impl LayerOutputs {
    pub fn p_sum(&self) -> f64 {
        self.p.sum()
    }

    pub fn s_sum(&self) -> f64 {
        self.s.sum()
    }
}

/// How the raw membrane potential is mapped onto `[0, 1]` before spiking.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// Divide by the maximum over the whole sequence (two passes).
    #[default]
    Offline,
    /// Divide by the running peak, floored at [`ONLINE_PEAK_FLOOR`].
    Online,
}

impl FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "offline" => Ok(Self::Offline),
            "online" => Ok(Self::Online),
            other => Err(format!("unknown normalization `{other}` (offline|online)")),
        }
    }
}

/// Absolute luminance change between consecutive frames.
pub fn photoreceptor(current: &Frame, previous: &Frame) -> Result<Frame> {
    previous.check_shape(current)?;
    let data = current
        .data()
        .iter()
        .zip(previous.data())
        .map(|(c, p)| (c - p).abs())
        .collect();
    Ok(Frame::from_raw(current.width(), current.height(), data))
}

fn check_kernel_fits(frame: &Frame, radius: usize) -> Result<()> {
    if radius > frame.width().min(frame.height()) {
        Err(Error::KernelTooLarge {
            radius,
            width: frame.width(),
            height: frame.height(),
        })
    } else {
        Ok(())
    }
}

/// Spatially distributed excitation of the current P frame.
pub fn excitation(p: &Frame, w_e: &SpatialKernel) -> Result<Frame> {
    check_kernel_fits(p, w_e.radius())?;
    Ok(convolve(p, w_e))
}

/// Delayed, spatially distributed inhibition from the P frames in `history`.
///
/// The slice for delay `d` reads the frame pushed `d` steps ago. Slices that
/// reach past the oldest stored frame contribute nothing.
pub fn inhibition(history: &DetectorState, bank: &InhibitionKernelBank) -> Result<Frame> {
    let newest = history.p_lag(1).ok_or(Error::EmptyHistory)?;
    check_kernel_fits(newest, bank.radius())?;
    let mut out = vec![0.0; newest.len()];
    for (delay, slice) in bank.slices() {
        if let Some(p) = history.p_lag(delay) {
            convolve_accumulate(&mut out, p, slice);
        }
    }
    Ok(Frame::from_raw(newest.width(), newest.height(), out))
}

/// Inhibition with a single one-frame delay and no latency map.
pub fn constant_delay_inhibition(previous_p: &Frame, w_i: &SpatialKernel) -> Result<Frame> {
    check_kernel_fits(previous_p, w_i.radius())?;
    Ok(convolve(previous_p, w_i))
}

/// Rectified `E - a * I`.
pub fn presynaptic_sum(e: &Frame, i: &Frame, a: f64) -> Result<Frame> {
    e.check_shape(i)?;
    let data = e
        .data()
        .iter()
        .zip(i.data())
        .map(|(e, i)| (e - a * i).max(0.0))
        .collect();
    Ok(Frame::from_raw(e.width(), e.height(), data))
}

/// Offsets covered by a grouping window of side `omega`: `-(omega-1)/2 ..= omega/2`.
pub fn window_offsets(omega: usize) -> std::ops::RangeInclusive<i64> {
    let omega = omega.max(1) as i64;
    let lo = -((omega - 1) / 2);
    lo..=lo + omega - 1
}

/// `G = S * Ce`, where `Ce` is `k` times the sum of `S` over the grouping window.
pub fn grouping(s: &Frame, k: f64, omega: usize) -> Frame {
    let (w, h) = (s.width() as i64, s.height() as i64);
    let offsets = window_offsets(omega);
    let mut out = Vec::with_capacity(s.len());
    for y in 0..h {
        for x in 0..w {
            let centre = s.get(x as usize, y as usize);
            if centre == 0.0 {
                out.push(0.0);
                continue;
            }
            let mut ce = 0.0;
            for dy in offsets.clone() {
                for dx in offsets.clone() {
                    ce += s.get_padded(x + dx, y + dy);
                }
            }
            out.push(centre * ce * k);
        }
    }
    Frame::from_raw(s.width(), s.height(), out)
}

/// Total change in the previous P frame.
pub fn ffi_level(state: &DetectorState) -> Result<f64> {
    state
        .p_lag(1)
        .map(|p| p.data().iter().map(|v| v.abs()).sum())
        .ok_or(Error::EmptyHistory)
}

pub fn decay_threshold(ffi: f64, t0: f64, m: f64, n_cell: usize) -> Result<f64> {
    if n_cell == 0 || !(m > 0.0) {
        return Err(Error::NonPositiveDenominator { n_cell, m });
    }
    Ok(ffi / (n_cell as f64 * m) * t0)
}

/// Keeps values at or above `t_de`, zeroes the rest.
pub fn apply_threshold(g: &Frame, t_de: f64) -> Frame {
    let data = g
        .data()
        .iter()
        .map(|&v| if v >= t_de { v } else { 0.0 })
        .collect();
    Frame::from_raw(g.width(), g.height(), data)
}

pub fn membrane_potential(g_thresholded: &Frame) -> f64 {
    g_thresholded.data().iter().map(|v| v.abs()).sum()
}

pub fn spike(k_norm: f64, t_mp: f64) -> bool {
    k_norm >= t_mp
}

/// True iff the last `n_sp` entries of `spikes` (oldest first) all fired.
pub fn confirm_collision(spikes: &[bool], n_sp: usize) -> bool {
    n_sp >= 1 && spikes.len() >= n_sp && spikes[spikes.len() - n_sp..].iter().all(|&s| s)
}

/// Whole-sequence normalization; an all-zero sequence stays zero.
pub fn normalize_offline(k_raw: &[f64]) -> Vec<f64> {
    let peak = k_raw.iter().copied().fold(0.0, f64::max);
    if peak > 0.0 {
        k_raw.iter().map(|k| k / peak).collect()
    } else {
        vec![0.0; k_raw.len()]
    }
}

/// Running-peak normalization. `peak` must already include `k_raw`.
pub fn normalize_online(k_raw: f64, peak: f64) -> f64 {
    k_raw / peak.max(ONLINE_PEAK_FLOOR)
}

/// Excitation kernel and inhibition bank for one parameter set.
#[derive(Clone, Debug)]
pub struct Kernels {
    pub excitation: SpatialKernel,
    pub inhibition: InhibitionKernelBank,
}

impl Kernels {
    pub fn from_params(params: &ParameterSet) -> Result<Self> {
        Ok(Self {
            excitation: gaussian_kernel(params.sigma_e, params.radius)?,
            inhibition: InhibitionKernelBank::from_params(params)?,
        })
    }

    pub fn d_max(&self) -> usize {
        self.inhibition.d_max()
    }

    /// Rectified presynaptic sum for the current P frame against `history`,
    /// which must not yet contain `p`.
    pub fn presynaptic(&self, p: &Frame, history: &DetectorState, a: f64) -> Result<Frame> {
        let e = excitation(p, &self.excitation)?;
        if history.is_empty() {
            return Ok(e);
        }
        let i = inhibition(history, &self.inhibition)?;
        e.check_shape(&i)?;
        // rectify in place; same arithmetic as `presynaptic_sum`
        let mut s = e.into_data();
        for (s, i) in s.iter_mut().zip(i.data()) {
            *s = (*s - a * i).max(0.0);
        }
        Ok(Frame::from_raw(p.width(), p.height(), s))
    }
}

/// Runs one frame through every layer and updates `state`.
///
/// In [`Normalization::Offline`] mode the returned `k_norm`, `spike` and
/// `alarm` are placeholders (zero / false); [`finalize_offline`] fills them
/// once the whole sequence is known.
pub fn detector_step(
    state: &mut DetectorState,
    frame: &Frame,
    params: &ParameterSet,
    kernels: &Kernels,
    mode: Normalization,
) -> Result<(FrameReport, LayerOutputs)> {
    let frame_index = state.frame_index() as usize;
    let p = match state.last_luminance() {
        Some(prev) => photoreceptor(frame, prev)?,
        None => Frame::zeros(frame.width(), frame.height()),
    };

    let e = excitation(&p, &kernels.excitation)?;
    let (i, ffi) = if state.is_empty() {
        (Frame::zeros(p.width(), p.height()), 0.0)
    } else {
        (inhibition(state, &kernels.inhibition)?, ffi_level(state)?)
    };
    let s = presynaptic_sum(&e, &i, params.a)?;
    let t_de = decay_threshold(ffi, params.t0, params.m, p.len())?;
    let g = grouping(&s, params.k, params.omega);
    let g_thresholded = apply_threshold(&g, t_de);
    let k_raw = membrane_potential(&g_thresholded);
    let attenuation_db = attenuation(p.sum(), s.sum());

    let warming_up = frame_index <= kernels.d_max();
    let (k_norm, spiked) = match mode {
        Normalization::Online => {
            state.raise_peak(k_raw);
            let k_norm = normalize_online(k_raw, state.mp_peak());
            (k_norm, !warming_up && spike(k_norm, params.t_mp))
        }
        Normalization::Offline => (0.0, false),
    };
    state.push_spike(spiked);
    let recent: Vec<bool> = state.spikes().collect();
    let alarm = confirm_collision(&recent, params.n_sp);

    state.push_p(p.clone());
    state.advance(frame.clone());

    let report = FrameReport {
        frame_index,
        ffi,
        t_de,
        k_raw,
        k_norm,
        attenuation_db,
        spike: spiked,
        alarm,
    };
    let layers = LayerOutputs {
        p,
        e,
        i,
        s,
        g,
        g_thresholded,
    };
    Ok((report, layers))
}

/// Applies whole-sequence normalization, spikes, and alarms to reports
/// produced in offline mode.
pub fn finalize_offline(reports: &mut [FrameReport], params: &ParameterSet, d_max: usize) {
    let k_raw: Vec<f64> = reports.iter().map(|r| r.k_raw).collect();
    let normalized = normalize_offline(&k_raw);
    let mut spikes = Vec::with_capacity(reports.len());
    for (report, k_norm) in reports.iter_mut().zip(normalized) {
        report.k_norm = k_norm;
        report.spike = report.frame_index > d_max && spike(k_norm, params.t_mp);
        spikes.push(report.spike);
        report.alarm = confirm_collision(&spikes, params.n_sp);
    }
}

/// A detector bound to a parameter set and frame size.
#[derive(Clone, Debug)]
pub struct Detector {
    params: ParameterSet,
    kernels: Kernels,
    state: DetectorState,
    width: usize,
    height: usize,
    mode: Normalization,
}

impl Detector {
    pub fn new(params: ParameterSet, width: usize, height: usize, mode: Normalization) -> Result<Self> {
        let params = params.validate()?;
        let kernels = Kernels::from_params(&params)?;
        if params.radius > width.min(height) {
            return Err(Error::KernelTooLarge {
                radius: params.radius,
                width,
                height,
            });
        }
        let state = DetectorState::new(kernels.d_max(), params.n_sp);
        Ok(Self {
            params,
            kernels,
            state,
            width,
            height,
            mode,
        })
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn kernels(&self) -> &Kernels {
        &self.kernels
    }

    pub fn state(&self) -> &DetectorState {
        &self.state
    }

    pub fn mode(&self) -> Normalization {
        self.mode
    }

    pub fn d_max(&self) -> usize {
        self.kernels.d_max()
    }

    pub fn step(&mut self, frame: &Frame) -> Result<(FrameReport, LayerOutputs)> {
        if frame.width() != self.width || frame.height() != self.height {
            return Err(Error::DimensionMismatch {
                expected_width: self.width,
                expected_height: self.height,
                width: frame.width(),
                height: frame.height(),
            });
        }
        detector_step(&mut self.state, frame, &self.params, &self.kernels, self.mode)
    }

    /// Runs a whole sequence and returns final reports plus the per-frame
    /// P and S sums.
    pub fn run(&mut self, frames: &[Frame]) -> Result<SequenceOutput> {
        let mut out = SequenceOutput::default();
        for frame in frames {
            let (report, layers) = self.step(frame)?;
            out.p_sums.push(layers.p_sum());
            out.s_sums.push(layers.s_sum());
            out.reports.push(report);
        }
        if self.mode == Normalization::Offline {
            finalize_offline(&mut out.reports, &self.params, self.d_max());
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SequenceOutput {
    pub reports: Vec<FrameReport>,
    pub p_sums: Vec<f64>,
    pub s_sums: Vec<f64>,
}
