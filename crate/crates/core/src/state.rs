use std::collections::VecDeque;

use crate::frame::Frame;

/// Mutable per-detector memory: recent photoreceptor frames, recent spikes,
/// the last luminance frame, and the running MP peak for online normalization.
#[derive(Clone, Debug)]
pub struct DetectorState {
    p_history: VecDeque<Frame>,
    depth: usize,
    spike_history: VecDeque<bool>,
    spike_depth: usize,
    frame_index: u64,
    last_luminance: Option<Frame>,
    mp_peak: f64,
}

impl DetectorState {
    /// `d_max` is the largest inhibitory delay; the P history keeps `d_max + 1` frames.
    pub fn new(d_max: usize, n_sp: usize) -> Self {
        assert!(d_max >= 1 && n_sp >= 1);
        Self {
            p_history: VecDeque::with_capacity(d_max + 1),
            depth: d_max + 1,
            spike_history: VecDeque::with_capacity(n_sp),
            spike_depth: n_sp,
            frame_index: 0,
            last_luminance: None,
            mp_peak: 0.0,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Number of P frames held.
    pub fn len(&self) -> usize {
        self.p_history.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p_history.is_empty()
    }

    /// Frames consumed so far.
    pub fn frame_index(&self) -> u64 {
        self.frame_index
    }

    /// The P frame pushed `lag` pushes ago; `lag = 1` is the most recent.
    pub fn p_lag(&self, lag: usize) -> Option<&Frame> {
        lag.checked_sub(1).and_then(|i| self.p_history.get(i))
    }

    /// Pushes a P frame, evicting the oldest once the buffer is full.
    pub fn push_p(&mut self, p: Frame) {
        if self.p_history.len() == self.depth {
            self.p_history.pop_back();
        }
        self.p_history.push_front(p);
    }

    /// Spike flags, oldest first.
    pub fn spikes(&self) -> impl Iterator<Item = bool> + '_ {
        self.spike_history.iter().copied()
    }

    pub fn push_spike(&mut self, spike: bool) {
        if self.spike_history.len() == self.spike_depth {
            self.spike_history.pop_front();
        }
        self.spike_history.push_back(spike);
    }

    pub(crate) fn advance(&mut self, luminance: Frame) {
        self.last_luminance = Some(luminance);
        self.frame_index += 1;
    }

    pub fn last_luminance(&self) -> Option<&Frame> {
        self.last_luminance.as_ref()
    }

    pub fn mp_peak(&self) -> f64 {
        self.mp_peak
    }

    pub(crate) fn raise_peak(&mut self, k_raw: f64) {
        self.mp_peak = self.mp_peak.max(k_raw);
    }
}
