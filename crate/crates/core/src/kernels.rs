//! Spatial Gaussian kernels and the delay-partitioned inhibition bank.
//!
//! The inhibitory pathway reaches each offset `(x, y)` after a latency that
//! grows with distance, `tau = alpha + 1 / (beta + exp(-lambda^2 (x^2 + y^2)))`.
//! The bank quantizes `tau` to whole frames and stores, for every delay `d`,
//! the Gaussian weights of the offsets that arrive `d` frames late.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::params::{LatencyQuantization, ParameterSet};

/// Square `(2r+1)x(2r+1)` weight grid centred on offset `(0, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpatialKernel {
    radius: usize,
    weights: Vec<f64>,
}

impl SpatialKernel {
    pub fn zeros(radius: usize) -> Self {
        let side = 2 * radius + 1;
        Self {
            radius,
            weights: vec![0.0; side * side],
        }
    }

    #[inline]
    pub fn radius(&self) -> usize {
        self.radius
    }

    #[inline]
    pub fn side(&self) -> usize {
        2 * self.radius + 1
    }

    /// Weights in row-major order, offset `(-r, -r)` first.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    fn index(&self, x: i64, y: i64) -> usize {
        let r = self.radius as i64;
        debug_assert!(x.abs() <= r && y.abs() <= r);
        ((y + r) as usize) * self.side() + (x + r) as usize
    }

    /// Weight at offset `(x, y)`; zero outside the radius.
    pub fn at(&self, x: i64, y: i64) -> f64 {
        let r = self.radius as i64;
        if x.abs() > r || y.abs() > r {
            0.0
        } else {
            self.weights[self.index(x, y)]
        }
    }

    fn set(&mut self, x: i64, y: i64, w: f64) {
        let i = self.index(x, y);
        self.weights[i] = w;
    }

    fn add(&mut self, x: i64, y: i64, w: f64) {
        let i = self.index(x, y);
        self.weights[i] += w;
    }

    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|&w| w == 0.0)
    }

    /// Non-zero entries as `(x, y, weight)`, row-major.
    pub fn taps(&self) -> impl Iterator<Item = (i64, i64, f64)> + '_ {
        let r = self.radius as i64;
        let side = self.side();
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0.0)
            .map(move |(i, &w)| ((i % side) as i64 - r, (i / side) as i64 - r, w))
    }
}

impl fmt::Display for SpatialKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.radius as i64;
        write!(f, "{:>6}", "y\\x")?;
        for x in -r..=r {
            write!(f, " {x:>10}")?;
        }
        writeln!(f)?;
        for y in -r..=r {
            write!(f, "{y:>6}")?;
            for x in -r..=r {
                write!(f, " {:>10.6}", self.at(x, y))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check_sigma(field: &'static str, sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveSigma {
            field,
            value: sigma,
        })
    }
}

fn check_radius(radius: usize) -> Result<()> {
    if radius >= 1 {
        Ok(())
    } else {
        Err(Error::NonPositiveRadius {
            field: "radius",
            value: radius,
        })
    }
}

/// Sampled 2D Gaussian density, truncated at `radius` and not renormalized.
pub fn gaussian_kernel(sigma: f64, radius: usize) -> Result<SpatialKernel> {
    check_sigma("sigma", sigma)?;
    check_radius(radius)?;
    let mut kernel = SpatialKernel::zeros(radius);
    let r = radius as i64;
    let norm = 1.0 / (2.0 * PI * sigma * sigma);
    for y in -r..=r {
        for x in -r..=r {
            let d2 = (x * x + y * y) as f64;
            kernel.set(x, y, (-d2 / (2.0 * sigma * sigma)).exp() * norm);
        }
    }
    Ok(kernel)
}

/// Inhibitory latency at offset `(x, y)`, in frames.
pub fn latency_at(x: i64, y: i64, alpha: f64, beta: f64, lambda: f64) -> Result<f64> {
    let d2 = (x * x + y * y) as f64;
    let denominator = beta + (-lambda * lambda * d2).exp();
    if denominator <= f64::EPSILON {
        return Err(Error::DegenerateLatency { x, y, denominator });
    }
    Ok(alpha + 1.0 / denominator)
}

/// Whole-frame delay for a latency under round-half-up, never below one frame.
pub fn quantize_latency(tau: f64) -> usize {
    let d = (tau + 0.5).floor();
    if d < 1.0 {
        1
    } else {
        d as usize
    }
}

/// Inhibition weights partitioned by arrival delay.
#[derive(Clone, Debug, PartialEq)]
pub struct InhibitionKernelBank {
    radius: usize,
    /// `slices[d - 1]` holds the weights delivered `d` frames late.
    slices: Vec<SpatialKernel>,
}

impl InhibitionKernelBank {
    /// Single-slice bank delivering the whole kernel one frame late.
    pub fn constant_delay(kernel: SpatialKernel) -> Self {
        Self {
            radius: kernel.radius(),
            slices: vec![kernel],
        }
    }

    pub fn from_params(params: &ParameterSet) -> Result<Self> {
        inhibition_bank(
            params.sigma_i,
            params.alpha,
            params.beta,
            params.lambda,
            params.radius,
            params.quantization,
        )
    }

    #[inline]
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Largest delay present, in frames.
    #[inline]
    pub fn d_max(&self) -> usize {
        self.slices.len()
    }

    /// Slice for delay `d` (1-based).
    pub fn slice(&self, delay: usize) -> Option<&SpatialKernel> {
        delay.checked_sub(1).and_then(|i| self.slices.get(i))
    }

    /// `(delay, slice)` pairs, shortest delay first. Empty slices are included.
    pub fn slices(&self) -> impl Iterator<Item = (usize, &SpatialKernel)> {
        self.slices.iter().enumerate().map(|(i, s)| (i + 1, s))
    }

    /// Element-wise sum of all slices.
    pub fn collapsed(&self) -> SpatialKernel {
        let mut out = SpatialKernel::zeros(self.radius);
        for slice in &self.slices {
            for (o, w) in out.weights.iter_mut().zip(&slice.weights) {
                *o += w;
            }
        }
        out
    }
}

impl fmt::Display for InhibitionKernelBank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# inhibition bank radius={} d_max={}", self.radius, self.d_max())?;
        for (d, slice) in self.slices() {
            writeln!(f, "## delay {d} (mass {:.6})", slice.sum())?;
            write!(f, "{slice}")?;
        }
        Ok(())
    }
}

/// Builds the delay-partitioned inhibition kernel.
pub fn inhibition_bank(
    sigma_i: f64,
    alpha: f64,
    beta: f64,
    lambda: f64,
    radius: usize,
    quantization: LatencyQuantization,
) -> Result<InhibitionKernelBank> {
    check_sigma("sigma_i", sigma_i)?;
    let spatial = gaussian_kernel(sigma_i, radius)?;
    let r = radius as i64;

    // (x, y, weight, delay) placements
    let mut placements = Vec::with_capacity(spatial.weights.len() * 2);
    for y in -r..=r {
        for x in -r..=r {
            let w = spatial.at(x, y);
            let tau = latency_at(x, y, alpha, beta, lambda)?;
            match quantization {
                LatencyQuantization::Round => placements.push((x, y, w, quantize_latency(tau))),
                LatencyQuantization::Linear => {
                    let tau = tau.max(1.0);
                    let lower = tau.floor();
                    let frac = tau - lower;
                    let lower = lower as usize;
                    placements.push((x, y, w * (1.0 - frac), lower));
                    if frac > 0.0 {
                        placements.push((x, y, w * frac, lower + 1));
                    }
                }
            }
        }
    }

    let d_max = placements.iter().map(|p| p.3).max().unwrap_or(1);
    let mut slices = vec![SpatialKernel::zeros(radius); d_max];
    for (x, y, w, d) in placements {
        slices[d - 1].add(x, y, w);
    }
    Ok(InhibitionKernelBank { radius, slices })
}
