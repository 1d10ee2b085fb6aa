//! Timing of the presynaptic (excitation + delayed inhibition) stage across
//! kernel radii and input sizes.

use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::io::resize_area;
use crate::params::ParameterSet;
use crate::pipeline::{photoreceptor, Kernels};
use crate::state::DetectorState;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub radius: usize,
    pub width: usize,
    pub height: usize,
    /// Median over repetitions of the mean per-frame stage time.
    pub median_ms: f64,
    pub fps: f64,
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Photoreceptor frames for a luminance sequence (first frame has none).
pub fn photoreceptor_frames(frames: &[Frame]) -> Result<Vec<Frame>> {
    frames
        .windows(2)
        .map(|pair| photoreceptor(&pair[1], &pair[0]))
        .collect()
}

/// Mean wall time in milliseconds of one presynaptic-stage evaluation per P frame.
pub fn time_dpc(p_frames: &[Frame], params: &ParameterSet) -> Result<f64> {
    let kernels = Kernels::from_params(params)?;
    let mut state = DetectorState::new(kernels.d_max(), 1);
    // the history takes ownership, so copy outside the timed region
    let owned = p_frames.to_vec();
    let start = Instant::now();
    for p in owned {
        black_box(kernels.presynaptic(&p, &state, params.a)?);
        state.push_p(p);
    }
    Ok(start.elapsed().as_secs_f64() * 1e3 / p_frames.len().max(1) as f64)
}

/// One row per `(resize, radius)` cell. Repetitions are interleaved across
/// cells so that slow phases of a shared machine hit every cell alike.
pub fn bench(
    frames: &[Frame],
    base: &ParameterSet,
    radii: &[usize],
    resizes: &[f64],
    repetitions: usize,
) -> Result<Vec<BenchRow>> {
    if repetitions < 3 {
        return Err(Error::TooFewRepetitions(repetitions));
    }
    let mut cells = Vec::with_capacity(radii.len() * resizes.len());
    for &factor in resizes {
        let resized = frames
            .iter()
            .map(|f| resize_area(f, factor))
            .collect::<Result<Vec<_>>>()?;
        let p_frames = photoreceptor_frames(&resized)?;
        let (width, height) = (resized[0].width(), resized[0].height());
        for &radius in radii {
            let params = ParameterSet {
                radius,
                ..base.clone()
            }
            .validate()?;
            // one untimed pass to warm caches and the allocator
            time_dpc(&p_frames, &params)?;
            cells.push((radius, width, height, p_frames.clone(), params));
        }
    }

    let mut times = vec![Vec::with_capacity(repetitions); cells.len()];
    for _ in 0..repetitions {
        for (cell, samples) in cells.iter().zip(&mut times) {
            samples.push(time_dpc(&cell.3, &cell.4)?);
        }
    }

    Ok(cells
        .into_iter()
        .zip(&mut times)
        .map(|((radius, width, height, _, _), samples)| {
            let median_ms = median(samples);
            BenchRow {
                radius,
                width,
                height,
                median_ms,
                fps: 1e3 / median_ms,
            }
        })
        .collect())
}

pub fn write_bench<W: Write>(writer: W, rows: &[BenchRow]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(["r", "width", "height", "median_ms", "fps"])?;
    for r in rows {
        csv.write_record([
            r.radius.to_string(),
            r.width.to_string(),
            r.height.to_string(),
            format!("{:.6}", r.median_ms),
            format!("{:.3}", r.fps),
        ])?;
    }
    csv.flush()?;
    Ok(())
}
