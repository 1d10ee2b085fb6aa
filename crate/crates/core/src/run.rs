//! Drivers behind the command-line subcommands.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::analysis::{attenuation_sweep, RunTrace, SweepCell};
use crate::bench::{bench, BenchRow};
use crate::config::{InputSource, RunConfig};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::io::{dump_layers, load_sequence, resize_area, write_report, write_sequence};
use crate::pipeline::{finalize_offline, Detector, Normalization};
use crate::stimulus::{render_sequence, Motion};

/// Loads or renders the configured input and applies the resize factor.
pub fn load_input(config: &RunConfig) -> Result<Vec<Frame>> {
    let frames = match &config.input {
        InputSource::Directory(dir) => load_sequence(dir)?,
        InputSource::Synthetic(spec) => render_sequence(spec)?,
    };
    frames.iter().map(|f| resize_area(f, config.resize)).collect()
}

pub fn input_label(config: &RunConfig) -> String {
    match &config.input {
        InputSource::Directory(dir) => dir.display().to_string(),
        InputSource::Synthetic(spec) => spec.label(),
    }
}

/// Runs the detector over the configured input, writing the CSV report to
/// `config.report` (or `out` when unset) and optional layer dumps.
pub fn run<W: Write>(config: &RunConfig, out: W) -> Result<RunTrace> {
    let frames = load_input(config)?;
    let (w, h) = (frames[0].width(), frames[0].height());
    let mut detector = Detector::new(config.params.clone(), w, h, config.normalization)?;

    let mut reports = Vec::with_capacity(frames.len());
    let mut p_sums = Vec::with_capacity(frames.len());
    let mut s_sums = Vec::with_capacity(frames.len());
    for (i, frame) in frames.iter().enumerate() {
        let (report, layers) = detector.step(frame)?;
        if let Some(dir) = &config.dump_dir {
            dump_layers(dir, i, &layers)?;
        }
        p_sums.push(layers.p_sum());
        s_sums.push(layers.s_sum());
        reports.push(report);
    }
    if config.normalization == Normalization::Offline {
        finalize_offline(&mut reports, detector.params(), detector.d_max());
    }

    match &config.report {
        Some(path) => write_report(BufWriter::new(File::create(path)?), &reports)?,
        None => write_report(out, &reports)?,
    }
    Ok(RunTrace {
        reports,
        p_sums,
        s_sums,
        params: detector.params().clone(),
        label: input_label(config),
        d_max: detector.d_max(),
    })
}

/// Renders the configured synthetic scene into `dir` as numbered graymaps.
pub fn synth(config: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let InputSource::Synthetic(spec) = &config.input else {
        return Err(Error::Config {
            origin: "synth".into(),
            message: "synth needs a `scene`, not `input_dir`".into(),
        });
    };
    let frames = render_sequence(spec)?;
    write_sequence(dir, &frames)
}

/// Attenuation grid over the configured speeds and kernel spreads.
pub fn sweep(config: &RunConfig) -> Result<Vec<SweepCell>> {
    let InputSource::Synthetic(spec) = &config.input else {
        return Err(Error::Config {
            origin: "sweep".into(),
            message: "sweep needs a translating `scene`".into(),
        });
    };
    if !matches!(spec.motion, Motion::Translating(_)) {
        return Err(Error::Config {
            origin: "sweep".into(),
            message: format!("sweep needs a translating scene, got {}", spec.motion.kind()),
        });
    }
    attenuation_sweep(
        spec,
        &config.sweep.speeds,
        &config.sweep.sigma_e,
        &config.sweep.sigma_i,
        &config.params,
    )
}

/// Presynaptic-stage timings over the configured radii and resize factors.
pub fn run_bench(config: &RunConfig) -> Result<Vec<BenchRow>> {
    let frames = match &config.input {
        InputSource::Directory(dir) => load_sequence(dir)?,
        InputSource::Synthetic(spec) => render_sequence(spec)?,
    };
    bench(
        &frames,
        &config.params,
        &config.bench.radii,
        &config.bench.resizes,
        config.bench.repetitions,
    )
}

/// Writes to `path`, or stdout for `None` / `-`.
pub fn output_writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) if p != Path::new("-") => Ok(Box::new(BufWriter::new(File::create(p)?))),
        _ => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}
