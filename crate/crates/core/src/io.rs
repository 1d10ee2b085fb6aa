//! Frame files, resizing, and CSV reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use image::DynamicImage;

use crate::analysis::SweepCell;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::pipeline::{FrameReport, LayerOutputs};

const FRAME_EXTENSIONS: [&str; 4] = ["pgm", "pnm", "ppm", "png"];

pub const REPORT_HEADER: [&str; 8] = [
    "frame_index",
    "ffi",
    "t_de",
    "k_raw",
    "k_norm",
    "attenuation_db",
    "spike",
    "alarm",
];

fn frame_sort_key(path: &Path) -> (u64, String) {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or_default()
        .to_owned();
    let digits: String = stem.chars().filter(char::is_ascii_digit).collect();
    (digits.parse().unwrap_or(u64::MAX), stem)
}

fn is_frame_file(path: &Path) -> bool {
    path.is_file()
        && path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| FRAME_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
            .unwrap_or(false)
}

/// Luminance of a decoded image. Colour inputs use 0.299 R + 0.587 G + 0.114 B.
pub fn image_luminance(image: &DynamicImage) -> Result<Frame> {
    let (w, h) = (image.width() as usize, image.height() as usize);
    if image.color().has_color() {
        let rgb = image.to_rgb8();
        let data = rgb
            .pixels()
            .map(|p| {
                let [r, g, b] = p.0;
                (299.0 * f64::from(r) + 587.0 * f64::from(g) + 114.0 * f64::from(b)) / 1000.0
            })
            .collect();
        Frame::new(w, h, data)
    } else {
        Frame::from_u8(w, h, image.to_luma8().as_raw())
    }
}

pub fn read_frame(path: &Path) -> Result<Frame> {
    let unreadable = |reason: String| Error::UnreadableFrame {
        path: path.to_path_buf(),
        reason,
    };
    let image = image::ImageReader::open(path)
        .map_err(|e| unreadable(e.to_string()))?
        .with_guessed_format()
        .map_err(|e| unreadable(e.to_string()))?
        .decode()
        .map_err(|e| unreadable(e.to_string()))?;
    image_luminance(&image).map_err(|e| unreadable(e.to_string()))
}

/// Loads every frame file in `dir` in index order.
pub fn load_sequence(dir: &Path) -> Result<Vec<Frame>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::UnreadableFrame {
        path: dir.to_path_buf(),
        reason: e.to_string(),
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| is_frame_file(p))
        .collect();
    if paths.len() < 2 {
        return Err(Error::EmptyDirectory {
            path: dir.to_path_buf(),
            found: paths.len(),
        });
    }
    paths.sort_by_key(|p| frame_sort_key(p));

    let mut frames: Vec<Frame> = Vec::with_capacity(paths.len());
    for path in &paths {
        let frame = read_frame(path)?;
        if let Some(first) = frames.first() {
            if !first.same_shape(&frame) {
                return Err(Error::MixedDimensions {
                    path: path.clone(),
                    width: frame.width(),
                    height: frame.height(),
                    expected_width: first.width(),
                    expected_height: first.height(),
                });
            }
        }
        frames.push(frame);
    }
    Ok(frames)
}

/// Binary 8-bit graymap (P5). Values are rounded and saturated to 0..=255.
pub fn write_pgm(path: &Path, frame: &Frame) -> Result<()> {
    let mut out = Vec::with_capacity(frame.len() + 32);
    write!(out, "P5\n{} {}\n255\n", frame.width(), frame.height())?;
    out.extend_from_slice(&frame.to_u8());
    fs::write(path, out)?;
    Ok(())
}

/// Writes `0001.pgm`, `0002.pgm`, … into `dir`, creating it if needed.
pub fn write_sequence(dir: &Path, frames: &[Frame]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let digits = frames.len().to_string().len().max(4);
    frames
        .iter()
        .enumerate()
        .map(|(i, frame)| {
            let path = dir.join(format!("{:0digits$}.pgm", i + 1));
            write_pgm(&path, frame)?;
            Ok(path)
        })
        .collect()
}

/// Overlap of each output cell with the source cells along one axis,
/// as `(first_source_index, weights)`.
fn area_spans(src: usize, dst: usize) -> Vec<(usize, Vec<f64>)> {
    let scale = src as f64 / dst as f64;
    (0..dst)
        .map(|i| {
            let lo = i as f64 * scale;
            let hi = ((i + 1) as f64 * scale).min(src as f64);
            let first = lo.floor() as usize;
            let last = (hi.ceil() as usize).min(src);
            let weights = (first..last)
                .map(|j| (hi.min((j + 1) as f64) - lo.max(j as f64)).max(0.0))
                .collect();
            (first, weights)
        })
        .collect()
}

/// Box (area-average) downsampling. Output sides are `max(1, round(side * factor))`.
pub fn resize_area(frame: &Frame, factor: f64) -> Result<Frame> {
    if !(factor > 0.0 && factor <= 1.0) {
        return Err(Error::InvalidFactor(factor));
    }
    if factor == 1.0 {
        return Ok(frame.clone());
    }
    let out_w = ((frame.width() as f64 * factor).round() as usize).max(1);
    let out_h = ((frame.height() as f64 * factor).round() as usize).max(1);
    let xs = area_spans(frame.width(), out_w);
    let ys = area_spans(frame.height(), out_h);

    let mut data = Vec::with_capacity(out_w * out_h);
    for (y0, wy) in &ys {
        for (x0, wx) in &xs {
            let mut acc = 0.0;
            let mut area = 0.0;
            for (dy, &ay) in wy.iter().enumerate() {
                let row = frame.row(y0 + dy);
                for (dx, &ax) in wx.iter().enumerate() {
                    acc += ay * ax * row[x0 + dx];
                    area += ay * ax;
                }
            }
            data.push(if area > 0.0 { acc / area } else { 0.0 });
        }
    }
    Frame::new(out_w, out_h, data)
}

fn format_value(v: f64) -> String {
    format!("{v}")
}

/// One CSV row per frame with the fixed report columns.
pub fn write_report<W: Write>(writer: W, reports: &[FrameReport]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(REPORT_HEADER)?;
    for r in reports {
        csv.write_record([
            r.frame_index.to_string(),
            format_value(r.ffi),
            format_value(r.t_de),
            format_value(r.k_raw),
            format_value(r.k_norm),
            r.attenuation_db.map(format_value).unwrap_or_default(),
            u8::from(r.spike).to_string(),
            u8::from(r.alarm).to_string(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

pub fn write_sweep<W: Write>(writer: W, cells: &[SweepCell]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(["speed", "sigma_e", "sigma_i", "mean_attenuation_db"])?;
    for c in cells {
        csv.write_record([
            format_value(c.speed),
            format_value(c.sigma_e),
            format_value(c.sigma_i),
            c.mean_attenuation_db.map(format_value).unwrap_or_default(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

/// Writes P, S and G layers as heat-map graymaps scaled to each frame's maximum.
pub fn dump_layers(dir: &Path, frame_index: usize, layers: &LayerOutputs) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (name, layer) in [("p", &layers.p), ("s", &layers.s), ("g", &layers.g)] {
        let max = layer.max();
        let scaled = if max > 0.0 {
            layer.scaled(255.0 / max)
        } else {
            layer.clone()
        };
        write_pgm(&dir.join(format!("{name}_{frame_index:04}.pgm")), &scaled)?;
    }
    Ok(())
}
