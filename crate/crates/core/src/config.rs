//! Flat `key = value` run configuration.
//!
//! A config file holds one assignment per line; `#` starts a comment.
//! Later assignments override earlier ones, so command-line overrides are
//! simply appended after the file's entries. Unknown keys are rejected.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::params::ParameterSet;
use crate::pipeline::Normalization;
use crate::stimulus::{Approach, Motion, SceneSpec, Shape, Translation};

pub const KNOWN_KEYS: &[&str] = &[
    // input
    "input_dir",
    "scene",
    "width",
    "height",
    "frames",
    "shape",
    "object_level",
    "background_level",
    "half_size",
    "speed",
    "start_distance",
    "focal",
    "pixel_speed",
    "start_x",
    "vertical_position",
    "object_size",
    // detector
    "preset",
    "sigma_e",
    "sigma_i",
    "a",
    "alpha",
    "beta",
    "lambda",
    "radius",
    "k",
    "t0",
    "m",
    "t_mp",
    "n_sp",
    "omega",
    "latency",
    // run
    "resize",
    "normalization",
    "report",
    "dump_dir",
    // bench
    "bench_repetitions",
    "bench_radii",
    "bench_resizes",
    // sweep
    "sweep_speeds",
    "sweep_sigma_e",
    "sweep_sigma_i",
];

/// One `key = value` assignment and where it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub origin: String,
}

fn parse_assignment(text: &str, origin: String) -> Result<Entry> {
    let Some((key, value)) = text.split_once('=') else {
        return Err(Error::Config {
            origin,
            message: format!("expected `key = value`, got `{text}`"),
        });
    };
    let key = key.trim();
    if !KNOWN_KEYS.contains(&key) {
        return Err(Error::Config {
            origin,
            message: format!("unknown key `{key}`"),
        });
    }
    Ok(Entry {
        key: key.to_owned(),
        value: value.trim().to_owned(),
        origin,
    })
}

/// Parses config text; `name` labels errors with `name:line`.
pub fn parse_config(text: &str, name: &str) -> Result<Vec<Entry>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| parse_assignment(line, format!("{name}:{}", i + 1)))
        })
        .collect()
}

pub fn read_config_file(path: &Path) -> Result<Vec<Entry>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config {
        origin: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text, &path.display().to_string())
}

/// Parses a `key=value` command-line override.
pub fn parse_override(text: &str) -> Result<Entry> {
    parse_assignment(text, format!("--set {text}"))
}

#[derive(Clone, Debug, PartialEq)]
pub enum InputSource {
    Directory(PathBuf),
    Synthetic(SceneSpec),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchOptions {
    pub repetitions: usize,
    pub radii: Vec<usize>,
    pub resizes: Vec<f64>,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            repetitions: 5,
            radii: vec![2, 3, 4, 6],
            resizes: vec![1.0, 0.5],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepOptions {
    pub speeds: Vec<f64>,
    pub sigma_e: Vec<f64>,
    pub sigma_i: Vec<f64>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            speeds: vec![1.0, 2.0, 3.0, 4.0],
            sigma_e: vec![0.35, 0.7, 1.0],
            sigma_i: vec![1.0, 1.8, 2.5],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub input: InputSource,
    pub params: ParameterSet,
    pub resize: f64,
    pub normalization: Normalization,
    pub report: Option<PathBuf>,
    pub dump_dir: Option<PathBuf>,
    pub bench: BenchOptions,
    pub sweep: SweepOptions,
}

/// Last-wins view over a list of entries.
struct Lookup<'a> {
    entries: &'a [Entry],
}

impl<'a> Lookup<'a> {
    fn entry(&self, key: &str) -> Option<&'a Entry> {
        self.entries.iter().rev().find(|e| e.key == key)
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.entry(key) {
            None => Ok(None),
            Some(e) => e.value.parse::<T>().map(Some).map_err(|err| Error::Config {
                origin: e.origin.clone(),
                message: format!("invalid value `{}` for `{key}`: {err}", e.value),
            }),
        }
    }

    fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.get(key)?.unwrap_or(default))
    }

    fn list<T: FromStr>(&self, key: &str, default: Vec<T>) -> Result<Vec<T>>
    where
        T::Err: std::fmt::Display,
    {
        let Some(e) = self.entry(key) else {
            return Ok(default);
        };
        e.value
            .split(',')
            .map(|item| {
                item.trim().parse::<T>().map_err(|err| Error::Config {
                    origin: e.origin.clone(),
                    message: format!("invalid list item `{}` for `{key}`: {err}", item.trim()),
                })
            })
            .collect()
    }

    fn origin(&self, key: &str) -> String {
        self.entry(key)
            .map(|e| e.origin.clone())
            .unwrap_or_else(|| "config".to_owned())
    }
}

fn params_from(lookup: &Lookup) -> Result<ParameterSet> {
    let mut p = match lookup.entry("preset") {
        Some(e) => ParameterSet::by_name(&e.value).map_err(|err| Error::Config {
            origin: e.origin.clone(),
            message: err.to_string(),
        })?,
        None => ParameterSet::default(),
    };
    macro_rules! overlay {
        ($($field:ident),*) => {
            $(if let Some(v) = lookup.get(stringify!($field))? { p.$field = v; })*
        };
    }
    overlay!(sigma_e, sigma_i, a, alpha, beta, lambda, radius, k, t0, m, t_mp, n_sp, omega);
    if let Some(q) = lookup.get("latency")? {
        p.quantization = q;
    }
    Ok(p)
}

fn scene_from(lookup: &Lookup, kind: &str) -> Result<SceneSpec> {
    let width = lookup.get_or("width", 128usize)?;
    let height = lookup.get_or("height", 128usize)?;
    let frames = lookup.get_or("frames", 60usize)?;
    let approach = Approach {
        half_size: lookup.get_or("half_size", Approach::default().half_size)?,
        speed: lookup.get_or("speed", Approach::default().speed)?,
        start_distance: lookup.get_or("start_distance", Approach::default().start_distance)?,
        focal: lookup.get_or("focal", Approach::default().focal)?,
    };
    let motion = match kind {
        "looming" => Motion::Looming(approach),
        "receding" => Motion::Receding(approach),
        "translating" => {
            let object_size = lookup.get_or("object_size", Translation::default().object_size)?;
            let default_top = ((height as f64 - object_size) / 2.0).max(0.0).floor();
            Motion::Translating(Translation {
                pixel_speed: lookup.get_or("pixel_speed", 1.0)?,
                start_x: lookup.get_or("start_x", Translation::default().start_x)?,
                vertical_position: lookup.get_or("vertical_position", default_top)?,
                object_size,
            })
        }
        other => {
            return Err(Error::Config {
                origin: lookup.origin("scene"),
                message: format!("unknown scene `{other}` (looming|receding|translating)"),
            })
        }
    };
    let spec = SceneSpec {
        shape: lookup.get_or("shape", Shape::Square)?,
        object_level: lookup.get_or("object_level", 0u8)?,
        background_level: lookup.get_or("background_level", 255u8)?,
        ..SceneSpec::new(width, height, frames, motion)
    };
    spec.validate().map_err(|err| Error::Config {
        origin: lookup.origin("scene"),
        message: err.to_string(),
    })?;
    Ok(spec)
}

impl RunConfig {
    pub fn from_entries(entries: &[Entry]) -> Result<Self> {
        let lookup = Lookup { entries };
        let input = match (lookup.entry("input_dir"), lookup.entry("scene")) {
            (Some(dir), None) => InputSource::Directory(PathBuf::from(&dir.value)),
            (None, Some(scene)) => InputSource::Synthetic(scene_from(&lookup, &scene.value)?),
            (Some(dir), Some(_)) => {
                return Err(Error::Config {
                    origin: dir.origin.clone(),
                    message: "set exactly one of `input_dir` and `scene`".into(),
                })
            }
            (None, None) => {
                return Err(Error::Config {
                    origin: "config".into(),
                    message: "no input: set `input_dir` or `scene`".into(),
                })
            }
        };

        let params = params_from(&lookup)?.validate().map_err(|err| Error::Config {
            origin: "parameters".into(),
            message: err.to_string(),
        })?;

        let resize = lookup.get_or("resize", 1.0f64)?;
        if !(resize > 0.0 && resize <= 1.0) {
            return Err(Error::Config {
                origin: lookup.origin("resize"),
                message: format!("resize factor must lie in (0, 1], got {resize}"),
            });
        }

        let bench = BenchOptions {
            repetitions: lookup.get_or("bench_repetitions", BenchOptions::default().repetitions)?,
            radii: lookup.list("bench_radii", BenchOptions::default().radii)?,
            resizes: lookup.list("bench_resizes", BenchOptions::default().resizes)?,
        };
        let sweep = SweepOptions {
            speeds: lookup.list("sweep_speeds", SweepOptions::default().speeds)?,
            sigma_e: lookup.list("sweep_sigma_e", SweepOptions::default().sigma_e)?,
            sigma_i: lookup.list("sweep_sigma_i", SweepOptions::default().sigma_i)?,
        };

        Ok(Self {
            input,
            params,
            resize,
            normalization: lookup.get_or("normalization", Normalization::Offline)?,
            report: lookup.get::<PathBuf>("report")?,
            dump_dir: lookup.get::<PathBuf>("dump_dir")?,
            bench,
            sweep,
        })
    }

    /// Reads an optional config file and applies `key=value` overrides on top.
    pub fn load(file: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let mut entries = match file {
            Some(path) => read_config_file(path)?,
            None => Vec::new(),
        };
        for o in overrides {
            entries.push(parse_override(o)?);
        }
        Self::from_entries(&entries)
    }
}
