//! Deterministic synthetic scenes: looming, receding and translating objects
//! drawn with hard (non anti-aliased) edges on a uniform background.
//!
//! Looming objects follow pinhole geometry: an object of physical half-size
//! `l` at distance `D` spans `focal * l / D` pixels from the image centre.
//! With constant approach speed the extent grows ever faster as `D` shrinks.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::frame::Frame;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Square,
    Disc,
}

impl FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "square" => Ok(Self::Square),
            "disc" => Ok(Self::Disc),
            other => Err(format!("unknown shape `{other}` (square|disc)")),
        }
    }
}

/// Straight-line approach toward the camera along the optical axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approach {
    /// Physical half-size of the object, metres.
    pub half_size: f64,
    /// Metres per frame.
    pub speed: f64,
    /// Metres at frame 0.
    pub start_distance: f64,
    /// Pinhole scale, pixels.
    pub focal: f64,
}

impl Default for Approach {
    fn default() -> Self {
        Self {
            half_size: 0.5,
            speed: 0.1,
            start_distance: 10.0,
            focal: 100.0,
        }
    }
}

/// Horizontal motion at constant size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Translation {
    /// Pixels per frame, positive to the right.
    pub pixel_speed: f64,
    /// Left edge at frame 0, pixels.
    pub start_x: f64,
    /// Top edge, pixels.
    pub vertical_position: f64,
    /// Side length, pixels.
    pub object_size: f64,
}

impl Default for Translation {
    fn default() -> Self {
        Self {
            pixel_speed: 1.0,
            start_x: 8.0,
            vertical_position: 24.0,
            object_size: 16.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Motion {
    Looming(Approach),
    /// Time reversal of the matching looming sequence.
    Receding(Approach),
    Translating(Translation),
}

impl Motion {
    pub fn kind(&self) -> &'static str {
        match self {
            Motion::Looming(_) => "looming",
            Motion::Receding(_) => "receding",
            Motion::Translating(_) => "translating",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SceneSpec {
    pub width: usize,
    pub height: usize,
    pub frames: usize,
    pub motion: Motion,
    pub shape: Shape,
    pub object_level: u8,
    pub background_level: u8,
}

impl SceneSpec {
    pub fn new(width: usize, height: usize, frames: usize, motion: Motion) -> Self {
        Self {
            width,
            height,
            frames,
            motion,
            shape: Shape::Square,
            object_level: 0,
            background_level: 255,
        }
    }

    pub fn with_shape(mut self, shape: Shape) -> Self {
        self.shape = shape;
        self
    }

    pub fn with_levels(mut self, object: u8, background: u8) -> Self {
        self.object_level = object;
        self.background_level = background;
        self
    }

    pub fn label(&self) -> String {
        format!("{}-{}x{}", self.motion.kind(), self.width, self.height)
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidScene(format!(
                "empty frame size {}x{}",
                self.width, self.height
            )));
        }
        if self.frames < 2 {
            return Err(Error::InvalidScene(format!(
                "need at least 2 frames, got {}",
                self.frames
            )));
        }
        match self.motion {
            Motion::Looming(ap) | Motion::Receding(ap) => {
                for (name, v) in [
                    ("start_distance", ap.start_distance),
                    ("speed", ap.speed),
                    ("half_size", ap.half_size),
                    ("focal", ap.focal),
                ] {
                    if !(v > 0.0) || !v.is_finite() {
                        return Err(Error::InvalidScene(format!("{name} must be positive, got {v}")));
                    }
                }
            }
            Motion::Translating(tr) => {
                if !(tr.pixel_speed > 0.0) || !tr.pixel_speed.is_finite() {
                    return Err(Error::InvalidScene(format!(
                        "pixel_speed must be positive, got {}",
                        tr.pixel_speed
                    )));
                }
                if !(tr.object_size >= 1.0) || !tr.object_size.is_finite() {
                    return Err(Error::InvalidScene(format!(
                        "object_size must be at least 1 pixel, got {}",
                        tr.object_size
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SceneSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} frames)", self.label(), self.frames)
    }
}

/// On-image half-extent of an approaching object for each frame of a looming
/// sequence, clamped to half the larger image side and to at least half a pixel.
pub fn looming_half_extents(
    approach: &Approach,
    frames: usize,
    width: usize,
    height: usize,
) -> Result<Vec<f64>> {
    let limit = width.max(height) as f64 / 2.0;
    (0..frames)
        .map(|t| {
            let distance = approach.start_distance - approach.speed * t as f64;
            if distance <= 0.0 {
                return Err(Error::ContactBeforeEnd { frame: t });
            }
            let h = approach.focal * approach.half_size / distance;
            Ok(h.clamp(0.5, limit))
        })
        .collect()
}

fn render_centered(spec: &SceneSpec, half_extent: f64) -> Frame {
    let (cx, cy) = (spec.width as f64 / 2.0, spec.height as f64 / 2.0);
    let (obj, bg) = (f64::from(spec.object_level), f64::from(spec.background_level));
    Frame::from_fn(spec.width, spec.height, |x, y| {
        let dx = x as f64 + 0.5 - cx;
        let dy = y as f64 + 0.5 - cy;
        let inside = match spec.shape {
            Shape::Square => dx.abs() <= half_extent && dy.abs() <= half_extent,
            Shape::Disc => dx * dx + dy * dy <= half_extent * half_extent,
        };
        if inside {
            obj
        } else {
            bg
        }
    })
}

fn render_translating(spec: &SceneSpec, tr: &Translation, t: usize) -> Result<Frame> {
    let left = tr.start_x + tr.pixel_speed * t as f64;
    let top = tr.vertical_position;
    let size = tr.object_size;
    let (obj, bg) = (f64::from(spec.object_level), f64::from(spec.background_level));
    let (cx, cy, radius) = (left + size / 2.0, top + size / 2.0, size / 2.0);
    let mut covered = 0usize;
    let frame = Frame::from_fn(spec.width, spec.height, |x, y| {
        let (px, py) = (x as f64 + 0.5, y as f64 + 0.5);
        let inside = match spec.shape {
            Shape::Square => px >= left && px < left + size && py >= top && py < top + size,
            Shape::Disc => {
                let (dx, dy) = (px - cx, py - cy);
                dx * dx + dy * dy <= radius * radius
            }
        };
        if inside {
            covered += 1;
            obj
        } else {
            bg
        }
    });
    if covered == 0 {
        return Err(Error::ObjectOutOfView { frame: t });
    }
    Ok(frame)
}

/// Renders every frame of the scene.
pub fn render_sequence(spec: &SceneSpec) -> Result<Vec<Frame>> {
    spec.validate()?;
    match &spec.motion {
        Motion::Looming(ap) => Ok(looming_half_extents(ap, spec.frames, spec.width, spec.height)?
            .into_iter()
            .map(|h| render_centered(spec, h))
            .collect()),
        Motion::Receding(ap) => {
            let mut frames: Vec<Frame> =
                looming_half_extents(ap, spec.frames, spec.width, spec.height)?
                    .into_iter()
                    .map(|h| render_centered(spec, h))
                    .collect();
            frames.reverse();
            Ok(frames)
        }
        Motion::Translating(tr) => (0..spec.frames)
            .map(|t| render_translating(spec, tr, t))
            .collect(),
    }
}

/// One translating sequence per speed, identical otherwise.
pub fn speed_sweep(base: &SceneSpec, speeds: &[f64]) -> Result<Vec<Vec<Frame>>> {
    let Motion::Translating(tr) = base.motion else {
        return Err(Error::InvalidScene("speed sweep needs a translating scene".into()));
    };
    if speeds.is_empty() {
        return Err(Error::InvalidScene("speed sweep needs at least one speed".into()));
    }
    if let Some(bad) = speeds.iter().find(|&&s| !(s >= 1.0)) {
        return Err(Error::InvalidScene(format!(
            "sweep speeds must be at least 1 pixel/frame, got {bad}"
        )));
    }
    speeds
        .iter()
        .map(|&pixel_speed| {
            let spec = SceneSpec {
                motion: Motion::Translating(Translation { pixel_speed, ..tr }),
                ..base.clone()
            };
            render_sequence(&spec)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn translating(speed: f64) -> SceneSpec {
        SceneSpec::new(
            64,
            32,
            10,
            Motion::Translating(Translation {
                pixel_speed: speed,
                start_x: 4.0,
                vertical_position: 8.0,
                object_size: 4.0,
            }),
        )
    }

    fn left_edge(frame: &Frame) -> usize {
        (0..frame.width())
            .find(|&x| (0..frame.height()).any(|y| frame.get(x, y) == 0.0))
            .unwrap()
    }

    #[test]
    fn translating_edge_advances_one_pixel_per_frame() {
        let frames = render_sequence(&translating(1.0)).unwrap();
        for (t, f) in frames.iter().enumerate() {
            assert_eq!(left_edge(f), 4 + t);
            let dark = f.data().iter().filter(|&&v| v == 0.0).count();
            assert_eq!(dark, 16);
        }
    }

    #[test]
    fn looming_extent_accelerates() {
        let ap = Approach::default();
        let h = looming_half_extents(&ap, 20, 1000, 1000).unwrap();
        assert!((h[0] - 5.0).abs() < 1e-12);
        assert!((h[1] - 50.0 / 9.9).abs() < 1e-12);
        assert!((h[2] - 50.0 / 9.8).abs() < 1e-12);
        assert!((h[1] - 5.05).abs() < 0.001 && (h[2] - 5.10).abs() < 0.003);
        for w in h.windows(3) {
            assert!(w[2] - 2.0 * w[1] + w[0] > 0.0);
        }
    }

    #[test]
    fn looming_contact_is_an_error() {
        let spec = SceneSpec::new(32, 32, 101, Motion::Looming(Approach::default()));
        assert!(matches!(
            render_sequence(&spec),
            Err(Error::ContactBeforeEnd { frame: 100 })
        ));
    }

    #[test]
    fn receding_is_time_reversed_looming() {
        let ap = Approach::default();
        let loom = render_sequence(&SceneSpec::new(48, 40, 30, Motion::Looming(ap))).unwrap();
        let rec = render_sequence(&SceneSpec::new(48, 40, 30, Motion::Receding(ap))).unwrap();
        for i in 0..30 {
            assert_eq!(rec[i], loom[29 - i]);
        }
    }

    #[test]
    fn rendering_is_deterministic() {
        let spec = SceneSpec::new(40, 40, 12, Motion::Looming(Approach::default())).with_shape(Shape::Disc);
        assert_eq!(render_sequence(&spec).unwrap(), render_sequence(&spec).unwrap());
    }

    #[test]
    fn tiny_object_still_covers_a_pixel() {
        let ap = Approach {
            start_distance: 1000.0,
            ..Approach::default()
        };
        let frames = render_sequence(&SceneSpec::new(16, 16, 2, Motion::Looming(ap))).unwrap();
        assert!(frames[0].data().contains(&0.0));
    }

    #[test]
    fn object_leaving_view_is_an_error() {
        let mut spec = translating(10.0);
        spec.frames = 20;
        assert!(matches!(
            render_sequence(&spec),
            Err(Error::ObjectOutOfView { .. })
        ));
    }

    #[test]
    fn sweep_produces_one_sequence_per_speed() {
        let seqs = speed_sweep(&translating(1.0), &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(seqs.len(), 4);
        for s in &seqs {
            assert_eq!(s.len(), 10);
            assert!(s.iter().all(|f| f.width() == 64 && f.height() == 32));
        }
        assert_eq!(left_edge(&seqs[2][3]), 4 + 9);
        assert!(speed_sweep(&translating(1.0), &[0.0]).is_err());
        assert!(speed_sweep(&translating(1.0), &[]).is_err());
    }

    #[test]
    fn invalid_specs() {
        let mut spec = translating(1.0);
        spec.frames = 1;
        assert!(render_sequence(&spec).is_err());
        let bad = Approach {
            speed: 0.0,
            ..Approach::default()
        };
        assert!(render_sequence(&SceneSpec::new(8, 8, 4, Motion::Looming(bad))).is_err());
    }
}
