//! Scenes and random inputs shared by the integration tests.
#![allow(dead_code)]

use dlgmd::{
    dpc_oracle, render_sequence, Approach, DetectorState, Frame, Kernels, Motion, ParameterSet,
    SceneSpec, Translation,
};
use rand::Rng;

/// Looming square used wherever a test needs "the" looming scene: 128×128,
/// 60 frames, edges stepping ~9 px/frame just before the silhouette fills the view.
pub fn looming_approach(scale: f64) -> Approach {
    Approach {
        half_size: 2.0,
        speed: 0.75,
        start_distance: 45.0,
        focal: 100.0 * scale,
    }
}

pub const LOOMING_FRAMES: usize = 60;

pub fn looming_scene() -> SceneSpec {
    SceneSpec::new(128, 128, LOOMING_FRAMES, Motion::Looming(looming_approach(1.0)))
}

pub fn receding_scene() -> SceneSpec {
    SceneSpec::new(128, 128, LOOMING_FRAMES, Motion::Receding(looming_approach(1.0)))
}

/// 16 px square crossing at `speed` px/frame, `scale` times larger overall.
pub fn translation(speed: f64, scale: f64) -> Translation {
    Translation {
        pixel_speed: speed * scale,
        start_x: 20.0 * scale,
        vertical_position: 56.0 * scale,
        object_size: 16.0 * scale,
    }
}

pub fn translating_scene(speed: f64) -> SceneSpec {
    SceneSpec::new(128, 128, 60, Motion::Translating(translation(speed, 1.0)))
}

/// The 128×64 sweep scene: 16 px square, 24 frames.
pub fn sweep_scene(speed: f64) -> SceneSpec {
    SceneSpec::new(
        128,
        64,
        24,
        Motion::Translating(Translation {
            pixel_speed: speed,
            start_x: 8.0,
            vertical_position: 24.0,
            object_size: 16.0,
        }),
    )
}

pub fn render(spec: &SceneSpec) -> Vec<Frame> {
    render_sequence(spec).expect("scene renders")
}

pub fn random_frame<R: Rng>(rng: &mut R, w: usize, h: usize, max: f64) -> Frame {
    Frame::from_fn(w, h, |_, _| rng.random_range(0.0..max))
}

/// Sparse random frame: most pixels zero, like a real P layer.
pub fn sparse_frame<R: Rng>(rng: &mut R, w: usize, h: usize, max: f64) -> Frame {
    Frame::from_fn(w, h, |_, _| {
        if rng.random_bool(0.3) {
            rng.random_range(0.0..max)
        } else {
            0.0
        }
    })
}

/// Latency shapes giving one-, two- and three-frame banks.
pub const LATENCY_SHAPES: [(f64, f64, f64); 3] = [(0.0, 0.0, 0.0), (-0.1, 0.5, 0.7), (0.5, 0.4, 0.7)];

/// A random parameter set with the given latency shape.
pub fn random_params<R: Rng>(rng: &mut R, shape: (f64, f64, f64)) -> ParameterSet {
    let (alpha, beta, lambda) = shape;
    ParameterSet {
        alpha,
        beta,
        lambda,
        sigma_e: rng.random_range(0.3..1.6),
        sigma_i: rng.random_range(0.8..3.0),
        a: rng.random_range(0.0..2.5),
        radius: rng.random_range(2..=4),
        ..ParameterSet::constants()
    }
}

/// Optimized presynaptic output and the oracle's, for `history` (newest first,
/// `history[0]` is the current P frame).
pub fn presynaptic_pair(params: &ParameterSet, history: &[Frame]) -> (Frame, Frame, usize) {
    let kernels = Kernels::from_params(params).unwrap();
    let d_max = kernels.d_max();
    let mut state = DetectorState::new(d_max, 1);
    for p in history[1..].iter().rev() {
        state.push_p(p.clone());
    }
    let fast = kernels.presynaptic(&history[0], &state, params.a).unwrap();
    let slow = dpc_oracle(
        history,
        params.sigma_e,
        params.sigma_i,
        params.alpha,
        params.beta,
        params.lambda,
        params.a,
        params.radius,
    );
    (fast, slow, d_max)
}

pub fn max_abs_diff(a: &Frame, b: &Frame) -> f64 {
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
