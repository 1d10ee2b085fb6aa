//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test --test acceptance` (add `--release` for faster timings).

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use dlgmd::bench::bench;
use dlgmd::io::resize_area;
use dlgmd::pipeline::{confirm_collision, constant_delay_inhibition, inhibition, presynaptic_sum, excitation};
use dlgmd::stimulus::looming_half_extents;
use dlgmd::{
    contrast_ratio, gaussian_kernel, run_trace, sharpness, CappedRatio, Detector, DetectorState,
    Frame, Kernels, Motion, Normalization, ParameterSet, RunTrace, SceneSpec,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ORACLE_TOL: f64 = 1e-9;
const ORACLE_INSTANCES: usize = 24;
const ORACLE_BUDGET_S: f64 = 10.0;
const SPEED_BUDGET_S: f64 = 60.0;
const COMPETENT_RATIO: f64 = 10.0;
const MIN_EDGE_SPEED: f64 = 8.0;
const DA_HALF_WINDOW: usize = 5;
const RECEDING_LEVEL: f64 = 0.05;
const RECEDING_SETTLE_FRAMES: usize = 15;
const SHARPNESS_HALF_WINDOW: usize = 5;
const MONOTONICITY_TRIALS: usize = 50;
const SCALE_TOL: f64 = 1e-9;
const HALF_RES_RATIO: (f64, f64) = (0.15, 0.40);
const RADIUS_RATIO: (f64, f64) = (2.5, 6.0);
const BENCH_REPS: usize = 5;
const LOW_RES: (usize, usize) = (38, 22);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut banks = [0usize; 4];
    for i in 0..ORACLE_INSTANCES {
        let params = random_params(&mut rng, LATENCY_SHAPES[i % 3]);
        let history: Vec<Frame> = (0..4).map(|_| sparse_frame(&mut rng, 16, 16, 255.0)).collect();
        let (fast, slow, d_max) = presynaptic_pair(&params, &history);
        banks[d_max] += 1;
        worst = worst.max(max_abs_diff(&fast, &slow));
    }
    let secs = start.elapsed().as_secs_f64();
    let all_banks = banks[1..].iter().all(|&n| n > 0);
    outcome(
        worst <= ORACLE_TOL && secs < ORACLE_BUDGET_S && all_banks,
        format!(
            "{ORACLE_INSTANCES} instances, d_max 1/2/3 = {}/{}/{}, max |diff| {worst:.2e}, {secs:.2}s",
            banks[1], banks[2], banks[3]
        ),
    )
}

fn ablation_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut identical = 0;
    let mut total = 0;
    for preset in 1..=3 {
        let params = ParameterSet::preset(preset).unwrap();
        let kernels = Kernels::from_params(&params).unwrap();
        let w_i = gaussian_kernel(params.sigma_i, params.radius).unwrap();
        let w_e = gaussian_kernel(params.sigma_e, params.radius).unwrap();
        for _ in 0..10 {
            let previous = random_frame(&mut rng, 24, 18, 255.0);
            let current = random_frame(&mut rng, 24, 18, 255.0);
            let mut state = DetectorState::new(kernels.d_max(), 1);
            state.push_p(previous.clone());
            let single = constant_delay_inhibition(&previous, &w_i).unwrap();
            let banked = inhibition(&state, &kernels.inhibition).unwrap();
            let s_banked = kernels.presynaptic(&current, &state, params.a).unwrap();
            let s_single = presynaptic_sum(&excitation(&current, &w_e).unwrap(), &single, params.a).unwrap();
            total += 1;
            if kernels.d_max() == 1 && banked.data() == single.data() && s_banked.data() == s_single.data() {
                identical += 1;
            }
        }
    }
    outcome(identical == total, format!("{identical}/{total} bit-identical I and S (sets 1-3)"))
}

fn zero_fixpoint() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let statics = [
        Frame::zeros(40, 30),
        Frame::filled(40, 30, 255.0),
        random_frame(&mut rng, 40, 30, 255.0),
    ];
    let mut runs = 0;
    let mut violations = 0;
    for frame in &statics {
        for preset in 1..=9 {
            for mode in [Normalization::Offline, Normalization::Online] {
                let trace = run_trace(&vec![frame.clone(); 20], &ParameterSet::preset(preset).unwrap(), mode, "static").unwrap();
                runs += 1;
                violations += trace.reports.iter().filter(|r| r.k_raw != 0.0 || r.spike || r.alarm).count();
            }
        }
    }
    outcome(violations == 0, format!("{runs} static runs, {violations} frames with K != 0, spike or alarm"))
}

fn mean_steady_attenuation(frames: &[Frame], params: &ParameterSet) -> f64 {
    let t = run_trace(frames, params, Normalization::Offline, "sweep").unwrap();
    t.mean_attenuation(t.steady_state()).unwrap_or(f64::NAN)
}

fn speed_ordering() -> Outcome {
    let start = Instant::now();
    let scenes: Vec<Vec<Frame>> = (1..=4).map(|s| render(&sweep_scene(s as f64))).collect();
    let mut pass = true;
    let mut detail = Vec::new();
    for preset in [5, 6] {
        let params = ParameterSet::preset(preset).unwrap();
        let means: Vec<f64> = scenes.iter().map(|f| mean_steady_attenuation(f, &params)).collect();
        pass &= means.windows(2).all(|w| w[0] < w[1]);
        detail.push(format!(
            "set{preset} [{}]",
            means.iter().map(|m| format!("{m:.3}")).collect::<Vec<_>>().join(", ")
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < SPEED_BUDGET_S;
    outcome(pass, format!("dB at 1..4 px/frame: {}; {secs:.2}s", detail.join("; ")))
}

fn max_edge_speed(spec: &SceneSpec) -> f64 {
    let Motion::Looming(ap) = spec.motion else { unreachable!() };
    let h = looming_half_extents(&ap, spec.frames, spec.width, spec.height).unwrap();
    h.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
}

fn contrast(looming: &[Frame], translating: &[Frame]) -> CappedRatio {
    let p = ParameterSet::preset(7).unwrap();
    let l = run_trace(looming, &p, Normalization::Offline, "looming").unwrap();
    let t = run_trace(translating, &p, Normalization::Offline, "translating").unwrap();
    contrast_ratio(&l, &t, DA_HALF_WINDOW).unwrap()
}

fn looming_vs_translating() -> Outcome {
    let spec = looming_scene();
    let edge = max_edge_speed(&spec);
    let ratio = contrast(&render(&spec), &render(&translating_scene(1.0)));
    outcome(
        edge >= MIN_EDGE_SPEED && ratio.value() > COMPETENT_RATIO,
        format!("edge speed up to {edge:.1} px/frame, ratio {ratio} (> {COMPETENT_RATIO})"),
    )
}

fn receding_rejection() -> Outcome {
    let trace = run_trace(&render(&receding_scene()), &ParameterSet::preset(7).unwrap(), Normalization::Offline, "receding").unwrap();
    let k = trace.k_norm();
    let transient = trace.peak_frame();
    // first frame from which every later value stays below the level
    let settled = (transient..k.len()).find(|&t| k[t..].iter().all(|&v| v < RECEDING_LEVEL));
    match settled {
        Some(t) => outcome(
            t - transient <= RECEDING_SETTLE_FRAMES,
            format!("transient at frame {transient}, below {RECEDING_LEVEL} from frame {t} on ({} frames)", t - transient),
        ),
        None => outcome(false, format!("transient at frame {transient}, never settles below {RECEDING_LEVEL}")),
    }
}

fn looming_sharpness(trace: &RunTrace) -> CappedRatio {
    let peak = trace.peak_frame();
    let window = peak.saturating_sub(SHARPNESS_HALF_WINDOW)..=(peak + SHARPNESS_HALF_WINDOW).min(trace.len() - 1);
    sharpness(trace, window).unwrap()
}

fn latency_sharpening(traces: &[RunTrace], distributed: usize, constant: usize) -> Outcome {
    let d = looming_sharpness(&traces[distributed - 1]);
    let c = looming_sharpness(&traces[constant - 1]);
    outcome(
        d.value() > c.value(),
        format!("sharpness set{distributed} {d} vs set{constant} {c}"),
    )
}

fn inhibition_monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut violations = 0;
    for trial in 0..MONOTONICITY_TRIALS {
        let params = random_params(&mut rng, LATENCY_SHAPES[trial % 3]);
        let kernels = Kernels::from_params(&params).unwrap();
        let mut state = DetectorState::new(kernels.d_max(), 1);
        for _ in 0..kernels.d_max() {
            state.push_p(sparse_frame(&mut rng, 20, 20, 255.0));
        }
        let p = sparse_frame(&mut rng, 20, 20, 255.0);
        let weak = kernels.presynaptic(&p, &state, 1.0).unwrap();
        let strong = kernels.presynaptic(&p, &state, 2.0).unwrap();
        violations += strong.data().iter().zip(weak.data()).filter(|(s, w)| s > w).count();
    }
    outcome(violations == 0, format!("{MONOTONICITY_TRIALS} trials, {violations} pixels where S rose"))
}

fn contrast_scale_invariance() -> Outcome {
    let frames = render(&looming_scene());
    let halved: Vec<Frame> = frames.iter().map(|f| f.scaled(0.5)).collect();
    let params = ParameterSet::preset(7).unwrap();
    let (w, h) = (frames[0].width(), frames[0].height());
    let mut full = Detector::new(params.clone(), w, h, Normalization::Offline).unwrap();
    let mut half = Detector::new(params, w, h, Normalization::Offline).unwrap();
    let mut worst_db = 0.0f64;
    let mut inexact_s = 0;
    let mut defined_mismatch = 0;
    for (a, b) in frames.iter().zip(&halved) {
        let (ra, la) = full.step(a).unwrap();
        let (rb, lb) = half.step(b).unwrap();
        inexact_s += la.s.data().iter().zip(lb.s.data()).filter(|(x, y)| **x * 0.5 != **y).count();
        match (ra.attenuation_db, rb.attenuation_db) {
            (Some(x), Some(y)) => worst_db = worst_db.max((x - y).abs()),
            (None, None) => {}
            _ => defined_mismatch += 1,
        }
    }
    outcome(
        worst_db <= SCALE_TOL && inexact_s == 0 && defined_mismatch == 0,
        format!("max attenuation change {worst_db:.2e} dB, {inexact_s} S pixels not exactly halved"),
    )
}

fn complexity_scaling() -> Outcome {
    let spec = SceneSpec::new(512, 512, 24, Motion::Translating(translation(4.0, 4.0)));
    let frames = render(&spec);
    let rows = bench(&frames, &ParameterSet::preset(7).unwrap(), &[2, 4], &[1.0, 0.5], BENCH_REPS).unwrap();
    let time = |r: usize, w: usize| rows.iter().find(|row| row.radius == r && row.width == w).unwrap().median_ms;
    let half = time(4, 256) / time(4, 512);
    let radius = time(4, 512) / time(2, 512);
    let inside = |v: f64, (lo, hi): (f64, f64)| (lo..=hi).contains(&v);
    outcome(
        inside(half, HALF_RES_RATIO) && inside(radius, RADIUS_RATIO),
        format!(
            "512x512, {BENCH_REPS} reps: half-res ratio {half:.3} (in {HALF_RES_RATIO:?}), r 2->4 ratio {radius:.3} (in {RADIUS_RATIO:?})"
        ),
    )
}

fn low_resolution() -> Outcome {
    // the same pair rendered at 480x270 with geometry scaled to the height,
    // then area-averaged down by 0.08
    let scale = 270.0 / 128.0;
    let factor = 0.08;
    let looming = render(&SceneSpec::new(480, 270, LOOMING_FRAMES, Motion::Looming(looming_approach(scale))));
    let translating = render(&SceneSpec::new(480, 270, 60, Motion::Translating(translation(1.0, scale))));
    let shrink = |frames: Vec<Frame>| -> Vec<Frame> { frames.iter().map(|f| resize_area(f, factor).unwrap()).collect() };
    let (looming, translating) = (shrink(looming), shrink(translating));
    let size = (looming[0].width(), looming[0].height());
    let ratio = contrast(&looming, &translating);
    outcome(
        size == LOW_RES && ratio.value() > COMPETENT_RATIO,
        format!("{}x{}, preset 7 kernels unchanged, ratio {ratio} (> {COMPETENT_RATIO})", size.0, size.1),
    )
}

fn alarm_truth_table() -> Outcome {
    let mut checked = 0;
    let mut wrong = 0;
    for n_sp in 1..=3usize {
        for len in 0..=4usize {
            for bits in 0..(1u32 << len) {
                let pattern: Vec<bool> = (0..len).map(|i| bits >> (len - 1 - i) & 1 == 1).collect();
                let trailing = pattern.iter().rev().take_while(|&&s| s).count();
                let expected = trailing >= n_sp;

                let mut state = DetectorState::new(1, n_sp);
                for &s in &pattern {
                    state.push_spike(s);
                }
                let buffered: Vec<bool> = state.spikes().collect();
                checked += 1;
                if confirm_collision(&pattern, n_sp) != expected || confirm_collision(&buffered, n_sp) != expected {
                    wrong += 1;
                }
            }
        }
    }
    outcome(wrong == 0, format!("{checked} (pattern, n_sp) cases, {wrong} wrong"))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let looming = render(&looming_scene());
    let traces: Vec<RunTrace> = (1..=6)
        .map(|i| run_trace(&looming, &ParameterSet::preset(i).unwrap(), Normalization::Offline, format!("set{i}")).unwrap())
        .collect();

    let results: Vec<(&str, Outcome)> = vec![
        ("oracle equivalence", oracle_equivalence()),
        ("constant-latency ablation identity", ablation_identity()),
        ("zero-input fixpoint", zero_fixpoint()),
        ("speed-selectivity ordering (sets 5, 6)", speed_ordering()),
        ("looming vs translating contrast", looming_vs_translating()),
        ("receding rejection", receding_rejection()),
        ("sharpening set4 > set1", latency_sharpening(&traces, 4, 1)),
        ("sharpening set5 > set2", latency_sharpening(&traces, 5, 2)),
        ("sharpening set6 > set3", latency_sharpening(&traces, 6, 3)),
        ("inhibition monotonicity", inhibition_monotonicity()),
        ("contrast-scale invariance", contrast_scale_invariance()),
        ("complexity scaling", complexity_scaling()),
        ("low-resolution viability", low_resolution()),
        ("alarm logic truth table", alarm_truth_table()),
    ];

    let mut failed = 0;
    for (name, o) in &results {
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed ({:.1}s)",
        results.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
