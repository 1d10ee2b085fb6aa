//! Reference presynaptic layer by literal summation.
//!
//! Evaluates excitation, delayed inhibition, and the rectified sum pixel by
//! pixel with explicit loops over every kernel offset and every delay. Kernel
//! weights and delays are recomputed here from their closed forms and do not
//! go through [`crate::kernels`] or [`crate::conv`]. Meant for frames up to
//! roughly 32x32.

use std::f64::consts::PI;

use crate::frame::Frame;

/// Presynaptic output `S` for `history[0]` (the current P frame), where
/// `history[d]` is the P frame `d` steps earlier. Missing frames count as zero.
/// Delays use round-half-up latency quantization floored at one frame.
#[allow(clippy::too_many_arguments)]
pub fn dpc_oracle(
    history: &[Frame],
    sigma_e: f64,
    sigma_i: f64,
    alpha: f64,
    beta: f64,
    lambda: f64,
    a: f64,
    r: usize,
) -> Frame {
    let current = &history[0];
    let (w, h) = (current.width() as i64, current.height() as i64);
    let r = r as i64;

    let gauss = |sigma: f64, u: i64, v: i64| -> f64 {
        let d2 = (u * u + v * v) as f64;
        (-d2 / (2.0 * sigma * sigma)).exp() / (2.0 * PI * sigma * sigma)
    };
    let delay = |u: i64, v: i64| -> usize {
        let d2 = (u * u + v * v) as f64;
        let tau = alpha + 1.0 / (beta + (-lambda * lambda * d2).exp());
        let rounded = (tau + 0.5).floor();
        if rounded < 1.0 {
            1
        } else {
            rounded as usize
        }
    };
    let sample = |frame: &Frame, x: i64, y: i64| -> f64 {
        if x < 0 || y < 0 || x >= w || y >= h {
            0.0
        } else {
            frame.data()[(y * w + x) as usize]
        }
    };

    let mut out = Vec::with_capacity((w * h) as usize);
    for y in 0..h {
        for x in 0..w {
            let mut e = 0.0;
            for v in -r..=r {
                for u in -r..=r {
                    e += sample(current, x - u, y - v) * gauss(sigma_e, u, v);
                }
            }
            let mut i = 0.0;
            for v in -r..=r {
                for u in -r..=r {
                    let d = delay(u, v);
                    if let Some(past) = history.get(d) {
                        i += sample(past, x - u, y - v) * gauss(sigma_i, u, v);
                    }
                }
            }
            out.push((e - a * i).max(0.0));
        }
    }
    Frame::new(current.width(), current.height(), out).expect("rectified output is non-negative")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_history_gives_zero() {
        let hist = vec![Frame::zeros(8, 8); 3];
        assert_eq!(dpc_oracle(&hist, 1.0, 2.0, -0.1, 0.5, 0.7, 1.5, 3), Frame::zeros(8, 8));
    }

    #[test]
    fn impulse_one_frame_apart() {
        // previous frame holds an impulse, current frame the same impulse:
        // S = relu(G_e - a * G_i) stamped at the impulse
        let (se, si, a, r) = (0.8, 1.6, 1.5, 2);
        let imp = Frame::from_fn(9, 9, |x, y| f64::from(u8::from((x, y) == (4, 4))));
        let s = dpc_oracle(&[imp.clone(), imp], se, si, 0.0, 0.0, 0.0, a, r);
        for (u, v) in [(0i64, 0i64), (1, 0), (1, 1), (2, 1)] {
            let d2 = (u * u + v * v) as f64;
            let ge = (-d2 / (2.0 * se * se)).exp() / (2.0 * PI * se * se);
            let gi = (-d2 / (2.0 * si * si)).exp() / (2.0 * PI * si * si);
            let got = s.get((4 + u) as usize, (4 + v) as usize);
            assert!((got - (ge - a * gi).max(0.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn impulse_without_history_is_pure_excitation() {
        let imp = Frame::from_fn(7, 7, |x, y| f64::from(u8::from((x, y) == (3, 3))));
        let s = dpc_oracle(&[imp], 1.0, 2.0, 0.0, 0.0, 0.0, 1.5, 1);
        assert!((s.get(3, 3) - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }
}
