//! Zero-padded 2D convolution with small square kernels.
//!
//! Each output pixel accumulates `w(u, v) * src(x - u, y - v)` over the
//! kernel's non-zero taps in row-major tap order. Rows are independent, so
//! the `rayon` feature splits the work by output row without changing the
//! per-pixel summation order.

use crate::frame::Frame;
use crate::kernels::SpatialKernel;

/// Adds `src` convolved with `kernel` into `out` (same shape as `src`).
pub fn convolve_accumulate(out: &mut [f64], src: &Frame, kernel: &SpatialKernel) {
    let width = src.width();
    assert_eq!(out.len(), src.len());
    let taps: Vec<(i64, i64, f64)> = kernel.taps().collect();
    if taps.is_empty() {
        return;
    }

    #[cfg(feature = "rayon")]
    {
        use rayon::prelude::*;
        out.par_chunks_mut(width)
            .enumerate()
            .for_each(|(y, row)| accumulate_row(row, y, src, &taps));
    }
    #[cfg(not(feature = "rayon"))]
    for (y, row) in out.chunks_mut(width).enumerate() {
        accumulate_row(row, y, src, &taps);
    }
}

fn accumulate_row(row: &mut [f64], y: usize, src: &Frame, taps: &[(i64, i64, f64)]) {
    let width = src.width() as i64;
    let height = src.height() as i64;
    for &(u, v, w) in taps {
        let sy = y as i64 - v;
        if sy < 0 || sy >= height {
            continue;
        }
        let src_row = src.row(sy as usize);
        // output x such that 0 <= x - u < width
        let x0 = u.max(0);
        let x1 = (width + u).min(width);
        if x0 >= x1 {
            continue;
        }
        let out = &mut row[x0 as usize..x1 as usize];
        let inp = &src_row[(x0 - u) as usize..(x1 - u) as usize];
        for (o, s) in out.iter_mut().zip(inp) {
            *o += w * s;
        }
    }
}

pub fn convolve(src: &Frame, kernel: &SpatialKernel) -> Frame {
    let mut out = vec![0.0; src.len()];
    convolve_accumulate(&mut out, src, kernel);
    Frame::from_raw(src.width(), src.height(), out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::gaussian_kernel;

    #[test]
    fn impulse_response_is_the_kernel() {
        let k = gaussian_kernel(1.0, 1).unwrap();
        let src = Frame::from_fn(9, 9, |x, y| if (x, y) == (4, 4) { 1.0 } else { 0.0 });
        let out = convolve(&src, &k);
        for y in 0..9i64 {
            for x in 0..9i64 {
                assert_eq!(out.get(x as usize, y as usize), k.at(x - 4, y - 4));
            }
        }
    }

    #[test]
    fn matches_direct_sum_with_zero_padding() {
        let k = gaussian_kernel(1.3, 3).unwrap();
        let src = Frame::from_fn(7, 5, |x, y| ((x * 31 + y * 17) % 11) as f64);
        let out = convolve(&src, &k);
        for y in 0..5i64 {
            for x in 0..7i64 {
                let mut acc = 0.0;
                for v in -3..=3 {
                    for u in -3..=3 {
                        acc += k.at(u, v) * src.get_padded(x - u, y - v);
                    }
                }
                assert!((out.get(x as usize, y as usize) - acc).abs() < 1e-12);
            }
        }
    }
}
