//! Compares the convolution-based presynaptic layer against the
//! literal-summation reference on random photoreceptor histories.

use dlgmd::{dpc_oracle, DetectorState, Frame, Kernels, ParameterSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> dlgmd::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for preset in 1..=9 {
        let params = ParameterSet::preset(preset)?;
        let kernels = Kernels::from_params(&params)?;
        let history: Vec<Frame> = (0..=kernels.d_max())
            .map(|_| Frame::from_fn(16, 16, |_, _| rng.random_range(0.0..255.0)))
            .collect();

        let mut state = DetectorState::new(kernels.d_max(), 1);
        for p in history[1..].iter().rev() {
            state.push_p(p.clone());
        }
        let fast = kernels.presynaptic(&history[0], &state, params.a)?;
        let slow = dpc_oracle(
            &history,
            params.sigma_e,
            params.sigma_i,
            params.alpha,
            params.beta,
            params.lambda,
            params.a,
            params.radius,
        );
        let diff = fast
            .data()
            .iter()
            .zip(slow.data())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("set{preset}: d_max {}, max |diff| {diff:.2e}", kernels.d_max());
    }
    Ok(())
}
