//! Mean steady-state attenuation of a translating square at increasing
//! speeds, for constant-latency and distributed-latency presets.

use dlgmd::stimulus::speed_sweep;
use dlgmd::{run_trace, Motion, Normalization, ParameterSet, SceneSpec, Translation};

fn main() -> dlgmd::Result<()> {
    let base = SceneSpec::new(
        128,
        64,
        24,
        Motion::Translating(Translation {
            pixel_speed: 1.0,
            start_x: 8.0,
            vertical_position: 24.0,
            object_size: 16.0,
        }),
    );
    let speeds = [1.0, 2.0, 3.0, 4.0];
    let sequences = speed_sweep(&base, &speeds)?;

    println!("preset  {}", speeds.map(|s| format!("{s:>6} px/f")).join(" "));
    for preset in 1..=9 {
        let params = ParameterSet::preset(preset)?;
        let cells: Vec<String> = sequences
            .iter()
            .map(|frames| {
                let trace = run_trace(frames, &params, Normalization::Offline, "sweep")?;
                Ok(match trace.mean_attenuation(trace.steady_state()) {
                    Some(db) => format!("{db:>8.3} dB"),
                    None => format!("{:>11}", "-"),
                })
            })
            .collect::<dlgmd::Result<_>>()?;
        println!("set{preset}    {}", cells.join(" "));
    }
    Ok(())
}
