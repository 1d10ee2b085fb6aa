//! Normalized response to the same object approaching and receding.

use dlgmd::{render_sequence, run_trace, Approach, Motion, Normalization, ParameterSet, SceneSpec};

fn main() -> dlgmd::Result<()> {
    let approach = Approach {
        half_size: 2.0,
        speed: 0.75,
        start_distance: 45.0,
        focal: 100.0,
    };
    let params = ParameterSet::preset(7)?;
    let looming = render_sequence(&SceneSpec::new(128, 128, 60, Motion::Looming(approach)))?;
    let receding = render_sequence(&SceneSpec::new(128, 128, 60, Motion::Receding(approach)))?;
    let l = run_trace(&looming, &params, Normalization::Offline, "looming")?;
    let r = run_trace(&receding, &params, Normalization::Offline, "receding")?;

    println!("frame  looming  receding");
    for (t, (a, b)) in l.k_norm().iter().zip(r.k_norm()).enumerate() {
        println!("{t:5}  {a:7.3}  {b:8.3}");
    }
    let alarms = |trace: &dlgmd::RunTrace| trace.reports.iter().filter(|r| r.alarm).count();
    println!("alarm frames: looming {}, receding {}", alarms(&l), alarms(&r));
    Ok(())
}
