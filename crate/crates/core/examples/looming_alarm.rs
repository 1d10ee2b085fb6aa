//! Streams a synthetic approaching square through the detector one frame at
//! a time (online normalization) and reports when the collision alarm fires.

use dlgmd::{render_sequence, Approach, Detector, Motion, Normalization, ParameterSet, SceneSpec};

fn main() -> dlgmd::Result<()> {
    let approach = Approach {
        half_size: 2.0,
        speed: 0.75,
        start_distance: 45.0,
        focal: 100.0,
    };
    let frames = render_sequence(&SceneSpec::new(128, 128, 60, Motion::Looming(approach)))?;

    let mut detector = Detector::new(ParameterSet::preset(7)?, 128, 128, Normalization::Online)?;
    for frame in &frames {
        let (report, _) = detector.step(frame)?;
        let bar = "#".repeat((report.k_norm * 40.0).round() as usize);
        println!("{:3} {:>10.1} {:5.3} {bar}", report.frame_index, report.k_raw, report.k_norm);
        if report.alarm {
            println!("    ^ collision alarm");
        }
    }
    Ok(())
}
