//! Writes a synthetic scene to disk as numbered graymaps, loads it back,
//! downsamples it, and prints the per-frame CSV report.

use dlgmd::io::{load_sequence, resize_area, write_report, write_sequence};
use dlgmd::{render_sequence, run_trace, Motion, Normalization, ParameterSet, SceneSpec, Translation};

fn main() -> dlgmd::Result<()> {
    let dir = std::env::temp_dir().join(format!("dlgmd-roundtrip-{}", std::process::id()));
    let scene = SceneSpec::new(160, 120, 20, Motion::Translating(Translation::default()));
    let paths = write_sequence(&dir, &render_sequence(&scene)?)?;
    eprintln!("wrote {} frames to {}", paths.len(), dir.display());

    let frames = load_sequence(&dir)?
        .iter()
        .map(|f| resize_area(f, 0.5))
        .collect::<dlgmd::Result<Vec<_>>>()?;
    let trace = run_trace(&frames, &ParameterSet::preset(4)?, Normalization::Offline, dir.display().to_string())?;
    write_report(std::io::stdout().lock(), &trace.reports)?;

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
