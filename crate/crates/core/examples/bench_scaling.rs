//! Presynaptic-stage timing against kernel radius and input size.
//! Run with `--release`.

use dlgmd::bench::{bench, write_bench};
use dlgmd::{render_sequence, Motion, ParameterSet, SceneSpec, Translation};

fn main() -> dlgmd::Result<()> {
    let scene = SceneSpec::new(
        512,
        512,
        24,
        Motion::Translating(Translation {
            pixel_speed: 4.0,
            start_x: 80.0,
            vertical_position: 224.0,
            object_size: 64.0,
        }),
    );
    let frames = render_sequence(&scene)?;
    let rows = bench(&frames, &ParameterSet::preset(7)?, &[2, 3, 4, 6], &[1.0, 0.5, 0.25], 5)?;
    write_bench(std::io::stdout().lock(), &rows)?;

    let time = |r, w| rows.iter().find(|row| row.radius == r && row.width == w).map(|row| row.median_ms);
    if let (Some(full), Some(half), Some(r2)) = (time(4, 512), time(4, 256), time(2, 512)) {
        eprintln!("half-res ratio {:.3}, r 2->4 ratio {:.3}", half / full, full / r2);
    }
    Ok(())
}
