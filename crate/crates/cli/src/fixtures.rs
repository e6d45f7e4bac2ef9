use std::path::Path;

use handinput::frame::write_frame;
use handinput::synth::{fixture_set, orientation_name, render_disc, HandSpec, BACKDROP, SKIN};
use handinput::{Frame, Orientation};

use crate::Failure;

/// Frames in the `pointer/` set: the hand glides right, then rests.
pub const POINTER_MOVING: usize = 8;
pub const POINTER_RESTING: usize = 36;

/// Renders every fixture set under `out`:
///
/// * `count<k>/<orientation>.png`: a hand with `k` fingers in each orientation,
/// * `pointer/`: a one-finger hand that moves and then dwells,
/// * `calibration/`: skin-colored discs covering the calibration area,
/// * `backdrop.png`: the empty background.
///
/// Returns the number of frames written.
pub fn write_fixtures(out: &Path, width: u32, height: u32) -> Result<usize, Failure> {
    let mut written = 0;
    let mut save = |rel: String, frame: &Frame| -> Result<(), Failure> {
        let path = out.join(rel);
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| Failure::Other(format!("{}: {e}", dir.display())))?;
        }
        write_frame(&path, frame).map_err(|e| Failure::Other(e.to_string()))?;
        written += 1;
        Ok(())
    };

    for fixture in fixture_set() {
        let spec = fixture.spec.sized(width, height);
        let rel = format!("count{}/{}.png", spec.fingers, orientation_name(spec.orientation));
        save(rel, &spec.render())?;
    }

    let step = 6.0 * width as f64 / 320.0;
    for i in 0..POINTER_MOVING + POINTER_RESTING {
        let dx = step * (i.min(POINTER_MOVING) as f64 - POINTER_MOVING as f64 / 2.0);
        let frame = HandSpec::new(1, Orientation::Up).sized(width, height).offset(dx, 0.0).render();
        save(format!("pointer/frame_{i:03}.png"), &frame)?;
    }

    let center = ((width as f64 - 1.0) / 2.0, (height as f64 - 1.0) / 2.0);
    let radius = 0.3 * width.min(height) as f64;
    for i in 0..3 {
        save(format!("calibration/frame_{i:03}.png"), &render_disc(width, height, center, radius, SKIN, BACKDROP))?;
    }

    save("backdrop.png".into(), &Frame::filled(width, height, BACKDROP).map_err(|e| Failure::ConfigInvalid(e.to_string()))?)?;
    Ok(written)
}
