//! Write a few ready-made state files for driving the CLI:
//! the standard Gaussian, a position-shifted Gaussian, a
//! momentum-displaced Gaussian, and the first Hermite function, all on
//! the default rig (n = 256, dx = 0.1, hbar = 1).
//!
//! Usage: `cargo run --example make_demo_states -- [output-dir]`

use wigner_weft::io::save_state;
use wigner_weft::{Grid, SampledState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "demo-states".into());
    std::fs::create_dir_all(&dir)?;
    let dir = std::path::Path::new(&dir);

    let grid = Grid::new(256, 0.1, 1.0)?;
    let states = [
        (
            "psi0.json",
            "standard Gaussian",
            SampledState::gaussian(grid, 0.0, 0.0, 1.0)?,
        ),
        (
            "gaussian_x1.json",
            "Gaussian shifted to x0 = 1",
            SampledState::gaussian(grid, 1.0, 0.0, 1.0)?,
        ),
        (
            "gaussian_moving.json",
            "Gaussian at x0 = 1 with p0 = 2 dp",
            SampledState::gaussian(grid, 1.0, 2.0 * grid.dp(), 1.0)?,
        ),
        (
            "hermite1.json",
            "first Hermite function",
            SampledState::hermite(grid, 1)?,
        ),
    ];
    for (name, label, state) in &states {
        let path = dir.join(name);
        save_state(state, &path, Some(label))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
