//! Writes all figure datasets into a directory (default: ./figures).

use std::path::PathBuf;

use mlrelax::cli::figure_csv;
use mlrelax::Tolerance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;
    for id in 1..=12u8 {
        let csv = figure_csv(id, 1001, Tolerance::default())?;
        let path = dir.join(format!("fig{id:02}.csv"));
        std::fs::write(&path, csv)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
