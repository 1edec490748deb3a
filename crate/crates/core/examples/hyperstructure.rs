//! Cells -> clusters -> groups of nearby clusters.
use artsoc::ant::{run_ant_model, AntCell, AntParams};
use artsoc::emergence::{build_hyperstructure, detect_clusters};
use artsoc::engine::NeighborhoodSpec;

fn main() -> artsoc::Result<()> {
    let trace = run_ant_model(AntParams::default(), 3, 100_000, 100_000)?;
    let world = &trace.last().unwrap().snapshot;
    let clusters = detect_clusters(world, AntCell::item, NeighborhoodSpec::MOORE);

    for level in build_hyperstructure(&clusters, 8.0, 5) {
        let sizes: Vec<usize> = level.structures.iter().map(|s| s.cells.len()).collect();
        println!(
            "level {}: {} structures",
            level.level,
            level.structures.len()
        );
        if level.level > 1 {
            println!("  cells per structure: {sizes:?}");
        }
    }
    Ok(())
}
