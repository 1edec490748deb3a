//! Ants gathering a single item type into piles.
use artsoc::ant::{run_ant_model, AntParams};
use artsoc::emergence::names::{CLUSTER_COUNT, LARGEST_CLUSTER_FRACTION, SPATIAL_ENTROPY};

fn main() -> artsoc::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let trace = run_ant_model(AntParams::default(), seed, 200_000, 20_000)?;

    println!(
        "{:>8} {:>9} {:>8} {:>8}",
        "tick", "clusters", "largest", "entropy"
    );
    for e in trace.entries() {
        println!(
            "{:>8} {:>9} {:>8.3} {:>8.3}",
            e.tick,
            e.metrics[CLUSTER_COUNT],
            e.metrics[LARGEST_CLUSTER_FRACTION],
            e.metrics[SPATIAL_ENTROPY]
        );
    }
    print!(
        "{}",
        artsoc::engine::write_pgrid(&trace.last().unwrap().snapshot, trace.last().unwrap().tick)
    );
    Ok(())
}
