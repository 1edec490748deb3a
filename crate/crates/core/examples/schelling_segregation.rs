//! Perturb an integrated city and let unhappy residents move.
use artsoc::emergence::names::{CLUSTER_COUNT, MEAN_LIKE_FRACTION, MOVES};
use artsoc::engine::write_pgrid;
use artsoc::schelling::{run_schelling, Relocation, SchellingParams};

fn main() -> artsoc::Result<()> {
    for relocation in [Relocation::Nearest, Relocation::Random] {
        let params = SchellingParams {
            relocation,
            ..SchellingParams::default()
        };
        let trace = run_schelling(params, 5, 500, 1)?;
        println!("relocation {relocation:?}");
        for e in trace.entries() {
            println!(
                "  sweep {:>3}: like {:.3}, {} clusters, {} moves",
                e.tick, e.metrics[MEAN_LIKE_FRACTION], e.metrics[CLUSTER_COUNT], e.metrics[MOVES]
            );
        }
        let last = trace.last().unwrap();
        print!("{}", write_pgrid(&last.snapshot, last.tick));
    }
    Ok(())
}
