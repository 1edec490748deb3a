//! Opinion dynamics: linear versus root-sum-square aggregation of influence.
use artsoc::emergence::names::{CLUSTER_COUNT, FLIPS, MINORITY_FRACTION};
use artsoc::impact::{run_impact, Aggregation, ImpactParams};

fn main() -> artsoc::Result<()> {
    for aggregation in [Aggregation::Linear, Aggregation::RootSumSquare] {
        let params = ImpactParams {
            aggregation,
            ..ImpactParams::default()
        };
        println!("{}:", aggregation.as_str());
        for seed in 0..4 {
            let trace = run_impact(params.clone(), seed, 200, 1)?;
            let last = trace.last().unwrap();
            println!(
                "  seed {seed}: minority {:.3} -> {:.3}, {} clusters, stopped at sweep {} ({} flips)",
                trace.first().unwrap().metrics[MINORITY_FRACTION],
                last.metrics[MINORITY_FRACTION],
                last.metrics[CLUSTER_COUNT],
                last.tick,
                last.metrics[FLIPS]
            );
        }
    }
    Ok(())
}
