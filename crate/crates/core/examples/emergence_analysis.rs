//! Is "several large monochrome clusters" a property of the whole and of no part?
use artsoc::emergence::{detect_clusters, emergence_test, PropertyEvaluator};
use artsoc::engine::NeighborhoodSpec;
use artsoc::schelling::{run_schelling, Color, SchellingCell, SchellingParams};

fn main() -> artsoc::Result<()> {
    let trace = run_schelling(SchellingParams::default(), 3, 500, 10)?;
    let world = &trace.last().unwrap().snapshot;
    let clusters = detect_clusters(world, SchellingCell::color, NeighborhoodSpec::MOORE);
    println!(
        "{} clusters, sizes {:?}",
        clusters.len(),
        clusters.iter().map(|c| c.size()).collect::<Vec<_>>()
    );

    let collective = PropertyEvaluator::monochrome_clusters(2, 5);
    let local = PropertyEvaluator::cell_is("resident is black", Color::Black, SchellingCell::color);
    for p in [&collective, &local] {
        let v = emergence_test(p, world, &clusters);
        println!(
            "{:<45} aggregate={:<5} any component={:<5} emergent={}",
            v.property, v.holds_on_aggregate, v.holds_on_any_component, v.emergent
        );
    }
    Ok(())
}
