//! Two item types: the same pickup/drop rule sorts as well as clusters.
use artsoc::ant::{AntModel, AntParams};
use artsoc::emergence::{detect_clusters, mean_like_neighbor_fraction};
use artsoc::engine::NeighborhoodSpec;

fn report(m: &AntModel) -> artsoc::Result<()> {
    let items = m.items();
    let clusters = detect_clusters(items, |c| *c, NeighborhoodSpec::MOORE);
    let like = mean_like_neighbor_fraction(items, |c| *c)?;
    println!(
        "tick {:>7}: {:>3} single-type clusters, like-neighbor fraction {like:.3}, counts {:?}",
        m.tick(),
        clusters.len(),
        m.item_counts()
    );
    Ok(())
}

fn main() -> artsoc::Result<()> {
    let params = AntParams {
        item_types: 2,
        items_per_type: 150,
        n_ants: 20,
        ..AntParams::default()
    };
    let mut model = AntModel::new(params, 11)?;
    report(&model)?;
    for _ in 0..4 {
        for _ in 0..50_000 {
            model.run_tick();
        }
        report(&model)?;
    }
    Ok(())
}
