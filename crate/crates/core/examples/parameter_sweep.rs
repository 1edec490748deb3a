//! Vacancy rate x relocation policy, five replicates each.
use artsoc::runner::{parse_config, sweep, SweepAxis};

fn main() -> artsoc::Result<()> {
    let dir = std::env::temp_dir().join("artsoc-parameter-sweep");
    let mut base =
        parse_config("model = schelling\nseed = 1\nticks = 300\nsnapshot_every = 100\n")?;
    base.output_dir = dir.clone();
    let axes: Vec<SweepAxis> = [
        "schelling.vacancy_fraction=0.1,0.2,0.3",
        "schelling.relocation=nearest,random",
    ]
    .iter()
    .map(|s| s.parse())
    .collect::<Result<_, _>>()?;

    let summary = sweep(&base, &axes, 5)?;
    for chunk in summary.rows.chunks(5) {
        let like: Vec<f64> = chunk
            .iter()
            .filter_map(|r| r.outcome.as_ref().ok())
            .filter_map(|m| {
                m.iter()
                    .find(|(k, _)| k == "mean_like_fraction")
                    .and_then(|(_, v)| *v)
            })
            .collect();
        let mean = like.iter().sum::<f64>() / like.len() as f64;
        println!("{:?}: mean like fraction {mean:.3}", chunk[0].point);
    }
    println!("summary: {}", dir.join("summary.csv").display());
    Ok(())
}
