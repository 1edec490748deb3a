//! Drive a run from config text and inspect what lands on disk.
use artsoc::runner::{parse_config, run_experiment};

fn main() -> artsoc::Result<()> {
    let dir = std::env::temp_dir().join("artsoc-batch-run");
    let mut config = parse_config(
        "model = ant\n\
         seed = 1\n\
         ticks = 50000\n\
         snapshot_every = 10000\n\
         ant.n_ants = 20\n",
    )?;
    config.output_dir = dir.clone();
    print!("{}", config.to_text());

    let manifest = run_experiment(&config)?;
    println!(
        "ended at tick {}, wrote {} files to {}",
        manifest.end_tick,
        manifest.files.len(),
        dir.display()
    );
    for (k, v) in &manifest.final_metrics {
        println!("  {k} = {v:?}");
    }
    Ok(())
}
