//! The unperturbed checkerboard is a fixed point: nobody ever wants to move.
use artsoc::schelling::{is_satisfied, SchellingModel, SchellingParams};

fn main() -> artsoc::Result<()> {
    let params = SchellingParams {
        width: 10,
        height: 10,
        vacancy_fraction: 0.0,
        perturb_fraction: 0.0,
        ..SchellingParams::default()
    };
    let mut model = SchellingModel::new(params.clone(), 0)?;
    let g = model.grid();
    let happy = g
        .positions()
        .filter(|&p| is_satisfied(g, p, params.rule).unwrap_or(false))
        .count();
    println!("{happy} of {} residents satisfied", g.len());

    let moves: usize = (0..1000).map(|_| model.sweep()).sum();
    println!("moves over 1000 sweeps: {moves}");

    let mut perturbed = SchellingModel::new(
        SchellingParams {
            vacancy_fraction: 0.1,
            perturb_fraction: 0.05,
            ..params
        },
        0,
    )?;
    println!(
        "with 10% vacancies and a 5% perturbation the first sweep moves {}",
        perturbed.sweep()
    );
    Ok(())
}
