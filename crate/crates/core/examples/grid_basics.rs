//! Grids, boundaries, neighborhoods, seeded randomness and the P-GRID text format.
use artsoc::engine::{
    neighborhood, parse_pgrid, write_pgrid, Boundary, Grid, NeighborhoodSpec, Position, RngStream,
};

fn main() -> artsoc::Result<()> {
    for boundary in [Boundary::Toroidal, Boundary::Bounded] {
        let g = Grid::new(10, 10, boundary, '.')?;
        let corner = neighborhood(&g, Position { x: 0, y: 0 }, NeighborhoodSpec::MOORE);
        println!(
            "{:>8}: corner has {} Moore neighbors",
            boundary.as_str(),
            corner.len()
        );
    }

    let mut rng = RngStream::new(42);
    let mut g = Grid::new(8, 4, Boundary::Toroidal, '.')?;
    for i in rng.sample_distinct(g.len(), 6) {
        let p = g.position_of(i);
        g.set(p, '#');
    }
    let text = write_pgrid(&g, 0);
    print!("{text}");
    let (back, tick) = parse_pgrid(&text)?;
    assert_eq!((back, tick), (g, 0));
    Ok(())
}
