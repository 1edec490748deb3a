//! Plain-text grid snapshots.
//!
//! ```text
//! P-GRID <width> <height> <tick>
//! <row 0>
//! ...
//! <row height-1>
//! ```
//!
//! One byte per cell, LF line endings, trailing LF after the last row.
//! `.` is always an empty cell; other codes are chosen by the model.

use super::grid::{Boundary, Grid};
use crate::error::{Error, Result};

/// Single-character rendering of a cell for snapshots.
pub trait CellCode {
    fn code(&self) -> char;
}

impl CellCode for char {
    fn code(&self) -> char {
        *self
    }
}

pub const HEADER_TAG: &str = "P-GRID";

pub fn write_pgrid<T: CellCode>(grid: &Grid<T>, tick: u64) -> String {
    let mut out = String::with_capacity((grid.width() + 1) * (grid.height() + 1) + 32);
    out.push_str(&format!(
        "{HEADER_TAG} {} {} {tick}\n",
        grid.width(),
        grid.height()
    ));
    for row in grid.cells().chunks(grid.width()) {
        out.extend(row.iter().map(CellCode::code));
        out.push('\n');
    }
    out
}

/// Parses a snapshot back into a grid of codes and its tick.
///
/// The format does not carry a boundary mode; the returned grid is toroidal.
pub fn parse_pgrid(text: &str) -> Result<(Grid<char>, u64)> {
    let mut lines = text.split('\n');
    let header = lines.next().unwrap_or_default();
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 4 || fields[0] != HEADER_TAG {
        return Err(Error::Snapshot(format!("bad header `{header}`")));
    }
    let num = |s: &str, what: &str| -> Result<u64> {
        s.parse()
            .map_err(|_| Error::Snapshot(format!("bad {what} `{s}`")))
    };
    let width = num(fields[1], "width")? as usize;
    let height = num(fields[2], "height")? as usize;
    let tick = num(fields[3], "tick")?;

    let mut cells = Vec::with_capacity(width * height);
    for y in 0..height {
        let row = lines
            .next()
            .ok_or_else(|| Error::Snapshot(format!("missing row {y}")))?;
        let chars: Vec<char> = row.chars().collect();
        if chars.len() != width {
            return Err(Error::Snapshot(format!(
                "row {y} has {} cells, expected {width}",
                chars.len()
            )));
        }
        cells.extend(chars);
    }
    match (lines.next(), lines.next()) {
        (Some(""), None) => {}
        _ => return Err(Error::Snapshot("expected a single trailing LF".into())),
    }
    let mut it = cells.into_iter();
    let grid = Grid::from_fn(width, height, Boundary::Toroidal, |_| it.next().unwrap())
        .map_err(|e| Error::Snapshot(e.to_string()))?;
    Ok((grid, tick))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_bytes() {
        let g = Grid::from_fn(
            3,
            2,
            Boundary::Toroidal,
            |p| if p.x == p.y { 'A' } else { '.' },
        )
        .unwrap();
        assert_eq!(write_pgrid(&g, 17), "P-GRID 3 2 17\nA..\n.A.\n");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_pgrid("GRID 1 1 0\n.\n").is_err());
        assert!(parse_pgrid("P-GRID 2 1 0\n.\n").is_err());
        assert!(parse_pgrid("P-GRID 1 2 0\n.\n").is_err());
        assert!(parse_pgrid("P-GRID 1 1 0\r\n.\r\n").is_err());
        assert!(parse_pgrid("P-GRID 1 1 0\n.").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(w in 1usize..12, h in 1usize..12, tick in 0u64..1_000_000, seed in any::<u64>()) {
            let alphabet = ['.', 'A', 'B', 'W', 'a', '*', '+', '-'];
            let mut s = seed;
            let g = Grid::from_fn(w, h, Boundary::Toroidal, |_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                alphabet[(s >> 61) as usize]
            }).unwrap();
            let text = write_pgrid(&g, tick);
            let (back, t) = parse_pgrid(&text).unwrap();
            prop_assert_eq!(t, tick);
            prop_assert_eq!(back, g);
        }
    }
}
