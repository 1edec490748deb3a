use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cell coordinate: `x` is the column, `y` the row, both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Position {
    pub x: usize,
    pub y: usize,
}

impl Position {
    pub const fn new(x: usize, y: usize) -> Self {
        Position { x, y }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// What happens to coordinates that leave the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Coordinates wrap around both axes.
    #[default]
    Toroidal,
    /// Coordinates outside the lattice do not exist.
    Bounded,
}

impl Boundary {
    pub fn as_str(self) -> &'static str {
        match self {
            Boundary::Toroidal => "toroidal",
            Boundary::Bounded => "bounded",
        }
    }
}

impl std::str::FromStr for Boundary {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "toroidal" | "torus" => Ok(Boundary::Toroidal),
            "bounded" => Ok(Boundary::Bounded),
            other => Err(format!("expected `toroidal` or `bounded`, got `{other}`")),
        }
    }
}

/// A rectangular lattice with one `T` per cell, stored row-major.
///
/// Every model in the crate keeps its environment in a `Grid`; the cell type
/// decides what may occupy a site (a Schelling resident, a social agent, an
/// item, ...).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid<T> {
    width: usize,
    height: usize,
    boundary: Boundary,
    cells: Vec<T>,
}

impl<T: Clone> Grid<T> {
    pub fn new(width: usize, height: usize, boundary: Boundary, fill: T) -> Result<Self> {
        check_dims(width, height)?;
        Ok(Grid {
            width,
            height,
            boundary,
            cells: vec![fill; width * height],
        })
    }
}

impl<T> Grid<T> {
    pub fn from_fn(
        width: usize,
        height: usize,
        boundary: Boundary,
        mut f: impl FnMut(Position) -> T,
    ) -> Result<Self> {
        check_dims(width, height)?;
        let cells = (0..width * height)
            .map(|i| f(Position::new(i % width, i / width)))
            .collect();
        Ok(Grid {
            width,
            height,
            boundary,
            cells,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, pos: Position) -> bool {
        pos.x < self.width && pos.y < self.height
    }

    pub fn index_of(&self, pos: Position) -> usize {
        debug_assert!(
            self.contains(pos),
            "{pos} outside {}x{}",
            self.width,
            self.height
        );
        pos.y * self.width + pos.x
    }

    pub fn position_of(&self, index: usize) -> Position {
        Position::new(index % self.width, index / self.width)
    }

    pub fn get(&self, pos: Position) -> &T {
        &self.cells[self.index_of(pos)]
    }

    pub fn get_mut(&mut self, pos: Position) -> &mut T {
        let i = self.index_of(pos);
        &mut self.cells[i]
    }

    pub fn set(&mut self, pos: Position, value: T) -> T {
        std::mem::replace(self.get_mut(pos), value)
    }

    pub fn swap(&mut self, a: Position, b: Position) {
        let (i, j) = (self.index_of(a), self.index_of(b));
        self.cells.swap(i, j);
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    /// Row-major iteration over `(position, cell)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (Position, &T)> + '_ {
        let w = self.width;
        self.cells
            .iter()
            .enumerate()
            .map(move |(i, c)| (Position::new(i % w, i / w), c))
    }

    pub fn positions(&self) -> impl Iterator<Item = Position> + '_ {
        (0..self.cells.len()).map(|i| self.position_of(i))
    }

    pub fn map<U>(&self, mut f: impl FnMut(Position, &T) -> U) -> Grid<U> {
        Grid {
            width: self.width,
            height: self.height,
            boundary: self.boundary,
            cells: self.iter().map(|(p, c)| f(p, c)).collect(),
        }
    }

    /// Resolves a possibly out-of-range coordinate under the boundary mode.
    pub fn resolve(&self, x: i64, y: i64) -> Option<Position> {
        let (w, h) = (self.width as i64, self.height as i64);
        match self.boundary {
            Boundary::Toroidal => Some(Position::new(
                x.rem_euclid(w) as usize,
                y.rem_euclid(h) as usize,
            )),
            Boundary::Bounded => {
                if (0..w).contains(&x) && (0..h).contains(&y) {
                    Some(Position::new(x as usize, y as usize))
                } else {
                    None
                }
            }
        }
    }

    /// Signed displacement from `a` to `b`; minimum image on a torus.
    pub fn displacement(&self, a: Position, b: Position) -> (i64, i64) {
        let dx = b.x as i64 - a.x as i64;
        let dy = b.y as i64 - a.y as i64;
        match self.boundary {
            Boundary::Toroidal => (
                min_image(dx, self.width as i64),
                min_image(dy, self.height as i64),
            ),
            Boundary::Bounded => (dx, dy),
        }
    }

    pub fn chebyshev_distance(&self, a: Position, b: Position) -> u64 {
        let (dx, dy) = self.displacement(a, b);
        dx.unsigned_abs().max(dy.unsigned_abs())
    }

    pub fn euclidean_distance(&self, a: Position, b: Position) -> f64 {
        let (dx, dy) = self.displacement(a, b);
        ((dx * dx + dy * dy) as f64).sqrt()
    }
}

fn min_image(d: i64, n: i64) -> i64 {
    let d = d.rem_euclid(n);
    if d * 2 > n {
        d - n
    } else {
        d
    }
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 {
        return Err(Error::config("width", "must be at least 1"));
    }
    if height == 0 {
        return Err(Error::config("height", "must be at least 1"));
    }
    Ok(())
}
