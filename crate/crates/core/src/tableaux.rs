//! Standard Young tableaux.
//!
//! # Canonical order (version 1)
//!
//! Tableaux of a shape are ordered lexicographically by their row reading
//! word: the entries of the first row left to right, then the second row,
//! and so on. This order is the row/column order of every matrix built by
//! [`crate::representation`]; changing it changes every matrix entry.

use std::collections::HashMap;
use std::fmt;

use num_traits::ToPrimitive;

use crate::partitions::{hook_data, Partition};
use crate::{Error, Result};

/// Version tag of the canonical tableau order.
pub const TABLEAU_ORDER_VERSION: u32 = 1;

/// Zero-based `(row, col)` box coordinates.
pub type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    /// `position_of[m - 1]` is the box holding entry `m`.
    position_of: Vec<Cell>,
    index: usize,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn positions(&self) -> &[Cell] {
        &self.position_of
    }

    /// Position in the canonical enumeration of its shape.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Box holding `entry` (1-based).
    pub fn position(&self, entry: usize) -> Cell {
        self.position_of[entry - 1]
    }

    /// `grid[row][col]` is the entry in that box.
    pub fn grid(&self) -> Vec<Vec<usize>> {
        let mut grid: Vec<Vec<usize>> = self.shape.parts().iter().map(|&l| vec![0; l]).collect();
        for (m, &(r, c)) in self.position_of.iter().enumerate() {
            grid[r][c] = m + 1;
        }
        grid
    }

    pub fn reading_word(&self) -> Vec<usize> {
        self.grid().into_iter().flatten().collect()
    }

    fn check_k(&self, k: usize) -> Result<()> {
        let n = self.position_of.len();
        if k == 0 || k >= n {
            return Err(Error::OutOfRange {
                what: "k",
                value: k as i64,
                min: 1,
                max: n as i64 - 1,
            });
        }
        Ok(())
    }

    /// Content of the box of `k + 1` minus content of the box of `k`.
    pub fn axial_distance(&self, k: usize) -> Result<i64> {
        self.check_k(k)?;
        let (r1, c1) = self.position(k);
        let (r2, c2) = self.position(k + 1);
        Ok((c2 as i64 - r2 as i64) - (c1 as i64 - r1 as i64))
    }

    /// Positions after interchanging `k` and `k + 1`, or `None` when the
    /// result is not standard (the two entries share a row or a column).
    pub fn swapped_positions(&self, k: usize) -> Result<Option<Vec<Cell>>> {
        self.check_k(k)?;
        let (a, b) = (self.position(k), self.position(k + 1));
        if a.0 == b.0 || a.1 == b.1 {
            return Ok(None);
        }
        let mut positions = self.position_of.clone();
        positions.swap(k - 1, k);
        Ok(Some(positions))
    }
}

/// Rows of entries, one row per line.
impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.position_of.len().to_string().len();
        for row in self.grid() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// All standard tableaux of one shape, in canonical order, with lookup from
/// positions back to the index.
#[derive(Debug, Clone)]
pub struct TableauBasis {
    shape: Partition,
    tableaux: Vec<StandardTableau>,
    lookup: HashMap<Vec<Cell>, usize>,
}

impl TableauBasis {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.tableaux.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tableaux.is_empty()
    }

    pub fn tableaux(&self) -> &[StandardTableau] {
        &self.tableaux
    }

    pub fn get(&self, index: usize) -> &StandardTableau {
        &self.tableaux[index]
    }

    pub fn index_of(&self, positions: &[Cell]) -> Option<usize> {
        self.lookup.get(positions).copied()
    }

    /// `(k, k+1)T` as a member of this basis, or `None` if it is not standard.
    pub fn apply_adjacent(
        &self,
        t: &StandardTableau,
        k: usize,
    ) -> Result<Option<&StandardTableau>> {
        Ok(t.swapped_positions(k)?
            .map(|pos| &self.tableaux[self.lookup[&pos]]))
    }
}

/// Enumerates the standard tableaux of `p` in canonical order, refusing
/// shapes whose dimension exceeds `cap`.
pub fn enumerate_tableaux(p: &Partition, cap: usize) -> Result<TableauBasis> {
    let dimension = hook_data(p).dimension;
    let count = match dimension.to_usize() {
        Some(f) if f <= cap => f,
        _ => {
            return Err(Error::DimensionCap {
                dimension: dimension.to_string(),
                cap,
            })
        }
    };

    // Place N, N-1, ..., 1 into removable corners of the shrinking shape.
    fn place(
        shape: &mut Vec<usize>,
        entry: usize,
        positions: &mut Vec<Cell>,
        out: &mut Vec<Vec<Cell>>,
    ) {
        if entry == 0 {
            out.push(positions.clone());
            return;
        }
        for r in 0..shape.len() {
            let len = shape[r];
            let below = shape.get(r + 1).copied().unwrap_or(0);
            if len > below {
                shape[r] -= 1;
                positions[entry - 1] = (r, len - 1);
                place(shape, entry - 1, positions, out);
                shape[r] += 1;
            }
        }
    }

    let n = p.size();
    let mut raw = Vec::with_capacity(count);
    place(&mut p.parts().to_vec(), n, &mut vec![(0, 0); n], &mut raw);
    debug_assert_eq!(raw.len(), count);

    let mut keyed: Vec<(Vec<usize>, Vec<Cell>)> = raw
        .into_iter()
        .map(|positions| {
            let mut grid: Vec<Vec<usize>> = p.parts().iter().map(|&l| vec![0; l]).collect();
            for (m, &(r, c)) in positions.iter().enumerate() {
                grid[r][c] = m + 1;
            }
            (grid.concat(), positions)
        })
        .collect();
    keyed.sort_unstable();

    let mut lookup = HashMap::with_capacity(count);
    let tableaux = keyed
        .into_iter()
        .enumerate()
        .map(|(index, (_, position_of))| {
            lookup.insert(position_of.clone(), index);
            StandardTableau {
                shape: p.clone(),
                position_of,
                index,
            }
        })
        .collect();
    Ok(TableauBasis {
        shape: p.clone(),
        tableaux,
        lookup,
    })
}
