//! Resource caps for the exhaustive sweeps.

use crate::{Error, Result};

/// Caps applied before any exhaustive enumeration starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ground set for a full `2^n` subset sweep.
    pub max_points: usize,
    /// Largest group order that may be enumerated element by element.
    pub max_group_order: usize,
    /// Largest number of cells in an enumerated rectangle or box poset.
    pub max_cells: usize,
}

/// Subsets are stored in a `u64`, so no sweep can go past 63 points.
pub const HARD_MAX_POINTS: usize = 63;

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_points: 24,
            max_group_order: 1 << 20,
            max_cells: 1 << 20,
        }
    }
}

impl Limits {
    pub fn check_points(&self, n: usize) -> Result<()> {
        if n > HARD_MAX_POINTS {
            return Err(Error::InvalidInput(alloc::format!(
                "ground set of {n} points exceeds the hard cap of {HARD_MAX_POINTS}"
            )));
        }
        if n > self.max_points {
            return Err(Error::LimitExceeded {
                what: "ground set size",
                requested: n as u64,
                limit: self.max_points as u64,
                flag: "--limit",
            });
        }
        Ok(())
    }

    pub(crate) fn check_cells(&self, what: &'static str, count: u64) -> Result<()> {
        if count > self.max_cells as u64 {
            return Err(Error::LimitExceeded {
                what,
                requested: count,
                limit: self.max_cells as u64,
                flag: "--cell-limit",
            });
        }
        Ok(())
    }

    pub(crate) fn order_exceeded(&self, reached: usize) -> Error {
        Error::LimitExceeded {
            what: "group order",
            requested: reached as u64,
            limit: self.max_group_order as u64,
            flag: "--order-limit",
        }
    }
}
