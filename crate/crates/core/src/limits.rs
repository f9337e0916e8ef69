//! Enumeration size cap shared by every builder that can blow up.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_CELLS: usize = 100_000;

/// Reads `DBLCAT_MAX_CELLS` once; falls back to [`DEFAULT_MAX_CELLS`].
pub fn max_cells() -> usize {
    static CELLS: OnceLock<usize> = OnceLock::new();
    *CELLS.get_or_init(|| {
        std::env::var("DBLCAT_MAX_CELLS").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_CELLS)
    })
}

pub(crate) fn check(what: impl FnOnce() -> String, count: usize) -> Result<()> {
    let limit = max_cells();
    if count > limit {
        Err(Error::TooLarge { what: what(), limit })
    } else {
        Ok(())
    }
}
