//! Thickness scan over a rayon pool.
//!
//! Pairs are evaluated independently and collected in plan order; the
//! minimum is taken under a total order, so the report does not depend on
//! the thread count or schedule.

use gasket_core::thickness::{evaluate_pair, ScanEntry, ScanGrid, ThicknessReport};
use gasket_core::Gasket;
use rayon::prelude::*;

use crate::Failure;

/// `threads = None` uses rayon's default pool size.
pub fn parallel_scan(gasket: &Gasket, grid: ScanGrid, threads: Option<usize>) -> Result<ThicknessReport, Failure> {
    let plan = grid.plan(gasket)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Failure::Usage("thread count must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Failure::Resource(format!("thread pool: {e}")))?;
    let level = grid.sample_level;
    let entries: Vec<ScanEntry> = pool.install(|| {
        plan.par_iter()
            .map(|(x, r)| evaluate_pair(gasket, x, *r, level))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(ThicknessReport::from_entries(gasket, grid, entries)?)
}
