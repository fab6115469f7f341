//! ASR search fanned out over `(m, class, l)` units.
//!
//! Every unit carries its own seed derived from the master seed and its
//! coordinates, and outcomes are merged in unit order, so the ledger does
//! not depend on the number of workers.

use qcforge_core::qc::{plan_search, run_unit, summarize, SearchConfig, SearchSummary};
use rayon::prelude::*;

use crate::engine::ParallelEngine;

pub fn parallel_search(config: &SearchConfig, engine: &ParallelEngine) -> qcforge_core::Result<SearchSummary> {
    let (units, classes_per_m) = plan_search(config)?;
    let outcomes = engine
        .install(|| units.par_iter().map(|u| run_unit(u, config, engine)).collect::<qcforge_core::Result<Vec<_>>>())?;
    Ok(summarize(&units, &classes_per_m, outcomes))
}
