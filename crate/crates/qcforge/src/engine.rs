//! Minimum distance on a rayon pool.

use std::sync::atomic::AtomicBool;
use std::sync::Arc;

use qcforge_core::galois::Field;
use qcforge_core::linalg::{Distance, DistanceBudget, DistanceEngine, DistanceKernel, GenMatrix, ShardOutcome};
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

/// Environment variable consulted when no thread count is given.
pub const THREADS_ENV: &str = "QCFORGE_THREADS";

/// `explicit`, else `QCFORGE_THREADS`, else the available parallelism.
pub fn resolve_threads(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()))
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Free symbols left in one shard; roughly 4M steps each.
fn shard_free(field: Field) -> usize {
    match field.order() {
        2 | 4 => 22,
        3 => 14,
        _ => 10,
    }
}

/// Splits every enumeration into shards and runs them on a private pool.
/// The first shard that reaches the early-exit threshold stops the others.
#[derive(Clone)]
pub struct ParallelEngine {
    budget: DistanceBudget,
    cross_check: bool,
    pool: Arc<ThreadPool>,
}

impl ParallelEngine {
    pub fn new(threads: usize, budget: DistanceBudget) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool =
            ThreadPoolBuilder::new().num_threads(threads.max(1)).thread_name(|i| format!("qcforge-{i}")).build()?;
        Ok(ParallelEngine { budget, cross_check: false, pool: Arc::new(pool) })
    }

    /// Re-derive the running codeword from scratch every 2^16 steps.
    pub fn with_cross_check(mut self, on: bool) -> Self {
        self.cross_check = on;
        self
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Runs `f` inside the pool, so nested parallel iterators use it too.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }
}

impl std::fmt::Debug for ParallelEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParallelEngine")
            .field("budget", &self.budget)
            .field("threads", &self.threads())
            .field("cross_check", &self.cross_check)
            .finish()
    }
}

impl DistanceEngine for ParallelEngine {
    fn budget(&self) -> DistanceBudget {
        self.budget
    }

    fn min_distance(&self, g: &GenMatrix, early_exit: Option<usize>) -> qcforge_core::Result<Distance> {
        let kernel = DistanceKernel::new(g, &self.budget)?;
        if kernel.dim() == 0 {
            return Ok(Distance { weight: 0, exact: true });
        }
        let shards = kernel.shards(shard_free(g.field()));
        let stop = AtomicBool::new(false);
        let outcomes: Vec<ShardOutcome> = self.pool.install(|| {
            shards
                .par_iter()
                .map(|s| kernel.run_shard(s, early_exit, self.cross_check, Some(&stop)))
                .collect::<qcforge_core::Result<_>>()
        })?;
        let weight = outcomes.iter().map(|o| o.min_weight).min().expect("at least one shard");
        let exact = !outcomes.iter().any(|o| o.early);
        Ok(Distance { weight, exact })
    }
}
