use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{asr_sample_with, build_qc_matrix, CodeRecord, Exactness, Property};
use crate::cyclic::{enumerate_class_reps, CyclicClass, DimFilter};
use crate::galois::Field;
use crate::linalg::{classify_properties, DistanceEngine};
use crate::{Error, Result};

/// Best known distance per `(n, k)`.
pub type TargetTable = BTreeMap<(usize, usize), usize>;

/// Largest `d` per `(n, k)` among the records over GF(q).
pub fn targets_from_records(records: &[CodeRecord], q: u8) -> TargetTable {
    let mut t = TargetTable::new();
    for r in records.iter().filter(|r| r.q == q) {
        let e = t.entry((r.n, r.k)).or_insert(r.d);
        *e = (*e).max(r.d);
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub field: Field,
    pub m_values: Vec<usize>,
    pub ells: Vec<usize>,
    pub dim_filter: Option<DimFilter>,
    /// f-tuples drawn per (class, l) unit.
    pub samples: usize,
    pub targets: TargetTable,
    pub seed: u64,
    /// Skip classes with `l d_cyclic < target - slack`. `None` keeps every
    /// class.
    pub prune_slack: Option<usize>,
}

impl SearchConfig {
    pub fn new(field: Field, seed: u64) -> Self {
        SearchConfig {
            field,
            m_values: Vec::new(),
            ells: Vec::new(),
            dim_filter: None,
            samples: 10_000,
            targets: TargetTable::new(),
            seed,
            prune_slack: None,
        }
    }
}

/// One `(m, class, l)` combination with its own random stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchUnit {
    pub m: usize,
    pub class_index: usize,
    pub class: CyclicClass,
    pub ell: usize,
    pub target: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnitOutcome {
    pub records: Vec<CodeRecord>,
    pub samples: usize,
    /// Skipped by the class-pruning rule.
    pub pruned: bool,
    /// `k` over the distance budget; records carry lower bounds only.
    pub budget_limited: bool,
}

/// Per-length counters of a search run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LengthSummary {
    pub m: usize,
    pub classes: usize,
    pub units: usize,
    pub samples: usize,
    pub records: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchSummary {
    pub lengths: Vec<LengthSummary>,
    /// Deduplicated, in unit order.
    pub records: Vec<CodeRecord>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of a unit, a hash of the master seed and the unit coordinates.
pub fn unit_seed(master: u64, m: usize, class_index: usize, ell: usize) -> u64 {
    [m as u64, class_index as u64, ell as u64].iter().fold(splitmix(master), |acc, &v| splitmix(acc ^ v))
}

/// Units of a search plus `(m, class count)` per length.
pub type SearchPlan = (Vec<SearchUnit>, Vec<(usize, usize)>);

/// All units with a known target, ordered by `(m, class, l)`, plus the
/// number of classes per length.
pub fn plan_search(config: &SearchConfig) -> Result<SearchPlan> {
    let mut units = Vec::new();
    let mut classes_per_m = Vec::new();
    for &m in &config.m_values {
        let classes = enumerate_class_reps(config.field, m, config.dim_filter)?;
        classes_per_m.push((m, classes.len()));
        for (class_index, class) in classes.into_iter().enumerate() {
            if class.is_full_space() {
                continue;
            }
            for &ell in &config.ells {
                if ell == 0 {
                    return Err(Error::InvalidSpec("index must be positive"));
                }
                let Some(&target) = config.targets.get(&(m * ell, class.dim)) else { continue };
                let seed = unit_seed(config.seed, m, class_index, ell);
                units.push(SearchUnit { m, class_index, class: class.clone(), ell, target, seed });
            }
        }
    }
    Ok((units, classes_per_m))
}

/// Samples one unit. Each tuple is drawn from its own stream
/// `unit_seed ^ sample`, stored as the record seed, so any record can be
/// regenerated with [`super::asr_sample`].
pub fn run_unit(unit: &SearchUnit, config: &SearchConfig, engine: &dyn DistanceEngine) -> Result<UnitOutcome> {
    let mut out = UnitOutcome::default();
    let code = unit.class.code();
    let budget = engine.budget();
    let within = budget.allows(config.field, code.dim());
    out.budget_limited = !within;

    if let (Some(slack), true) = (config.prune_slack, within) {
        let d_cyclic = engine.min_distance(&code.generator_matrix(), None)?.weight;
        if unit.ell * d_cyclic + slack < unit.target {
            out.pruned = true;
            return Ok(out);
        }
    }

    let mut seen = BTreeSet::new();
    for s in 0..config.samples {
        let seed = splitmix(unit.seed ^ s as u64);
        let spec = asr_sample_with(&code, unit.ell, &mut ChaCha8Rng::seed_from_u64(seed))?;
        out.samples += 1;
        if !seen.insert(spec.fs_encoded()) {
            continue;
        }
        let g = build_qc_matrix(&spec);
        let mut record = if within {
            let d = engine.min_distance(&g, Some(unit.target.saturating_sub(1)))?;
            if !d.exact || d.weight < unit.target {
                continue;
            }
            let mut r = CodeRecord::from_spec(&spec, d.weight, Exactness::Exact);
            r.properties = Property::list(&classify_properties(&g)?);
            r
        } else {
            // only the index survives as a bound without an exact d_cyclic
            let r = CodeRecord::from_spec(&spec, unit.ell, Exactness::LowerBound);
            out.records.push(CodeRecord { seed: Some(seed), ..r });
            break;
        };
        record.seed = Some(seed);
        out.records.push(record);
    }
    Ok(out)
}

/// Sequential search over every unit of the plan.
pub fn asr_search(config: &SearchConfig, engine: &dyn DistanceEngine) -> Result<SearchSummary> {
    let (units, classes_per_m) = plan_search(config)?;
    let outcomes = units.iter().map(|u| run_unit(u, config, engine)).collect::<Result<Vec<_>>>()?;
    Ok(summarize(&units, &classes_per_m, outcomes))
}

/// Merges unit outcomes in unit order, dropping records whose dedup key
/// was already seen.
pub fn summarize(units: &[SearchUnit], classes_per_m: &[(usize, usize)], outcomes: Vec<UnitOutcome>) -> SearchSummary {
    let mut lengths: Vec<LengthSummary> =
        classes_per_m.iter().map(|&(m, classes)| LengthSummary { m, classes, ..Default::default() }).collect();
    let mut keys = BTreeSet::new();
    let mut records = Vec::new();
    for (unit, outcome) in units.iter().zip(outcomes) {
        let len = lengths.iter_mut().find(|l| l.m == unit.m).expect("unit length is planned");
        len.units += 1;
        len.samples += outcome.samples;
        for r in outcome.records {
            if keys.insert(r.dedup_key()) {
                len.records += 1;
                records.push(r);
            }
        }
    }
    SearchSummary { lengths, records }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SequentialEngine;
    use alloc::vec;

    fn config(m: usize, ell: usize, n_k_d: (usize, usize, usize)) -> SearchConfig {
        let mut c = SearchConfig::new(Field::GF2, 11);
        c.m_values = vec![m];
        c.ells = vec![ell];
        c.samples = 20;
        c.targets.insert((n_k_d.0, n_k_d.1), n_k_d.2);
        c
    }

    #[test]
    fn finds_the_hamming_based_codes() {
        // ASR tuples over the [7,4,3] class reach at least 2 * 3
        let c = config(7, 2, (14, 4, 6));
        let s = asr_search(&c, &SequentialEngine::default()).unwrap();
        assert_eq!(s.lengths[0].classes, 5);
        for r in &s.records {
            assert!(r.d >= 6 && r.d_exactness_flag == Exactness::Exact);
            assert!(r.seed.is_some());
        }
    }

    #[test]
    fn impossible_targets_and_empty_plans() {
        let s = asr_search(&config(7, 2, (14, 4, 15)), &SequentialEngine::default()).unwrap();
        assert!(s.records.is_empty());
        let mut c = config(7, 2, (14, 4, 6));
        c.m_values.clear();
        assert!(asr_search(&c, &SequentialEngine::default()).unwrap().records.is_empty());
        let mut c = config(7, 2, (14, 4, 6));
        c.samples = 0;
        assert!(asr_search(&c, &SequentialEngine::default()).unwrap().records.is_empty());
    }

    #[test]
    fn pruning_drops_weak_classes() {
        let mut c = config(7, 2, (14, 3, 8));
        c.prune_slack = Some(0);
        let (units, _) = plan_search(&c).unwrap();
        assert!(!units.is_empty());
        for u in &units {
            let out = run_unit(u, &c, &SequentialEngine::default()).unwrap();
            // the [7,3,4] simplex classes give 2 * 4 = 8, nothing else exists at k = 3
            assert!(!out.pruned);
        }
        c.targets.clear();
        c.targets.insert((14, 3), 9);
        let (units, _) = plan_search(&c).unwrap();
        assert!(units.iter().all(|u| run_unit(u, &c, &SequentialEngine::default()).unwrap().pruned));
    }

    #[test]
    fn seeds_depend_on_every_coordinate() {
        let a = unit_seed(1, 26, 3, 2);
        assert_ne!(a, unit_seed(2, 26, 3, 2));
        assert_ne!(a, unit_seed(1, 27, 3, 2));
        assert_ne!(a, unit_seed(1, 26, 4, 2));
        assert_ne!(a, unit_seed(1, 26, 3, 3));
    }
}
