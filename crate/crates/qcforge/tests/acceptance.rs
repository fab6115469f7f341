//! Acceptance suite. Every test prints one `criterion N: PASS|FAIL` line on
//! stderr before asserting.

use std::collections::HashMap;
use std::io::Write;

use qcforge::corpus::{corpus_path, load_corpus, RecordIndex, TABLES_1_3};
use qcforge::engine::{resolve_threads, ParallelEngine};
use qcforge::records::load_records;
use qcforge::search::parallel_search;
use qcforge::verify::{build_code, DistanceCheck, Outcome, Verifier};
use qcforge_core::codec::decode_gen;
use qcforge_core::constructx::{construction_x, modify, CxTriple, Modify};
use qcforge_core::cyclic::{cyclic_code_from_gen, enumerate_class_reps, CosetPartition, DimFilter};
use qcforge_core::galois::{factor_xn_minus_1, Field, Poly};
use qcforge_core::linalg::{classify_properties, dual_basis, is_subspace, DistanceBudget, DistanceEngine, GenMatrix};
use qcforge_core::qc::{asr_sample, build_qc_matrix, theorem1_check, CodeRecord, ProvenanceKind, SearchConfig};

// Pinned thresholds.
const TABLES_1_3_ROWS: usize = 113;
const EXPLICIT_ROWS: usize = 38;
const EXACT_K_MAX: usize = 31;
const ASR_SAMPLES: usize = 200;
const ASR_MIN_CLASSES: usize = 10;
const ASR_K_MAX: usize = 20;
const PARTITION_N_MAX: usize = 31;
const DETERMINISM_THREADS: [usize; 2] = [1, 8];

// eprintln! output is captured by the harness
#[allow(clippy::explicit_write)]
fn report(n: u32, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    writeln!(std::io::stderr(), "criterion {n}: {verdict} {detail}").unwrap();
    assert!(ok, "criterion {n}: {detail}");
}

fn engine() -> ParallelEngine {
    ParallelEngine::new(resolve_threads(None), DistanceBudget::default()).unwrap()
}

fn corpus_index() -> (Vec<CodeRecord>, RecordIndex) {
    let corpus = load_corpus().unwrap();
    let index = RecordIndex::new(&corpus);
    (corpus, index)
}

fn table_rows(table: u8) -> Vec<CodeRecord> {
    load_records(&corpus_path(TABLES_1_3))
        .unwrap()
        .records
        .into_iter()
        .filter(|r| r.table == Some(table) && r.provenance_kind == ProvenanceKind::Qc)
        .collect()
}

fn exact(engine: &ParallelEngine, g: &GenMatrix) -> usize {
    let d = engine.min_distance(g, None).unwrap();
    assert!(d.exact);
    d.weight
}

#[test]
fn criterion_1_codec_ground_truth() {
    let p = decode_gen(Field::GF2, "53").unwrap();
    let expected = Poly::from_coeffs(Field::GF2, vec![1, 0, 1, 1, 1]);
    report(1, p == expected, &format!("decode_gen(\"53\") = {p}"));
}

#[test]
fn criterion_2_structural_check() {
    let records = load_records(&corpus_path(TABLES_1_3)).unwrap().records;
    let mut bad = Vec::new();
    let mut explicit = 0;
    for r in &records {
        // rows listed without generators belong to no table
        let tabled = r.provenance_kind == ProvenanceKind::Qc;
        if tabled != matches!(r.table, Some(1..=3)) {
            bad.push(format!("{} has table {:?}", r.label(), r.table));
        }
        if !tabled {
            continue;
        }
        explicit += 1;
        let f = r.field().unwrap();
        let ell = r.fs_encoded.len();
        let m = r.n / ell;
        let parsed = r.fs_encoded.iter().all(|s| decode_gen(f, s).is_ok());
        let deg_g = decode_gen(f, r.g_encoded.as_deref().unwrap()).unwrap().degree().unwrap();
        if !parsed || m * ell != r.n || m - deg_g != r.k {
            bad.push(r.label());
        }
    }
    let ok = records.len() == TABLES_1_3_ROWS && explicit == EXPLICIT_ROWS && bad.is_empty();
    report(2, ok, &format!("{} rows, {explicit} with generators, failures {bad:?}", records.len()));
}

#[test]
fn criterion_3_exact_distances() {
    let engine = engine();
    let mut checked = Vec::new();
    let mut wrong = Vec::new();
    for table in 1..=3 {
        for r in table_rows(table).into_iter().filter(|r| r.k <= EXACT_K_MAX) {
            let d = exact(&engine, &build_qc_matrix(&r.qc_spec().unwrap()));
            if d != r.d {
                wrong.push(format!("{} computed {d}", r.label()));
            }
            checked.push((r.n, r.k, r.d));
        }
    }
    let named = [
        (52, 24, 12),
        (70, 31, 16),
        (70, 30, 16),
        (52, 25, 12),
        (69, 22, 20),
        (66, 20, 20),
        (93, 15, 36),
        (88, 20, 28),
        (99, 21, 32),
        (104, 24, 32),
        (78, 24, 22),
        (84, 24, 24),
        (93, 30, 24),
        (105, 29, 28),
    ];
    let missing: Vec<_> = named.iter().filter(|p| !checked.contains(p)).collect();
    let ok = wrong.is_empty() && missing.is_empty();
    report(
        3,
        ok,
        &format!("{} rows with k <= {EXACT_K_MAX}, mismatches {wrong:?}, missing {missing:?}", checked.len()),
    );
}

#[test]
fn criterion_4_properties() {
    let mut wrong = Vec::new();
    let mut count = 0;
    for table in 1..=3 {
        for r in table_rows(table) {
            let p = classify_properties(&build_qc_matrix(&r.qc_spec().unwrap())).unwrap();
            let ok = match table {
                1 => p.lcd,
                2 => p.self_orthogonal,
                _ => p.self_orthogonal && p.reversible,
            };
            count += 1;
            if !ok {
                wrong.push(format!("table {table} {} {p:?}", r.label()));
            }
        }
    }
    report(4, wrong.is_empty(), &format!("{count} codes classified, failures {wrong:?}"));
}

#[test]
fn criterion_5_construction_x() {
    let (_, index) = corpus_index();
    let engine = engine();
    let code = |id: &str| build_code(index.get(id).unwrap(), &index).unwrap().basis;
    let c1 = code("t7-96-30-24-q2");
    let c2 = code("t7-96-29-26-q2");
    let c3 = GenMatrix::from_rows(Field::GF2, 2, vec![vec![1, 1]]);
    let (d1, d2, d3) = (exact(&engine, &c1), exact(&engine, &c2), exact(&engine, &c3));
    let triple = CxTriple::new(c1, c2, c3).unwrap();
    let g = construction_x(&triple).unwrap();
    let d = exact(&engine, &g);
    let shipped = build_code(index.get("t4-98-30-26-q2").unwrap(), &index).unwrap().basis;
    let same = is_subspace(&g, &shipped).unwrap() && is_subspace(&shipped, &g).unwrap();
    let sandwich = d2 >= d && d >= d2.min(d1 + d3);
    let ok = (g.cols(), g.rank(), d) == (98, 30, 26)
        && (d1, d2, d3) == (24, 26, 2)
        && sandwich
        && d == d1 + d3
        && d == d2
        && same;
    report(
        5,
        ok,
        &format!(
            "[{},{},{d}] from d1={d1} d2={d2} d3={d3}, sandwich {sandwich}, matches record {same}",
            g.cols(),
            g.rank()
        ),
    );
}

#[test]
fn criterion_6_subcode_structure() {
    let (corpus, index) = corpus_index();
    let mut pairs = 0;
    let mut wrong = Vec::new();
    let mut unavailable = Vec::new();
    let mut bound_only = Vec::new();
    let budget = DistanceBudget::default();
    for r in corpus.iter().filter(|r| r.provenance_kind == ProvenanceKind::ConstructionX) {
        let cx = r.cx_components.as_ref().unwrap();
        let (Some(s1), Some(s2), Some(s3)) = (index.get(&cx.c1), index.get(&cx.c2), index.get(&cx.c3)) else {
            unavailable.push(r.label());
            continue;
        };
        let c1 = build_code(s1, &index).unwrap().basis;
        let c2 = build_code(s2, &index).unwrap().basis;
        pairs += 1;
        let offsets = c1.rank() == s1.k && c2.rank() == s2.k && s1.k - s2.k == s3.k && r.k == s1.k;
        if !is_subspace(&c2, &c1).unwrap() || !offsets {
            wrong.push(format!("{} ⊄ {}", s2.label(), s1.label()));
        }
        for s in [s1, s2] {
            let f = s.field().unwrap();
            if !budget.allows(f, s.k) && !bound_only.contains(&s.label()) {
                bound_only.push(s.label());
            }
        }
    }
    let named = [("t7-96-29-26-q2", "t7-96-30-24-q2"), ("t7-140-25-59-q3", "t7-140-26-58-q3")];
    for (sub, sup) in named {
        let a = build_code(index.get(sub).unwrap(), &index).unwrap().basis;
        let b = build_code(index.get(sup).unwrap(), &index).unwrap().basis;
        if !is_subspace(&a, &b).unwrap() || b.rank() - a.rank() != 1 {
            wrong.push(format!("{sub} ⊄ {sup}"));
        }
    }
    report(
        6,
        wrong.is_empty() && pairs > 0,
        &format!(
            "{pairs} pairs, failures {wrong:?}; constituents without generators {unavailable:?}; \
             {} constituents above the budget are bound-only",
            bound_only.len()
        ),
    );
}

#[test]
fn criterion_7_qc_bound_suite() {
    let engine = engine();
    let mut classes = Vec::new();
    for (f, m) in [(Field::GF2, 15), (Field::GF2, 21), (Field::GF2, 17), (Field::GF3, 13), (Field::GF4, 9)] {
        let reps = enumerate_class_reps(f, m, Some(DimFilter { k_min: 2, k_max: 10 })).unwrap();
        classes.extend(reps.into_iter().filter(|c| !c.is_full_space()).map(|c| c.code()));
    }
    let mut violations = Vec::new();
    let mut checked = 0;
    for i in 0..ASR_SAMPLES {
        let code = &classes[i % classes.len()];
        let ell = 2 + i % 2;
        let spec = asr_sample(code, ell, i as u64).unwrap();
        if spec.k() > ASR_K_MAX || !spec.satisfies_hypotheses() {
            violations.push(format!("sample {i} outside the suite"));
            continue;
        }
        let d_cyclic = exact(&engine, &code.generator_matrix());
        let d_qc = exact(&engine, &build_qc_matrix(&spec));
        if !theorem1_check(&spec, d_cyclic, d_qc) {
            violations.push(format!("g={} fs={:?}: {d_qc} < {ell}*{d_cyclic}", spec.g_encoded(), spec.fs_encoded()));
        }
        checked += 1;
    }
    let ok = classes.len() >= ASR_MIN_CLASSES && checked == ASR_SAMPLES && violations.is_empty();
    report(7, ok, &format!("{checked} samples over {} classes, violations {violations:?}", classes.len()));
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn echelon_key(g: &GenMatrix) -> Vec<Vec<u8>> {
    g.rref().matrix.to_rows()
}

fn weight_distribution(g: &GenMatrix) -> Vec<u64> {
    let mut dist = vec![0u64; g.cols() + 1];
    let mut word = vec![0u8; g.cols()];
    dist[0] = 1;
    for step in 1u64..(1 << g.rows()) {
        for (w, r) in word.iter_mut().zip(g.row(step.trailing_zeros() as usize)) {
            *w ^= r;
        }
        dist[word.iter().filter(|&&c| c != 0).count()] += 1;
    }
    dist
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Brute-force class count for binary cyclic codes of length `n`, plus a
/// constructive check of every merge. Returns an error description on the
/// first disagreement.
fn partition_oracle(n: usize) -> Result<usize, String> {
    let f = Field::GF2;
    let factors = factor_xn_minus_1(f, n).unwrap();
    let max = factors[0].multiplicity as u32;
    let mut codes: Vec<(Vec<u32>, GenMatrix, Vec<u64>)> = Vec::new();
    let mut mults = vec![0u32; factors.len()];
    'all: loop {
        if mults.iter().any(|&m| m < max) {
            let g = factors.iter().zip(&mults).fold(Poly::one(f), |acc, (fa, &m)| &acc * &fa.poly.pow(m as u64));
            let basis = cyclic_code_from_gen(&g, n).unwrap().generator_matrix();
            let small = if 2 * basis.rows() <= n { basis.clone() } else { dual_basis(&basis).unwrap() };
            codes.push((mults.clone(), basis, weight_distribution(&small)));
        }
        for m in mults.iter_mut() {
            if *m < max {
                *m += 1;
                continue 'all;
            }
            *m = 0;
        }
        break;
    }
    let index: HashMap<_, _> = codes.iter().enumerate().map(|(i, c)| (echelon_key(&c.1), i)).collect();
    let mut parent: Vec<usize> = (0..codes.len()).collect();
    let partition = CosetPartition::new(f, n).unwrap();
    let n_prime = partition.n_prime();
    for i in 0..codes.len() {
        for a in (1..n).filter(|&a| gcd(a, n) == 1) {
            let perm: Vec<usize> = (0..n).map(|x| a * x % n).collect();
            let j = *index.get(&echelon_key(&codes[i].1.permute_columns(&perm))).ok_or("image not cyclic")?;
            if i == j {
                continue;
            }
            if codes[i].2 != codes[j].2 {
                return Err(format!("weight screen separates {i} and {j}"));
            }
            let src = partition.multiset(codes[i].0.clone()).unwrap();
            let dst = partition.multiset(codes[j].0.clone()).unwrap();
            let b = (1..=n_prime)
                .filter(|&b| gcd(b, n_prime) == 1)
                .find(|&b| partition.multiplier_image(&src, b).unwrap() == dst)
                .ok_or(format!("no multiplier carries {i} to {j}"))?;
            let mapped = codes[i].1.permute_columns(&partition.coordinate_permutation(b).unwrap());
            if echelon_key(&mapped) != echelon_key(&codes[j].1) {
                return Err(format!("multiplier {b} does not map {i} onto {j}"));
            }
            let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
            parent[ri] = rj;
        }
    }
    Ok((0..codes.len()).filter(|&i| root(&mut parent, i) == i).count())
}

#[test]
fn criterion_8_partition_oracle() {
    let mut wrong = Vec::new();
    for n in 1..=PARTITION_N_MAX {
        let reps = enumerate_class_reps(Field::GF2, n, None).unwrap().len();
        match partition_oracle(n) {
            Ok(count) if count == reps => {}
            Ok(count) => wrong.push(format!("n={n}: {reps} classes, oracle {count}")),
            Err(e) => wrong.push(format!("n={n}: {e}")),
        }
    }
    report(8, wrong.is_empty(), &format!("n = 1..={PARTITION_N_MAX}, disagreements {wrong:?}"));
}

#[test]
fn criterion_9_modifications() {
    let (corpus, index) = corpus_index();
    let basis = |id: &str| build_code(index.get(id).unwrap(), &index).unwrap().basis;
    let shape = |g: &GenMatrix| (g.cols(), g.rank());
    let c177 = basis("t4-177-52-41-q2");
    let c143 = basis("t4-143-19-75-q4");
    let c107 = basis("t4-107-23-43-q3");
    let mut got = vec![
        shape(&c177),
        shape(&modify(&c177, Modify::Expurgate, &[]).unwrap()),
        shape(&modify(&c177, Modify::Shorten, &[168]).unwrap()),
        shape(&c143),
        shape(&modify(&c143, Modify::Shorten, &[140, 141, 142]).unwrap()),
        shape(&c107),
        shape(&modify(&c107, Modify::Puncture, &[105]).unwrap()),
    ];
    let expected = [(177, 52), (177, 51), (176, 51), (143, 19), (140, 18), (107, 23), (106, 23)];

    let engine = engine();
    let verifier = Verifier::new(&index, &engine);
    let mut notes = Vec::new();
    for r in corpus.iter().filter(|r| r.table == Some(6)) {
        let built = build_code(r, &index).unwrap();
        got.push(shape(&built.basis));
        let exact_expected = DistanceBudget::default().allows(r.field().unwrap(), r.k);
        let d = verifier.measure(&built).unwrap();
        let entry = verifier.verify(r);
        let fine =
            entry.outcome != Outcome::ParameterMismatch && matches!(d, DistanceCheck::Exact { .. }) == exact_expected;
        if !fine {
            notes.push(format!("{}: {}", r.label(), entry.outcome));
        }
    }
    let mut want = expected.to_vec();
    want.extend([(177, 51), (176, 51), (106, 23), (140, 18)]);
    let ok = got == want && notes.is_empty();
    report(9, ok, &format!("shapes {got:?}, modification record issues {notes:?}"));
}

#[test]
fn criterion_10_determinism() {
    let mut config = SearchConfig::new(Field::GF2, 20_240_601);
    config.m_values = vec![15, 21];
    config.ells = vec![2, 3];
    config.samples = 30;
    for n in [30, 42, 45, 63] {
        for k in 1..n {
            config.targets.insert((n, k), ((n - k) / 3).max(2));
        }
    }
    let runs: Vec<_> = DETERMINISM_THREADS
        .iter()
        .map(|&t| {
            let engine = ParallelEngine::new(t, DistanceBudget::default()).unwrap();
            parallel_search(&config, &engine).unwrap()
        })
        .collect();
    let ok = runs[0].records == runs[1].records && !runs[0].records.is_empty();
    report(
        10,
        ok,
        &format!("{} vs {} records with {DETERMINISM_THREADS:?} workers", runs[0].records.len(), runs[1].records.len()),
    );
}
