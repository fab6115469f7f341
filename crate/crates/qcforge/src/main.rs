use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use env_logger::Env;
use log::info;

use qcforge::config::{load_config, parse_list};
use qcforge::corpus::{corpus_path, load_corpus, RecordIndex, C3_CATALOG};
use qcforge::engine::{resolve_threads, ParallelEngine};
use qcforge::records::{append_records, load_records};
use qcforge::search::parallel_search;
use qcforge::verify::{build_code, DistanceCheck, Verifier, VerifyReport};
use qcforge_core::codec::{decode_gen, encode_gen};
use qcforge_core::constructx::{algorithm1, modify, Direction, Modify};
use qcforge_core::cyclic::{enumerate_class_reps, CosetPartition, DimFilter};
use qcforge_core::galois::{Field, Poly};
use qcforge_core::linalg::{classify_properties, DistanceBudget, DistanceEngine};
use qcforge_core::qc::{
    build_qc_matrix, row_string, targets_from_records, CodeRecord, Exactness, Property, ProvenanceKind,
};

const DEFAULT_LEDGER: &str = "qcforge-ledger.records";

#[derive(Parser)]
#[command(name = "qcforge", version, about = "Quasi-cyclic and Construction X codes over GF(2), GF(3), GF(4), GF(5)")]
struct Cli {
    /// Worker threads; falls back to QCFORGE_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest dimension enumerated exactly: one number for every field, or
    /// overrides like `2=24,3=16`.
    #[arg(long, global = true, value_parser = parse_budget)]
    budget: Option<DistanceBudget>,
    /// Re-derive running codewords during enumeration.
    #[arg(long, global = true)]
    cross_check: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cyclotomic cosets of q modulo n', the part of n prime to q.
    Cosets {
        #[arg(long, value_parser = parse_field)]
        q: Field,
        #[arg(long)]
        n: usize,
    },
    /// One cyclic code per multiplier-equivalence class.
    Partition {
        #[arg(long, value_parser = parse_field)]
        q: Field,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kmin: Option<usize>,
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// ASR search driven by a key=value configuration file.
    Search {
        #[arg(long)]
        config: PathBuf,
        /// Ledger to append to; overrides the config file.
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
    /// Rebuild every record of a file and check its parameters.
    Verify {
        records: PathBuf,
        /// Also write the report as line-delimited JSON.
        #[arg(long)]
        report_out: Option<PathBuf>,
    },
    /// Construction X from the best degree-b neighbour of a QC record.
    Constx {
        /// Record id, looked up in --records and the shipped corpus.
        #[arg(long)]
        record: String,
        #[arg(long)]
        records: Option<PathBuf>,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value_t = DirectionArg::Super)]
        direction: DirectionArg,
        /// C3 catalog; the shipped one by default.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Longest C3 considered.
        #[arg(long, default_value_t = usize::MAX)]
        max_len: usize,
        /// Append the outputs, with generator rows, to this record file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shorten, puncture or expurgate a recorded code.
    Modify {
        #[arg(long)]
        record: String,
        #[arg(long)]
        records: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// 1-indexed positions: `169`, `141,142,143` or `141-143`.
        #[arg(long, default_value = "")]
        positions: String,
    },
    /// Expand a compact generator string.
    DecodeGen {
        #[arg(long, value_parser = parse_field)]
        q: Field,
        string: String,
    },
    /// Compact string of a polynomial given by its coefficients, lowest
    /// power first (`10111`, or `1ab` over GF(4)).
    EncodeGen {
        #[arg(long, value_parser = parse_field)]
        q: Field,
        coeffs: String,
    },
    /// Verify every shipped row of one table.
    Reproduce {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=7))]
        table: u8,
        #[arg(long)]
        report_out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Super,
    Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Shorten,
    Puncture,
    Expurgate,
}

fn parse_field(s: &str) -> Result<Field, String> {
    let q: u32 = s.parse().map_err(|_| format!("not a field size: {s:?}"))?;
    Field::new(q).map_err(|e| e.to_string())
}

fn parse_budget(s: &str) -> Result<DistanceBudget, String> {
    if let Ok(k) = s.parse() {
        return Ok(DistanceBudget::uniform(k));
    }
    let mut b = DistanceBudget::default();
    for part in s.split(',') {
        let (q, k) = part.split_once('=').ok_or_else(|| format!("expected q=k, got {part:?}"))?;
        let k: usize = k.trim().parse().map_err(|_| format!("bad dimension in {part:?}"))?;
        match q.trim() {
            "2" => b.gf2 = k,
            "3" => b.gf3 = k,
            "4" => b.gf4 = k,
            "5" => b.gf5 = k,
            other => return Err(format!("unsupported field {other:?}")),
        }
    }
    Ok(b)
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

struct Ctx {
    threads: Option<usize>,
    budget: DistanceBudget,
    cross_check: bool,
}

impl Ctx {
    fn engine(&self, threads: Option<usize>) -> Result<ParallelEngine> {
        let threads = resolve_threads(self.threads.or(threads));
        info!("{threads} worker threads");
        Ok(ParallelEngine::new(threads, self.budget)?.with_cross_check(self.cross_check))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let ctx = Ctx { threads: cli.threads, budget: cli.budget.unwrap_or_default(), cross_check: cli.cross_check };
    match run(cli.command, &ctx) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, ctx: &Ctx) -> Result<ExitCode> {
    match command {
        Command::Cosets { q, n } => cosets(q, n),
        Command::Partition { q, n, kmin, kmax } => partition(q, n, kmin, kmax),
        Command::Search { config, ledger } => search(ctx, &config, ledger),
        Command::Verify { records, report_out } => verify(ctx, &records, report_out.as_deref()),
        Command::Constx { record, records, b, direction, catalog, max_len, out } => {
            let direction = match direction {
                DirectionArg::Super => Direction::Super,
                DirectionArg::Sub => Direction::Sub,
            };
            constx(ctx, &record, records.as_deref(), b, direction, catalog.as_deref(), max_len, out.as_deref())
        }
        Command::Modify { record, records, method, positions } => {
            modify_cmd(ctx, &record, records.as_deref(), method, &positions)
        }
        Command::DecodeGen { q, string } => {
            let p = decode_gen(q, &string)?;
            println!("{p}");
            let coeffs: String = row_string(p.coeffs(), q);
            println!("coefficients (x^0 first): {}", if coeffs.is_empty() { "0".into() } else { coeffs });
            Ok(ExitCode::SUCCESS)
        }
        Command::EncodeGen { q, coeffs } => {
            let p = parse_coeffs(q, &coeffs)?;
            println!("{}", encode_gen(&p));
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce { table, report_out } => reproduce(ctx, table, report_out.as_deref()),
    }
}

fn parse_coeffs(q: Field, s: &str) -> Result<Poly> {
    let coeffs = s
        .chars()
        .filter(|c| !matches!(c, ',' | ' '))
        .enumerate()
        .map(|(i, ch)| {
            let v = match (q.order(), ch) {
                (4, 'a') => Some(2),
                (4, 'b') => Some(3),
                (_, c) => c.to_digit(10).map(|d| d as u8).filter(|&d| q.contains(d)),
            };
            v.ok_or_else(|| anyhow!("invalid coefficient {ch:?} at {i} for GF({})", q.order()))
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(Poly::from_coeffs(q, coeffs))
}

fn cosets(q: Field, n: usize) -> Result<ExitCode> {
    let p = CosetPartition::new(q, n)?;
    println!("n = {n} = {} * {}^{} over GF({})", p.n_prime(), q.characteristic(), p.t(), q.order());
    for c in p.cosets() {
        let items: Vec<String> = c.iter().map(usize::to_string).collect();
        println!("{{{}}}", items.join(","));
    }
    println!("{} cosets, multiplicities up to {}", p.cosets().len(), p.max_multiplicity());
    Ok(ExitCode::SUCCESS)
}

fn partition(q: Field, n: usize, kmin: Option<usize>, kmax: Option<usize>) -> Result<ExitCode> {
    let filter =
        (kmin.is_some() || kmax.is_some()).then(|| DimFilter { k_min: kmin.unwrap_or(0), k_max: kmax.unwrap_or(n) });
    let classes = enumerate_class_reps(q, n, filter)?;
    for (i, c) in classes.iter().enumerate() {
        let flag = if c.is_full_space() { "  (full space)" } else { "" };
        println!(
            "{i:>4}  k={:<4} g={:<16} multiplicities={:?}{flag}",
            c.dim,
            encode_gen(&c.generator),
            c.multiset.multiplicities()
        );
    }
    let proper = classes.iter().filter(|c| !c.is_full_space()).count();
    println!("{} classes, {proper} proper nonzero; zero code g = x^{n} - 1 excluded", classes.len());
    Ok(ExitCode::SUCCESS)
}

fn search(ctx: &Ctx, config: &Path, ledger: Option<PathBuf>) -> Result<ExitCode> {
    let file = load_config(config)?;
    let mut search = file.search;
    let target_records = match &file.target_file {
        Some(p) => load_records(p)?.records,
        None => load_corpus()?,
    };
    search.targets = targets_from_records(&target_records, search.field.order());
    let engine = ctx.engine(file.threads)?;
    let summary = parallel_search(&search, &engine)?;
    for l in &summary.lengths {
        println!(
            "m={:<4} classes={:<5} units={:<5} samples={:<8} records={}",
            l.m, l.classes, l.units, l.samples, l.records
        );
    }
    let ledger = ledger.or(file.ledger).unwrap_or_else(|| PathBuf::from(DEFAULT_LEDGER));
    let stamp = now();
    let records: Vec<CodeRecord> =
        summary.records.into_iter().map(|r| CodeRecord { timestamp: Some(stamp), ..r }).collect();
    for r in &records {
        println!("found {}", r.label());
    }
    let written = append_records(&ledger, &records)?;
    println!("{} records found, {written} appended to {}", records.len(), ledger.display());
    Ok(ExitCode::SUCCESS)
}

fn print_report(report: &VerifyReport, out: Option<&Path>) -> Result<ExitCode> {
    print!("{}", report.render());
    if let Some(path) = out {
        fs::write(path, report.to_json_lines()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.has_mismatch() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn index_with(extra: &[CodeRecord]) -> Result<RecordIndex> {
    let mut index = RecordIndex::new(&load_corpus()?);
    index.extend(extra);
    Ok(index)
}

fn verify(ctx: &Ctx, path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let records = load_records(path)?.records;
    let index = index_with(&records)?;
    let engine = ctx.engine(None)?;
    let report = Verifier::new(&index, &engine).verify_all(&records);
    print_report(&report, out)
}

fn reproduce(ctx: &Ctx, table: u8, out: Option<&Path>) -> Result<ExitCode> {
    let corpus = load_corpus()?;
    let index = RecordIndex::new(&corpus);
    let rows: Vec<&CodeRecord> = corpus.iter().filter(|r| r.table == Some(table)).collect();
    if rows.is_empty() {
        bail!("no shipped rows for table {table}");
    }
    let engine = ctx.engine(None)?;
    let report = Verifier::new(&index, &engine).verify_all(rows);
    print_report(&report, out)
}

fn find_record(id: &str, extra: Option<&Path>) -> Result<(CodeRecord, RecordIndex)> {
    let extra = match extra {
        Some(p) => load_records(p)?.records,
        None => Vec::new(),
    };
    let index = index_with(&extra)?;
    let record = index.get(id).cloned().ok_or_else(|| anyhow!("no record with id {id}"))?;
    Ok((record, index))
}

fn show_distance(d: Option<usize>) -> String {
    d.map_or_else(|| "?".into(), |d| d.to_string())
}

#[allow(clippy::too_many_arguments)]
fn constx(
    ctx: &Ctx,
    id: &str,
    records: Option<&Path>,
    b: usize,
    direction: Direction,
    catalog: Option<&Path>,
    max_len: usize,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let (record, _) = find_record(id, records)?;
    if !matches!(record.provenance_kind, ProvenanceKind::Qc | ProvenanceKind::QcProducts) {
        bail!("record {id} is not quasi-cyclic; Construction X needs a QC generator");
    }
    let spec = record.qc_spec()?;
    let catalog_path = catalog.map_or_else(|| corpus_path(C3_CATALOG), Path::to_path_buf);
    let entries: Vec<CodeRecord> =
        load_records(&catalog_path)?.records.into_iter().filter(|r| r.q == record.q).collect();
    let matrices = entries.iter().map(CodeRecord::catalog_matrix).collect::<qcforge_core::Result<Vec<_>>>()?;

    let engine = ctx.engine(None)?;
    let original = build_qc_matrix(&spec);
    let d_original = engine
        .budget()
        .allows(spec.field(), spec.k())
        .then(|| engine.min_distance(&original, None).map(|d| d.weight))
        .transpose()?;
    println!("original [{},{},{}]_{} g={}", spec.n(), spec.k(), show_distance(d_original), record.q, spec.g_encoded());

    let outcomes = algorithm1(&spec, b, direction, &matrices, max_len, &engine)?;
    let Some(first) = outcomes.first() else {
        println!("no degree-{b} neighbour or no catalog code of dimension {b}");
        return Ok(ExitCode::SUCCESS);
    };
    let nb = &first.neighbour;
    let role = if direction == Direction::Super { "supercode" } else { "subcode" };
    println!("{role} [{},{},{}] g'={}", nb.spec.n(), nb.spec.k(), show_distance(nb.d), nb.spec.g_encoded());
    let (d1, d2) = match direction {
        Direction::Super => (nb.d, d_original),
        Direction::Sub => (d_original, nb.d),
    };

    let mut violated = false;
    let mut emitted = Vec::new();
    for o in &outcomes {
        let c3 = &entries[o.c3_index];
        let d3 = Some(c3.d);
        let sandwich = match (o.d, d1, d2, d3) {
            (Some(d), Some(d1), Some(d2), Some(d3)) => {
                let holds = d2 >= d && d >= d2.min(d1 + d3);
                violated |= !holds;
                let eq = if d == d1 + d3 { ", d = d1 + d3" } else { "" };
                format!("{d2} >= {d} >= min({d2}, {d1} + {d3}): {}{eq}", if holds { "holds" } else { "VIOLATED" })
            }
            _ => "not computable within the budget".into(),
        };
        println!(
            "[{},{},{}]_{}  C3={} {}  sandwich {sandwich}",
            o.n,
            o.k,
            show_distance(o.d),
            record.q,
            c3.id.as_deref().unwrap_or("-"),
            c3.label()
        );
        let mut r = CodeRecord::params(
            record.q,
            o.n,
            o.k,
            o.d.unwrap_or_else(|| d2.map_or(1, |d2| d2.min(d1.unwrap_or(0) + c3.d)).max(1)),
            if o.d.is_some() { Exactness::Exact } else { Exactness::LowerBound },
            ProvenanceKind::ConstructionX,
        );
        r.properties = Property::list(&classify_properties(&o.generator)?);
        r.rows = o.generator.row_iter().map(|row| row_string(row, spec.field())).collect();
        r.note = Some(format!("{role} g'={} of {id}, C3 {}", nb.spec.g_encoded(), c3.id.as_deref().unwrap_or("-")));
        r.timestamp = Some(now());
        emitted.push(r);
    }
    if let Some(path) = out {
        let written = append_records(path, &emitted)?;
        println!("{written} records appended to {}", path.display());
    }
    Ok(if violated { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn modify_cmd(ctx: &Ctx, id: &str, records: Option<&Path>, method: MethodArg, positions: &str) -> Result<ExitCode> {
    let (record, index) = find_record(id, records)?;
    let positions = parse_list(positions).map_err(|e| anyhow!(e))?;
    if positions.contains(&0) {
        bail!("positions are 1-indexed");
    }
    let zero_based: Vec<usize> = positions.iter().map(|p| p - 1).collect();
    let method = match method {
        MethodArg::Shorten => Modify::Shorten,
        MethodArg::Puncture => Modify::Puncture,
        MethodArg::Expurgate => Modify::Expurgate,
    };
    let mut built = build_code(&record, &index)?;
    built.basis = modify(&built.basis, method, &zero_based)?;
    built.lower = match method {
        Modify::Shorten => built.lower,
        Modify::Puncture => built.lower.saturating_sub(zero_based.len()).max(1),
        Modify::Expurgate => built.lower + built.lower % 2,
    };
    let engine = ctx.engine(None)?;
    let d = Verifier::new(&index, &engine).measure(&built)?;
    let shown = match d {
        DistanceCheck::Exact { d } => d.to_string(),
        DistanceCheck::Bounds { lower, upper } => format!("{lower}..{upper}"),
    };
    println!("{} -> [{},{},{}]_{}", record.label(), built.basis.cols(), built.basis.rows(), shown, record.q);
    Ok(ExitCode::SUCCESS)
}
