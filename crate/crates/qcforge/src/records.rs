//! Line-delimited record files.
//!
//! A file starts with the header [`HEADER`], then holds one JSON object per
//! line. Blank lines and lines starting with `#` are ignored. Records are
//! appended, never rewritten; a record whose `(q, n, k, g, fs)` key is
//! already present is skipped.

use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use log::warn;
use qcforge_core::qc::CodeRecord;

pub const HEADER: &str = "# qcforge-records v1";

const HEADER_PREFIX: &str = "# qcforge-records ";

#[derive(Debug, thiserror::Error)]
pub enum RecordsError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}:{line}: {message}{}", path.display(), more_suffix(*more))]
    Malformed { path: PathBuf, line: usize, message: String, more: usize },
    #[error("{}:{line}: unsupported record format {version:?}", path.display())]
    Version { path: PathBuf, line: usize, version: String },
}

fn more_suffix(more: usize) -> String {
    match more {
        0 => String::new(),
        1 => " (and 1 more malformed line)".into(),
        n => format!(" (and {n} more malformed lines)"),
    }
}

/// A record skipped because its key was already loaded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Duplicate {
    pub line: usize,
    pub label: String,
    pub id: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Loaded {
    pub records: Vec<CodeRecord>,
    pub duplicates: Vec<Duplicate>,
}

/// Structural checks beyond the JSON shape.
pub fn validate(r: &CodeRecord) -> Result<(), String> {
    if !(2..=5).contains(&r.q) {
        return Err(format!("unsupported field size q = {}", r.q));
    }
    if r.k == 0 || r.d == 0 {
        return Err("k and d must be positive".into());
    }
    if r.k > r.n {
        return Err(format!("k = {} exceeds n = {}", r.k, r.n));
    }
    if let (Some(m), Some(ell)) = (r.m, r.ell) {
        if m * ell != r.n {
            return Err(format!("n = {} differs from m l = {m} * {ell}", r.n));
        }
    }
    if let Some(ell) = r.ell {
        if !r.fs_encoded.is_empty() && r.fs_encoded.len() != ell {
            return Err(format!("{} f strings for index {ell}", r.fs_encoded.len()));
        }
    }
    if let Some(m) = &r.modification {
        if m.positions.contains(&0) {
            return Err("modification positions are 1-indexed".into());
        }
    }
    Ok(())
}

/// Parses the contents of a record file. `path` only labels errors.
pub fn parse_records(text: &str, path: &Path) -> Result<Loaded, RecordsError> {
    let mut out = Loaded::default();
    let mut keys = HashSet::new();
    let mut first_error: Option<(usize, String)> = None;
    let mut more = 0;
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if let Some(version) = trimmed.strip_prefix(HEADER_PREFIX) {
            if !seen_content && trimmed != HEADER {
                return Err(RecordsError::Version { path: path.into(), line, version: version.into() });
            }
            continue;
        }
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        seen_content = true;
        let parsed = serde_json::from_str::<CodeRecord>(trimmed)
            .map_err(|e| e.to_string())
            .and_then(|r| validate(&r).map(|()| r));
        match parsed {
            Ok(r) => {
                if keys.insert(r.dedup_key()) {
                    out.records.push(r);
                } else {
                    out.duplicates.push(Duplicate { line, label: r.label(), id: r.id.clone() });
                }
            }
            Err(message) if first_error.is_none() => first_error = Some((line, message)),
            Err(_) => more += 1,
        }
    }
    if let Some((line, message)) = first_error {
        return Err(RecordsError::Malformed { path: path.into(), line, message, more });
    }
    Ok(out)
}

/// Loads a record file, logging a notice for every skipped duplicate.
pub fn load_records(path: &Path) -> Result<Loaded, RecordsError> {
    let text = fs::read_to_string(path).map_err(|source| RecordsError::Io { path: path.into(), source })?;
    let loaded = parse_records(&text, path)?;
    for d in &loaded.duplicates {
        warn!("{}:{}: duplicate {} skipped", path.display(), d.line, d.label);
    }
    Ok(loaded)
}

pub fn format_record(r: &CodeRecord) -> String {
    serde_json::to_string(r).expect("records always serialize")
}

/// Header plus one line per record.
pub fn format_records(records: &[CodeRecord]) -> String {
    let mut s = String::from(HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&format_record(r));
        s.push('\n');
    }
    s
}

/// Appends the records whose key is not in the file yet, creating it with a
/// header when missing. Returns the number of lines written.
pub fn append_records(path: &Path, records: &[CodeRecord]) -> Result<usize, RecordsError> {
    let io_err = |source| RecordsError::Io { path: path.into(), source };
    let existing = match fs::metadata(path) {
        Ok(meta) if meta.len() > 0 => Some(load_records(path)?),
        Ok(_) => None,
        Err(e) if e.kind() == io::ErrorKind::NotFound => None,
        Err(e) => return Err(io_err(e)),
    };
    let mut keys: HashSet<_> = existing.iter().flat_map(|l| l.records.iter().map(CodeRecord::dedup_key)).collect();
    let mut buf = String::new();
    if existing.is_none() {
        buf.push_str(HEADER);
        buf.push('\n');
    }
    let mut written = 0;
    for r in records {
        if !keys.insert(r.dedup_key()) {
            warn!("{}: duplicate {} not appended", path.display(), r.label());
            continue;
        }
        buf.push_str(&format_record(r));
        buf.push('\n');
        written += 1;
    }
    let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io_err)?;
    file.write_all(buf.as_bytes()).map_err(io_err)?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcforge_core::qc::{Exactness, ProvenanceKind};

    fn sample(n: usize) -> CodeRecord {
        let mut r = CodeRecord::params(2, n, 4, 3, Exactness::Exact, ProvenanceKind::Qc);
        r.m = Some(n);
        r.ell = Some(1);
        r.g_encoded = Some("3".into());
        r.fs_encoded = vec!["1".into()];
        r
    }

    #[test]
    fn round_trip_and_duplicates() {
        let text = format_records(&[sample(7), sample(7), sample(8)]);
        let loaded = parse_records(&text, Path::new("mem")).unwrap();
        assert_eq!(loaded.records, [sample(7), sample(8)]);
        assert_eq!(loaded.duplicates.len(), 1);
        assert_eq!(loaded.duplicates[0].line, 3);
    }

    #[test]
    fn empty_and_comment_only_files() {
        assert!(parse_records("", Path::new("mem")).unwrap().records.is_empty());
        assert!(parse_records("# qcforge-records v1\n\n# note\n", Path::new("mem")).unwrap().records.is_empty());
    }

    #[test]
    fn malformed_lines_are_located() {
        let good = format_record(&sample(7));
        let text = format!("{HEADER}\n{good}\n{{\"q\":2}}\nnot json\n");
        match parse_records(&text, Path::new("x.records")) {
            Err(RecordsError::Malformed { line: 3, more: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let mut bad = sample(7);
        bad.m = Some(5);
        let text = format_records(&[bad]);
        assert!(matches!(parse_records(&text, Path::new("x")), Err(RecordsError::Malformed { line: 2, .. })));
    }

    #[test]
    fn unknown_versions_are_rejected() {
        let text = "# qcforge-records v9\n";
        assert!(matches!(parse_records(text, Path::new("x")), Err(RecordsError::Version { line: 1, .. })));
    }
}
