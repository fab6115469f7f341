//! `key = value` search configuration files.
//!
//! ```text
//! # binary codes of length 52 and 78
//! field = 2
//! m = 26
//! ell = 2-3
//! kmin = 20
//! kmax = 26
//! samples = 500
//! seed = 7
//! ```
//!
//! `m` and `ell` take a number, a comma list or an inclusive range `a-b`.
//! Other keys: `target_file` (records whose best `d` per `(n, k)` become
//! the targets; the shipped corpus by default), `threads`, `prune_slack`
//! and `ledger`.

use std::path::{Path, PathBuf};

use qcforge_core::cyclic::DimFilter;
use qcforge_core::galois::Field;
use qcforge_core::qc::SearchConfig;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
}

/// A parsed configuration file. `search.targets` is left empty; targets are
/// loaded from `target_file` by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchFile {
    pub search: SearchConfig,
    pub target_file: Option<PathBuf>,
    pub threads: Option<usize>,
    pub ledger: Option<PathBuf>,
}

/// `"26"`, `"20,26"` or `"20-30"`.
pub fn parse_list(value: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| format!("bad range start in {part:?}"))?;
                let b: usize = b.trim().parse().map_err(|_| format!("bad range end in {part:?}"))?;
                if a > b {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| format!("not a number: {part:?}"))?),
        }
    }
    Ok(out)
}

fn parse_field(value: &str) -> Result<Field, String> {
    let digits = value.trim_start_matches("GF(").trim_start_matches("gf(").trim_end_matches(')');
    let q: u32 = digits.parse().map_err(|_| format!("not a field size: {value:?}"))?;
    Field::new(q).map_err(|e| e.to_string())
}

pub fn parse_config(text: &str, base: &Path) -> Result<SearchFile, ConfigError> {
    let mut field = None;
    let mut m_values = None;
    let mut ells = None;
    let (mut kmin, mut kmax) = (None, None);
    let mut samples = None;
    let mut seed = None;
    let mut prune_slack = None;
    let mut target_file = None;
    let mut threads = None;
    let mut ledger = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| ConfigError::Line { line, message };
        let (key, value) = content.split_once('=').ok_or_else(|| err("expected key = value".into()))?;
        let (key, value) = (key.trim(), value.trim());
        let number = |v: &str| v.parse::<u64>().map_err(|_| err(format!("`{key}` needs a number, got {v:?}")));
        let path = |v: &str| {
            let p = PathBuf::from(v);
            if p.is_relative() {
                base.join(p)
            } else {
                p
            }
        };
        match key {
            "field" => field = Some(parse_field(value).map_err(err)?),
            "m" => m_values = Some(parse_list(value).map_err(err)?),
            "ell" => ells = Some(parse_list(value).map_err(err)?),
            "kmin" => kmin = Some(number(value)? as usize),
            "kmax" => kmax = Some(number(value)? as usize),
            "samples" => samples = Some(number(value)? as usize),
            "seed" => seed = Some(number(value)?),
            "prune_slack" => prune_slack = Some(number(value)? as usize),
            "threads" => threads = Some(number(value)? as usize),
            "target_file" => target_file = Some(path(value)),
            "ledger" => ledger = Some(path(value)),
            _ => return Err(err(format!("unknown key `{key}`"))),
        }
    }

    let mut search = SearchConfig::new(field.ok_or(ConfigError::Missing("field"))?, seed.unwrap_or(0));
    search.m_values = m_values.ok_or(ConfigError::Missing("m"))?;
    search.ells = ells.ok_or(ConfigError::Missing("ell"))?;
    if kmin.is_some() || kmax.is_some() {
        search.dim_filter = Some(DimFilter { k_min: kmin.unwrap_or(1), k_max: kmax.unwrap_or(usize::MAX) });
    }
    if let Some(s) = samples {
        search.samples = s;
    }
    search.prune_slack = prune_slack;
    Ok(SearchFile { search, target_file, threads, ledger })
}

/// Reads and parses a configuration file; relative paths inside it are
/// resolved against its directory.
pub fn load_config(path: &Path) -> Result<SearchFile, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
    parse_config(&text, path.parent().unwrap_or(Path::new(".")))
}
