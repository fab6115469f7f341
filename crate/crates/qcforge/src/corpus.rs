//! The record files shipped in `corpus/`.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use qcforge_core::qc::CodeRecord;

use crate::records::{load_records, RecordsError};

/// Overrides the corpus directory.
pub const CORPUS_ENV: &str = "QCFORGE_CORPUS";

/// QC codes of the best-known tables, with the parameter-only rows.
pub const TABLES_1_3: &str = "tables1-3.records";
/// Construction X constituents.
pub const TABLE_7: &str = "table7.records";
/// Construction X and modification outputs.
pub const TABLES_4_6: &str = "tables4-6.records";
/// Small `C3` codes given by generator rows.
pub const C3_CATALOG: &str = "c3-catalog.records";

pub const ALL_FILES: [&str; 4] = [TABLES_1_3, TABLE_7, TABLES_4_6, C3_CATALOG];

pub fn corpus_dir() -> PathBuf {
    std::env::var_os(CORPUS_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus"))
}

pub fn corpus_path(file: &str) -> PathBuf {
    corpus_dir().join(file)
}

/// Every shipped record, file by file in [`ALL_FILES`] order.
pub fn load_corpus() -> Result<Vec<CodeRecord>, RecordsError> {
    let mut out = Vec::new();
    for f in ALL_FILES {
        out.extend(load_records(&corpus_path(f))?.records);
    }
    Ok(out)
}

/// Records by id; later records shadow earlier ones with the same id.
#[derive(Clone, Debug, Default)]
pub struct RecordIndex {
    by_id: HashMap<String, CodeRecord>,
}

impl RecordIndex {
    pub fn new<'a>(records: impl IntoIterator<Item = &'a CodeRecord>) -> Self {
        let mut idx = RecordIndex::default();
        idx.extend(records);
        idx
    }

    pub fn extend<'a>(&mut self, records: impl IntoIterator<Item = &'a CodeRecord>) {
        for r in records {
            if let Some(id) = &r.id {
                self.by_id.insert(id.clone(), r.clone());
            }
        }
    }

    pub fn get(&self, id: &str) -> Option<&CodeRecord> {
        self.by_id.get(id)
    }

    pub fn len(&self) -> usize {
        self.by_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_id.is_empty()
    }
}
