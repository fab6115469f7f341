use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::QcSpec;
use crate::codec::decode_gen;
use crate::galois::{Field, Poly};
use crate::linalg::{GenMatrix, PropertyFlags};
use crate::{Error, Result};

/// How far the stored `d` can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum Exactness {
    Exact,
    LowerBound,
    UpperBound,
    /// Copied from a published table, not recomputed.
    Claimed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum Property {
    SelfOrthogonal,
    DualContaining,
    Lcd,
    Reversible,
}

impl Property {
    pub const ALL: [Property; 4] =
        [Property::SelfOrthogonal, Property::DualContaining, Property::Lcd, Property::Reversible];

    pub fn holds(self, flags: &PropertyFlags) -> bool {
        match self {
            Property::SelfOrthogonal => flags.self_orthogonal,
            Property::DualContaining => flags.dual_containing,
            Property::Lcd => flags.lcd,
            Property::Reversible => flags.reversible,
        }
    }

    /// The properties set in `flags`, in [`Property::ALL`] order.
    pub fn list(flags: &PropertyFlags) -> Vec<Property> {
        Self::ALL.into_iter().filter(|p| p.holds(flags)).collect()
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::SelfOrthogonal => "self-orthogonal",
            Property::DualContaining => "dual-containing",
            Property::Lcd => "LCD",
            Property::Reversible => "reversible",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum ProvenanceKind {
    /// `g` plus the `f_i`.
    Qc,
    /// Only the products `f_i g`; `g` is their gcd with `x^m - 1`.
    QcProducts,
    ConstructionX,
    Modification,
    /// Parameters without generators.
    ParamsOnly,
    /// Small code given by explicit generator rows.
    Catalog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum CxDirection {
    /// `C2` is the original code, `C1` a QC supercode.
    Super,
    /// `C1` is the original code, `C2` a QC subcode.
    Sub,
}

/// Record ids of the three Construction X inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CxComponents {
    pub c1: String,
    pub c2: String,
    pub c3: String,
    pub direction: CxDirection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum ModifyMethod {
    Shorten,
    Puncture,
    Expurgate,
}

/// A modification of another record; positions are 1-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Modification {
    pub method: ModifyMethod,
    pub positions: Vec<usize>,
    pub source: String,
}

/// One line of a code ledger: parameters, claimed properties and enough
/// provenance to rebuild the code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CodeRecord {
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub id: Option<String>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub table: Option<u8>,
    pub q: u8,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_exactness_flag: Exactness,
    pub properties: Vec<Property>,
    pub provenance_kind: ProvenanceKind,
    pub m: Option<usize>,
    pub ell: Option<usize>,
    pub g_encoded: Option<String>,
    pub fs_encoded: Vec<String>,
    pub cx_components: Option<CxComponents>,
    pub modification: Option<Modification>,
    pub seed: Option<u64>,
    pub timestamp: Option<u64>,
    /// Explicit generator rows, one coefficient string per row.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Vec::is_empty"))]
    pub rows: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub note: Option<String>,
}

impl CodeRecord {
    /// A bare `[n, k, d]_q` record with every optional field empty.
    pub fn params(q: u8, n: usize, k: usize, d: usize, exactness: Exactness, kind: ProvenanceKind) -> Self {
        CodeRecord {
            id: None,
            table: None,
            q,
            n,
            k,
            d,
            d_exactness_flag: exactness,
            properties: Vec::new(),
            provenance_kind: kind,
            m: None,
            ell: None,
            g_encoded: None,
            fs_encoded: Vec::new(),
            cx_components: None,
            modification: None,
            seed: None,
            timestamp: None,
            rows: Vec::new(),
            note: None,
        }
    }

    /// Record of a QC code in `(g, f)` form.
    pub fn from_spec(spec: &QcSpec, d: usize, exactness: Exactness) -> Self {
        let mut r = Self::params(spec.field().order(), spec.n(), spec.k(), d, exactness, ProvenanceKind::Qc);
        r.m = Some(spec.m());
        r.ell = Some(spec.ell());
        r.g_encoded = Some(spec.g_encoded());
        r.fs_encoded = spec.fs_encoded();
        r
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.q as u32)
    }

    /// Block length: the stored `m`, else `n / l` with `l` the number of
    /// generator strings.
    pub fn block_length(&self) -> Option<usize> {
        self.m.or_else(|| {
            let ell = self.ell.unwrap_or(self.fs_encoded.len());
            (ell > 0 && self.n.is_multiple_of(ell)).then(|| self.n / ell)
        })
    }

    /// `(q, n, k, g, fs)`, the ledger deduplication key.
    pub fn dedup_key(&self) -> (u8, usize, usize, Option<String>, Vec<String>) {
        (self.q, self.n, self.k, self.g_encoded.clone(), self.fs_encoded.clone())
    }

    /// Rebuilds the QC description from the encoded strings. Fails with
    /// [`Error::InvalidSpec`] for provenances that carry no QC generator.
    pub fn qc_spec(&self) -> Result<QcSpec> {
        let field = self.field()?;
        let m = self.block_length().ok_or(Error::InvalidSpec("record has no block length"))?;
        let fs = self.fs_encoded.iter().map(|s| decode_gen(field, s)).collect::<Result<Vec<Poly>>>()?;
        match self.provenance_kind {
            ProvenanceKind::Qc => {
                let g = decode_gen(field, self.g_encoded.as_deref().ok_or(Error::InvalidSpec("record has no g"))?)?;
                QcSpec::from_parts(g, fs, m)
            }
            ProvenanceKind::QcProducts => QcSpec::from_generators(field, m, &fs),
            _ => Err(Error::InvalidSpec("record is not quasi-cyclic")),
        }
    }

    /// Generator matrix stored in [`CodeRecord::rows`].
    pub fn catalog_matrix(&self) -> Result<GenMatrix> {
        let field = self.field()?;
        let rows = self
            .rows
            .iter()
            .map(|s| {
                s.chars()
                    .enumerate()
                    .map(|(offset, ch)| match (field.order(), ch) {
                        (4, 'a') => Ok(2),
                        (4, 'b') => Ok(3),
                        (_, c) => c.to_digit(10).map(|d| d as u8).filter(|&d| field.contains(d)).ok_or(Error::Parse {
                            q: field.order(),
                            offset,
                            ch,
                        }),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GenMatrix::try_from_rows(field, self.n, rows)
    }

    /// `[n,k,d]_q`.
    pub fn label(&self) -> String {
        alloc::format!("[{},{},{}]_{}", self.n, self.k, self.d, self.q)
    }
}

/// Coefficient string of a matrix row, the inverse of the parsing done by
/// [`CodeRecord::catalog_matrix`].
pub fn row_string(row: &[u8], field: Field) -> String {
    row.iter()
        .map(|&c| match (field.order(), c) {
            (4, 2) => 'a',
            (4, 3) => 'b',
            _ => char::from(b'0' + c),
        })
        .collect()
}
