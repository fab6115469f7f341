//! 1-generator quasi-cyclic codes in the ASR form
//! `(f_1 g, f_2 g, .., f_l g)` over `F_q[x] / (x^m - 1)`.
//!
//! If `g` divides `x^m - 1` with check polynomial `h` and every `f_i` is a
//! unit modulo `h`, the code has dimension `m - deg g` and minimum distance
//! at least `l` times the distance of the cyclic code `<g>`.

mod record;
mod search;

pub use record::{
    row_string, CodeRecord, CxComponents, CxDirection, Exactness, Modification, ModifyMethod, Property, ProvenanceKind,
};
pub use search::{
    asr_search, plan_search, run_unit, summarize, targets_from_records, unit_seed, LengthSummary, SearchConfig,
    SearchPlan, SearchSummary, SearchUnit, TargetTable, UnitOutcome,
};

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::encode_gen;
use crate::cyclic::CyclicCode;
use crate::galois::{Field, Poly};
use crate::linalg::GenMatrix;
use crate::{Error, Result};

/// A 1-generator QC code `(f_1 g, .., f_l g)` with block length `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QcSpec {
    m: usize,
    g: Poly,
    h: Poly,
    fs: Vec<Poly>,
}

impl QcSpec {
    /// Checks every hypothesis: `g | x^m - 1`, and each `f_i` has degree
    /// below `deg h` and is coprime to `h`.
    pub fn new(g: Poly, fs: Vec<Poly>, m: usize) -> Result<Self> {
        let spec = Self::from_parts(g, fs.clone(), m)?;
        for f in &fs {
            let deg_ok = f.degree().is_some_and(|d| d < spec.k());
            if !deg_ok {
                return Err(Error::InvalidSpec("deg f_i must be below deg h"));
            }
        }
        if !spec.satisfies_hypotheses() {
            return Err(Error::InvalidSpec("every f_i must be coprime to h"));
        }
        Ok(spec)
    }

    /// Accepts any tuple whose members are jointly coprime to `h`, which is
    /// exactly the condition for the dimension to be `m - deg g`. The `f_i`
    /// are stored reduced modulo `h`; this does not change the code.
    pub fn from_parts(g: Poly, fs: Vec<Poly>, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSpec("block length must be positive"));
        }
        if fs.is_empty() {
            return Err(Error::InvalidSpec("at least one f polynomial is required"));
        }
        let field = g.field();
        if fs.iter().any(|f| f.field() != field) {
            return Err(Error::FieldMismatch { left: field.order(), right: fs[0].field().order() });
        }
        let xm1 = Poly::xn_minus_one(field, m);
        if g.is_zero() || !g.divides(&xm1) {
            return Err(Error::NotADivisor { length: m });
        }
        let g = g.monic();
        let h = xm1.exact_div(&g)?;
        if h.degree() == Some(0) {
            return Err(Error::InvalidSpec("g = x^m - 1 generates the zero code"));
        }
        let fs: Vec<Poly> = fs.iter().map(|f| f.rem(&h)).collect::<Result<_>>()?;
        let joint = fs.iter().try_fold(h.clone(), |acc, f| Poly::gcd(&acc, f))?;
        if !joint.is_one() {
            return Err(Error::InvalidSpec("the f tuple shares a factor with h"));
        }
        Ok(QcSpec { m, g, h, fs })
    }

    /// Recovers `g` and the `f_i` from the products `p_i = f_i g`:
    /// `g = gcd(p_1, .., p_l, x^m - 1)`.
    pub fn from_generators(field: Field, m: usize, gens: &[Poly]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSpec("block length must be positive"));
        }
        let xm1 = Poly::xn_minus_one(field, m);
        let reduced: Vec<Poly> = gens.iter().map(|p| p.reduce_mod_xm1(m)).collect();
        let g = reduced.iter().try_fold(xm1, |acc, p| Poly::gcd(&acc, p))?;
        let fs = reduced.iter().map(|p| p.exact_div(&g)).collect::<Result<Vec<_>>>()?;
        Self::from_parts(g, fs, m)
    }

    pub fn field(&self) -> Field {
        self.g.field()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.fs.len()
    }

    pub fn n(&self) -> usize {
        self.m * self.fs.len()
    }

    pub fn k(&self) -> usize {
        self.h.degree().unwrap()
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    /// `h = (x^m - 1) / g`.
    pub fn check(&self) -> &Poly {
        &self.h
    }

    pub fn fs(&self) -> &[Poly] {
        &self.fs
    }

    /// Whether each `f_i` on its own is a unit modulo `h`, the hypothesis
    /// of the `d >= l d(<g>)` bound.
    pub fn satisfies_hypotheses(&self) -> bool {
        self.fs.iter().all(|f| Poly::gcd(f, &self.h).is_ok_and(|d| d.is_one()))
    }

    /// The generator tuple `f_i g mod x^m - 1`.
    pub fn generators(&self) -> Vec<Poly> {
        self.fs.iter().map(|f| f.mul_mod(&self.g, self.m).unwrap()).collect()
    }

    pub fn g_encoded(&self) -> alloc::string::String {
        encode_gen(&self.g)
    }

    pub fn fs_encoded(&self) -> Vec<alloc::string::String> {
        self.fs.iter().map(encode_gen).collect()
    }

    /// Same `f_i`, different `g`; used for sub- and supercodes.
    pub fn with_generator(&self, g: Poly) -> Result<Self> {
        Self::from_parts(g, self.fs.clone(), self.m)
    }
}

/// The `k x (m l)` generator matrix; row `i` is `x^i (f_1 g, .., f_l g)`
/// with every block reduced modulo `x^m - 1`.
pub fn build_qc_matrix(spec: &QcSpec) -> GenMatrix {
    let m = spec.m;
    let blocks: Vec<Vec<u8>> = spec.generators().iter().map(|p| p.to_vector(m)).collect();
    let rows = (0..spec.k())
        .map(|i| {
            let mut row = Vec::with_capacity(spec.n());
            for b in &blocks {
                // x^i rotates each block right by i
                row.extend((0..m).map(|c| b[(c + m - i % m) % m]));
            }
            row
        })
        .collect();
    GenMatrix::from_rows(spec.field(), spec.n(), rows)
}

/// Draws `l` polynomials of degree below `deg h` uniformly, rejecting those
/// that are not coprime to `h`.
pub fn asr_sample_with<R: Rng + ?Sized>(code: &CyclicCode, ell: usize, rng: &mut R) -> Result<QcSpec> {
    if ell == 0 {
        return Err(Error::InvalidSpec("index must be positive"));
    }
    let k = code.dim();
    if k == 0 {
        return Err(Error::InvalidSpec("the zero code has no ASR tuples"));
    }
    let field = code.field();
    let h = code.check();
    let q = field.order();
    let fs = (0..ell)
        .map(|_| loop {
            let coeffs = (0..k).map(|_| rng.gen_range(0..q)).collect();
            let f = Poly::from_coeffs(field, coeffs);
            if !f.is_zero() && Poly::gcd(&f, h).is_ok_and(|d| d.is_one()) {
                break f;
            }
        })
        .collect();
    QcSpec::new(code.generator().clone(), fs, code.length())
}

/// [`asr_sample_with`] on a ChaCha8 stream seeded from `seed`.
pub fn asr_sample(code: &CyclicCode, ell: usize, seed: u64) -> Result<QcSpec> {
    asr_sample_with(code, ell, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `d_qc >= l d_cyclic`.
pub fn theorem1_check(spec: &QcSpec, d_cyclic: usize, d_qc: usize) -> bool {
    d_qc >= spec.ell() * d_cyclic
}
