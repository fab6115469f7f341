//! Construction X, QC sub- and supercodes, and the shorten / puncture /
//! expurgate modifications.
//!
//! Given `C2 ⊂ C1` of length `n1` with `dim C1 - dim C2 = b` and a third
//! code `C3 = [n3, b, d3]`, the code generated by
//!
//! ```text
//! [ G1*  G3 ]
//! [ G2   0  ]
//! ```
//!
//! has length `n1 + n3`, dimension `k1` and distance between
//! `min(d2, d1 + d3)` and `d2`, where `G1*` completes a basis of `C2` to one
//! of `C1`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::codec::encode_gen;
use crate::galois::{factor_divisor, Field, Poly};
use crate::linalg::{extend_basis, is_subspace, DistanceEngine, GenMatrix};
use crate::qc::{build_qc_matrix, QcSpec};
use crate::{Error, Result};

/// The three inputs of Construction X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CxTriple {
    c1: GenMatrix,
    c2: GenMatrix,
    c3: GenMatrix,
}

impl CxTriple {
    /// Checks `C2 ⊂ C1`, a common field and `rank C1 - rank C2 = rank C3 > 0`.
    pub fn new(c1: GenMatrix, c2: GenMatrix, c3: GenMatrix) -> Result<Self> {
        if c3.field() != c1.field() {
            return Err(Error::FieldMismatch { left: c1.field().order(), right: c3.field().order() });
        }
        if !is_subspace(&c2, &c1)? {
            return Err(Error::NotASubcode);
        }
        let b = c1.rank() - c2.rank();
        if b == 0 {
            return Err(Error::InvalidSpec("C2 must be a proper subcode of C1"));
        }
        if c3.rank() != b || c3.rows() != b {
            return Err(Error::ShapeMismatch("C3 dimension must equal dim C1 - dim C2"));
        }
        Ok(CxTriple { c1, c2, c3 })
    }

    pub fn b(&self) -> usize {
        self.c3.rows()
    }

    pub fn c1(&self) -> &GenMatrix {
        &self.c1
    }

    pub fn c2(&self) -> &GenMatrix {
        &self.c2
    }

    pub fn c3(&self) -> &GenMatrix {
        &self.c3
    }
}

/// The block generator `[[G1*, G3], [G2, 0]]`, with `G2` reduced to a basis.
pub fn construction_x(t: &CxTriple) -> Result<GenMatrix> {
    let g2 = t.c2.rref().matrix;
    let g1_star = extend_basis(&g2, &t.c1)?;
    let top = g1_star.concat_cols(&t.c3)?;
    let bottom = g2.concat_cols(&GenMatrix::zeros(g2.field(), g2.rows(), t.c3.cols()))?;
    top.stack(&bottom)
}

/// Degree-`b` divisors of `g` built from its irreducible factorization,
/// each sub-multiset once, in lexicographic order of exponent vectors.
fn divisors_of_degree(g: &Poly, m: usize, b: usize) -> Result<Vec<Poly>> {
    let factors = factor_divisor(g, m)?;
    let mut out = Vec::new();
    let mut exps = vec![0usize; factors.len()];
    fn walk(
        factors: &[(Poly, usize)],
        idx: usize,
        left: usize,
        exps: &mut Vec<usize>,
        out: &mut Vec<Poly>,
        field: Field,
    ) {
        if idx == factors.len() {
            if left == 0 {
                let p =
                    factors.iter().zip(exps.iter()).fold(Poly::one(field), |acc, ((f, _), &e)| &acc * &f.pow(e as u64));
                out.push(p);
            }
            return;
        }
        let (f, mult) = &factors[idx];
        let deg = f.degree().unwrap();
        for e in 0..=*mult {
            if e * deg > left {
                break;
            }
            exps[idx] = e;
            walk(factors, idx + 1, left - e * deg, exps, out, field);
        }
        exps[idx] = 0;
    }
    walk(&factors, 0, b, &mut exps, &mut out, g.field());
    Ok(out)
}

/// QC supercodes `(f_1 g/p, .., f_l g/p)` for every degree-`b` divisor `p`
/// of `g`. Each has dimension `k + b`.
pub fn qc_supercodes(spec: &QcSpec, b: usize) -> Result<Vec<QcSpec>> {
    if b == 0 {
        return Err(Error::InvalidInput("b must be positive"));
    }
    divisors_of_degree(spec.g(), spec.m(), b)?
        .into_iter()
        .map(|p| spec.with_generator(spec.g().exact_div(&p)?))
        .collect()
}

/// QC subcodes `(p g f_1, .., p g f_l)` for every degree-`b` divisor `p`
/// of `h`. Each has dimension `k - b`.
pub fn qc_subcodes(spec: &QcSpec, b: usize) -> Result<Vec<QcSpec>> {
    if b == 0 {
        return Err(Error::InvalidInput("b must be positive"));
    }
    if b >= spec.k() {
        // p = h would give the zero code
        return Ok(Vec::new());
    }
    divisors_of_degree(spec.check(), spec.m(), b)?.into_iter().map(|p| spec.with_generator(&p * spec.g())).collect()
}

/// Which neighbour of the original code [`algorithm1`] explores.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Supercodes; the original becomes `C2`.
    Super,
    /// Subcodes; the original becomes `C1`.
    Sub,
}

/// Distance of a candidate neighbour, `None` when it was over budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighbour {
    pub spec: QcSpec,
    pub d: Option<usize>,
}

/// One Construction X output of [`algorithm1`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CxOutcome {
    pub neighbour: Neighbour,
    /// Index into the catalog.
    pub c3_index: usize,
    pub generator: GenMatrix,
    pub n: usize,
    pub k: usize,
    /// Exact output distance when `k` fits the budget.
    pub d: Option<usize>,
}

/// Neighbour with the largest exact distance; ties and unknown distances
/// fall back to the smallest encoded `g'`.
pub fn best_neighbour(
    spec: &QcSpec,
    b: usize,
    direction: Direction,
    engine: &dyn DistanceEngine,
) -> Result<Option<Neighbour>> {
    let candidates = match direction {
        Direction::Super => qc_supercodes(spec, b)?,
        Direction::Sub => qc_subcodes(spec, b)?,
    };
    let mut best: Option<Neighbour> = None;
    for cand in candidates {
        let g = build_qc_matrix(&cand);
        let d = if engine.budget().allows(cand.field(), cand.k()) {
            Some(engine.min_distance(&g, None)?.weight)
        } else {
            None
        };
        let better = match &best {
            None => true,
            Some(cur) => match (d, cur.d) {
                (Some(a), Some(b)) if a != b => a > b,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                _ => encode_key(cand.g()) < encode_key(cur.spec.g()),
            },
        };
        if better {
            best = Some(Neighbour { spec: cand, d });
        }
    }
    Ok(best)
}

// shorter strings first, then lexicographic
fn encode_key(g: &Poly) -> (usize, alloc::string::String) {
    let s = encode_gen(g);
    (s.len(), s)
}

/// Finds the best degree-`b` neighbour of `spec` and glues every catalog
/// code of dimension `b` and length at most `max_len` onto it.
pub fn algorithm1(
    spec: &QcSpec,
    b: usize,
    direction: Direction,
    catalog: &[GenMatrix],
    max_len: usize,
    engine: &dyn DistanceEngine,
) -> Result<Vec<CxOutcome>> {
    let Some(neighbour) = best_neighbour(spec, b, direction, engine)? else {
        return Ok(Vec::new());
    };
    let original = build_qc_matrix(spec);
    let other = build_qc_matrix(&neighbour.spec);
    let (c1, c2) = match direction {
        Direction::Super => (other, original),
        Direction::Sub => (original, other),
    };
    let mut out = Vec::new();
    for (c3_index, c3) in catalog.iter().enumerate() {
        if c3.rows() != b || c3.cols() > max_len || c3.field() != spec.field() {
            continue;
        }
        let triple = CxTriple::new(c1.clone(), c2.clone(), c3.clone())?;
        let generator = construction_x(&triple)?;
        let (n, k) = (generator.cols(), generator.rows());
        let d = if engine.budget().allows(generator.field(), k) {
            Some(engine.min_distance(&generator, None)?.weight)
        } else {
            None
        };
        out.push(CxOutcome { neighbour: neighbour.clone(), c3_index, generator, n, k, d });
    }
    Ok(out)
}

/// Shorten, puncture or expurgate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Modify {
    Shorten,
    Puncture,
    Expurgate,
}

/// Applies a modification; `positions` are 0-indexed and ignored by
/// expurgation. The result is a basis of the modified code.
pub fn modify(g: &GenMatrix, method: Modify, positions: &[usize]) -> Result<GenMatrix> {
    let n = g.cols();
    if method != Modify::Expurgate {
        if let Some(&p) = positions.iter().find(|&&p| p >= n) {
            return Err(Error::PositionOutOfRange { position: p, length: n });
        }
    }
    let unique: Vec<usize> = positions.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    match method {
        Modify::Puncture => Ok(g.delete_columns(&unique).rref().matrix),
        Modify::Shorten => {
            let sub = vanishing_subcode(g, &unique)?;
            Ok(sub.delete_columns(&unique).rref().matrix)
        }
        Modify::Expurgate => {
            if g.field() != Field::GF2 {
                return Err(Error::InvalidInput("expurgation is defined over GF(2)"));
            }
            let ones = GenMatrix::from_rows(Field::GF2, n, vec![vec![1; n]]);
            let parity = crate::linalg::dual_basis(&ones)?;
            let even = intersect(g, &parity)?;
            if even.rows() == g.rank() {
                return Err(Error::AlreadyEven);
            }
            Ok(even)
        }
    }
}

/// Codewords that vanish on `positions`.
fn vanishing_subcode(g: &GenMatrix, positions: &[usize]) -> Result<GenMatrix> {
    let f = g.field();
    let n = g.cols();
    let constraints: Vec<Vec<u8>> = positions
        .iter()
        .map(|&p| {
            let mut v = vec![0; n];
            v[p] = 1;
            v
        })
        .collect();
    if constraints.is_empty() {
        return Ok(g.rref().matrix);
    }
    let dual_of_constraints = crate::linalg::dual_basis(&GenMatrix::from_rows(f, n, constraints))?;
    intersect(g, &dual_of_constraints)
}

/// `rowspace(a) ∩ rowspace(b)` through the kernel of `[a; -b]^T`.
fn intersect(a: &GenMatrix, b: &GenMatrix) -> Result<GenMatrix> {
    a.check_compatible(b)?;
    let f = a.field();
    let a = a.rref().matrix;
    let b = b.rref().matrix;
    let neg_b = {
        let rows = b.row_iter().map(|r| r.iter().map(|&c| f.neg(c)).collect()).collect();
        GenMatrix::from_rows(f, b.cols(), rows)
    };
    let stacked = a.stack(&neg_b)?;
    // x with x [a; -b] = 0 gives x_a a = x_b b
    let kernel = left_kernel(&stacked);
    let rows: Vec<Vec<u8>> = kernel.row_iter().map(|x| a.encode(&x[..a.rows()])).collect();
    Ok(GenMatrix::from_rows(f, a.cols(), rows).rref().matrix)
}

fn left_kernel(m: &GenMatrix) -> GenMatrix {
    let t = m.transpose();
    if t.cols() == 0 {
        return GenMatrix::zeros(m.field(), 0, 0);
    }
    crate::linalg::dual_basis(&t.rref().matrix).expect("echelon rows are independent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::decode_gen;
    use crate::linalg::{min_distance_exact, SequentialEngine};

    fn gf2(rows: &[&str]) -> GenMatrix {
        let cols = rows[0].len();
        GenMatrix::from_rows(Field::GF2, cols, rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect())
    }

    fn p2(c: &[u8]) -> Poly {
        Poly::from_coeffs(Field::GF2, c.to_vec())
    }

    #[test]
    fn construction_x_on_hamming() {
        // [7,4,3] contains the [7,3,4] even-weight subcode; gluing [1,1,1]
        // gives the [8,4,4] extended Hamming code
        let c1 = gf2(&["1101000", "0110100", "0011010", "0001101"]);
        let c2 = gf2(&["1011100", "0101110", "0010111"]);
        let c3 = gf2(&["1"]);
        let t = CxTriple::new(c1, c2, c3).unwrap();
        let g = construction_x(&t).unwrap();
        assert_eq!((g.rows(), g.cols(), g.rank()), (4, 8, 4));
        assert_eq!(min_distance_exact(&g, None).unwrap().weight, 4);
    }

    #[test]
    fn triple_validation() {
        let c1 = gf2(&["1100", "0011"]);
        assert!(CxTriple::new(c1.clone(), c1.clone(), gf2(&["1"])).is_err());
        assert_eq!(CxTriple::new(gf2(&["1100"]), gf2(&["0011"]), gf2(&["1"])), Err(Error::NotASubcode));
        assert!(CxTriple::new(c1.clone(), gf2(&["1111"]), gf2(&["11", "01"])).is_err());
    }

    #[test]
    fn divisor_multisets() {
        // (1 + x)^2 at m = 4 has a single degree-1 divisor
        let spec = QcSpec::new(p2(&[1, 0, 1]), vec![p2(&[1]), p2(&[0, 1])], 4).unwrap();
        let sup = qc_supercodes(&spec, 1).unwrap();
        assert_eq!(sup.len(), 1);
        assert_eq!(sup[0].g(), &p2(&[1, 1]));
        assert_eq!(sup[0].k(), spec.k() + 1);
        assert!(qc_subcodes(&spec, 3).unwrap().is_empty());
        let sub = qc_subcodes(&spec, 1).unwrap();
        assert_eq!(sub.len(), 1);
        assert!(is_subspace(&build_qc_matrix(&sub[0]), &build_qc_matrix(&spec)).unwrap());
    }

    #[test]
    fn irreducible_g_gives_the_full_supercode() {
        let g = decode_gen(Field::GF2, "31").unwrap(); // 1 + x + x^3
        let spec = QcSpec::new(g, vec![p2(&[1]), p2(&[0, 1])], 7).unwrap();
        let sup = qc_supercodes(&spec, 3).unwrap();
        assert_eq!(sup.len(), 1);
        assert!(sup[0].g().is_one());
        assert!(qc_supercodes(&spec, 1).unwrap().is_empty());
    }

    #[test]
    fn algorithm1_small() {
        let g = p2(&[1, 1]);
        let spec = QcSpec::new(g, vec![p2(&[1]), p2(&[0, 1, 1])], 7).unwrap();
        let catalog = [gf2(&["1"]), gf2(&["11"]), gf2(&["110", "011"])];
        let out = algorithm1(&spec, 1, Direction::Super, &catalog, 10, &SequentialEngine::default()).unwrap();
        assert_eq!(out.len(), 2);
        for o in &out {
            assert_eq!(o.k, 7);
            assert!(o.d.is_some());
        }
    }

    #[test]
    fn modifications() {
        let rep = gf2(&["11111"]);
        let s = modify(&rep, Modify::Shorten, &[0]).unwrap();
        assert_eq!(s.rows(), 0);
        let p = modify(&rep, Modify::Puncture, &[4]).unwrap();
        assert_eq!((p.rows(), p.cols()), (1, 4));
        let even = gf2(&["1100", "0110", "0011"]);
        let s = modify(&even, Modify::Shorten, &[3]).unwrap();
        assert_eq!((s.rows(), s.cols()), (2, 3));
        assert_eq!(modify(&even, Modify::Expurgate, &[]), Err(Error::AlreadyEven));
        let ham = gf2(&["1101000", "0110100", "0011010", "0001101"]);
        let e = modify(&ham, Modify::Expurgate, &[]).unwrap();
        assert_eq!(e.rows(), 3);
        assert!(e.row_iter().all(|r| r.iter().filter(|&&c| c == 1).count() % 2 == 0));
        assert!(matches!(modify(&ham, Modify::Puncture, &[7]), Err(Error::PositionOutOfRange { .. })));
    }
}
