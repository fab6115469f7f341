//! Matrix algebra over the base fields: echelon forms, duals, containment,
//! property classification and exact minimum distance.

mod distance;
mod matrix;

pub use distance::{
    min_distance_exact, pack_gf2, unpack_gf2, Distance, DistanceBudget, DistanceEngine, DistanceKernel,
    DistanceOptions, SequentialEngine, Shard, ShardOutcome,
};
pub use matrix::{Echelon, GenMatrix};

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};
use matrix::reduce_against;

/// Duality and symmetry properties of a linear code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PropertyFlags {
    /// `C` is contained in its dual.
    pub self_orthogonal: bool,
    /// The dual is contained in `C`.
    pub dual_containing: bool,
    /// `C` meets its dual only in zero.
    pub lcd: bool,
    /// `C` is closed under reversing the coordinate order.
    pub reversible: bool,
}

fn require_full_rank(g: &GenMatrix) -> Result<Echelon> {
    let ech = g.rref();
    if ech.rank() != g.rows() {
        return Err(Error::RankDeficient { rows: g.rows(), rank: ech.rank() });
    }
    Ok(ech)
}

/// Reduced row echelon form and rank.
pub fn rref(g: &GenMatrix) -> (GenMatrix, usize) {
    let ech = g.rref();
    let rank = ech.rank();
    (ech.matrix, rank)
}

/// Basis of the dual code: an `(n-k) x n` matrix `H` with `G H^T = 0`.
pub fn dual_basis(g: &GenMatrix) -> Result<GenMatrix> {
    let ech = require_full_rank(g)?;
    Ok(dual_from_echelon(&ech))
}

fn dual_from_echelon(ech: &Echelon) -> GenMatrix {
    let m = &ech.matrix;
    let f = m.field();
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let rows = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; n];
            v[free] = 1;
            for (r, &p) in ech.pivots.iter().enumerate() {
                v[p] = f.neg(m.get(r, free));
            }
            v
        })
        .collect();
    GenMatrix::from_rows(f, n, rows)
}

/// Whether the row space of `a` lies inside the row space of `b`.
pub fn is_subspace(a: &GenMatrix, b: &GenMatrix) -> Result<bool> {
    a.check_compatible(b)?;
    let ech = b.rref();
    Ok(a.row_iter().all(|r| reduce_against(&ech, r).iter().all(|&c| c == 0)))
}

/// Rows of `g1` completing a basis of the subcode `g2` to a basis of `g1`.
///
/// The result has `rank(g1) - rank(g2)` rows and `[result; g2]` spans the
/// same space as `g1`.
pub fn extend_basis(g2: &GenMatrix, g1: &GenMatrix) -> Result<GenMatrix> {
    if !is_subspace(g2, g1)? {
        return Err(Error::NotASubcode);
    }
    let mut basis = g2.clone();
    let mut ech = basis.rref();
    let mut picked = GenMatrix::zeros(g1.field(), 0, g1.cols());
    for r in g1.row_iter() {
        if reduce_against(&ech, r).iter().any(|&c| c != 0) {
            picked.push_row(r);
            basis.push_row(r);
            ech = basis.rref();
        }
    }
    Ok(picked)
}

/// Self-orthogonality, dual containment, LCD and reversibility of the code
/// generated by the full-rank matrix `g`.
///
/// LCD is decided by the rank of the Gram matrix `G G^T`: for a full-rank
/// generator it is nonsingular exactly when `C` and its dual meet only in 0.
pub fn classify_properties(g: &GenMatrix) -> Result<PropertyFlags> {
    let ech = require_full_rank(g)?;
    let gram = g.gram();
    let dual = dual_from_echelon(&ech);
    let in_code = |v: &[u8]| reduce_against(&ech, v).iter().all(|&c| c == 0);
    let reversed: Vec<Vec<u8>> = g
        .row_iter()
        .map(|r| {
            let mut v = r.to_vec();
            v.reverse();
            v
        })
        .collect();
    let dual_containing = dual.row_iter().all(in_code);
    Ok(PropertyFlags {
        self_orthogonal: gram.is_zero(),
        dual_containing,
        lcd: gram.rank() == g.rows(),
        reversible: reversed.iter().all(|v| in_code(v)),
    })
}

/// Smallest weight among the reduced basis rows and `samples` random
/// nonzero codewords, an upper bound on the minimum distance. `None` for
/// the zero code.
pub fn weight_upper_bound(g: &GenMatrix, samples: usize, seed: u64) -> Option<usize> {
    let basis = g.rref().matrix;
    let weight = |v: &[u8]| v.iter().filter(|&&c| c != 0).count();
    let mut best = basis.row_iter().map(weight).min()?;
    let q = g.field().order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut msg = vec![0u8; basis.rows()];
    for _ in 0..samples {
        msg.iter_mut().for_each(|c| *c = rng.gen_range(0..q));
        if msg.iter().all(|&c| c == 0) {
            continue;
        }
        best = best.min(weight(&basis.encode(&msg)));
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Field;

    fn gf2(rows: &[&str]) -> GenMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        GenMatrix::from_rows(Field::GF2, cols, rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect())
    }

    fn hamming() -> GenMatrix {
        gf2(&["1101000", "0110100", "0011010", "0001101"])
    }

    #[test]
    fn dual_examples() {
        let rep = gf2(&["11"]);
        assert_eq!(dual_basis(&rep).unwrap(), rep);
        let id = GenMatrix::identity(Field::GF2, 5);
        let h = dual_basis(&id).unwrap();
        assert_eq!((h.rows(), h.cols()), (0, 5));
        let g = hamming();
        let h = dual_basis(&g).unwrap();
        assert_eq!(h.rows(), 3);
        assert!(g.mul(&h.transpose()).unwrap().is_zero());
        assert_eq!(h.rank(), 3);
        assert!(matches!(dual_basis(&gf2(&["11", "11"])), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn containment() {
        let even = gf2(&["1100", "0110", "0011"]);
        let rep = gf2(&["1111"]);
        assert!(is_subspace(&even, &even).unwrap());
        assert!(is_subspace(&gf2(&["0000"]), &even).unwrap());
        assert!(is_subspace(&rep, &even).unwrap());
        assert!(!is_subspace(&even, &rep).unwrap());
        assert!(is_subspace(&gf2(&["111"]), &even).is_err());
    }

    #[test]
    fn basis_extension() {
        let even = gf2(&["1100", "0110", "0011"]);
        let full = GenMatrix::identity(Field::GF2, 4);
        assert_eq!(extend_basis(&even, &even).unwrap().rows(), 0);
        let ext = extend_basis(&even, &full).unwrap();
        assert_eq!(ext.rows(), 1);
        assert_eq!(ext.row(0).iter().filter(|&&c| c == 1).count() % 2, 1);
        assert_eq!(ext.stack(&even).unwrap().rank(), 4);
        assert_eq!(extend_basis(&full, &even), Err(Error::NotASubcode));
    }

    #[test]
    fn property_examples() {
        let id = GenMatrix::identity(Field::GF3, 4);
        let p = classify_properties(&id).unwrap();
        assert!(p.lcd && p.dual_containing && !p.self_orthogonal);
        // [8,4,4] extended Hamming code is self-dual
        let ext_ham = gf2(&["11010001", "01101001", "00110101", "00011011"]);
        let p = classify_properties(&ext_ham).unwrap();
        assert!(p.self_orthogonal && p.dual_containing && !p.lcd);
        let p = classify_properties(&hamming()).unwrap();
        assert!(p.dual_containing && !p.self_orthogonal);
        assert!(classify_properties(&gf2(&["11", "11"])).is_err());
    }

    #[test]
    fn sampled_upper_bound() {
        let h = hamming();
        let ub = weight_upper_bound(&h, 64, 1).unwrap();
        assert!(ub >= 3);
        assert_eq!(weight_upper_bound(&h, 64, 1), Some(ub));
        assert_eq!(weight_upper_bound(&gf2(&["0000"]), 8, 1), None);
    }
}
