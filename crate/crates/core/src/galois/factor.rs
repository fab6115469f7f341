use alloc::vec::Vec;

use super::{minimal_poly, primitive_root_of_unity, Field, Poly};
use crate::cyclic::cyclotomic_cosets;
use crate::num::split_prime_power;
use crate::{Error, Result};

/// One irreducible factor of `x^n - 1` with its multiplicity and the
/// cyclotomic coset it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: Poly,
    pub multiplicity: usize,
    pub coset: Vec<usize>,
}

/// Irreducible factorization of `x^n - 1` over `field`.
///
/// With `n = n' p^t` (`p` the characteristic), every factor is the minimal
/// polynomial of a cyclotomic coset of `q` modulo `n'` and appears `p^t`
/// times. Factors are listed in coset order.
pub fn factor_xn_minus_1(field: Field, n: usize) -> Result<Vec<Factor>> {
    if n == 0 {
        return Err(Error::InvalidInput("length must be positive"));
    }
    let (n_prime, _, multiplicity) = split_prime_power(n, field.characteristic() as usize);
    let root = primitive_root_of_unity(field, n_prime)?;
    cyclotomic_cosets(field.order() as usize, n_prime)?
        .into_iter()
        .map(|coset| {
            let poly = minimal_poly(&coset, &root)?;
            Ok(Factor { poly, multiplicity, coset })
        })
        .collect()
}

/// Factors a divisor of `x^m - 1` into `(irreducible, multiplicity)` pairs,
/// in the coset order of [`factor_xn_minus_1`].
pub fn factor_divisor(g: &Poly, m: usize) -> Result<Vec<(Poly, usize)>> {
    let field = g.field();
    if g.is_zero() || !g.divides(&Poly::xn_minus_one(field, m)) {
        return Err(Error::NotADivisor { length: m });
    }
    let mut rest = g.monic();
    let mut out = Vec::new();
    for factor in factor_xn_minus_1(field, m)? {
        let mut count = 0;
        loop {
            let (q, r) = rest.div_rem(&factor.poly)?;
            if !r.is_zero() {
                break;
            }
            rest = q;
            count += 1;
        }
        if count > 0 {
            out.push((factor.poly, count));
        }
    }
    debug_assert!(rest.is_one());
    Ok(out)
}
