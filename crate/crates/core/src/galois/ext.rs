use alloc::vec;
use alloc::vec::Vec;

use super::{Field, Poly};
use crate::num::{self, Limbs};
use crate::{Error, Result};

/// `GF(q^e)` built as `GF(q)[y] / (modulus)`.
///
/// Elements are coefficient vectors of length `e` over the base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: Field,
    modulus: Poly,
}

/// An element of an [`ExtField`]; `coeffs[i]` multiplies `y^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElem(Vec<u8>);

impl ExtElem {
    pub fn coeffs(&self) -> &[u8] {
        &self.0
    }

    /// The base-field value if the element lies in the prime subfield image.
    pub fn as_base(&self) -> Option<u8> {
        if self.0[1..].iter().all(|&c| c == 0) {
            Some(self.0[0])
        } else {
            None
        }
    }
}

impl ExtField {
    pub fn new(modulus: Poly) -> Result<Self> {
        if !modulus.is_monic() || !modulus.is_irreducible() {
            return Err(Error::InvalidInput("extension modulus must be monic and irreducible"));
        }
        Ok(ExtField { base: modulus.field(), modulus })
    }

    /// Extension of degree `e` defined by the smallest monic irreducible
    /// polynomial, ordering candidates by the base-`q` integer
    /// `c_0 + c_1 q + ... + c_{e-1} q^(e-1)` of their lower coefficients.
    pub fn smallest_irreducible(base: Field, e: usize) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidInput("extension degree must be positive"));
        }
        let q = base.order();
        let mut lower = vec![0u8; e];
        loop {
            let mut coeffs = lower.clone();
            coeffs.push(1);
            let candidate = Poly::from_coeffs(base, coeffs);
            if candidate.is_irreducible() {
                return Ok(ExtField { base, modulus: candidate });
            }
            // next base-q counter value, least significant digit first
            let mut i = 0;
            loop {
                if i == e {
                    return Err(Error::InvalidInput("no irreducible polynomial found"));
                }
                lower[i] += 1;
                if lower[i] < q {
                    break;
                }
                lower[i] = 0;
                i += 1;
            }
        }
    }

    pub fn base(&self) -> Field {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem(vec![0; self.degree()])
    }

    pub fn from_base(&self, c: u8) -> ExtElem {
        let mut v = vec![0; self.degree()];
        v[0] = c;
        ExtElem(v)
    }

    pub fn one(&self) -> ExtElem {
        self.from_base(1)
    }

    fn reduce(&self, p: &Poly) -> ExtElem {
        ExtElem(p.to_vector(self.degree()))
    }

    fn to_poly(&self, a: &ExtElem) -> Poly {
        Poly::from_coeffs(self.base, a.0.clone())
    }

    /// Element whose coefficient vector spells `index` in base `q`.
    pub fn element_from_index(&self, mut index: u64) -> ExtElem {
        let q = self.base.order() as u64;
        let mut v = vec![0; self.degree()];
        for c in v.iter_mut() {
            *c = (index % q) as u8;
            index /= q;
        }
        ExtElem(v)
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().zip(&b.0).map(|(&x, &y)| self.base.add(x, y)).collect())
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().map(|&x| self.base.neg(x)).collect())
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let prod = &self.to_poly(a) * &self.to_poly(b);
        self.reduce(&prod.rem(&self.modulus).unwrap())
    }

    pub fn pow(&self, a: &ExtElem, mut e: u64) -> ExtElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn pow_limbs(&self, a: &ExtElem, e: &Limbs) -> ExtElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn is_one(&self, a: &ExtElem) -> bool {
        a.as_base() == Some(1)
    }
}

/// A primitive `n'`-th root of unity together with the field it lives in.
#[derive(Clone, Debug)]
pub struct RootOfUnity {
    n_prime: usize,
    ext: ExtField,
    beta: ExtElem,
}

impl RootOfUnity {
    pub fn n_prime(&self) -> usize {
        self.n_prime
    }

    pub fn field(&self) -> &ExtField {
        &self.ext
    }

    pub fn beta(&self) -> &ExtElem {
        &self.beta
    }

    /// `beta^w` with the exponent reduced modulo `n'`.
    pub fn power(&self, w: usize) -> ExtElem {
        self.ext.pow(&self.beta, (w % self.n_prime) as u64)
    }
}

/// Finds `beta` of multiplicative order exactly `n'` in `GF(q^e)`, where
/// `e` is the order of `q` modulo `n'`.
///
/// Candidates `delta` are tried in [`ExtField::element_from_index`] order and
/// raised to `(q^e - 1) / n'`, so the result is deterministic.
pub fn primitive_root_of_unity(field: Field, n_prime: usize) -> Result<RootOfUnity> {
    if n_prime == 0 {
        return Err(Error::InvalidInput("root of unity order must be positive"));
    }
    let p = field.characteristic() as u64;
    if num::gcd(n_prime as u64, p) != 1 {
        return Err(Error::InvalidInput("n' must be coprime to the characteristic"));
    }
    let q = field.order() as u64;
    let e = num::multiplicative_order(q, n_prime as u64);
    let ext = ExtField::smallest_irreducible(field, e as usize)?;
    let mut cofactor = Limbs::pow_minus_one(q, e as u32);
    let rem = cofactor.div_small(n_prime as u64);
    debug_assert_eq!(rem, 0);
    let primes = num::prime_factors(n_prime as u64);
    for index in 1u64.. {
        let delta = ext.element_from_index(index);
        let gamma = ext.pow_limbs(&delta, &cofactor);
        let exact = primes.iter().all(|&pr| !ext.is_one(&ext.pow(&gamma, n_prime as u64 / pr)));
        if exact {
            return Ok(RootOfUnity { n_prime, ext, beta: gamma });
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

/// `prod_{w in coset} (x - beta^w)`, mapped back to the base field.
///
/// Fails with [`Error::CosetNotClosed`] when a coefficient of the product
/// falls outside the base field, which happens exactly when the exponent set
/// is not closed under multiplication by `q`.
pub fn minimal_poly(coset: &[usize], root: &RootOfUnity) -> Result<Poly> {
    let ext = &root.ext;
    // coefficients over the extension, ascending
    let mut acc: Vec<ExtElem> = vec![ext.one()];
    for &w in coset {
        let minus_root = ext.neg(&root.power(w));
        let mut next = vec![ext.zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] = ext.add(&next[i + 1], c);
            next[i] = ext.add(&next[i], &ext.mul(c, &minus_root));
        }
        acc = next;
    }
    let mut coeffs = Vec::with_capacity(acc.len());
    for c in &acc {
        match c.as_base() {
            Some(v) => coeffs.push(v),
            None => return Err(Error::CosetNotClosed { coset: coset.first().copied().unwrap_or(0) }),
        }
    }
    Ok(Poly::from_coeffs(ext.base(), coeffs))
}
