use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::Field;
use crate::{Error, Result};

/// Dense polynomial over one of the base fields.
///
/// `coeffs[i]` multiplies `x^i`. The representation is always normalized:
/// the last stored coefficient is nonzero, and the zero polynomial stores no
/// coefficients at all, so its degree is `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u8>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: Field, c: u8) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn x(field: Field) -> Self {
        Self::monomial(field, 1, 1)
    }

    pub fn monomial(field: Field, degree: usize, c: u8) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(field, coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming high zeros.
    ///
    /// Panics if a coefficient is not an element of `field`; use
    /// [`Poly::try_from_coeffs`] for untrusted input.
    pub fn from_coeffs(field: Field, coeffs: Vec<u8>) -> Self {
        assert!(coeffs.iter().all(|&c| field.contains(c)), "coefficient outside {field}");
        let mut p = Poly { field, coeffs };
        p.normalize();
        p
    }

    pub fn try_from_coeffs(field: Field, coeffs: Vec<u8>) -> Result<Self> {
        if coeffs.iter().any(|&c| !field.contains(c)) {
            return Err(Error::InvalidInput("coefficient outside the field"));
        }
        Ok(Self::from_coeffs(field, coeffs))
    }

    /// `x^n - 1`.
    pub fn xn_minus_one(field: Field, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = field.neg(1);
        coeffs[n] = field.add(coeffs[n], 1);
        Self::from_coeffs(field, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u8> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    #[inline]
    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> Option<u8> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    /// Coefficient vector padded (or truncated) to exactly `len` entries.
    pub fn to_vector(&self, len: usize) -> Vec<u8> {
        let mut v = vec![0; len];
        for (dst, &c) in v.iter_mut().zip(&self.coeffs) {
            *dst = c;
        }
        v
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.field.order(), right: other.field.order() })
        }
    }

    pub fn scale(&self, c: u8) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lead) => self.scale(self.field.inv(lead).unwrap()),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field, coeffs }
    }

    /// Coefficients in reverse order, `x^deg * p(1/x)`.
    pub fn reciprocal(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        let f = self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv(divisor.coeffs[dd]).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, inv_lead);
            quot[i - dd] = factor;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(rem[idx], f.mul(factor, dc));
            }
        }
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Quotient `self / divisor`, failing unless the division is exact.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InvalidInput("polynomial division is not exact"))
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        matches!(other.rem(self), Ok(r) if r.is_zero())
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
        a.check_field(b)?;
        if a.is_zero() && b.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = r0.rem(&r1)?;
            r0 = r1;
            r1 = r;
        }
        Ok(r0.monic())
    }

    /// Folds exponents modulo `m`, i.e. reduces modulo `x^m - 1`.
    pub fn reduce_mod_xm1(&self, m: usize) -> Poly {
        assert!(m >= 1);
        if self.coeffs.len() <= m {
            return self.clone();
        }
        let f = self.field;
        let mut out = vec![0; m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % m] = f.add(out[i % m], c);
        }
        Poly::from_coeffs(f, out)
    }

    /// `self * other mod (x^m - 1)`.
    pub fn mul_mod(&self, other: &Poly, m: usize) -> Result<Poly> {
        self.check_field(other)?;
        if m == 0 {
            return Err(Error::InvalidInput("ring modulus length must be positive"));
        }
        let f = self.field;
        let mut out = vec![0; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let idx = (i + j) % m;
                out[idx] = f.add(out[idx], f.mul(a, b));
            }
        }
        Ok(Poly::from_coeffs(f, out))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            base = (&base * &base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Irreducibility over the base field: no factor of degree at most half
    /// the degree, tested through `gcd(x^(q^i) - x, self) = 1`.
    pub fn is_irreducible(&self) -> bool {
        let Some(deg) = self.degree() else { return false };
        if deg == 0 {
            return false;
        }
        let f = self.field;
        let q = f.order() as u64;
        let x = Poly::x(f);
        let mut frob = x.clone();
        for _ in 1..=deg / 2 {
            frob = frob.pow_mod(q, self).unwrap();
            let g = Poly::gcd(&(&frob - &x), self).unwrap();
            if !g.is_one() {
                return false;
            }
        }
        true
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.check_field(rhs).expect("polynomial addition across fields");
        let f = self.field;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(f, (0..len).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = self.field;
        Poly { field: f, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.check_field(rhs).expect("polynomial multiplication across fields");
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, out)
    }
}

fn fmt_coeff(field: Field, c: u8) -> char {
    match (field.order(), c) {
        (4, 2) => 'a',
        (4, 3) => 'b',
        _ => char::from(b'0' + c),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = fmt_coeff(self.field, c);
            match (i, c) {
                (0, _) => write!(f, "{coeff}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{coeff}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(c: &[u8]) -> Poly {
        Poly::from_coeffs(Field::GF2, c.to_vec())
    }

    #[test]
    fn normalization_trims_high_zeros() {
        let p = p2(&[1, 0, 1, 0, 0]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p2(&[0, 0]).degree(), None);
        assert!(p2(&[]).is_zero());
    }

    #[test]
    fn mul_mod_wraps_cyclically() {
        let x = Poly::x(Field::GF2);
        let b = p2(&[1, 1, 1]);
        assert_eq!(x.mul_mod(&b, 3).unwrap(), p2(&[1, 1, 1]));
        let g = p2(&[1, 1, 0, 1]);
        assert_eq!(Poly::one(Field::GF2).mul_mod(&g, 7).unwrap(), g);
        // (1 + x^2)^2 = 1 + x^4 in characteristic two
        let a = p2(&[1, 0, 1]);
        assert_eq!(a.mul_mod(&a, 26).unwrap(), p2(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn mul_mod_rejects_mixed_fields() {
        let a = Poly::one(Field::GF2);
        let b = Poly::one(Field::GF3);
        assert_eq!(a.mul_mod(&b, 3), Err(Error::FieldMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn gcd_examples() {
        let f3 = Field::GF3;
        // x^2 - 1 and x - 1 over GF(3)
        let a = Poly::from_coeffs(f3, vec![2, 0, 1]);
        let b = Poly::from_coeffs(f3, vec![2, 1]);
        assert_eq!(Poly::gcd(&a, &b).unwrap(), b);
        assert!(Poly::gcd(&a, &Poly::one(f3)).unwrap().is_one());
        let x7 = Poly::xn_minus_one(Field::GF2, 7);
        let h = p2(&[1, 1, 0, 1]);
        assert_eq!(Poly::gcd(&x7, &h).unwrap(), h);
        assert_eq!(Poly::gcd(&Poly::zero(f3), &Poly::zero(f3)), Err(Error::UndefinedGcd));
    }

    #[test]
    fn division_round_trips() {
        let x7 = Poly::xn_minus_one(Field::GF2, 7);
        let g = p2(&[1, 1, 0, 1]);
        let (q, r) = x7.div_rem(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(&q * &g, x7);
        assert!(g.divides(&x7));
        assert!(!p2(&[1, 1, 1]).divides(&g));
    }

    #[test]
    fn irreducibility() {
        assert!(p2(&[1, 1, 0, 1]).is_irreducible());
        assert!(p2(&[1, 0, 1, 1]).is_irreducible());
        assert!(!p2(&[1, 0, 1]).is_irreducible());
        assert!(p2(&[1, 1, 1]).is_irreducible());
        // x^2 + 1 over GF(3) has no roots
        assert!(Poly::from_coeffs(Field::GF3, vec![1, 0, 1]).is_irreducible());
        // x^2 + x + 1 over GF(4) splits
        assert!(!Poly::from_coeffs(Field::GF4, vec![1, 1, 1]).is_irreducible());
    }

    #[test]
    fn display_uses_gf4_symbols() {
        let p = Poly::from_coeffs(Field::GF4, vec![3, 2, 0, 1]);
        assert_eq!(alloc::format!("{p}"), "b + ax + x^3");
    }
}
