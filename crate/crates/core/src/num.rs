//! Small integer helpers shared by the coset and field code.

use alloc::vec::Vec;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Smallest `e >= 1` with `q^e = 1 (mod n)`; requires `gcd(q, n) = 1`.
pub(crate) fn multiplicative_order(q: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let q = q % n;
    let mut acc = q;
    let mut e = 1;
    while acc != 1 {
        acc = acc * q % n;
        e += 1;
    }
    e
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `n = n' * p^t` with `p` not dividing `n'`; returns `(n', t, p^t)`.
pub(crate) fn split_prime_power(n: usize, p: usize) -> (usize, u32, usize) {
    let (mut n_prime, mut t, mut pt) = (n, 0, 1);
    while n_prime % p == 0 {
        n_prime /= p;
        t += 1;
        pt *= p;
    }
    (n_prime, t, pt)
}

/// Units modulo `n`, ascending.
pub(crate) fn units(n: usize) -> Vec<usize> {
    if n == 1 {
        return alloc::vec![0];
    }
    (1..n).filter(|&a| gcd(a as u64, n as u64) == 1).collect()
}

/// Little-endian multi-limb unsigned integer, just enough for exponents of
/// the form `(q^e - 1) / n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Limbs(pub(crate) Vec<u64>);

impl Limbs {
    pub(crate) fn pow_minus_one(q: u64, e: u32) -> Self {
        let mut limbs = alloc::vec![1u64];
        for _ in 0..e {
            let mut carry = 0u128;
            for limb in limbs.iter_mut() {
                let v = *limb as u128 * q as u128 + carry;
                *limb = v as u64;
                carry = v >> 64;
            }
            if carry > 0 {
                limbs.push(carry as u64);
            }
        }
        // subtract one; q^e >= 1 so the borrow stops
        for limb in limbs.iter_mut() {
            if *limb > 0 {
                *limb -= 1;
                break;
            }
            *limb = u64::MAX;
        }
        let mut out = Limbs(limbs);
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.0.len() > 1 && self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    /// Divides in place, returning the remainder.
    pub(crate) fn div_small(&mut self, d: u64) -> u64 {
        let mut rem = 0u128;
        for limb in self.0.iter_mut().rev() {
            let cur = (rem << 64) | *limb as u128;
            *limb = (cur / d as u128) as u64;
            rem = cur % d as u128;
        }
        self.trim();
        rem as u64
    }

    pub(crate) fn bits(&self) -> u32 {
        let top = *self.0.last().unwrap();
        (self.0.len() as u32 - 1) * 64 + (64 - top.leading_zeros())
    }

    pub(crate) fn bit(&self, i: u32) -> bool {
        let limb = self.0.get((i / 64) as usize).copied().unwrap_or(0);
        (limb >> (i % 64)) & 1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_splits() {
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(multiplicative_order(3, 13), 3);
        assert_eq!(multiplicative_order(2, 61), 60);
        assert_eq!(split_prime_power(26, 2), (13, 1, 2));
        assert_eq!(split_prime_power(7, 2), (7, 0, 1));
        assert_eq!(split_prime_power(99, 3), (11, 2, 9));
        assert_eq!(units(9), alloc::vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(prime_factors(360), alloc::vec![2, 3, 5]);
    }

    #[test]
    fn limbs_match_native_arithmetic() {
        let mut l = Limbs::pow_minus_one(2, 12);
        assert_eq!(l.0, alloc::vec![4095]);
        assert_eq!(l.div_small(7), 0);
        assert_eq!(l.0, alloc::vec![585]);
        let big = Limbs::pow_minus_one(4, 40);
        assert_eq!(big.bits(), 80);
        let mut b = big.clone();
        assert_eq!(b.div_small(3), 0);
        assert!(big.bit(79) && big.bit(0));
    }
}
