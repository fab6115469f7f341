use crate::{Error, Result};

/// One of the four base fields GF(2), GF(3), GF(4), GF(5).
///
/// Elements are plain `u8` values in `0..q`. For the prime fields the value
/// is the residue. For GF(4) the value is a polynomial-basis vector over
/// GF(2): bit 0 is the coefficient of 1 and bit 1 the coefficient of `a`,
/// where `a^2 = a + 1`. So `2` is `a` and `3` is `a + 1 = a^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    q: u8,
}

// a * a = a + 1, a * (a + 1) = 1, (a + 1)^2 = a
const GF4_MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
const GF4_INV: [u8; 4] = [0, 1, 3, 2];
const GF5_INV: [u8; 5] = [0, 1, 3, 2, 4];

impl Field {
    pub const GF2: Field = Field { q: 2 };
    pub const GF3: Field = Field { q: 3 };
    pub const GF4: Field = Field { q: 4 };
    pub const GF5: Field = Field { q: 5 };

    pub fn new(q: u32) -> Result<Self> {
        match q {
            2..=5 => Ok(Field { q: q as u8 }),
            _ => Err(Error::UnsupportedField(q)),
        }
    }

    /// Number of elements.
    #[inline]
    pub fn order(self) -> u8 {
        self.q
    }

    #[inline]
    pub fn characteristic(self) -> u8 {
        if self.q == 4 {
            2
        } else {
            self.q
        }
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        match self.q {
            2 | 4 => a ^ b,
            q => {
                let s = a + b;
                if s >= q {
                    s - q
                } else {
                    s
                }
            }
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        match self.q {
            2 | 4 => a,
            q => {
                if a == 0 {
                    0
                } else {
                    q - a
                }
            }
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        match self.q {
            2 => a & b,
            4 => GF4_MUL[a as usize][b as usize],
            q => (a * b) % q,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        Some(match self.q {
            2 => 1,
            3 => a,
            4 => GF4_INV[a as usize],
            _ => GF5_INV[a as usize],
        })
    }

    pub fn pow(self, mut a: u8, mut e: u64) -> u8 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// All elements in ascending representation order.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        0..self.q
    }

    #[inline]
    pub fn contains(self, a: u8) -> bool {
        a < self.q
    }
}

impl core::fmt::Display for Field {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}
