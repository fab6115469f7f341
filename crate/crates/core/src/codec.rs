//! Compact generator strings.
//!
//! Coefficients are listed in ascending powers of `x`:
//!
//! - GF(2): blocks of three coefficients `(c0, c1, c2)` become one octal digit
//!   `c0 + 2 c1 + 4 c2`. `1 + x^2 + x^3 + x^4` is `10111`, padded to
//!   `101 110`, written `53`.
//! - GF(3): blocks of two coefficients `(c0, c1)` become one base-9 digit
//!   `c0 + 3 c1`.
//! - GF(4): one character per coefficient from `0`, `1`, `a`, `b` with
//!   `b = a^2 = a + 1`.
//! - GF(5): one digit `0..=4` per coefficient.
//!
//! Padding zeros at the top end are dropped when decoding.

use alloc::string::String;
use alloc::vec::Vec;

use crate::galois::{Field, Poly};
use crate::{Error, Result};

/// Coefficients packed into one character.
pub fn block_len(field: Field) -> usize {
    match field.order() {
        2 => 3,
        3 => 2,
        _ => 1,
    }
}

fn digit_value(field: Field, ch: char) -> Option<u8> {
    match field.order() {
        4 => match ch {
            '0' => Some(0),
            '1' => Some(1),
            'a' => Some(2),
            'b' => Some(3),
            _ => None,
        },
        q => {
            let radix = match q {
                2 => 8,
                3 => 9,
                _ => 5,
            };
            ch.to_digit(radix).map(|d| d as u8)
        }
    }
}

fn digit_char(field: Field, value: u8) -> char {
    match (field.order(), value) {
        (4, 2) => 'a',
        (4, 3) => 'b',
        _ => char::from(b'0' + value),
    }
}

/// Parses a generator string into a polynomial.
///
/// ```
/// use qcforge_core::codec::decode_gen;
/// use qcforge_core::galois::Field;
///
/// assert_eq!(decode_gen(Field::GF3, "4").unwrap().coeffs(), &[1, 1]);
/// assert_eq!(decode_gen(Field::GF4, "1ab").unwrap().coeffs(), &[1, 2, 3]);
/// ```
pub fn decode_gen(field: Field, s: &str) -> Result<Poly> {
    if s.is_empty() {
        return Err(Error::InvalidInput("empty generator string"));
    }
    let q = field.order();
    let per = block_len(field);
    let mut coeffs = Vec::with_capacity(s.len() * per);
    for (offset, ch) in s.chars().enumerate() {
        let mut d = digit_value(field, ch).ok_or(Error::Parse { q, offset, ch })?;
        if per == 1 {
            coeffs.push(d);
            continue;
        }
        let base = field.characteristic();
        for _ in 0..per {
            coeffs.push(d % base);
            d /= base;
        }
    }
    Ok(Poly::from_coeffs(field, coeffs))
}

/// Inverse of [`decode_gen`]; the zero polynomial encodes as `"0"`.
pub fn encode_gen(p: &Poly) -> String {
    let field = p.field();
    let per = block_len(field);
    let coeffs = p.coeffs();
    if coeffs.is_empty() {
        return String::from("0");
    }
    let base = field.characteristic();
    coeffs
        .chunks(per)
        .map(|block| {
            let value = block.iter().rev().fold(0u8, |acc, &c| acc * base + c);
            digit_char(field, value)
        })
        .collect()
}

/// `s` with the high-order zero characters that [`encode_gen`] never emits
/// removed; `encode_gen(decode_gen(s)) == normalize_gen(s)`.
pub fn normalize_gen(s: &str) -> &str {
    let t = s.trim_end_matches('0');
    if t.is_empty() {
        "0"
    } else {
        t
    }
}
