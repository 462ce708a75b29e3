//! Arithmetic in GF(2^ell) for small `ell`.
//!
//! Elements are `ell`-bit words where bit `i` is the coefficient of `x^i`.
//! Multiplication is carry-less multiplication reduced by the field modulus.

use std::fmt;

use crate::{Error, Result};

/// Largest supported extension degree.
pub const MAX_ELL: u32 = 16;

/// Default moduli indexed by `ell` (bit `i` = coefficient of `x^i`).
const STANDARD_MODULI: [u32; 9] = [
    0,
    0b11,        // x + 1
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b1_0011,    // x^4 + x + 1
    0b10_0101,   // x^5 + x^2 + 1
    0b100_0011,  // x^6 + x + 1
    0b1000_0011, // x^7 + x + 1
    0x11b,       // x^8 + x^4 + x^3 + x + 1
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn word(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn degree(poly: u32) -> i32 {
    31 - poly.leading_zeros() as i32
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(poly: u32) -> bool {
    let d = degree(poly);
    if d < 1 {
        return false;
    }
    (2u32..1 << (d / 2 + 1)).all(|div| poly_rem(poly, div) != 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    ell: u32,
    modulus: u32,
}

impl FieldSpec {
    /// GF(2^ell) with the default modulus, `1 <= ell <= 8`.
    pub fn standard(ell: u32) -> Result<Self> {
        match STANDARD_MODULI.get(ell as usize) {
            Some(&m) if ell >= 1 => FieldSpec::with_modulus(ell, m),
            _ => Err(Error::Field(format!("no standard modulus for ell = {ell} (supported: 1..=8)"))),
        }
    }

    /// GF(2^ell) reduced by `modulus`, which must be irreducible of degree `ell`.
    pub fn with_modulus(ell: u32, modulus: u32) -> Result<Self> {
        if ell == 0 || ell > MAX_ELL {
            return Err(Error::Field(format!("ell = {ell} outside 1..={MAX_ELL}")));
        }
        if degree(modulus) != ell as i32 {
            return Err(Error::Field(format!("modulus {modulus:#b} does not have degree {ell}")));
        }
        if !is_irreducible(modulus) {
            return Err(Error::Field(format!("modulus {modulus:#b} is reducible")));
        }
        Ok(FieldSpec { ell, modulus })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, `2^ell`.
    pub fn order(&self) -> u32 {
        1 << self.ell
    }

    pub fn element(&self, word: u32) -> Result<FieldElement> {
        if word < self.order() {
            Ok(FieldElement(word))
        } else {
            Err(Error::Field(format!("word {word} is not an element of GF({})", self.order())))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    /// Same as `add` in characteristic 2.
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, b)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (mut a, mut b) = (a.0, b.0);
        let top = 1 << self.ell;
        let mut acc = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        FieldElement(acc)
    }

    pub fn pow(&self, base: FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse as `a^(q-2)`.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, u64::from(self.order()) - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(w: u32) -> FieldElement {
        FieldElement(w)
    }

    #[test]
    fn standard_table_is_irreducible() {
        for ell in 1..=8 {
            let f = FieldSpec::standard(ell).unwrap();
            assert!(is_irreducible(f.modulus()));
        }
        assert!(FieldSpec::standard(0).is_err());
        assert!(FieldSpec::standard(9).is_err());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2
        assert!(FieldSpec::with_modulus(2, 0b101).is_err());
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(FieldSpec::with_modulus(4, 0b10101).is_err());
        assert!(FieldSpec::with_modulus(3, 0b111).is_err());
    }

    #[test]
    fn gf4_examples() {
        let f = FieldSpec::standard(2).unwrap();
        let alpha = el(0b10);
        assert_eq!(f.mul(alpha, alpha), el(0b11));
        assert_eq!(f.inv(alpha).unwrap(), el(0b11));
        assert!(matches!(f.inv(FieldElement::ZERO), Err(Error::ZeroInverse)));
    }

    #[test]
    fn identities() {
        for ell in 1..=8 {
            let f = FieldSpec::standard(ell).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, x), FieldElement::ZERO);
                assert_eq!(f.mul(x, FieldElement::ONE), x);
                assert_eq!(f.mul(x, FieldElement::ZERO), FieldElement::ZERO);
                if !x.is_zero() {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), FieldElement::ONE);
                }
            }
        }
    }

    #[test]
    fn element_range() {
        let f = FieldSpec::standard(3).unwrap();
        assert!(f.element(7).is_ok());
        assert!(f.element(8).is_err());
    }
}
