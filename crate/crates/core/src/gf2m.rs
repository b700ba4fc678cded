//! Table-driven arithmetic in GF(2^m), 2 <= m <= 16.
//!
//! Elements are stored as integers whose bit `i` is the coefficient of
//! `alpha^i`, where `alpha` is a root of the defining primitive polynomial.
//! Addition is XOR; multiplication and inversion go through log/antilog
//! tables built once per field.

use std::fmt;

use crate::error::{Error, Result};

/// Standard primitive polynomials, indexed by `m`. Bit `i` is the
/// coefficient of `x^i`.
const DEFAULT_POLYS: [u32; 17] =
    [0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003, 0x1100B];

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({:#x})", self.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl std::ops::AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

#[cfg(debug_assertions)]
thread_local! {
    static LOOKUPS: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
}

/// Number of log/antilog lookups performed on the current thread.
///
/// Debug builds only; used to check that the array-code paths never touch a
/// field table.
#[cfg(debug_assertions)]
pub fn table_lookups() -> u64 {
    LOOKUPS.with(|c| c.get())
}

#[inline]
fn count_lookup() {
    #[cfg(debug_assertions)]
    LOOKUPS.with(|c| c.set(c.get() + 1));
}

#[derive(Clone, PartialEq, Eq)]
pub struct FieldTable {
    m: u32,
    primitive_poly: u32,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u16>,
    /// `antilog[e] = alpha^e` for `0 <= e < q - 1`.
    antilog: Vec<u16>,
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTable")
            .field("m", &self.m)
            .field("primitive_poly", &format_args!("{:#x}", self.primitive_poly))
            .finish()
    }
}

impl FieldTable {
    /// Builds the tables for GF(2^m) defined by `primitive_poly`.
    ///
    /// The polynomial must have degree exactly `m` and `x` must generate the
    /// full multiplicative group of order `2^m - 1`.
    pub fn new(m: u32, primitive_poly: u32) -> Result<Self> {
        if !(2..=16).contains(&m) || primitive_poly >> m != 1 {
            return Err(Error::BadDegree(m));
        }
        let q = 1usize << m;
        let order = q - 1;
        let mut log = vec![0u16; q];
        let mut antilog = vec![0u16; order];
        let mut x: u32 = 1;
        for (e, slot) in antilog.iter_mut().enumerate() {
            if x == 0 || (e > 0 && x == 1) {
                return Err(Error::NonPrimitivePoly { m, poly: primitive_poly });
            }
            *slot = x as u16;
            log[x as usize] = e as u16;
            x <<= 1;
            if x & (q as u32) != 0 {
                x ^= primitive_poly;
            }
        }
        if x != 1 {
            return Err(Error::NonPrimitivePoly { m, poly: primitive_poly });
        }
        Ok(FieldTable { m, primitive_poly, log, antilog })
    }

    /// GF(2^m) with the standard primitive polynomial for `m`.
    pub fn with_default_poly(m: u32) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::BadDegree(m));
        }
        Self::new(m, DEFAULT_POLYS[m as usize])
    }

    pub fn default_poly(m: u32) -> Option<u32> {
        DEFAULT_POLYS.get(m as usize).copied().filter(|&p| p != 0)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn primitive_poly(&self) -> u32 {
        self.primitive_poly
    }

    /// Field size `q = 2^m`.
    pub fn q(&self) -> usize {
        1 << self.m
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn order(&self) -> usize {
        self.antilog.len()
    }

    pub fn element(&self, value: u16) -> Result<FieldElement> {
        if (value as usize) < self.q() {
            Ok(FieldElement(value))
        } else {
            Err(Error::OutOfRange { position: value as usize, limit: self.q() })
        }
    }

    /// `alpha^e`, exponent taken modulo `q - 1`.
    pub fn alpha_pow(&self, e: usize) -> FieldElement {
        count_lookup();
        FieldElement(self.antilog[e % self.order()])
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: FieldElement) -> Option<usize> {
        if a.is_zero() {
            None
        } else {
            count_lookup();
            Some(self.log[a.0 as usize] as usize)
        }
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        count_lookup();
        let e = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        FieldElement(self.antilog[e % self.order()])
    }

    /// `alpha^e * a`.
    pub fn mul_alpha_pow(&self, a: FieldElement, e: usize) -> FieldElement {
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        count_lookup();
        let order = self.order();
        let s = self.log[a.0 as usize] as usize + e % order;
        FieldElement(self.antilog[s % order])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivideByZero);
        }
        count_lookup();
        let order = self.order();
        let l = self.log[a.0 as usize] as usize;
        Ok(FieldElement(self.antilog[(order - l) % order]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q()).map(|v| FieldElement(v as u16))
    }
}
