//! Prime fields `F_p` and their quadratic extensions `F_{p^2}`.
//!
//! Everything here is a small `Copy` value. Elements carry their modulus so
//! that mixing fields is caught, but the hot loops in [`crate::counting`] use
//! [`ExtField`] directly and never allocate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::FieldError;

/// Largest prime accepted by [`PrimeModulus::new`].
pub const DEFAULT_PRIME_BOUND: u64 = 1_000_000;

/// Hard ceiling on any configured bound: residues stay below 2^32, so a
/// product of two residues fits in a `u64`.
pub const MAX_PRIME_BOUND: u64 = u32::MAX as u64;

/// An odd prime `p`, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        Self::with_bound(p, DEFAULT_PRIME_BOUND)
    }

    /// Like [`PrimeModulus::new`] with a caller-chosen upper bound on `p`.
    pub fn with_bound(p: u64, bound: u64) -> Result<Self, FieldError> {
        let bound = bound.min(MAX_PRIME_BOUND);
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if p > bound {
            return Err(FieldError::AboveBound { p, bound });
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeModulus(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `p mod 3`.
    pub fn residue_mod_3(self) -> u64 {
        self.0 % 3
    }

    pub fn elem(self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.0,
            modulus: self,
        }
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn elem_i64(self, value: i64) -> FieldElement {
        let p = self.0 as i64;
        self.elem(value.rem_euclid(p) as u64)
    }

    pub fn zero(self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(self) -> FieldElement {
        self.elem(1)
    }

    #[inline]
    pub(crate) fn add_raw(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub(crate) fn mul_raw(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub(crate) fn pow_raw(self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: PrimeModulus,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, e: u64) -> FieldElement {
        FieldElement {
            value: self.modulus.pow_raw(self.value, e),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse via Fermat; `None` for zero.
    pub fn inv(self) -> Option<FieldElement> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.modulus.0 - 2))
        }
    }

    /// Euler's criterion. Zero counts as a square.
    pub fn is_square(self) -> bool {
        self.is_zero() || self.pow((self.modulus.0 - 1) / 2).value == 1
    }

    fn check(self, other: FieldElement) {
        assert_eq!(
            self.modulus, other.modulus,
            "field elements over different primes"
        );
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            value: self.modulus.add_raw(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            value: self.modulus.sub_raw(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            value: self.modulus.mul_raw(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            value: self.modulus.sub_raw(0, self.value),
            modulus: self.modulus,
        }
    }
}

/// The field `F_{p^2} = F_p[t] / (t^2 - n)` for the smallest quadratic
/// nonresidue `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtField {
    p: PrimeModulus,
    nonresidue: FieldElement,
}

/// Builds the quadratic extension of `F_p`.
pub fn make_ext_field(p: PrimeModulus) -> ExtField {
    let nonresidue = (2..p.get())
        .map(|n| p.elem(n))
        .find(|n| !n.is_square())
        .expect("every odd prime has a quadratic nonresidue");
    ExtField { p, nonresidue }
}

impl ExtField {
    pub fn new(p: PrimeModulus) -> Self {
        make_ext_field(p)
    }

    pub fn prime(&self) -> PrimeModulus {
        self.p
    }

    /// `q = p^2`.
    pub fn order(&self) -> u64 {
        self.p.get() * self.p.get()
    }

    pub fn nonresidue(&self) -> FieldElement {
        self.nonresidue
    }

    pub fn elem(&self, a0: u64, a1: u64) -> ExtElement {
        ExtElement {
            a0: self.p.elem(a0),
            a1: self.p.elem(a1),
            nonresidue: self.nonresidue,
        }
    }

    /// Embeds an element of the prime field.
    pub fn base(&self, a: FieldElement) -> ExtElement {
        self.elem(a.value(), 0)
    }

    pub fn zero(&self) -> ExtElement {
        self.elem(0, 0)
    }

    pub fn one(&self) -> ExtElement {
        self.elem(1, 0)
    }

    /// All `q` elements, ordered by `(a1, a0)`.
    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        let p = self.p.get();
        (0..p).flat_map(move |a1| (0..p).map(move |a0| self.elem(a0, a1)))
    }

    /// Index of an element in `0..q`, matching [`ExtField::elements`].
    pub fn index_of(&self, v: ExtElement) -> usize {
        (v.a1.value() * self.p.get() + v.a0.value()) as usize
    }

    pub fn from_index(&self, idx: usize) -> ExtElement {
        let p = self.p.get();
        let idx = idx as u64;
        self.elem(idx % p, idx / p)
    }

    /// Number of `x` in `F_{p^2}` with `x^3 = a`.
    pub fn cube_root_count(&self, a: ExtElement) -> u32 {
        if a.is_zero() {
            return 1;
        }
        let q = self.order();
        if !(q - 1).is_multiple_of(3) {
            // p = 3: cubing is the Frobenius, a bijection.
            return 1;
        }
        if a.pow((q - 1) / 3) == self.one() {
            3
        } else {
            0
        }
    }
}

/// `a0 + a1*t` with `t^2 = nonresidue`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement {
    pub a0: FieldElement,
    pub a1: FieldElement,
    pub nonresidue: FieldElement,
}

impl ExtElement {
    pub fn is_zero(self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    fn one_like(self) -> ExtElement {
        let p = self.a0.modulus();
        ExtElement {
            a0: p.one(),
            a1: p.zero(),
            nonresidue: self.nonresidue,
        }
    }

    /// Square-and-multiply; `v^0 = 1` for every `v`, zero included.
    pub fn pow(self, mut e: u64) -> ExtElement {
        let mut acc = self.one_like();
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `v^p`, i.e. conjugation `a0 + a1 t -> a0 - a1 t`.
    pub fn frobenius(self) -> ExtElement {
        ExtElement {
            a1: -self.a1,
            ..self
        }
    }

    /// `v * v^p`, an element of `F_p`.
    pub fn norm(self) -> FieldElement {
        self.a0 * self.a0 - self.nonresidue * self.a1 * self.a1
    }

    pub fn inv(self) -> Option<ExtElement> {
        let n_inv = self.norm().inv()?;
        let c = self.frobenius();
        Some(ExtElement {
            a0: c.a0 * n_inv,
            a1: c.a1 * n_inv,
            nonresidue: self.nonresidue,
        })
    }

    fn check(self, other: ExtElement) {
        assert_eq!(
            self.nonresidue, other.nonresidue,
            "extension elements over different fields"
        );
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}t", self.a0, self.a1)
    }
}

impl Add for ExtElement {
    type Output = ExtElement;
    fn add(self, rhs: ExtElement) -> ExtElement {
        self.check(rhs);
        ExtElement {
            a0: self.a0 + rhs.a0,
            a1: self.a1 + rhs.a1,
            nonresidue: self.nonresidue,
        }
    }
}

impl Sub for ExtElement {
    type Output = ExtElement;
    fn sub(self, rhs: ExtElement) -> ExtElement {
        self.check(rhs);
        ExtElement {
            a0: self.a0 - rhs.a0,
            a1: self.a1 - rhs.a1,
            nonresidue: self.nonresidue,
        }
    }
}

impl Mul for ExtElement {
    type Output = ExtElement;
    fn mul(self, rhs: ExtElement) -> ExtElement {
        self.check(rhs);
        ExtElement {
            a0: self.a0 * rhs.a0 + self.nonresidue * self.a1 * rhs.a1,
            a1: self.a0 * rhs.a1 + self.a1 * rhs.a0,
            nonresidue: self.nonresidue,
        }
    }
}

impl Neg for ExtElement {
    type Output = ExtElement;
    fn neg(self) -> ExtElement {
        ExtElement {
            a0: -self.a0,
            a1: -self.a1,
            nonresidue: self.nonresidue,
        }
    }
}
