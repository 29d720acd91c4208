//! Sparse polynomials over `F_p` in the variables `x, y, z, w`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::PolyError;
use crate::ff::{FieldElement, PrimeModulus};

pub const VARIABLES: [char; 4] = ['x', 'y', 'z', 'w'];

/// Exponents `(i, j, k, l)` of `x^i y^j z^k w^l`, ordered lexicographically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Exponent4(pub [u32; 4]);

impl Exponent4 {
    pub const fn new(i: u32, j: u32, k: u32, l: u32) -> Self {
        Exponent4([i, j, k, l])
    }

    pub fn degree(self) -> u32 {
        self.0.iter().sum()
    }

    pub fn x(self) -> u32 {
        self.0[0]
    }
    pub fn y(self) -> u32 {
        self.0[1]
    }
    pub fn z(self) -> u32 {
        self.0[2]
    }
    pub fn w(self) -> u32 {
        self.0[3]
    }

    fn plus(self, other: Exponent4) -> Exponent4 {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0) {
            *o += e;
        }
        Exponent4(out)
    }
}

impl fmt::Display for Exponent4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in VARIABLES.iter().zip(self.0) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl From<[u32; 4]> for Exponent4 {
    fn from(e: [u32; 4]) -> Self {
        Exponent4(e)
    }
}

/// A polynomial kept in canonical form: no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    modulus: PrimeModulus,
    terms: BTreeMap<Exponent4, FieldElement>,
}

impl SparsePoly {
    pub fn zero(modulus: PrimeModulus) -> Self {
        SparsePoly {
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Self::monomial(modulus, 1, Exponent4::default())
    }

    /// `c * x^i y^j z^k w^l` with `c` reduced mod `p`.
    pub fn monomial(modulus: PrimeModulus, c: i64, ev: impl Into<Exponent4>) -> Self {
        Self::from_terms(modulus, [(ev.into(), c)])
    }

    /// Sums the given terms, merging repeated exponents.
    pub fn from_terms<E: Into<Exponent4>>(
        modulus: PrimeModulus,
        terms: impl IntoIterator<Item = (E, i64)>,
    ) -> Self {
        let mut out = SparsePoly::zero(modulus);
        for (ev, c) in terms {
            out.add_term(ev.into(), modulus.elem_i64(c));
        }
        out
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent4, FieldElement)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    pub fn coeff_of(&self, ev: Exponent4) -> FieldElement {
        self.terms
            .get(&ev)
            .copied()
            .unwrap_or_else(|| self.modulus.zero())
    }

    fn add_term(&mut self, ev: Exponent4, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(ev) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = *slot.get() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    fn same_modulus(&self, other: &SparsePoly) -> Result<(), PolyError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(PolyError::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            })
        }
    }

    pub fn try_add(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.same_modulus(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.same_modulus(other)?;
        let mut out = SparsePoly::zero(self.modulus);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                out.add_term(ea.plus(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            modulus: self.modulus,
            terms: self.terms.iter().map(|(e, c)| (*e, -*c)).collect(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> SparsePoly {
        let mut out = SparsePoly::zero(self.modulus);
        if c.is_zero() {
            return out;
        }
        for (e, v) in self.terms() {
            out.add_term(e, v * c);
        }
        out
    }

    /// `self^e` by binary exponentiation; `f^0 = 1`.
    pub fn pow(&self, mut e: u64) -> SparsePoly {
        let mut acc = SparsePoly::one(self.modulus);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("same modulus");
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base).expect("same modulus");
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var` (0 = x .. 3 = w).
    pub fn derivative(&self, var: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(self.modulus);
        for (e, c) in self.terms() {
            let n = e.0[var];
            if n == 0 {
                continue;
            }
            let mut d = e.0;
            d[var] -= 1;
            out.add_term(Exponent4(d), c * self.modulus.elem(u64::from(n)));
        }
        out
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if e == Exponent4::default() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}·{e}")?;
            }
        }
        Ok(())
    }
}
