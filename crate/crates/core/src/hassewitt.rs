//! Superspeciality of `C_p` from the coefficients of sixteen monomials of
//! degree `5(p-1)` in `(QP)^(p-1)`.
//!
//! Writing `QP = x^3z^2 + y^3z^2 + 2x^3yw + 2y^4w + z^2w^3 + 2yw^4` and
//! expanding multinomially, the coefficient of `x^i y^j z^k w^l` is
//!
//! ```text
//!   sum over (a,..,f) in S(i,j,k,l) of 2^(c+d+f) * (p-1)! / (a! b! c! d! e! f!)
//! ```
//!
//! where `S(i,j,k,l)` collects the `(a,..,f) in [0,p-1]^6` with
//!
//! ```text
//!   a + b + c + d + e + f = p - 1
//!   3a + 3c               = i
//!   3b + c + 4d + f       = j
//!   2a + 2b + 2e          = k
//!   c + d + 3e + 4f       = l
//! ```
//!
//! [`coefficient_via_enumeration`] walks that solution set directly.
//! [`ExpansionOracle`] multiplies the polynomial out and is only meant for
//! small `p`, as an independent check.

use std::fmt;

use rayon::prelude::*;

use crate::error::CriterionError;
use crate::ff::{FieldElement, PrimeModulus};
use crate::geometry::CurveDefinition;
use crate::mpoly::{Exponent4, SparsePoly};

/// Largest `p` for which [`ExpansionOracle`] expands `(QP)^(p-1)` by default.
pub const DEFAULT_EXPANSION_GATE: u64 = 13;

/// Exponents `(a, b, c, d, e, f)` of the six terms of `QP`, in the order
/// `x^3z^2, y^3z^2, 2x^3yw, 2y^4w, z^2w^3, 2yw^4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionTuple(pub [u64; 6]);

impl SolutionTuple {
    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Number of factors carrying a coefficient 2, i.e. `c + d + f`.
    pub fn twos(&self) -> u64 {
        self.0[2] + self.0[3] + self.0[5]
    }

    /// The monomial this tuple contributes to.
    pub fn exponent(&self) -> Exponent4 {
        let [a, b, c, d, e, f] = self.0;
        let ev = [
            3 * a + 3 * c,
            3 * b + c + 4 * d + f,
            2 * a + 2 * b + 2 * e,
            c + d + 3 * e + 4 * f,
        ];
        Exponent4(ev.map(|v| v as u32))
    }
}

impl fmt::Display for SolutionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, g] = self.0;
        write!(f, "({a},{b},{c},{d},{e},{g})")
    }
}

/// The sixteen exponent vectors of the criterion, row-major: row `r` doubles
/// variable `r`, column `c` lowers variable `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetMonomialSet {
    pub p: PrimeModulus,
    pub entries: [Exponent4; 16],
}

pub fn target_monomials(p: PrimeModulus) -> Result<TargetMonomialSet, CriterionError> {
    if p.get() <= 3 {
        return Err(CriterionError::PrimeTooSmall(p.get()));
    }
    let n = p.get() as u32;
    let mut entries = [Exponent4::default(); 16];
    for row in 0..4 {
        for col in 0..4 {
            let mut e = [n - 1; 4];
            if row == col {
                e[row] = 2 * (n - 1);
            } else {
                e[row] = 2 * n - 1;
                e[col] = n - 2;
            }
            entries[4 * row + col] = Exponent4(e);
        }
    }
    Ok(TargetMonomialSet { p, entries })
}

/// All of `S(i,j,k,l)`, sorted.
///
/// `e + f` is fixed by `6(e+f) = l - (i + j - 3(p-1))` and `c + d` by
/// `c + d = i + j - 3(p-1) + 3e + 2f`, so only `f` and `d` are free; `b` and
/// `a` follow from the `j` equation and the total.
pub fn enumerate_solutions(p: PrimeModulus, ev: Exponent4) -> Vec<SolutionTuple> {
    let n = p.get() as i64 - 1;
    let [i, j, k, l] = ev.0.map(i64::from);
    let mut out = Vec::new();
    if k % 2 != 0 || i % 3 != 0 {
        return out;
    }
    let shift = i + j - 3 * n;
    let six_s = l - shift;
    if six_s < 0 || six_s % 6 != 0 {
        return out;
    }
    let s = six_s / 6;
    if s > n {
        return out;
    }
    for f in 0..=s {
        let e = s - f;
        let u = shift + 3 * e + 2 * f;
        if u < 0 || u > n {
            continue;
        }
        for d in 0..=u {
            let c = u - d;
            let three_b = j - c - 4 * d - f;
            if three_b < 0 || three_b % 3 != 0 {
                continue;
            }
            let b = three_b / 3;
            let a = n - (b + c + d + e + f);
            let t = [a, b, c, d, e, f];
            if t.iter().any(|&v| v < 0 || v > n) {
                continue;
            }
            if 3 * a + 3 * c != i || 2 * a + 2 * b + 2 * e != k || c + d + 3 * e + 4 * f != l {
                continue;
            }
            out.push(SolutionTuple(t.map(|v| v as u64)));
        }
    }
    out.sort_unstable();
    out
}

/// Factorial and power-of-two tables mod `p`, shared by every coefficient
/// computed for one prime.
#[derive(Clone, Debug)]
pub struct CriterionEngine {
    p: PrimeModulus,
    factorial: Vec<u64>,
    inv_factorial: Vec<u64>,
    pow2: Vec<u64>,
}

impl CriterionEngine {
    pub fn new(p: PrimeModulus) -> Self {
        let n = p.get() as usize;
        let mut factorial = vec![1u64; n];
        for m in 1..n {
            factorial[m] = p.mul_raw(factorial[m - 1], m as u64);
        }
        let mut inv_factorial = vec![1u64; n];
        inv_factorial[n - 1] = p.pow_raw(factorial[n - 1], p.get() - 2);
        for m in (1..n).rev() {
            inv_factorial[m - 1] = p.mul_raw(inv_factorial[m], m as u64);
        }
        let mut pow2 = vec![1u64; n];
        for m in 1..n {
            pow2[m] = p.add_raw(pow2[m - 1], pow2[m - 1]);
        }
        CriterionEngine {
            p,
            factorial,
            inv_factorial,
            pow2,
        }
    }

    pub fn prime(&self) -> PrimeModulus {
        self.p
    }

    /// `(p-1)! / (a! b! c! d! e! f!) mod p`. Every argument is below `p`, so
    /// the factorials are units and no carry analysis is needed.
    pub fn multinomial(&self, t: &SolutionTuple) -> Result<FieldElement, CriterionError> {
        let expected = self.p.get() - 1;
        if t.sum() != expected {
            return Err(CriterionError::BadTupleSum {
                sum: t.sum(),
                expected,
            });
        }
        let v =
            t.0.iter()
                .fold(self.factorial[expected as usize], |acc, &m| {
                    self.p.mul_raw(acc, self.inv_factorial[m as usize])
                });
        Ok(self.p.elem(v))
    }

    /// Coefficient of `x^i y^j z^k w^l` in `(QP)^(p-1)`.
    pub fn coefficient(&self, ev: Exponent4) -> FieldElement {
        enumerate_solutions(self.p, ev)
            .iter()
            .fold(self.p.zero(), |acc, t| {
                let m = self.multinomial(t).expect("solutions sum to p - 1");
                acc + m * self.p.elem(self.pow2[t.twos() as usize])
            })
    }
}

pub fn multinomial_mod_p(
    p: PrimeModulus,
    t: &SolutionTuple,
) -> Result<FieldElement, CriterionError> {
    CriterionEngine::new(p).multinomial(t)
}

pub fn coefficient_via_enumeration(p: PrimeModulus, ev: Exponent4) -> FieldElement {
    CriterionEngine::new(p).coefficient(ev)
}

/// `(QP)^(p-1)` multiplied out in full.
#[derive(Clone, Debug)]
pub struct ExpansionOracle {
    expanded: SparsePoly,
}

impl ExpansionOracle {
    pub fn new(p: PrimeModulus) -> Result<Self, CriterionError> {
        Self::with_gate(p, DEFAULT_EXPANSION_GATE)
    }

    pub fn with_gate(p: PrimeModulus, gate: u64) -> Result<Self, CriterionError> {
        if p.get() > gate {
            return Err(CriterionError::ExpansionTooLarge { p: p.get(), gate });
        }
        let qp = CurveDefinition::new(p).product();
        Ok(ExpansionOracle {
            expanded: qp.pow(p.get() - 1),
        })
    }

    pub fn polynomial(&self) -> &SparsePoly {
        &self.expanded
    }

    pub fn coefficient(&self, ev: Exponent4) -> FieldElement {
        self.expanded.coeff_of(ev)
    }
}

pub fn coefficient_via_expansion(
    p: PrimeModulus,
    ev: Exponent4,
) -> Result<FieldElement, CriterionError> {
    Ok(ExpansionOracle::new(p)?.coefficient(ev))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperspecialReport {
    pub p: PrimeModulus,
    /// The sixteen targets with their coefficients, in criterion order.
    pub coefficients: Vec<(Exponent4, FieldElement)>,
    pub superspecial: bool,
    /// `p = 2 mod 3`.
    pub predicted: bool,
    pub agrees: bool,
}

impl SuperspecialReport {
    pub fn nonzero_count(&self) -> usize {
        self.coefficients
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .count()
    }
}

pub fn is_superspecial(p: PrimeModulus) -> Result<SuperspecialReport, CriterionError> {
    if p.get() == 3 {
        return Err(CriterionError::Singular);
    }
    let targets = target_monomials(p)?;
    let engine = CriterionEngine::new(p);
    let coefficients: Vec<_> = targets
        .entries
        .par_iter()
        .map(|&ev| (ev, engine.coefficient(ev)))
        .collect();
    let superspecial = coefficients.iter().all(|(_, c)| c.is_zero());
    let predicted = p.residue_mod_3() == 2;
    Ok(SuperspecialReport {
        p,
        coefficients,
        superspecial,
        predicted,
        agrees: superspecial == predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    /// Sextuple brute force over `[0, p-1]^6`.
    fn brute_solutions(p: u64, ev: Exponent4) -> Vec<SolutionTuple> {
        let n = p - 1;
        let mut out = Vec::new();
        for a in 0..=n {
            for b in 0..=n - a {
                for c in 0..=n - a - b {
                    for d in 0..=n - a - b - c {
                        for e in 0..=n - a - b - c - d {
                            let f = n - a - b - c - d - e;
                            let t = SolutionTuple([a, b, c, d, e, f]);
                            if t.exponent() == ev {
                                out.push(t);
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn targets_p5_match_table() {
        // transcribed row by row
        let expected = [
            [8, 4, 4, 4],
            [9, 3, 4, 4],
            [9, 4, 3, 4],
            [9, 4, 4, 3],
            [3, 9, 4, 4],
            [4, 8, 4, 4],
            [4, 9, 3, 4],
            [4, 9, 4, 3],
            [3, 4, 9, 4],
            [4, 3, 9, 4],
            [4, 4, 8, 4],
            [4, 4, 9, 3],
            [3, 4, 4, 9],
            [4, 3, 4, 9],
            [4, 4, 3, 9],
            [4, 4, 4, 8],
        ];
        let t = target_monomials(fp(5)).unwrap();
        assert_eq!(t.entries, expected.map(Exponent4));
    }

    #[test]
    fn targets_degree_and_bounds() {
        let t = target_monomials(fp(7)).unwrap();
        assert!(t.entries.iter().all(|e| e.degree() == 30));
        assert_eq!(t.entries[0], Exponent4::new(12, 6, 6, 6));
        assert_eq!(t.entries[15], Exponent4::new(6, 6, 6, 12));
        assert_eq!(
            target_monomials(fp(3)),
            Err(CriterionError::PrimeTooSmall(3))
        );
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_solutions(fp(7), Exponent4::new(6, 6, 12, 6)),
            vec![SolutionTuple([2, 2, 0, 0, 2, 0])]
        );
        for ev in target_monomials(fp(5)).unwrap().entries {
            assert!(enumerate_solutions(fp(5), ev).is_empty());
        }
        assert!(enumerate_solutions(fp(7), Exponent4::new(6, 6, 11, 7)).is_empty());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for p in [5u64, 7] {
            let n = p - 1;
            // every monomial that occurs, plus the targets and some misses
            let mut evs: Vec<Exponent4> = Vec::new();
            for a in 0..=n {
                for b in 0..=n - a {
                    for c in 0..=n - a - b {
                        for d in 0..=n - a - b - c {
                            for e in 0..=n - a - b - c - d {
                                let f = n - a - b - c - d - e;
                                evs.push(SolutionTuple([a, b, c, d, e, f]).exponent());
                            }
                        }
                    }
                }
            }
            evs.extend(target_monomials(fp(p)).unwrap().entries);
            evs.push(Exponent4::new(1, 2, 3, 4));
            evs.push(Exponent4::new(0, 0, 0, 0));
            evs.sort_unstable();
            evs.dedup();
            for ev in evs {
                assert_eq!(
                    enumerate_solutions(fp(p), ev),
                    brute_solutions(p, ev),
                    "p={p} ev={ev:?}"
                );
            }
        }
    }

    #[test]
    fn multinomial_values() {
        // 6! / (2! 2! 2!) = 90 = 6 mod 7
        assert_eq!(
            multinomial_mod_p(fp(7), &SolutionTuple([2, 2, 0, 0, 2, 0]))
                .unwrap()
                .value(),
            90 % 7
        );
        assert_eq!(
            multinomial_mod_p(fp(5), &SolutionTuple([4, 0, 0, 0, 0, 0]))
                .unwrap()
                .value(),
            1
        );
        assert_eq!(
            multinomial_mod_p(fp(11), &SolutionTuple([10, 0, 0, 0, 0, 0]))
                .unwrap()
                .value(),
            1
        );
        assert_eq!(
            multinomial_mod_p(fp(7), &SolutionTuple([1, 0, 0, 0, 0, 0])),
            Err(CriterionError::BadTupleSum {
                sum: 1,
                expected: 6
            })
        );
    }

    #[test]
    fn multinomial_against_integer_factorials() {
        let fact = |m: u64| (1..=m).product::<u64>().max(1);
        for p in [5u64, 7, 11, 13] {
            let engine = CriterionEngine::new(fp(p));
            let n = p - 1;
            for a in 0..=n {
                for b in 0..=n - a {
                    let t = SolutionTuple([a, b, n - a - b, 0, 0, 0]);
                    let exact = fact(n) / (fact(a) * fact(b) * fact(n - a - b));
                    assert_eq!(engine.multinomial(&t).unwrap().value(), exact % p);
                }
            }
        }
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(
            coefficient_via_enumeration(fp(7), Exponent4::new(6, 6, 12, 6)).value(),
            6
        );
        assert!(coefficient_via_enumeration(fp(5), Exponent4::new(8, 4, 4, 4)).is_zero());
        assert!(coefficient_via_enumeration(fp(7), Exponent4::new(6, 6, 11, 7)).is_zero());
        assert_eq!(
            coefficient_via_expansion(fp(7), Exponent4::new(6, 6, 12, 6))
                .unwrap()
                .value(),
            6
        );
        assert!(coefficient_via_expansion(fp(5), Exponent4::new(8, 4, 4, 4))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn expansion_gate() {
        assert_eq!(
            coefficient_via_expansion(fp(17), Exponent4::new(0, 0, 0, 0)).unwrap_err(),
            CriterionError::ExpansionTooLarge { p: 17, gate: 13 }
        );
        assert!(ExpansionOracle::with_gate(fp(17), 17).is_ok());
    }

    #[test]
    fn verdicts() {
        assert!(is_superspecial(fp(5)).unwrap().superspecial);
        assert!(!is_superspecial(fp(7)).unwrap().superspecial);
        assert!(is_superspecial(fp(11)).unwrap().superspecial);
        let r37 = is_superspecial(fp(37)).unwrap();
        assert!(!r37.superspecial && r37.agrees);
        assert_eq!(is_superspecial(fp(3)), Err(CriterionError::Singular));
    }

    #[test]
    fn lemma_shapes_for_small_primes() {
        for p in (5..=97u64).filter(|&p| crate::ff::is_prime(p)) {
            let t = target_monomials(fp(p)).unwrap();
            if p % 3 == 2 {
                assert!(t
                    .entries
                    .iter()
                    .all(|&e| enumerate_solutions(fp(p), e).is_empty()));
            } else {
                let n = p - 1;
                let ev = Exponent4::new(n as u32, n as u32, 2 * n as u32, n as u32);
                let third = n / 3;
                assert_eq!(
                    enumerate_solutions(fp(p), ev),
                    vec![SolutionTuple([third, third, 0, 0, third, 0])]
                );
                assert!(!coefficient_via_enumeration(fp(p), ev).is_zero());
            }
        }
    }
}
