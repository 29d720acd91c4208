//! `#C_p(F_{p^2})` and its position relative to the Hasse-Weil interval.
//!
//! `Q = 2yw + z^2` does not involve `x`, so `V(Q)` is a cone over the conic
//! `2yw + z^2 = 0` in the `(y:z:w)`-plane with vertex `(1:0:0:0)`, which is
//! not on the curve. Each of the `q + 1` conic points `(y:z:w)` contributes
//! the number of cube roots of `-(y^3 + w^3)` in `F_{p^2}`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CountError;
use crate::ff::{make_ext_field, ExtElement, ExtField, PrimeModulus};

/// Genus of a smooth complete intersection of a quadric and a cubic in `P^3`.
pub const GENUS: u64 = 4;

/// Largest `p` for which [`count_points_brute`] runs by default.
pub const DEFAULT_BRUTE_GATE: u64 = 13;

/// Build a full cube table when `q` is at most this.
const CUBE_TABLE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Maximal,
    Minimal,
    Neither,
    /// `p = 3`: the zero locus is singular, so no bound applies.
    Singular,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Maximal => "maximal",
            Classification::Minimal => "minimal",
            Classification::Neither => "neither",
            Classification::Singular => "singular",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Fast,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointCountRecord {
    pub p: PrimeModulus,
    pub q: u64,
    pub count: u64,
    pub hw_upper: i64,
    pub hw_lower: i64,
    pub classification: Classification,
    pub method: CountMethod,
}

impl PointCountRecord {
    /// A record with bounds filled in and the classification still
    /// `Neither`; run it through [`classify`].
    pub fn unclassified(p: PrimeModulus, count: u64, method: CountMethod) -> Self {
        let (hw_lower, hw_upper) = hasse_weil_bounds(p);
        PointCountRecord {
            p,
            q: p.get() * p.get(),
            count,
            hw_upper,
            hw_lower,
            classification: Classification::Neither,
            method,
        }
    }
}

/// `(q + 1 - 2g sqrt(q), q + 1 + 2g sqrt(q))` for `q = p^2`, `g = 4`.
pub fn hasse_weil_bounds(p: PrimeModulus) -> (i64, i64) {
    let p = p.get() as i64;
    let base = p * p + 1;
    let spread = 2 * GENUS as i64 * p;
    (base - spread, base + spread)
}

pub fn classify(record: PointCountRecord) -> Result<PointCountRecord, CountError> {
    let mut out = record;
    if record.p.get() == 3 {
        out.classification = Classification::Singular;
        return Ok(out);
    }
    let count = record.count as i64;
    if count < record.hw_lower || count > record.hw_upper {
        return Err(CountError::OutsideHasseWeil {
            p: record.p.get(),
            count: record.count,
            lower: record.hw_lower,
            upper: record.hw_upper,
        });
    }
    out.classification = if count == record.hw_upper {
        Classification::Maximal
    } else if count == record.hw_lower {
        Classification::Minimal
    } else {
        Classification::Neither
    };
    Ok(out)
}

/// Representatives `(y, z, w)` of the `q + 1` points of `2yw + z^2 = 0`:
/// `(1, 0, 0)` and `(-t^2/2, t, 1)` for every `t`.
pub fn conic_points(
    field: &ExtField,
) -> impl Iterator<Item = (ExtElement, ExtElement, ExtElement)> + '_ {
    let p = field.prime();
    let neg_half = field.base(-p.elem(2).inv().expect("p odd"));
    std::iter::once((field.one(), field.zero(), field.zero())).chain(
        field
            .elements()
            .map(move |t| (neg_half * t * t, t, field.one())),
    )
}

/// Number of cube roots for every element, indexed by [`ExtField::index_of`].
fn cube_root_table(field: &ExtField) -> Vec<u8> {
    let mut table = vec![0u8; field.order() as usize];
    for x in field.elements() {
        table[field.index_of(x * x * x)] += 1;
    }
    table
}

/// Counts via the conic parametrisation in `O(q)`; errors only if the
/// count lands outside the Hasse-Weil interval.
pub fn count_points_fast(p: PrimeModulus) -> Result<PointCountRecord, CountError> {
    let field = make_ext_field(p);
    let table = (field.order() <= CUBE_TABLE_LIMIT).then(|| cube_root_table(&field));
    let roots = |a: ExtElement| -> u64 {
        match &table {
            Some(t) => u64::from(t[field.index_of(a)]),
            None => u64::from(field.cube_root_count(a)),
        }
    };
    let rhs = |y: ExtElement, w: ExtElement| -(y * y * y + w * w * w);

    // vertex of the conic parametrisation: (y:z:w) = (1:0:0)
    let at_infinity = roots(rhs(field.one(), field.zero()));
    let neg_half = field.base(-p.elem(2).inv().expect("p odd"));
    let affine: u64 = (0..field.order() as usize)
        .into_par_iter()
        .map(|idx| {
            let t = field.from_index(idx);
            roots(rhs(neg_half * t * t, field.one()))
        })
        .sum();
    classify(PointCountRecord::unclassified(
        p,
        at_infinity + affine,
        CountMethod::Fast,
    ))
}

pub fn count_points_brute(p: PrimeModulus) -> Result<PointCountRecord, CountError> {
    count_points_brute_with_gate(p, DEFAULT_BRUTE_GATE)
}

/// Enumerates `P^3(F_{p^2})` with the first nonzero coordinate set to 1.
pub fn count_points_brute_with_gate(
    p: PrimeModulus,
    gate: u64,
) -> Result<PointCountRecord, CountError> {
    if p.get() > gate {
        return Err(CountError::BruteTooLarge { p: p.get(), gate });
    }
    let field = make_ext_field(p);
    let two = field.base(p.elem(2));
    let on_curve = |x: ExtElement, y: ExtElement, z: ExtElement, w: ExtElement| {
        (two * y * w + z * z).is_zero() && (x * x * x + y * y * y + w * w * w).is_zero()
    };
    let q = field.order() as usize;
    let (zero, one) = (field.zero(), field.one());

    let leading_x: u64 = (0..q)
        .into_par_iter()
        .map(|iy| {
            let y = field.from_index(iy);
            let mut n = 0;
            for z in field.elements() {
                for w in field.elements() {
                    if on_curve(one, y, z, w) {
                        n += 1;
                    }
                }
            }
            n
        })
        .sum();
    let mut rest = 0u64;
    for z in field.elements() {
        for w in field.elements() {
            rest += u64::from(on_curve(zero, one, z, w));
        }
    }
    for w in field.elements() {
        rest += u64::from(on_curve(zero, zero, one, w));
    }
    rest += u64::from(on_curve(zero, zero, zero, one));

    classify(PointCountRecord::unclassified(
        p,
        leading_x + rest,
        CountMethod::Brute,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn fast_counts_from_table() {
        for (p, n) in [(3, 10), (5, 66), (7, 48), (47, 2586)] {
            assert_eq!(count_points_fast(fp(p)).unwrap().count, n, "p = {p}");
        }
    }

    #[test]
    fn brute_counts() {
        for (p, n) in [(3, 10), (5, 66), (7, 48)] {
            let r = count_points_brute(fp(p)).unwrap();
            assert_eq!(r.count, n);
            assert_eq!(r.method, CountMethod::Brute);
        }
        assert_eq!(
            count_points_brute(fp(17)).unwrap_err(),
            CountError::BruteTooLarge { p: 17, gate: 13 }
        );
    }

    #[test]
    fn classification_examples() {
        let c =
            |p: u64, n: u64| classify(PointCountRecord::unclassified(fp(p), n, CountMethod::Fast));
        assert_eq!(c(5, 66).unwrap().classification, Classification::Maximal);
        let r7 = c(7, 48).unwrap();
        assert_eq!((r7.hw_lower, r7.hw_upper), (-6, 106));
        assert_eq!(r7.classification, Classification::Neither);
        assert_eq!(c(11, 210).unwrap().classification, Classification::Maximal);
        assert_eq!(
            c(5, 67).unwrap_err(),
            CountError::OutsideHasseWeil {
                p: 5,
                count: 67,
                lower: -14,
                upper: 66
            }
        );
        assert_eq!(
            c(11, 122 - 88).unwrap().classification,
            Classification::Minimal
        );
        assert!(c(11, 211).is_err());
        assert_eq!(c(3, 10).unwrap().classification, Classification::Singular);
    }

    #[test]
    fn bounds_width() {
        for p in [3, 5, 7, 101, 269] {
            let (lo, hi) = hasse_weil_bounds(fp(p));
            assert_eq!(hi - lo, 16 * p as i64);
        }
    }

    #[test]
    fn conic_has_q_plus_one_distinct_points() {
        for p in [3, 5, 7, 11] {
            let field = make_ext_field(fp(p));
            let pts: Vec<_> = conic_points(&field).collect();
            assert_eq!(pts.len() as u64, field.order() + 1);
            let two = field.base(fp(p).elem(2));
            for &(y, z, w) in &pts {
                assert!((two * y * w + z * z).is_zero());
                assert!(!(y.is_zero() && z.is_zero() && w.is_zero()));
            }
            // normalise projectively and check distinctness
            let mut normalised: Vec<_> = pts
                .iter()
                .map(|&(y, z, w)| {
                    let lead = [y, z, w].into_iter().find(|v| !v.is_zero()).unwrap();
                    let inv = lead.inv().unwrap();
                    [y * inv, z * inv, w * inv].map(|v| field.index_of(v))
                })
                .collect();
            normalised.sort_unstable();
            normalised.dedup();
            assert_eq!(normalised.len(), pts.len());
        }
    }

    #[test]
    fn table_and_exponentiation_paths_agree() {
        for p in [5, 7, 11] {
            let field = make_ext_field(fp(p));
            let table = cube_root_table(&field);
            for a in field.elements() {
                assert_eq!(
                    u32::from(table[field.index_of(a)]),
                    field.cube_root_count(a)
                );
            }
        }
    }
}
