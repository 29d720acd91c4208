//! Defining equations of `C_p = V(Q, P)`, the Jacobian minors, and the
//! explicit radical-membership certificate showing the curve is smooth for
//! `p > 3`.

use std::fmt;

use serde::Serialize;

use crate::error::GeometryError;
use crate::ff::{FieldElement, PrimeModulus};
use crate::mpoly::SparsePoly;

/// `Q = 2yw + z^2` and `P = x^3 + y^3 + w^3` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveDefinition {
    pub p: PrimeModulus,
    pub quadric: SparsePoly,
    pub cubic: SparsePoly,
}

impl CurveDefinition {
    pub fn new(p: PrimeModulus) -> Self {
        let quadric = SparsePoly::from_terms(p, [([0, 1, 0, 1], 2), ([0, 0, 2, 0], 1)]);
        let cubic =
            SparsePoly::from_terms(p, [([3, 0, 0, 0], 1), ([0, 3, 0, 0], 1), ([0, 0, 0, 3], 1)]);
        CurveDefinition { p, quadric, cubic }
    }

    /// The product `QP`.
    pub fn product(&self) -> SparsePoly {
        self.quadric.try_mul(&self.cubic).expect("same modulus")
    }
}

/// The six 2x2 minors of the Jacobian of `(P, Q)`, in the variable-pair
/// order `(x,y), (x,z), (x,w), (y,z), (y,w), (z,w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorSet {
    pub minors: [SparsePoly; 6],
}

pub const MINOR_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl MinorSet {
    /// `f_n` with 1-based `n`, matching the usual numbering.
    pub fn f(&self, n: usize) -> &SparsePoly {
        &self.minors[n - 1]
    }

    pub fn all_zero(&self) -> bool {
        self.minors.iter().all(SparsePoly::is_zero)
    }
}

/// `dP/du * dQ/dv - dP/dv * dQ/du`.
pub fn jacobian_minor(defn: &CurveDefinition, u: usize, v: usize) -> SparsePoly {
    let (pu, pv) = (defn.cubic.derivative(u), defn.cubic.derivative(v));
    let (qu, qv) = (defn.quadric.derivative(u), defn.quadric.derivative(v));
    pu.try_mul(&qv)
        .and_then(|a| a.try_sub(&pv.try_mul(&qu)?))
        .expect("same modulus")
}

pub fn jacobian_minors(defn: &CurveDefinition) -> MinorSet {
    MinorSet {
        minors: MINOR_PAIRS.map(|(u, v)| jacobian_minor(defn, u, v)),
    }
}

/// Sign in front of the `6^{-1} y f_5` term of the `y` identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    /// Which variable the identity puts in the radical.
    pub variable: char,
    pub combination: String,
    /// The unit times pure power the combination must equal.
    pub target: SparsePoly,
    /// `combination - target`; zero when verified.
    pub residual: SparsePoly,
    /// Only set for the `y` identity.
    pub f5_sign: Option<Sign>,
    /// Value of the `y` combination with the `-` sign on `f_5`, kept so the
    /// report can show both variants.
    pub minus_variant: Option<SparsePoly>,
}

impl IdentityCheck {
    pub fn verified(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct CertificateReport {
    pub p: PrimeModulus,
    pub identities: Vec<IdentityCheck>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(IdentityCheck::verified)
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "smoothness certificate for p = {}", self.p)?;
        for id in &self.identities {
            writeln!(
                f,
                "  {}: {} = {}  residual {}  [{}]",
                id.variable,
                id.combination,
                id.target,
                id.residual,
                if id.verified() { "ok" } else { "FAILED" }
            )?;
            if let Some(minus) = &id.minus_variant {
                writeln!(
                    f,
                    "     with '-' on the f5 term the combination is {minus}; '{}' sign used",
                    id.f5_sign.expect("set together")
                )?;
            }
        }
        write!(
            f,
            "x, y, z, w in rad<P, Q, J(P,Q)>: {}",
            if self.passed() {
                "verified"
            } else {
                "NOT verified"
            }
        )
    }
}

/// Checks the four combinations putting `x^5`, `2y^4`, `z^5`, `2w^4` in the
/// ideal `<P, Q, J(P,Q)>`.
pub fn verify_smoothness_certificate(
    defn: &CurveDefinition,
) -> Result<CertificateReport, GeometryError> {
    let p = defn.p;
    if p.get() <= 3 {
        return Err(GeometryError::CharacteristicTooSmall(p.get()));
    }
    let m = jacobian_minors(defn);
    let inv6 = p.elem(6).inv().expect("p > 3");
    let inv3 = p.elem(3).inv().expect("p > 3");
    let mono = |c: i64, e: [u32; 4]| SparsePoly::monomial(p, c, e);
    let mono_c = |c: FieldElement, e: [u32; 4]| SparsePoly::monomial(p, 1, e).scale(c);
    let mul = |a: &SparsePoly, b: &SparsePoly| a.try_mul(b).expect("same modulus");
    let sum = |parts: &[SparsePoly]| {
        parts.iter().fold(SparsePoly::zero(p), |acc, t| {
            acc.try_add(t).expect("same modulus")
        })
    };
    let check = |variable, combination: &str, lhs: SparsePoly, target: SparsePoly| IdentityCheck {
        variable,
        combination: combination.to_string(),
        residual: lhs.try_sub(&target).expect("same modulus"),
        target,
        f5_sign: None,
        minus_variant: None,
    };

    let x_lhs = sum(&[
        mul(&mono(1, [2, 0, 0, 0]), &defn.cubic),
        mul(&mono_c(-inv6, [0, 2, 0, 0]), m.f(3)),
        mul(&mono_c(-inv6, [0, 0, 0, 2]), m.f(1)),
    ]);
    let x_id = check(
        'x',
        "x^2 P - 6^-1 y^2 f3 - 6^-1 w^2 f1",
        x_lhs,
        mono(1, [5, 0, 0, 0]),
    );

    let y_base = sum(&[
        mul(&mono(1, [0, 1, 0, 0]), &defn.cubic),
        mul(&mono_c(-inv6, [1, 0, 0, 0]), m.f(3)),
    ]);
    let y_f5 = mul(&mono_c(inv6, [0, 1, 0, 0]), m.f(5));
    let y_target = mono(2, [0, 4, 0, 0]);
    let y_minus = y_base.try_sub(&y_f5).expect("same modulus");
    let y_plus = y_base.try_add(&y_f5).expect("same modulus");
    let (sign, y_lhs) = if y_minus == y_target {
        (Sign::Minus, y_minus.clone())
    } else {
        (Sign::Plus, y_plus)
    };
    let mut y_id = check(
        'y',
        &format!("y P - 6^-1 x f3 {sign} 6^-1 y f5"),
        y_lhs,
        y_target,
    );
    y_id.f5_sign = Some(sign);
    y_id.minus_variant = Some(y_minus);

    let z_lhs = sum(&[
        mul(
            &SparsePoly::from_terms(p, [([0, 1, 1, 1], -2), ([0, 0, 3, 0], 1)]),
            &defn.quadric,
        ),
        mul(&mono_c(p.elem(2) * inv3, [0, 0, 0, 2]), m.f(4)),
    ]);
    let z_id = check(
        'z',
        "(-2yzw + z^3) Q + 2*3^-1 w^2 f4",
        z_lhs,
        mono(1, [0, 0, 5, 0]),
    );

    let w_lhs = sum(&[
        mul(&mono(1, [0, 0, 0, 1]), &defn.cubic),
        mul(&mono_c(-inv6, [1, 0, 0, 0]), m.f(1)),
        mul(&mono_c(-inv6, [0, 0, 0, 1]), m.f(5)),
    ]);
    let w_id = check(
        'w',
        "w P - 6^-1 x f1 - 6^-1 w f5",
        w_lhs,
        mono(2, [0, 0, 0, 4]),
    );

    Ok(CertificateReport {
        p,
        identities: vec![x_id, y_id, z_id, w_id],
    })
}
