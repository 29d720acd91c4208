//! Superspeciality and rational-point counts for the genus-4 curves
//!
//! ```text
//!   C_p : x^3 + y^3 + w^3 = 2yw + z^2 = 0   in P^3,  p > 2.
//! ```
//!
//! * [`hassewitt`] decides superspeciality from sixteen coefficients of
//!   `(QP)^(p-1)`, by enumeration and (for small `p`) by literal expansion.
//! * [`geometry`] checks the smoothness certificate for `p > 3`.
//! * [`counting`] counts `#C_p(F_{p^2})` and compares it with the
//!   Hasse-Weil bounds.
//! * [`survey`] drives all of the above over ranges of primes.

pub mod counting;
pub mod error;
pub mod ff;
pub mod geometry;
pub mod hassewitt;
pub mod mpoly;
pub mod survey;

pub use counting::{
    classify, count_points_brute, count_points_fast, Classification, CountMethod, PointCountRecord,
};
pub use error::{CountError, CriterionError, FieldError, GeometryError, PolyError, SurveyError};
pub use ff::{make_ext_field, ExtElement, ExtField, FieldElement, PrimeModulus};
pub use geometry::{
    jacobian_minors, verify_smoothness_certificate, CertificateReport, CurveDefinition, MinorSet,
};
pub use hassewitt::{
    coefficient_via_enumeration, coefficient_via_expansion, enumerate_solutions, is_superspecial,
    multinomial_mod_p, target_monomials, ExpansionOracle, SolutionTuple, SuperspecialReport,
    TargetMonomialSet,
};
pub use mpoly::{Exponent4, SparsePoly};
pub use survey::{
    density_scan, emit, run_survey, run_survey_with, DensityReport, OutputFormat, SurveyOptions,
    SurveyRow,
};
