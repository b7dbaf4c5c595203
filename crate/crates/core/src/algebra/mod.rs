//! Exact arithmetic: finite fields, rationals, cyclotomic numbers, Laurent series.

pub mod cyclotomic;
pub mod finite_field;
pub mod laurent;
pub mod linalg;

pub use cyclotomic::Cyclotomic;
pub use finite_field::{FiniteField, Fq};
pub use laurent::LaurentSeries;

/// Arbitrary-precision reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("field of order {p}^{n} exceeds the supported bound 2^16")]
    FieldTooLarge { p: u32, n: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("element code {code} is out of range for a field of order {order}")]
    ElementOutOfRange { code: u32, order: u32 },
    #[error("operands live over different base fields")]
    FieldMismatch,
    #[error("division by a series that vanishes to precision O(t^{precision})")]
    DivisionByZeroToPrecision { precision: i64 },
    #[error("insufficient precision (known to O(t^{precision}))")]
    InsufficientPrecision { precision: i64 },
    #[error("substitution requires an argument of positive valuation")]
    InvalidSubstitution,
}

impl AlgebraError {
    pub fn code(&self) -> &'static str {
        match self {
            AlgebraError::NotPrime(_) => "algebra.not_prime",
            AlgebraError::FieldTooLarge { .. } => "algebra.field_too_large",
            AlgebraError::InvalidModulus(_) => "algebra.invalid_modulus",
            AlgebraError::ElementOutOfRange { .. } => "algebra.element_out_of_range",
            AlgebraError::FieldMismatch => "algebra.field_mismatch",
            AlgebraError::DivisionByZeroToPrecision { .. } => "algebra.division_by_zero_to_precision",
            AlgebraError::InsufficientPrecision { .. } => "algebra.insufficient_precision",
            AlgebraError::InvalidSubstitution => "algebra.invalid_substitution",
        }
    }
}
