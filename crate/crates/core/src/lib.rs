//! Ramification invariants of Galois extensions of `F_q((t))`, Artin and Swan
//! characters, and Euler characteristics of covers of curves.

pub mod algebra;
pub mod curves;
pub mod groups;
pub mod local_field;
pub mod ramification;
pub mod swan;
pub mod verify;

use algebra::AlgebraError;
use curves::CurveError;
use groups::GroupError;
use local_field::LocalFieldError;
use ramification::RamificationError;
use swan::SwanError;

/// Any error raised by the library, with a module-qualified code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    LocalField(#[from] LocalFieldError),
    #[error(transparent)]
    Ramification(#[from] RamificationError),
    #[error(transparent)]
    Swan(#[from] SwanError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Algebra(e) => e.code(),
            Error::Group(e) => e.code(),
            Error::LocalField(e) => e.code(),
            Error::Ramification(e) => e.code(),
            Error::Swan(e) => e.code(),
            Error::Curve(e) => e.code(),
        }
    }

    /// Whether rerunning with more precision could help.
    pub fn is_insufficient_precision(&self) -> bool {
        match self {
            Error::Algebra(e) => matches!(e, AlgebraError::InsufficientPrecision { .. } | AlgebraError::DivisionByZeroToPrecision { .. }),
            Error::LocalField(e) => e.is_insufficient_precision(),
            Error::Ramification(RamificationError::LocalField(e)) => e.is_insufficient_precision(),
            _ => false,
        }
    }

    /// Two independent computations of the same quantity disagreed.
    pub fn is_mismatch(&self) -> bool {
        self.code().ends_with("cross_check_mismatch") || self.code().ends_with("hasse_arf_violation")
    }
}
