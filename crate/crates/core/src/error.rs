use crate::poly::Variable;

/// Failures raised by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor does not divide the dividend exactly")]
    NotDivisible,
    #[error("cannot substitute a non-monomial into a negative power of {0}")]
    NonInvertibleImage(Variable),
    #[error("invalid permutation of z1..z{0}")]
    InvalidPermutation(usize),
    #[error("variable z{index} exceeds arity {arity}")]
    VariableOutOfRange { index: u32, arity: usize },
    #[error("polynomial is not symmetric in z1..z{0}")]
    NotSymmetric(usize),
    #[error("arity {found} is below the required minimum {required}")]
    ArityTooSmall { required: usize, found: usize },
    #[error("expected arity {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("polynomial is not in the ideal (g1, g2)")]
    NotInIdeal,
    #[error("identity violated: {0}")]
    IdentityViolated(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
