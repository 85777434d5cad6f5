use thiserror::Error;

/// Errors raised across the library. Each variant names the failed
/// precondition; none of them is recoverable by retrying.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not squarefree")]
    NotSquarefree(String),
    #[error("m = 1 does not define a quadratic field")]
    TrivialField,
    #[error("basis elements are linearly dependent over Q")]
    DegenerateBasis,
    #[error("{0} is not a sum of two squares")]
    NoRepresentation(String),
    #[error("the zero ideal was requested")]
    ZeroIdeal,
    #[error("element {0} is not in the ring of integers")]
    NotIntegral(String),
    #[error("{0} is not a squarefree divisor of the discriminant")]
    BadDivisor(String),
    #[error("ideal is not primitive")]
    NotPrimitive,
    #[error("Bezout equation has no solution: {0}")]
    NoBezout(String),
    #[error("precondition for this construction fails: {0}")]
    WrongCase(String),
    #[error("{0} is not a totally positive unit")]
    NotTotallyPositiveUnit(String),
    #[error("matrix is not in the Hilbert modular group")]
    NotInGamma,
    #[error("Gram matrix does not have signature (2,2)")]
    WrongSignature,
    #[error("matrix does not preserve the quadratic form")]
    NotOrthogonal,
    #[error("assembled entry {0} is not rational")]
    IrrationalEntry(String),
    #[error("matrix is not the image of a 2x2 matrix: {0}")]
    NotInImage(String),
    #[error("image matrix is not integral")]
    NotIntegralImage,
    #[error("the point {0} is a pole of the transformation")]
    PoleAtPoint(String),
    #[error("factor of automorphy vanishes")]
    SingularAutomorphy,
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
