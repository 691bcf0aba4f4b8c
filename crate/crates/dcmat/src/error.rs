//! Error types shared across the crate.

use std::fmt;

/// Which of the two distinct eigenvalues an error refers to.
///
/// A double-constant matrix has the major eigenvalue λ* = a − t with
/// multiplicity n − 1 and the minor eigenvalue λ** = a − t + nt with
/// multiplicity 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenvalueKind {
    Major,
    Minor,
}

impl fmt::Display for EigenvalueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenvalueKind::Major => write!(f, "major eigenvalue λ*"),
            EigenvalueKind::Minor => write!(f, "minor eigenvalue λ**"),
        }
    }
}

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A matrix dimension of zero was requested.
    ZeroDimension,
    /// A constant was NaN or infinite where a finite value is required.
    NonFinite { name: &'static str, value: f64 },
    /// Two operands have incompatible dimensions.
    DimensionMismatch { expected: usize, found: usize },
    /// An n×n materialization would overflow the address space.
    AllocationOverflow { n: usize },
    /// A fold over matrices was given no operands.
    EmptySequence,
    /// The two basis matrices are (numerically) proportional, so the
    /// decomposition weights are not determined.
    ProportionalBasis { determinant: f64 },
    /// Block sizes do not sum to the matrix dimension.
    PartitionMismatch { expected: usize, found: usize },
    /// One inner-constant pair is required per block.
    ConstantsLengthMismatch { expected: usize, found: usize },
    /// A scalar function was applied outside its domain; names the
    /// eigenvalue at which the evaluation is undefined.
    DomainViolation {
        op: &'static str,
        which: EigenvalueKind,
        value: f64,
    },
    /// The matrix has a zero eigenvalue and cannot be inverted.
    Singular { which: EigenvalueKind },
    /// Equicorrelation parameter outside (−1/(n−1), 1); reports the
    /// violated bound.
    RhoOutOfRange { rho: f64, lower: f64 },
    /// Fewer observations than the operation needs.
    InsufficientData { needed: usize, found: usize },
    /// The centered design matrix is rank deficient at the given pivot.
    RankDeficient { pivot: usize },
    /// A sample group contains no observations.
    EmptyGroup { index: usize },
    /// A matrix argument has no elements.
    EmptyMatrix,
    /// Paired vectors differ in length.
    LengthMismatch { left: usize, right: usize },
    /// The data row-major buffer does not match rows × cols.
    BadBufferLength { expected: usize, found: usize },
    /// An inverse DFT of data that should be real left a non-negligible
    /// imaginary component; indicates an internal inconsistency.
    ImaginaryResidue { max_abs: f64 },
    /// The pooled sum of squares came out smaller than the within-group
    /// part by more than rounding can explain.
    NegativeBetweenTerm { value: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDimension => write!(f, "matrix dimension must be at least 1"),
            Error::NonFinite { name, value } => {
                write!(f, "{name} must be finite, got {value}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::AllocationOverflow { n } => {
                write!(f, "cannot materialize a {n}×{n} matrix: size overflows")
            }
            Error::EmptySequence => write!(f, "operation requires at least one matrix"),
            Error::ProportionalBasis { determinant } => write!(
                f,
                "basis matrices are proportional (a₁t₂ − a₂t₁ = {determinant:e}); \
                 decomposition weights are undetermined"
            ),
            Error::PartitionMismatch { expected, found } => {
                write!(
                    f,
                    "partition blocks sum to {found}, matrix dimension is {expected}"
                )
            }
            Error::ConstantsLengthMismatch { expected, found } => {
                write!(f, "expected {expected} inner-constant pairs, found {found}")
            }
            Error::DomainViolation { op, which, value } => {
                write!(f, "{op} undefined at {which} = {value}")
            }
            Error::Singular { which } => {
                write!(f, "matrix is singular: {which} is zero")
            }
            Error::RhoOutOfRange { rho, lower } => {
                if *rho <= *lower {
                    write!(f, "rho = {rho} violates lower bound {lower} (exclusive)")
                } else {
                    write!(f, "rho = {rho} violates upper bound 1 (exclusive)")
                }
            }
            Error::InsufficientData { needed, found } => {
                write!(f, "need at least {needed} observations, found {found}")
            }
            Error::RankDeficient { pivot } => {
                write!(f, "centered design is rank deficient at pivot {pivot}")
            }
            Error::EmptyGroup { index } => write!(f, "group {index} is empty"),
            Error::EmptyMatrix => write!(f, "matrix has no elements"),
            Error::LengthMismatch { left, right } => {
                write!(f, "vector lengths differ: {left} vs {right}")
            }
            Error::BadBufferLength { expected, found } => {
                write!(
                    f,
                    "buffer length {found} does not match rows × cols = {expected}"
                )
            }
            Error::ImaginaryResidue { max_abs } => write!(
                f,
                "inverse transform of real data left imaginary residue {max_abs:e}"
            ),
            Error::NegativeBetweenTerm { value } => {
                write!(
                    f,
                    "between-group term is negative beyond rounding: {value:e}"
                )
            }
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
