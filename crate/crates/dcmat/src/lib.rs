//! Double-constant matrices — n×n symmetric matrices with one constant on
//! the diagonal and another everywhere else — represented by three scalars
//! and manipulated entirely through closed forms.
//!
//! The crate is organised around that representation:
//!
//! - [`matrix`]: the [`DoubleConstant`] value itself — eigenvalues,
//!   determinant, characteristic polynomial, classification,
//!   materialization, and decompositions over other double-constant bases.
//! - [`algebra`]: closure under linear combination, products, analytic
//!   functions (exp, log, powers, roots, inverses), and block splitting.
//! - [`fourier`]: the unitary DFT matrix that diagonalizes every
//!   double-constant matrix, plus the Parseval and Plancherel identities
//!   it induces.
//! - [`stats`]: the centering matrix and equicorrelation matrix in their
//!   statistical roles — centering, sums of squares, Mahalanobis distance,
//!   regression residuals, degrees of freedom, pooled sum-of-squares
//!   decomposition, and variance estimation under equicorrelation.
//! - [`oracle`]: naive dense reference routines and a seeded, counter-based
//!   Monte Carlo harness used to verify all of the above; production code
//!   paths never call into it.

pub mod algebra;
pub mod error;
pub mod fourier;
pub mod matrix;
pub mod oracle;
pub mod stats;

pub use error::{Error, Result};
pub use matrix::{CanonicalForm, DenseMatrix, DoubleConstant, MatrixClass};
