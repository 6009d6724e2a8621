//! Spectral analysis of the Jacobi operator family `J(α)` whose off-diagonal
//! weights are `n` (odd `n`) and `αn` (even `n`), together with the rescaled
//! family `J̃(β) = α⁻¹J(α)` for `|α| > 1`.
//!
//! Every analytic formula (eigenvalues, eigenvectors, Weyl function, spectral
//! measure, Rodriguez-type formulas, projection norms) sits next to a
//! formula-free check on finite truncations in [`oracle`].
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]
// `num_traits::Float` supplies the f64 methods; builds that also link std
// resolve them to the inherent methods instead.
#![allow(unused_imports)]

extern crate alloc;

pub mod elliptic;
pub mod operator;
pub mod oracle;
pub mod powerseries;
pub mod pseudospectra;
pub mod quadrature;
pub mod spectral;
pub mod error;

pub use error::{Error, Result};
pub use num_complex::Complex64;
