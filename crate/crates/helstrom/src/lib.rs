//! Distinguishability of coherent quantum states via the Helstrom bound.
//!
//! Two non-orthogonal quantum states can never be told apart perfectly; the
//! best achievable error rate for an equiprobable pair is
//! `PE = 1/2 - 1/4 Tr|rho_0 - rho_1|`. This crate computes that bound for
//! pure and mixed coherent states by expanding them over a truncated Fock
//! basis, diagonalizing the difference matrix with a self-contained Jacobi
//! eigensolver, and converting error rates into Shannon information. Its
//! centerpiece is the information-gain surface comparing a pure pair of
//! coherent states against phase-mirrored mixtures at the same displacement.
//!
//! Everything is generic over the floating-point scalar through [`Scalar`];
//! the `*64` aliases below cover the usual double-precision case.
//!
//! ```
//! use helstrom::{information_gain, DEFAULT_DIM};
//!
//! let cell = information_gain(1.0f64, 1.0, DEFAULT_DIM, 1e-12).unwrap();
//! assert!(cell.i_gain >= 0.0 && cell.i_gain <= 1.0);
//! ```

pub mod distinguish;
pub mod eig;
pub mod error;
pub mod fock;
pub mod matrix;
pub mod scalar;

pub use distinguish::{
    cell_ensembles, gram_subspace_pe, information_gain, probability_of_error, pure_pe_analytic,
    shannon_information, DistinguishabilityResult, GainRecord, GRAM_MIN_EIGENVALUE,
    MAX_GRAM_COMPONENTS, MAX_NORM_DEFICIT,
};
pub use eig::{
    eigenvalues_hermitian, eigenvalues_hermitian_bounded, trace_norm, Spectrum, DEFAULT_EIG_TOL,
    MAX_SWEEPS,
};
pub use error::{Error, Result};
pub use fock::{
    coherent_fock_vector, difference_matrix, ensemble_density_matrix, overlap, suggest_dim,
    CoherentEnsemble, Displacement, FockVector, DEFAULT_DIM, MIN_SUGGESTED_DIM,
};
pub use matrix::{HermitianMatrix, HERMITICITY_TOL};
pub use num_complex::Complex;
pub use scalar::Scalar;

/// Double-precision aliases for the domain types.
pub type Displacement64 = Displacement<f64>;
pub type CoherentEnsemble64 = CoherentEnsemble<f64>;
pub type FockVector64 = FockVector<f64>;
pub type HermitianMatrix64 = HermitianMatrix<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type DistinguishabilityResult64 = DistinguishabilityResult<f64>;
pub type GainRecord64 = GainRecord<f64>;
pub type Complex64 = Complex<f64>;

/// Single-precision aliases; handy for quick, low-accuracy sweeps.
pub type Displacement32 = Displacement<f32>;
pub type CoherentEnsemble32 = CoherentEnsemble<f32>;
pub type FockVector32 = FockVector<f32>;
pub type HermitianMatrix32 = HermitianMatrix<f32>;
pub type Spectrum32 = Spectrum<f32>;
pub type DistinguishabilityResult32 = DistinguishabilityResult<f32>;
pub type GainRecord32 = GainRecord<f32>;
pub type Complex32 = Complex<f32>;
