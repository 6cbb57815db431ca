//! Equiangular tight frames (ETFs) and the rank-one measurements they induce.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: small dense complex linear algebra, density matrices and
//!   seeded random states.
//! - [`frames`]: construction, validation and Naimark complements of ETFs,
//!   plus a numerical frame search.
//! - [`measurement`]: the POVM `(d/n)|φ_j⟩⟨φ_j|`, outcome statistics and the
//!   orthonormal family built from `|φ_j⟩ ⊗ |φ_j^*⟩`.
//! - [`entropy`]: Rényi and Tsallis entropies, the α-logarithm and
//!   detection-inefficiency distortion.
//! - [`bounds`]: uncertainty bounds for ETF measurements and their
//!   certification against measured distributions.
//! - [`witness`]: entanglement and steering tests built from ETF measurements
//!   on bipartite states.
//!
//! All numerical code is generic over [`Real`] (implemented for `f32` and
//! `f64`); the aliases below fix the scalar to `f64`, which is what the
//! command-line front end uses. Frame parameters are exact rationals.

#![forbid(unsafe_code)]
// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod entropy;
mod error;
pub mod frames;
pub mod measurement;
pub mod numerics;
mod scalar;
pub mod witness;

pub use error::{Error, Result};
pub use scalar::Real;

pub use num_complex::Complex;

/// Complex amplitude over `f64`.
pub type C64 = Complex<f64>;

pub type ComplexVector64 = numerics::ComplexVector<f64>;
pub type ComplexMatrix64 = numerics::ComplexMatrix<f64>;
pub type DensityMatrix64 = numerics::DensityMatrix<f64>;
pub type Frame64 = frames::EquiangularTightFrame<f64>;
pub type FrameReport64 = frames::FrameReport<f64>;
pub type EtfPovm64 = measurement::EtfPovm<f64>;
pub type Povm64 = measurement::Povm<f64>;
pub type OutcomeDistribution64 = measurement::OutcomeDistribution<f64>;
pub type PsiFamily64 = measurement::PsiFamily<f64>;
pub type BoundReport64 = bounds::BoundReport<f64>;
pub type BipartiteDensityMatrix64 = witness::BipartiteDensityMatrix<f64>;
pub type JointDistribution64 = witness::JointDistribution<f64>;
pub type WitnessVerdict64 = witness::WitnessVerdict<f64>;

pub type ComplexMatrix32 = numerics::ComplexMatrix<f32>;
pub type DensityMatrix32 = numerics::DensityMatrix<f32>;
pub type Frame32 = frames::EquiangularTightFrame<f32>;
