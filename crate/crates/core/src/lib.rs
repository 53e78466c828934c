//! Simulation and verification library for the two-component relativistic
//! wave equation of a free scalar boson.
//!
//! The first-order Kemmer formulation `β_μ ∂_μ ψ + m ψ = 0` in its
//! five-dimensional (spin zero) representation reduces, after eliminating the
//! three gradient components, to a pair of coupled equations for
//!
//! ```text
//! ψ₊ = (ψ₅ + iψ₁)/√2,   ψ₋ = (ψ₅ − iψ₁)/√2
//! i∂tψ₊ =  mψ₊ − (1/2m) ∇²(ψ₊ + ψ₋)
//! i∂tψ₋ = −mψ₋ + (1/2m) ∇²(ψ₊ + ψ₋)
//! ```
//!
//! This crate provides:
//!
//! * [`algebra`]: the β-matrices in exact Gaussian-integer arithmetic and the
//!   residual checks of the trilinear DKP relations, the Kemmer equation and
//!   the derivative relation on plane waves.
//! * [`grid`]: periodic grids and the discrete Fourier transform contract.
//! * [`dynamics`]: per-mode generators, closed-form propagators, the
//!   Klein-Gordon oracle, the Schrödinger baseline and the truncated `1/m`
//!   expansion of the dispersion.
//! * [`fields`]: field containers, wave packets, the five/two component maps
//!   and the charge density.
//! * [`model`]: a uniform front end over the four dispersion models.
//!
//! Natural units `ħ = c = 1` are used throughout.

pub mod algebra;
pub mod dynamics;
pub mod error;
pub mod fields;
pub mod grid;
pub mod model;

pub use algebra::{BetaSet, DkpReport, GaussianInt, Matrix5, PlaneWaveAmplitude};
pub use dynamics::{ModeMatrix, Propagator, Truncated};
pub use error::{Error, Result};
pub use fields::{InitMode, KemmerField, PhaseAlign, TwoComponentField, WavePacketSpec};
pub use grid::{Field, GridSpec, ModeIndex};
pub use model::Model;

pub use num_complex::Complex64;
