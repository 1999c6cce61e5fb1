//! Mixedness of finite density matrices measured through entropy fluctuations.
//!
//! The central quantity is the mixedness parameter
//!
//! ```text
//! Q_S = exp(-(ΔS)² / S),   (ΔS)² = Tr(ρ ln²ρ) − S²,   S = −Tr(ρ ln ρ)
//! ```
//!
//! computed next to the von Neumann entropy `S` and the linear entropy
//! `ξ = 1 − Tr ρ²`. `Q_S` is 0 for pure states and 1 whenever the non-zero
//! part of the spectrum is uniform, which makes it insensitive to the size of
//! the ambient Hilbert space.
//!
//! Modules:
//!
//! - [`qmatrix`]: dense complex matrices, a cyclic Jacobi Hermitian eigensolver
//!   and density-matrix validation.
//! - [`mixedness`]: spectral entropy functionals, Mandel-Q and the Araki–Lieb check.
//! - [`states`]: truncated Fock-space constructors (coherent, thermal), coherent
//!   overlaps, Gram-matrix purification and closed forms for the static examples.
//! - [`dynamics`]: resonant Jaynes–Cummings evolution and the damped
//!   superposition of two coherent states.

pub mod dynamics;
mod error;
pub mod mixedness;
pub mod qmatrix;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
