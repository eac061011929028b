//! Relativistic Scott correction of heavy atoms in the no-pair (Furry)
//! picture.
//!
//! The crate collects the numerical ingredients of the large-Z energy
//! expansion
//!
//! ```text
//! E(Z) = E_TF(1) Z^{7/3} + (1/2 + s(γ)) Z²,      γ = Z/c ∈ [0, 1)
//! ```
//!
//! * [`quantum_numbers`]: relativistic channel bookkeeping `(n, l, j)`.
//! * [`hydrogenic`]: closed-form Dirac-Coulomb and Schrödinger levels, their
//!   cancellation-free difference, fine-structure term, Coulomb expectation.
//! * [`shift`]: the spectral shift function `s(γ)` with certified truncation
//!   tails, and Schwinger's closed-form approximation.
//! * [`thomas_fermi`]: the neutral-atom Thomas-Fermi profile, energy, density,
//!   mean-field potential, exchange hole and screened potential.
//! * [`atomic_energy`]: energy prediction and the empirical comparison table.
//!
//! All energies of hydrogenic levels are dimensionless (units of mc²);
//! atomic energies are in Hartree.

pub mod atomic_energy;
pub mod error;
pub mod hydrogenic;
pub mod quadrature;
pub mod quantum_numbers;
pub mod report;
pub mod shift;
pub mod summation;
pub mod thomas_fermi;
pub mod zeta;

pub use error::{Error, Result};
pub use hydrogenic::Coupling;
pub use quantum_numbers::{ChannelIndex, LevelIndex};
pub use shift::{ScottCoefficient, ShiftResult};
pub use thomas_fermi::TfSolution;
