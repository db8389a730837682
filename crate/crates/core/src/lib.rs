//! Numerical core for orbital-filling rules, relativistic atomic spectra and
//! exactly solvable pairing models.
//!
//! The crate is organised in four modules:
//!
//! * [`shells`]: Fock, hydrogenic and Madelung filling orders, ground-state
//!   configurations and the classification of Madelung-exceptional elements.
//! * [`spectra`]: hydrogenic, Madelung-regular and Dirac-Coulomb spectra,
//!   the fine-structure expansion, the fish-eye potential, Gegenbauer checks
//!   and the S³ discreteness scan.
//! * [`fock`]: Jordan–Wigner fermionic operators, Clifford generators,
//!   the pairing Hamiltonian and its exact diagonalization.
//! * [`pairing`]: Cooper and Richardson equations, BCS quasiparticles and
//!   the Bogoliubov–de Gennes block.

pub mod error;
pub mod fock;
pub mod pairing;
pub mod shells;
pub mod spectra;

pub use error::{Error, Result};
