//! Bound-state analysis for a charged scalar particle in the field of a
//! magnetic dipole, with lepton mass-spectrum evaluators.
//!
//! The crate answers one physics question along two independent routes and
//! evaluates the mass formulas that motivated it:
//!
//! * [`frobenius`]: series solution of the radial equation: the recurrence
//!   for the expansion coefficients, the three termination analyses, and the
//!   e^{2βρ} growth classification showing the series cannot terminate for
//!   β > 0.
//! * [`oracle`]: a finite-difference spectral solver (Sturm counts on a
//!   symmetric-definite tridiagonal pencil) that verifies the same
//!   no-bound-state conclusion numerically and is validated against the
//!   closed-form 2D Coulomb spectrum.
//! * [`spectra`]: Barut's lepton mass formula and three modified spectra,
//!   compared against experimental mass ratios.
//! * [`potential`], [`constants`]: the dipole vector potential, the
//!   dimensionless couplings, and configurable reference data.
//! * [`validate`]: the validation battery behind `dipole-bound validate`.

pub mod cli;
pub mod constants;
pub mod error;
pub mod frobenius;
pub mod oracle;
pub mod potential;
pub mod report;
pub mod spectra;
pub mod validate;

pub use error::{Error, Result};
