//! Computational diffraction theory for deterministic and stochastic point
//! structures.
//!
//! The crate is organised by structure family:
//!
//! * [`comb`]: weighted Dirac combs, lattices, Poisson summation and the
//!   shared output types ([`comb::AutocorrelationSeries`], [`comb::DiffractionOutput`]).
//! * [`substitution`]: substitution rules, fixed points, exact autocorrelation
//!   recursions for Thue-Morse, generalised Morse and Rudin-Shapiro.
//! * [`spectral`]: distribution functions of singular continuous measures,
//!   Wiener's criterion and the Cantor reference measure.
//! * [`modelset`]: cut-and-project schemes, model sets, amplitudes, peak
//!   enumeration, covariograms and homometric windows.
//! * [`homometry`]: exact analysis of periodic rational combs.
//! * [`stochastic`]: samplers and closed-form spectra of random structures.
//!
//! Fourier transforms use the kernel `exp(-2 pi i k x)` throughout.

pub mod comb;
pub mod error;
pub mod exact;
pub mod homometry;
pub mod modelset;
pub mod spectral;
pub mod stochastic;
pub mod substitution;

pub use error::{Error, Result};
