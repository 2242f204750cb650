//! Cut-and-project schemes over `Z[sqrt 2]` and `Z[e^{2 pi i/8}]`: model
//! sets, amplitudes, Bragg peak enumeration, covariograms and homometric
//! windows.
//!
//! Module elements and Fourier-module elements are carried as integer
//! coordinate vectors; positions are derived from them.

mod diffraction;
mod geometry;
mod scheme;
pub mod surd;
mod window;

pub use diffraction::{amplitude, internal_radius, modelset_density, modelset_eta, peak_enumeration};
pub use geometry::{convex_intersection_area, interval_ft, polygon_ft, Polygon};
pub use scheme::{modelset_points, CutProjectScheme, ModelSetPoint, ModelSetSample, CANDIDATE_CAP};
pub use surd::Surd;
pub use window::{covariogram, homometric_window_pair, ExactPolygon, Polyomino, Window};
