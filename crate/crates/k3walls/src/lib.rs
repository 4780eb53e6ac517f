//! Exact wall-and-chamber analysis for Hilbert schemes of points on a
//! Picard-rank-one K3 surface.
//!
//! Given H² = 2d = 2Δk² and N + 1 = Δh² + 1 points (gcd(h, k) = 1), the crate
//! enumerates all interior walls of the movable cone of the Hilbert scheme,
//! classifies them, counts birational models, decides whether the Hilbert
//! scheme is itself a Lagrangian fibration, and computes the Fourier–Mukai
//! partner data realizing that fibration as a twisted Beauville–Mukai system.
//! All arithmetic is exact: integers and rationals throughout.

pub mod classify;
pub mod error;
pub mod fmpartner;
pub mod mukai;
pub mod report;
pub mod surface;
pub mod walls;

pub use error::K3Error;
pub use mukai::MukaiVector;
pub use surface::{Rational, SurfaceParams};
