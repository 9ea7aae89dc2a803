//! Boundary shape descriptors for the largest skin region.
//!
//! Coordinate convention: boundary points are pixel centers in a y-up frame
//! (`y = height - 1 - row`), ordered counterclockwise, which makes the
//! signed polygon area positive and puts a closed contour's fundamental
//! frequency at the first Fourier coefficient.

mod boundary;
mod fourier;
mod signature;

pub use boundary::{trace_boundary, BoundarySequence};
pub use fourier::{fourier_descriptors, normalize_descriptors, reconstruct_boundary, DescriptorSet};
pub use signature::{boundary_signature, count_signature_peaks, Signature};
