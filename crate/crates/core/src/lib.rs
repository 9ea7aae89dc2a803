//! skinshape-core: skin-region shape analysis and two-class image classification.
//!
//! The pipeline turns a raster image into a fixed 40-dimensional feature
//! vector and a fused classifier score:
//!
//! decode -> downsample -> skin probability map -> threshold -> morphological
//! refinement -> connected components -> largest region -> boundary trace ->
//! Fourier descriptors + boundary signature -> feature vector -> MLP + NF
//! classifiers -> fuzzy-integral fusion.
//!
//! Everything is deterministic given a seed; training and prediction never
//! touch global state. File I/O is confined to [`raster::load_image`] and the
//! model container in [`model`], so the rest of the crate also runs in
//! wasm or other sans-IO hosts.

pub mod classify;
pub mod error;
pub mod features;
pub mod fusion;
pub mod model;
pub mod morph;
pub mod pipeline;
pub mod raster;
pub mod regions;
pub mod rng;
pub mod select;
pub mod shape;
pub mod skin;
pub mod synth;

pub use error::Error;
pub use raster::RasterImage;

pub type Result<T> = std::result::Result<T, Error>;
