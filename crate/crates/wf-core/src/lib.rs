//! Spectral embeddings of stationary time series and 1-D optimal transport
//! on their normalized power spectral densities (NPSDs).
//!
//! The pipeline embeds a time series into a probability distribution over
//! frequency (its NPSD) and compares such distributions with the 2-Wasserstein
//! distance. On top of that metric the crate provides displacement geodesics,
//! barycenters, tangent-space (log/exp) maps, principal geodesic analysis and
//! distance-based classifiers.
//!
//! The crate is `no_std`-compatible (requires `alloc`); file formats, dataset
//! loaders and the command line live in the companion `wf-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod classify;
pub mod fft;
pub mod grid;
pub mod interpolate;
pub mod linalg;
pub mod optim;
pub mod pga;
pub mod rng;
pub mod spectral;
pub mod transport;

pub use grid::FrequencyGrid;
pub use spectral::{Acf, Npsd, PhasePolicy, Psd, Spectrum, TimeSeries};
pub use transport::{LogMap, QuantileFunction, TransportPath};

/// Complex sample type used throughout the crate.
pub type Complex64 = num_complex::Complex<f64>;
