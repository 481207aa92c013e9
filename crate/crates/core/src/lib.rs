//! Exact simulation and registration of blurred, quantized piecewise-constant
//! signals.
//!
//! A spatially limited piecewise-constant signal is convolved with a Gaussian
//! (or Gaussian-mixture) point spread, sampled on a uniform grid, and rounded
//! to the nearest multiple of 1/256. This crate models that pipeline with
//! exact rational arithmetic wherever round-off matters, and provides:
//!
//! * the deformation, measurement, and difference matrices that relate the
//!   observed samples to the signal's step vector, with per-column form
//!   classification and the small-blur regime checks ([`matrices`]);
//! * the +/-x sign-noise model, difference sequences, and the exact
//!   cross-correlation baseline ([`noise`]);
//! * interval inference of first-sample times, discontinuity locations, and
//!   the maximal blur width from noiseless samples ([`inference`]);
//! * a longest-path dynamic program over an alignment/segmentation DAG that
//!   registers two noisy sample sequences and locates the first sample after
//!   each discontinuity ([`align`]).

pub mod align;
pub mod error;
pub mod inference;
pub mod matrices;
pub mod noise;
pub mod phi;
pub mod rat;
pub mod signal;

pub use error::{Error, Result};
pub use rat::Rat;
