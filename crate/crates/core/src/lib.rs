//! Speckle denoising for grayscale ultrasound-like images.
//!
//! The core path is homomorphic: a log transform turns the multiplicative
//! speckle model into additive noise, a coherence-enhancing tensor
//! diffusion smooths along local structure orientation, and an exponential
//! transform maps back. Classic adaptive filters (Lee, Kuan, Frost),
//! median, and smoothed total variation are included as comparison
//! baselines, together with MSE/PSNR/MSSIM quality metrics and a synthetic
//! phantom benchmark.

pub mod baselines;
pub mod bench;
pub mod diffusion;
pub mod error;
pub mod image;
pub mod metrics;
pub mod pgm;
pub mod phantom;
pub mod pipeline;
pub mod speckle;
pub mod tensor;

pub use error::{Error, Result};
pub use image::{gaussian_blur, gradient_central, histogram_equalize, BoundaryRule, ImageBuffer};
pub use pgm::{load_image, save_image};
