//! The four-step homomorphic denoising pipeline: optional histogram
//! equalization, log transform, coherence-enhancing diffusion, exponential
//! transform.

use crate::diffusion::{coherence_denoise, CoherenceParams};
use crate::error::Result;
use crate::image::{histogram_equalize, ImageBuffer};
use crate::speckle::{exp_transform, log_transform, SpeckleParams};

#[derive(Debug, Clone, Copy)]
pub struct PipelineConfig {
    /// Off by default; intended for very low-contrast inputs.
    pub equalize: bool,
    pub coherence: CoherenceParams,
    pub log_floor: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            equalize: false,
            coherence: CoherenceParams::default(),
            log_floor: SpeckleParams::DEFAULT_FLOOR,
        }
    }
}

/// Restore a speckled image. The input may exceed [0, 1]; when equalization
/// is requested the image is clamped first, since the histogram remap is
/// only defined on the unit range.
pub fn run_pipeline(img: &ImageBuffer, cfg: &PipelineConfig) -> Result<ImageBuffer> {
    let staged;
    let input = if cfg.equalize {
        staged = histogram_equalize(&img.map(|v| v.clamp(0.0, 1.0)))?;
        &staged
    } else {
        img
    };
    let log_domain = log_transform(input, cfg.log_floor);
    let diffused = coherence_denoise(&log_domain, &cfg.coherence)?;
    Ok(exp_transform(&diffused))
}
