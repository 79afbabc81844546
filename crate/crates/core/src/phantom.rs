//! Synthetic test images with known ground truth: oriented sinusoidal
//! rings and stripes.

use crate::error::{Error, Result};
use crate::image::ImageBuffer;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhantomPattern {
    Rings,
    Stripes,
    RingsPlusStripes,
}

#[derive(Debug, Clone, Copy)]
pub struct PhantomSpec {
    pub width: usize,
    pub height: usize,
    pub pattern: PhantomPattern,
    /// Cycles across the image.
    pub frequency: f64,
    /// Amplitude about the 0.5 mid-gray, in (0, 0.5].
    pub contrast: f64,
    /// Phase jitter; seed 0 means zero phase.
    pub seed: u64,
}

impl PhantomSpec {
    pub fn new(
        width: usize,
        height: usize,
        pattern: PhantomPattern,
        frequency: f64,
        contrast: f64,
        seed: u64,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParam("phantom dimensions must be >= 1".into()));
        }
        if !(0.0..=0.5).contains(&contrast) || contrast == 0.0 {
            return Err(Error::InvalidParam(format!(
                "contrast must lie in (0, 0.5], got {contrast}"
            )));
        }
        if frequency <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "frequency must be > 0, got {frequency}"
            )));
        }
        Ok(Self {
            width,
            height,
            pattern,
            frequency,
            contrast,
            seed,
        })
    }

    /// The benchmark default: 256x256 rings plus stripes.
    pub fn benchmark_default(seed: u64) -> Self {
        Self {
            width: 256,
            height: 256,
            pattern: PhantomPattern::RingsPlusStripes,
            frequency: 110.0,
            contrast: 0.25,
            seed,
        }
    }
}

/// Phase jitter derived from the seed; zero for seed 0.
fn phase_of(seed: u64) -> f64 {
    std::f64::consts::TAU * (seed as f64 * 0.618_033_988_749_894_9).fract()
}

pub fn generate_phantom(spec: &PhantomSpec) -> ImageBuffer {
    let w = spec.width;
    let h = spec.height;
    let cx = (w - 1) as f64 / 2.0;
    let cy = (h - 1) as f64 / 2.0;
    // half-diagonal of the pixel grid
    let half_diag = 0.5 * (((w - 1) * (w - 1) + (h - 1) * (h - 1)) as f64).sqrt();
    let phase = phase_of(spec.seed);
    let omega = std::f64::consts::TAU * spec.frequency / half_diag;
    let (sin30, cos30) = (30.0f64.to_radians()).sin_cos();

    let rings_at = |x: usize, y: usize| {
        let dx = x as f64 - cx;
        let dy = y as f64 - cy;
        let r = (dx * dx + dy * dy).sqrt();
        0.5 + spec.contrast * (omega * r + phase).sin()
    };
    let stripes_at = |x: usize, y: usize| {
        let dx = x as f64 - cx;
        let dy = y as f64 - cy;
        let t = dx * cos30 + dy * sin30;
        0.5 + spec.contrast * (omega * t + phase).sin()
    };

    match spec.pattern {
        PhantomPattern::Rings => ImageBuffer::from_fn(w, h, rings_at),
        PhantomPattern::Stripes => ImageBuffer::from_fn(w, h, stripes_at),
        PhantomPattern::RingsPlusStripes => ImageBuffer::from_fn(w, h, |x, y| {
            (0.5 * (rings_at(x, y) + stripes_at(x, y))).clamp(0.0, 1.0)
        }),
    }
}
