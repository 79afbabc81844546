//! Multiplicative speckle synthesis and the homomorphic log/exp transforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::image::ImageBuffer;

#[derive(Debug, Clone, Copy)]
pub struct SpeckleParams {
    /// Variance of the unit-mean multiplier distribution.
    pub variance: f64,
    pub seed: u64,
    /// Minimum multiplier and minimum log argument.
    pub floor: f64,
}

impl SpeckleParams {
    pub const DEFAULT_FLOOR: f64 = 1e-6;

    pub fn new(variance: f64, seed: u64) -> Result<Self> {
        if variance <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "speckle variance must be > 0, got {variance}"
            )));
        }
        Ok(Self {
            variance,
            seed,
            floor: Self::DEFAULT_FLOOR,
        })
    }
}

/// The multiplier field for a given raster size: i.i.d. Normal(1, variance)
/// draws in raster-scan order, clamped below at `floor`. Depends only on the
/// seed and the dimensions, never on pixel values.
pub fn multiplier_field(width: usize, height: usize, params: &SpeckleParams) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let std_dev = params.variance.sqrt();
    (0..width * height)
        .map(|_| (1.0 + std_dev * standard_normal(&mut rng)).max(params.floor))
        .collect()
}

/// One standard-normal draw via Box-Muller from two uniforms.
fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// f = f0 * eta per pixel. Output is not clamped to [0, 1].
pub fn add_speckle(img: &ImageBuffer, params: &SpeckleParams) -> ImageBuffer {
    let field = multiplier_field(img.width(), img.height(), params);
    let data = img
        .data()
        .iter()
        .zip(&field)
        .map(|(&f0, &eta)| f0 * eta)
        .collect();
    ImageBuffer::from_vec(img.width(), img.height(), data).expect("dims preserved")
}

/// u = ln(max(f, floor)) per pixel.
pub fn log_transform(img: &ImageBuffer, floor: f64) -> ImageBuffer {
    assert!(floor > 0.0, "log floor must be positive");
    img.map(|v| v.max(floor).ln())
}

/// out = e^u per pixel; clamping happens at image save, not here.
pub fn exp_transform(img: &ImageBuffer) -> ImageBuffer {
    img.map(f64::exp)
}
