//! Image-quality measures: MSE, PSNR on the normalized scale, and the mean
//! structural-similarity index.

use crate::error::{Error, Result};
use crate::image::{gaussian_kernel, ImageBuffer};

pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
const SSIM_C1: f64 = 0.01 * 0.01; // (0.01 * L)^2 with L = 1
const SSIM_C2: f64 = 0.03 * 0.03;

#[derive(Debug, Clone, Copy)]
pub struct MetricsReport {
    pub mse: f64,
    /// Decibels; +inf when mse = 0.
    pub psnr: f64,
    pub mssim: f64,
}

/// Mean squared error (1/MN) * sum (f - f_hat)^2.
pub fn mse(reference: &ImageBuffer, test: &ImageBuffer) -> Result<f64> {
    reference.check_same_dims(test)?;
    let n = reference.data().len() as f64;
    Ok(reference
        .data()
        .iter()
        .zip(test.data())
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum::<f64>()
        / n)
}

/// PSNR = 10 * log10(n_max / mse), as printed; n_max defaults to 1 on the
/// normalized scale, where the published PSNR/MSE pairs are mutually
/// consistent.
pub fn psnr(reference: &ImageBuffer, test: &ImageBuffer, n_max: f64) -> Result<f64> {
    let err = mse(reference, test)?;
    if err == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (n_max / err).log10())
}

/// The 11x11 Gaussian SSIM window, normalized to sum 1.
fn ssim_window() -> Vec<f64> {
    let k1d = gaussian_kernel(SSIM_SIGMA);
    // gaussian_kernel truncates at ceil(3 * 1.5) = 5, giving exactly 11 taps
    debug_assert_eq!(k1d.len(), SSIM_WINDOW);
    let mut w = Vec::with_capacity(SSIM_WINDOW * SSIM_WINDOW);
    for &ky in &k1d {
        for &kx in &k1d {
            w.push(ky * kx);
        }
    }
    w
}

/// Local SSIM at one fully-valid window position.
fn ssim_at(
    reference: &ImageBuffer,
    test: &ImageBuffer,
    window: &[f64],
    cx: usize,
    cy: usize,
) -> f64 {
    let r = SSIM_WINDOW / 2;
    let mut mu_x = 0.0;
    let mut mu_y = 0.0;
    let mut xx = 0.0;
    let mut yy = 0.0;
    let mut xy = 0.0;
    let mut i = 0;
    for dy in 0..SSIM_WINDOW {
        for dx in 0..SSIM_WINDOW {
            let w = window[i];
            i += 1;
            let a = reference.get(cx + dx - r, cy + dy - r);
            let b = test.get(cx + dx - r, cy + dy - r);
            mu_x += w * a;
            mu_y += w * b;
            xx += w * a * a;
            yy += w * b * b;
            xy += w * a * b;
        }
    }
    let var_x = xx - mu_x * mu_x;
    let var_y = yy - mu_y * mu_y;
    let cov = xy - mu_x * mu_y;
    ((2.0 * mu_x * mu_y + SSIM_C1) * (2.0 * cov + SSIM_C2))
        / ((mu_x * mu_x + mu_y * mu_y + SSIM_C1) * (var_x + var_y + SSIM_C2))
}

/// Mean SSIM over all fully-valid (non-padded) window positions.
pub fn mssim(reference: &ImageBuffer, test: &ImageBuffer) -> Result<f64> {
    reference.check_same_dims(test)?;
    let (w, h) = reference.dims();
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::ImageTooSmall(w, h, SSIM_WINDOW));
    }
    let window = ssim_window();
    let r = SSIM_WINDOW / 2;
    let mut sum = 0.0;
    let mut count = 0usize;
    for cy in r..h - r {
        for cx in r..w - r {
            sum += ssim_at(reference, test, &window, cx, cy);
            count += 1;
        }
    }
    Ok(sum / count as f64)
}

/// Full report for one (reference, candidate) pair on the normalized scale.
pub fn report(reference: &ImageBuffer, test: &ImageBuffer) -> Result<MetricsReport> {
    Ok(MetricsReport {
        mse: mse(reference, test)?,
        psnr: psnr(reference, test, 1.0)?,
        mssim: mssim(reference, test)?,
    })
}
