//! Comparison speckle filters: Lee, Kuan, Frost, median, and smoothed
//! total-variation gradient descent.

use crate::error::{Error, Result};
use crate::image::{gradient_central, reflect, ImageBuffer};

/// Odd square window of side 2 * radius + 1.
#[derive(Debug, Clone, Copy)]
pub struct WindowSpec {
    pub radius: usize,
}

impl WindowSpec {
    pub fn new(radius: usize) -> Result<Self> {
        if radius < 1 {
            return Err(Error::InvalidParam("window radius must be >= 1".into()));
        }
        Ok(Self { radius })
    }

    pub fn side(&self) -> usize {
        2 * self.radius + 1
    }
}

/// Local mean and (population) variance over the reflect-padded window.
fn local_stats(img: &ImageBuffer, radius: usize) -> (ImageBuffer, ImageBuffer) {
    let (w, h) = img.dims();
    let count = ((2 * radius + 1) * (2 * radius + 1)) as f64;
    let r = radius as i64;
    let mut mean = ImageBuffer::zeros(w, h);
    let mut var = ImageBuffer::zeros(w, h);
    for y in 0..h {
        for x in 0..w {
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for dy in -r..=r {
                for dx in -r..=r {
                    let v = img.get_reflect(x as i64 + dx, y as i64 + dy);
                    sum += v;
                    sum_sq += v * v;
                }
            }
            let m = sum / count;
            mean.set(x, y, m);
            var.set(x, y, (sum_sq / count - m * m).max(0.0));
        }
    }
    (mean, var)
}

/// Lee filter: out = m + g * (f - m) with g = max(0, v - noise_var) /
/// max(v, 1e-12).
pub fn lee_filter(img: &ImageBuffer, w: &WindowSpec, noise_var: f64) -> ImageBuffer {
    let (mean, var) = local_stats(img, w.radius);
    let (width, height) = img.dims();
    ImageBuffer::from_fn(width, height, |x, y| {
        let m = mean.get(x, y);
        let v = var.get(x, y);
        let g = (v - noise_var).max(0.0) / v.max(1e-12);
        m + g * (img.get(x, y) - m)
    })
}

/// Kuan filter for multiplicative noise: g = max(0, v - noise_var * m^2) /
/// max(v * (1 + noise_var), 1e-12), with noise_var the multiplier's
/// relative variance.
pub fn kuan_filter(img: &ImageBuffer, w: &WindowSpec, noise_var: f64) -> ImageBuffer {
    let (mean, var) = local_stats(img, w.radius);
    let (width, height) = img.dims();
    ImageBuffer::from_fn(width, height, |x, y| {
        let m = mean.get(x, y);
        let v = var.get(x, y);
        let g = (v - noise_var * m * m).max(0.0) / (v * (1.0 + noise_var)).max(1e-12);
        m + g * (img.get(x, y) - m)
    })
}

/// Frost filter: exponential distance weighting steered by the local
/// coefficient of variation.
pub fn frost_filter(img: &ImageBuffer, w: &WindowSpec, damping: f64) -> ImageBuffer {
    assert!(damping > 0.0, "damping must be positive");
    let (mean, var) = local_stats(img, w.radius);
    let (width, height) = img.dims();
    let r = w.radius as i64;
    ImageBuffer::from_fn(width, height, |x, y| {
        let m = mean.get(x, y);
        let v = var.get(x, y);
        let alpha = damping * v / (m * m).max(1e-12);
        let mut num = 0.0;
        let mut den = 0.0;
        for dy in -r..=r {
            for dx in -r..=r {
                let dist = ((dx * dx + dy * dy) as f64).sqrt();
                let weight = (-alpha * dist).exp();
                num += weight * img.get_reflect(x as i64 + dx, y as i64 + dy);
                den += weight;
            }
        }
        num / den
    })
}

/// Median of the reflect-padded window; the window side is odd by
/// construction so the median is an input sample.
pub fn median_filter(img: &ImageBuffer, w: &WindowSpec) -> ImageBuffer {
    let (width, height) = img.dims();
    let r = w.radius as i64;
    let mut window = Vec::with_capacity(w.side() * w.side());
    let mut out = ImageBuffer::zeros(width, height);
    for y in 0..height {
        for x in 0..width {
            window.clear();
            for dy in -r..=r {
                for dx in -r..=r {
                    window.push(img.get_reflect(x as i64 + dx, y as i64 + dy));
                }
            }
            window.sort_by(|a, b| a.partial_cmp(b).unwrap());
            out.set(x, y, window[window.len() / 2]);
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub struct TvParams {
    /// Fidelity weight lambda.
    pub weight: f64,
    /// Descent step size.
    pub step: f64,
    pub iterations: usize,
    /// Gradient-magnitude regularizer epsilon.
    pub epsilon: f64,
}

impl TvParams {
    pub const DEFAULT_EPSILON: f64 = 1e-3;

    /// Validated constructor; requires step * (8 / epsilon + weight) <= 1 so
    /// fixed-step descent on the smoothed energy cannot overshoot.
    pub fn new(weight: f64, step: f64, iterations: usize, epsilon: f64) -> Result<Self> {
        if weight <= 0.0 || step <= 0.0 || epsilon <= 0.0 {
            return Err(Error::InvalidParam(
                "TV weight, step, and epsilon must all be positive".into(),
            ));
        }
        if step * (8.0 / epsilon + weight) > 1.0 + 1e-12 {
            return Err(Error::InvalidParam(format!(
                "TV step {step} violates step * (8/epsilon + weight) <= 1"
            )));
        }
        Ok(Self {
            weight,
            step,
            iterations,
            epsilon,
        })
    }
}

impl Default for TvParams {
    fn default() -> Self {
        let weight = 1.0;
        let epsilon = Self::DEFAULT_EPSILON;
        Self {
            weight,
            step: 1.0 / (8.0 / epsilon + weight),
            iterations: 100,
            epsilon,
        }
    }
}

/// The smoothed total-variation energy
/// E(u) = sum sqrt(|grad u|^2 + eps^2) + (weight / 2) * sum (u - f)^2
/// with the central-difference gradient.
pub fn tv_energy(u: &ImageBuffer, f: &ImageBuffer, p: &TvParams) -> f64 {
    let (gx, gy) = gradient_central(u);
    let mut e = 0.0;
    for ((&a, &b), (&uu, &ff)) in gx
        .data()
        .iter()
        .zip(gy.data())
        .zip(u.data().iter().zip(f.data()))
    {
        e += (a * a + b * b + p.epsilon * p.epsilon).sqrt();
        e += 0.5 * p.weight * (uu - ff) * (uu - ff);
    }
    e
}

/// Adjoint of the central x-difference under reflect boundaries (scatter
/// form), so descent uses the exact gradient of the discrete energy.
fn dx_adjoint(v: &ImageBuffer) -> ImageBuffer {
    let (w, h) = v.dims();
    let mut out = ImageBuffer::zeros(w, h);
    for y in 0..h {
        for x in 0..w {
            let val = 0.5 * v.get(x, y);
            let xp = reflect(x as i64 + 1, w);
            let xm = reflect(x as i64 - 1, w);
            out.set(xp, y, out.get(xp, y) + val);
            out.set(xm, y, out.get(xm, y) - val);
        }
    }
    out
}

fn dy_adjoint(v: &ImageBuffer) -> ImageBuffer {
    let (w, h) = v.dims();
    let mut out = ImageBuffer::zeros(w, h);
    for y in 0..h {
        for x in 0..w {
            let val = 0.5 * v.get(x, y);
            let yp = reflect(y as i64 + 1, h);
            let ym = reflect(y as i64 - 1, h);
            out.set(x, yp, out.get(x, yp) + val);
            out.set(x, ym, out.get(x, ym) - val);
        }
    }
    out
}

/// Fixed-step gradient descent on the smoothed TV energy.
pub fn tv_denoise(img: &ImageBuffer, p: &TvParams) -> ImageBuffer {
    let (w, h) = img.dims();
    let eps_sq = p.epsilon * p.epsilon;
    let mut u = img.clone();
    for _ in 0..p.iterations {
        let (gx, gy) = gradient_central(&u);
        let mut f1 = ImageBuffer::zeros(w, h);
        let mut f2 = ImageBuffer::zeros(w, h);
        for y in 0..h {
            for x in 0..w {
                let a = gx.get(x, y);
                let b = gy.get(x, y);
                let inv = 1.0 / (a * a + b * b + eps_sq).sqrt();
                f1.set(x, y, a * inv);
                f2.set(x, y, b * inv);
            }
        }
        let t1 = dx_adjoint(&f1);
        let t2 = dy_adjoint(&f2);
        for y in 0..h {
            for x in 0..w {
                let grad = t1.get(x, y) + t2.get(x, y) + p.weight * (u.get(x, y) - img.get(x, y));
                u.set(x, y, u.get(x, y) - p.step * grad);
            }
        }
    }
    u
}
