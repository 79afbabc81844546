//! Image container and the boundary-aware convolution/differentiation
//! primitives shared by every other module.
//!
//! Intensities live on a normalized scale where 1.0 is the raster maximum.
//! Intermediate buffers (log domain, fluxes) may leave [0, 1]; only the
//! raster I/O boundary enforces the range.

use crate::error::{Error, Result};

/// Out-of-range indices are mirrored about the boundary pixel:
/// -i maps to i and (n-1)+i maps to (n-1)-i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryRule {
    #[default]
    Reflect,
}

/// Mirror `idx` into `0..n` under the reflect rule.
pub fn reflect(idx: i64, n: usize) -> usize {
    debug_assert!(n >= 1);
    if n == 1 {
        return 0;
    }
    let period = 2 * (n as i64 - 1);
    let mut i = idx.rem_euclid(period);
    if i >= n as i64 {
        i = period - i;
    }
    i as usize
}

/// 2D row-major grid of real intensities.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageBuffer {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl ImageBuffer {
    pub fn zeros(width: usize, height: usize) -> Self {
        assert!(width >= 1 && height >= 1, "empty image");
        Self {
            width,
            height,
            data: vec![0.0; width * height],
        }
    }

    pub fn constant(width: usize, height: usize, value: f64) -> Self {
        let mut img = Self::zeros(width, height);
        img.data.fill(value);
        img
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != width * height || width == 0 || height == 0 {
            return Err(Error::InvalidParam(format!(
                "data length {} does not match {}x{}",
                data.len(),
                width,
                height
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Build from a per-pixel function of (x, y) = (column, row).
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut img = Self::zeros(width, height);
        for y in 0..height {
            for x in 0..width {
                img.data[y * width + x] = f(x, y);
            }
        }
        img
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f64) {
        self.data[y * self.width + x] = v;
    }

    /// Indexed read with reflect boundary handling.
    #[inline]
    pub fn get_reflect(&self, x: i64, y: i64) -> f64 {
        let xr = reflect(x, self.width);
        let yr = reflect(y, self.height);
        self.data[yr * self.width + xr]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.data.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.data.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub(crate) fn check_same_dims(&self, other: &Self) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch(
                self.width,
                self.height,
                other.width,
                other.height,
            ));
        }
        Ok(())
    }
}

/// Sampled Gaussian truncated at radius ceil(3*sigma), renormalized to sum 1.
pub(crate) fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil() as i64;
    let mut k: Vec<f64> = (-radius..=radius)
        .map(|i| (-((i * i) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = k.iter().sum();
    for w in &mut k {
        *w /= sum;
    }
    k
}

/// Separable Gaussian convolution with reflect boundaries.
/// `sigma = 0` returns the input unchanged.
pub fn gaussian_blur(img: &ImageBuffer, sigma: f64) -> ImageBuffer {
    assert!(sigma >= 0.0, "sigma must be non-negative");
    if sigma == 0.0 {
        return img.clone();
    }
    let kernel = gaussian_kernel(sigma);
    let radius = (kernel.len() / 2) as i64;
    let (w, h) = img.dims();

    // Horizontal pass.
    let mut tmp = ImageBuffer::zeros(w, h);
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (ki, &kw) in kernel.iter().enumerate() {
                let xs = reflect(x as i64 + ki as i64 - radius, w);
                acc += kw * img.get(xs, y);
            }
            tmp.set(x, y, acc);
        }
    }
    // Vertical pass.
    let mut out = ImageBuffer::zeros(w, h);
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (ki, &kw) in kernel.iter().enumerate() {
                let ys = reflect(y as i64 + ki as i64 - radius, h);
                acc += kw * tmp.get(x, ys);
            }
            out.set(x, y, acc);
        }
    }
    out
}

/// d/dx by symmetrical central difference, reflect boundaries.
/// x is the column index.
pub fn dx_central(img: &ImageBuffer) -> ImageBuffer {
    let (w, h) = img.dims();
    ImageBuffer::from_fn(w, h, |x, y| {
        0.5 * (img.get_reflect(x as i64 + 1, y as i64) - img.get_reflect(x as i64 - 1, y as i64))
    })
}

/// d/dy by symmetrical central difference, reflect boundaries.
/// y is the row index.
pub fn dy_central(img: &ImageBuffer) -> ImageBuffer {
    let (w, h) = img.dims();
    ImageBuffer::from_fn(w, h, |x, y| {
        0.5 * (img.get_reflect(x as i64, y as i64 + 1) - img.get_reflect(x as i64, y as i64 - 1))
    })
}

/// Central-difference gradient (gx, gy) with reflect boundaries.
pub fn gradient_central(img: &ImageBuffer) -> (ImageBuffer, ImageBuffer) {
    (dx_central(img), dy_central(img))
}

/// Signed read for odd (antisymmetric) fields: mirroring flips the sign.
/// Derivatives of an evenly reflected image are odd, so flux fields use
/// this rule when differentiated along their own axis.
#[inline]
fn get_reflect_odd(img: &ImageBuffer, x: i64, y: i64, odd_in_x: bool) -> f64 {
    let (w, h) = (img.width() as i64, img.height() as i64);
    let (idx, n) = if odd_in_x { (x, w) } else { (y, h) };
    let sign = if idx < 0 || idx > n - 1 { -1.0 } else { 1.0 };
    sign * img.get_reflect(x, y)
}

/// d/dx of a field that is odd about the x boundaries.
pub fn dx_central_odd(img: &ImageBuffer) -> ImageBuffer {
    let (w, h) = img.dims();
    ImageBuffer::from_fn(w, h, |x, y| {
        0.5 * (get_reflect_odd(img, x as i64 + 1, y as i64, true)
            - get_reflect_odd(img, x as i64 - 1, y as i64, true))
    })
}

/// d/dy of a field that is odd about the y boundaries.
pub fn dy_central_odd(img: &ImageBuffer) -> ImageBuffer {
    let (w, h) = img.dims();
    ImageBuffer::from_fn(w, h, |x, y| {
        0.5 * (get_reflect_odd(img, x as i64, y as i64 + 1, false)
            - get_reflect_odd(img, x as i64, y as i64 - 1, false))
    })
}

/// Standard 256-bin cumulative-distribution intensity remap.
///
/// Requires all values in [0, 1]; callers must clamp first. The mapping is
/// monotone non-decreasing and the output stays in [0, 1].
pub fn histogram_equalize(img: &ImageBuffer) -> Result<ImageBuffer> {
    for &v in img.data() {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange(v));
        }
    }
    let mut hist = [0u64; 256];
    for &v in img.data() {
        hist[(v * 255.0).round() as usize] += 1;
    }
    let total = img.data().len() as f64;
    let mut cdf = [0.0f64; 256];
    let mut run = 0u64;
    for (b, &count) in hist.iter().enumerate() {
        run += count;
        cdf[b] = run as f64 / total;
    }
    Ok(img.map(|v| cdf[(v * 255.0).round() as usize]))
}
