//! Structure tensors, closed-form symmetric 2x2 eigendecomposition, and
//! assembly of the diffusion tensor that steers the anisotropic scheme.

use crate::error::{Error, Result};
use crate::image::{gaussian_blur, gradient_central, ImageBuffer};

/// Symmetric 2x2 matrix [[j11, j12], [j12, j22]].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymTensor2 {
    pub j11: f64,
    pub j12: f64,
    pub j22: f64,
}

impl SymTensor2 {
    pub fn new(j11: f64, j12: f64, j22: f64) -> Self {
        Self { j11, j12, j22 }
    }

    pub fn trace(&self) -> f64 {
        self.j11 + self.j22
    }

    pub fn det(&self) -> f64 {
        self.j11 * self.j22 - self.j12 * self.j12
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.j11 * v[0] + self.j12 * v[1],
            self.j12 * v[0] + self.j22 * v[1],
        ]
    }
}

/// Per-pixel symmetric tensors, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorField {
    width: usize,
    height: usize,
    tensors: Vec<SymTensor2>,
}

impl TensorField {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            tensors: vec![SymTensor2::default(); width * height],
        }
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
    pub fn get(&self, x: usize, y: usize) -> SymTensor2 {
        self.tensors[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, t: SymTensor2) {
        self.tensors[y * self.width + x] = t;
    }

    pub fn tensors(&self) -> &[SymTensor2] {
        &self.tensors
    }

    /// An isotropic field g*I from a scalar image.
    pub fn isotropic(scale: &ImageBuffer) -> Self {
        let (w, h) = scale.dims();
        let tensors = scale
            .data()
            .iter()
            .map(|&g| SymTensor2::new(g, 0.0, g))
            .collect();
        Self {
            width: w,
            height: h,
            tensors,
        }
    }

    fn component(&self, pick: impl Fn(&SymTensor2) -> f64) -> ImageBuffer {
        let data = self.tensors.iter().map(pick).collect();
        ImageBuffer::from_vec(self.width, self.height, data).expect("same length")
    }
}

/// Eigenstructure of a symmetric 2x2 matrix. theta_minus is theta_plus
/// rotated by 90 degrees.
#[derive(Debug, Clone, Copy)]
pub struct EigenPair {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub theta_plus: [f64; 2],
}

impl EigenPair {
    pub fn theta_minus(&self) -> [f64; 2] {
        [-self.theta_plus[1], self.theta_plus[0]]
    }
}

/// Closed-form eigendecomposition.
///
/// lambda_pm = (j11 + j22 +- sqrt((j11 - j22)^2 + 4 j12^2)) / 2. The
/// eigenvector comes from whichever of (j12, lambda_plus - j11) and
/// (lambda_plus - j22, j12) has the larger norm; isotropic tensors
/// (discriminant < 1e-14) get theta_plus = (1, 0).
pub fn eigen_2x2(t: &SymTensor2) -> EigenPair {
    let diff = t.j11 - t.j22;
    let disc_sq = diff * diff + 4.0 * t.j12 * t.j12;
    let disc = disc_sq.sqrt();
    let lambda_plus = 0.5 * (t.j11 + t.j22 + disc);
    let lambda_minus = 0.5 * (t.j11 + t.j22 - disc);

    let theta_plus = if disc_sq < 1e-14 {
        [1.0, 0.0]
    } else {
        let a = [t.j12, lambda_plus - t.j11];
        let b = [lambda_plus - t.j22, t.j12];
        let na = a[0] * a[0] + a[1] * a[1];
        let nb = b[0] * b[0] + b[1] * b[1];
        let (v, n) = if na >= nb { (a, na) } else { (b, nb) };
        let inv = 1.0 / n.sqrt();
        [v[0] * inv, v[1] * inv]
    };
    EigenPair {
        lambda_plus,
        lambda_minus,
        theta_plus,
    }
}

/// N = sqrt(lambda_plus + lambda_minus); small negatives from roundoff are
/// clamped to zero.
pub fn coherence_norm(lambda_plus: f64, lambda_minus: f64) -> f64 {
    (lambda_plus.max(0.0) + lambda_minus.max(0.0)).sqrt()
}

/// Per-pixel outer product of the presmoothed gradient:
/// j11 = ux^2, j12 = ux*uy, j22 = uy^2.
pub fn structure_tensor(img: &ImageBuffer, sigma: f64) -> TensorField {
    let smoothed = gaussian_blur(img, sigma);
    let (gx, gy) = gradient_central(&smoothed);
    let (w, h) = img.dims();
    let mut field = TensorField::new(w, h);
    for y in 0..h {
        for x in 0..w {
            let ux = gx.get(x, y);
            let uy = gy.get(x, y);
            field.set(x, y, SymTensor2::new(ux * ux, ux * uy, uy * uy));
        }
    }
    field
}

/// Componentwise Gaussian integration of the tensor field.
pub fn smooth_tensor(field: &TensorField, rho: f64) -> TensorField {
    if rho == 0.0 {
        return field.clone();
    }
    let j11 = gaussian_blur(&field.component(|t| t.j11), rho);
    let j12 = gaussian_blur(&field.component(|t| t.j12), rho);
    let j22 = gaussian_blur(&field.component(|t| t.j22), rho);
    let (w, h) = field.dims();
    let mut out = TensorField::new(w, h);
    for y in 0..h {
        for x in 0..w {
            out.set(
                x,
                y,
                SymTensor2::new(j11.get(x, y), j12.get(x, y), j22.get(x, y)),
            );
        }
    }
    out
}

/// Diffusion-speed weights: c is the overall strength parameter,
/// lambda_cap bounds the along-structure speed so the explicit scheme's
/// time-step condition stays checkable.
#[derive(Debug, Clone, Copy)]
pub struct DiffusionWeights {
    pub c: f64,
    pub lambda_cap: f64,
}

impl DiffusionWeights {
    pub fn new(c: f64, lambda_cap: f64) -> Result<Self> {
        if c <= 0.0 {
            return Err(Error::InvalidParam(format!("C must be > 0, got {c}")));
        }
        if lambda_cap < c {
            return Err(Error::InvalidParam(format!(
                "lambda_cap {lambda_cap} must be >= C {c}"
            )));
        }
        Ok(Self { c, lambda_cap })
    }
}

/// Assemble D from the integrated structure tensor: per pixel
/// lambda1 = C / sqrt(1 + N), lambda2 = min(C * sqrt((1 + l+) / (1 + l-)),
/// lambda_cap), D = lambda1 t+ t+^T + lambda2 t- t-^T. The result is
/// symmetric positive definite with eigenvalues {lambda1, lambda2}.
pub fn diffusion_tensor(field: &TensorField, w: &DiffusionWeights) -> TensorField {
    let (width, height) = field.dims();
    let mut out = TensorField::new(width, height);
    for y in 0..height {
        for x in 0..width {
            out.set(x, y, diffusion_tensor_at(&field.get(x, y), w));
        }
    }
    out
}

pub fn diffusion_tensor_at(j: &SymTensor2, w: &DiffusionWeights) -> SymTensor2 {
    let e = eigen_2x2(j);
    let lp = e.lambda_plus.max(0.0);
    let lm = e.lambda_minus.max(0.0);
    let n = coherence_norm(lp, lm);
    let lambda1 = w.c / (1.0 + n).sqrt();
    let lambda2 = (w.c * ((1.0 + lp) / (1.0 + lm)).sqrt()).min(w.lambda_cap);
    let [tx, ty] = e.theta_plus;
    SymTensor2::new(
        lambda1 * tx * tx + lambda2 * ty * ty,
        (lambda1 - lambda2) * tx * ty,
        lambda1 * ty * ty + lambda2 * tx * tx,
    )
}
