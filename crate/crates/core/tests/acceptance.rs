//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use despeckle::baselines::{
    frost_filter, kuan_filter, lee_filter, tv_denoise, tv_energy, TvParams, WindowSpec,
};
use despeckle::bench::{run_benchmark, BaselineSettings};
use despeckle::diffusion::{coherence_denoise, tensor_diffusion_step, CoherenceParams};
use despeckle::metrics::{mse, mssim, SSIM_SIGMA, SSIM_WINDOW};
use despeckle::phantom::{generate_phantom, PhantomSpec};
use despeckle::pipeline::PipelineConfig;
use despeckle::speckle::{add_speckle, multiplier_field, SpeckleParams};
use despeckle::tensor::{diffusion_tensor, eigen_2x2, smooth_tensor, structure_tensor,
    DiffusionWeights, SymTensor2, TensorField};
use despeckle::{gaussian_blur, ImageBuffer};

fn verdict(n: usize, name: &str, ok: bool) {
    println!("criterion {n} ({name}): {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} ({name}) failed");
}

fn random_image(w: usize, h: usize, seed: u64) -> ImageBuffer {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ImageBuffer::from_fn(w, h, |_, _| rng.gen::<f64>())
}

#[test]
fn criterion_1_benchmark_ordering() {
    let start = Instant::now();
    let spec = PhantomSpec::benchmark_default(0);
    let noise = SpeckleParams::new(0.02, 0).unwrap();
    let report = run_benchmark(
        &spec,
        &noise,
        &PipelineConfig::default(),
        &BaselineSettings::for_noise_variance(0.02),
    )
    .unwrap();
    let elapsed = start.elapsed();

    let proposed = report
        .rows
        .iter()
        .find(|r| r.method == "Proposed")
        .unwrap();
    let strictly_best = report
        .rows
        .iter()
        .filter(|r| r.method != "Proposed" && r.method != "Noisy")
        .all(|r| {
            proposed.metrics.psnr > r.metrics.psnr && proposed.metrics.mssim > r.metrics.mssim
        });
    let ok = strictly_best && elapsed.as_secs_f64() < 30.0;
    verdict(1, "benchmark ordering and runtime", ok);
}

#[test]
fn criterion_2_psnr_formula_consistency() {
    let pairs = [
        (15.00, 0.031),
        (13.62, 0.043),
        (14.03, 0.039),
        (13.53, 0.044),
        (13.83, 0.041),
        (16.10, 0.023),
    ];
    let ok = pairs
        .iter()
        .all(|&(printed, err): &(f64, f64)| (10.0 * (1.0 / err).log10() - printed).abs() <= 0.35);
    verdict(2, "published PSNR/MSE pairs consistent with n_max = 1", ok);
}

#[test]
fn criterion_3_eigen_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ok = true;
    for _ in 0..10_000 {
        let t = SymTensor2::new(
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
        );
        let e = eigen_2x2(&t);

        // independent roots of x^2 - tr x + det = 0
        let half_tr = 0.5 * t.trace();
        let disc = (half_tr * half_tr - t.det()).max(0.0).sqrt();
        ok &= (e.lambda_plus - (half_tr + disc)).abs() <= 1e-10;
        ok &= (e.lambda_minus - (half_tr - disc)).abs() <= 1e-10;

        for (lambda, v) in [(e.lambda_plus, e.theta_plus), (e.lambda_minus, e.theta_minus())] {
            let jv = t.apply(v);
            let rx = jv[0] - lambda * v[0];
            let ry = jv[1] - lambda * v[1];
            ok &= (rx * rx + ry * ry).sqrt() <= 1e-10;
        }
    }
    verdict(3, "closed-form eigendecomposition vs characteristic polynomial", ok);
}

#[test]
fn criterion_4_heat_equation_equivalence() {
    let u0 = gaussian_blur(&random_image(64, 64, 17), 3.0);
    let identity = TensorField::isotropic(&ImageBuffer::constant(64, 64, 1.0));
    let mut u = u0.clone();
    for _ in 0..20 {
        u = tensor_diffusion_step(&u, &identity, 0.2).unwrap();
    }
    let reference = gaussian_blur(&u0, 8.0f64.sqrt());
    let linf = u
        .data()
        .iter()
        .zip(reference.data())
        .map(|(&a, &b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    verdict(4, "identity-tensor stepping matches Gaussian blur", linf <= 1e-2);
}

#[test]
fn criterion_5_mean_conservation() {
    let clean = generate_phantom(&PhantomSpec::benchmark_default(0));
    let noisy = add_speckle(&clean, &SpeckleParams::new(0.02, 0).unwrap());
    let out = coherence_denoise(&noisy, &CoherenceParams::default()).unwrap();
    let drift = (out.mean() - noisy.mean()).abs() / noisy.mean();
    verdict(5, "mean gray value conserved within 0.1%", drift <= 1e-3);
}

#[test]
fn criterion_6_flat_region_isotropy() {
    let img = ImageBuffer::constant(32, 32, 0.37);
    let field = smooth_tensor(&structure_tensor(&img, 1.2), 5.5);
    let weights = DiffusionWeights::new(0.5, 5.0).unwrap();
    let d = diffusion_tensor(&field, &weights);
    let ok = d.tensors().iter().all(|t| {
        (t.j11 - 0.5).abs() <= 1e-12 && t.j12.abs() <= 1e-12 && (t.j22 - 0.5).abs() <= 1e-12
    });
    verdict(6, "constant image yields D = C*I", ok);
}

#[test]
fn criterion_7_speckle_statistics() {
    let params = SpeckleParams::new(0.02, 12345).unwrap();
    let field = multiplier_field(1000, 1000, &params);
    let n = field.len() as f64;
    let mean = field.iter().sum::<f64>() / n;
    let var = field.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let ok = (mean - 1.0).abs() <= 0.01 && (var - 0.02).abs() <= 0.05 * 0.02;
    verdict(7, "speckle multipliers have mean 1 and variance sigma^2", ok);
}

/// Gaussian SSIM window sampled and renormalized exactly as the library does.
fn ssim_kernel() -> Vec<f64> {
    let radius = (3.0 * SSIM_SIGMA).ceil() as i64;
    let mut k: Vec<f64> = (-radius..=radius)
        .map(|i| (-((i * i) as f64) / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp())
        .collect();
    let sum: f64 = k.iter().sum();
    for w in &mut k {
        *w /= sum;
    }
    assert_eq!(k.len(), SSIM_WINDOW);
    k
}

/// Per-position SSIM by explicit weighted summation.
fn ssim_map_oracle(a: &ImageBuffer, b: &ImageBuffer) -> Vec<f64> {
    let c1 = 0.01 * 0.01;
    let c2 = 0.03 * 0.03;
    let k = ssim_kernel();
    let r = SSIM_WINDOW / 2;
    let (w, h) = a.dims();
    let mut map = Vec::new();
    for cy in r..h - r {
        for cx in r..w - r {
            let (mut mx, mut my, mut xx, mut yy, mut xy) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for dy in 0..SSIM_WINDOW {
                for dx in 0..SSIM_WINDOW {
                    let wgt = k[dy] * k[dx];
                    let va = a.get(cx + dx - r, cy + dy - r);
                    let vb = b.get(cx + dx - r, cy + dy - r);
                    mx += wgt * va;
                    my += wgt * vb;
                    xx += wgt * va * va;
                    yy += wgt * vb * vb;
                    xy += wgt * va * vb;
                }
            }
            let (vx, vy, cv) = (xx - mx * mx, yy - my * my, xy - mx * my);
            map.push(
                ((2.0 * mx * my + c1) * (2.0 * cv + c2))
                    / ((mx * mx + my * my + c1) * (vx + vy + c2)),
            );
        }
    }
    map
}

#[test]
fn criterion_8_metric_identities() {
    let x = random_image(32, 32, 21);
    let mut ok = mse(&x, &x).unwrap() == 0.0 && mssim(&x, &x).unwrap() == 1.0;

    for seed in 0..5u64 {
        let a = random_image(32, 32, 100 + seed);
        let b = random_image(32, 32, 200 + seed);
        let map = ssim_map_oracle(&a, &b);
        ok &= map.iter().all(|&v| (-1.0..=1.0).contains(&v));
        let oracle = map.iter().sum::<f64>() / map.len() as f64;
        ok &= (mssim(&a, &b).unwrap() - oracle).abs() <= 1e-10;
    }
    verdict(8, "metric identities and sliding-window oracle", ok);
}

#[test]
fn criterion_9_determinism() {
    // The implementation is strictly sequential, so worker count cannot
    // influence the raster order; thread-count env overrides are passed
    // anyway to document the claim.
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for (i, threads) in ["1", "8", "1"].iter().enumerate() {
        let path = dir.path().join(format!("report_{i}.tsv"));
        let status = Command::new(env!("CARGO_BIN_EXE_despeckle"))
            .args(["bench", "--seed", "3", "--out"])
            .arg(&path)
            .env("RAYON_NUM_THREADS", threads)
            .status()
            .unwrap();
        assert!(status.success());
        reports.push(std::fs::read(&path).unwrap());
    }
    let ok = reports[0] == reports[1] && reports[1] == reports[2];
    verdict(9, "bench reports byte-identical across runs and worker counts", ok);
}

#[test]
fn criterion_10_baseline_oracles() {
    let img = random_image(8, 8, 31);
    let w = WindowSpec::new(2).unwrap();
    let r = 2i64;
    let count = 25.0;
    let noise_var = 0.02;
    let damping = 2.0;

    let mut ok = true;
    for y in 0..8usize {
        for x in 0..8usize {
            // direct window statistics
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for dy in -r..=r {
                for dx in -r..=r {
                    let v = img.get_reflect(x as i64 + dx, y as i64 + dy);
                    sum += v;
                    sum_sq += v * v;
                }
            }
            let m = sum / count;
            let v = (sum_sq / count - m * m).max(0.0);
            let f = img.get(x, y);

            let g_lee = (v - noise_var).max(0.0) / v.max(1e-12);
            ok &= (lee_filter(&img, &w, noise_var).get(x, y) - (m + g_lee * (f - m))).abs()
                <= 1e-13;

            let g_kuan = (v - noise_var * m * m).max(0.0) / (v * (1.0 + noise_var)).max(1e-12);
            ok &= (kuan_filter(&img, &w, noise_var).get(x, y) - (m + g_kuan * (f - m))).abs()
                <= 1e-13;

            let alpha = damping * v / (m * m).max(1e-12);
            let (mut num, mut den) = (0.0, 0.0);
            for dy in -r..=r {
                for dx in -r..=r {
                    let weight = (-alpha * ((dx * dx + dy * dy) as f64).sqrt()).exp();
                    num += weight * img.get_reflect(x as i64 + dx, y as i64 + dy);
                    den += weight;
                }
            }
            ok &= (frost_filter(&img, &w, damping).get(x, y) - num / den).abs() <= 1e-13;
        }
    }

    let noisy = random_image(16, 16, 32);
    let step = 1.0 / (8.0 / TvParams::DEFAULT_EPSILON + 1.0);
    let energy_at = |iters: usize| {
        let p = TvParams::new(1.0, step, iters, TvParams::DEFAULT_EPSILON).unwrap();
        tv_energy(&tv_denoise(&noisy, &p), &noisy, &p)
    };
    let mut prev = energy_at(0);
    for iters in 1..=50 {
        let e = energy_at(iters);
        ok &= e <= prev + 1e-12;
        prev = e;
    }
    verdict(10, "Lee/Kuan/Frost transcription oracles and TV energy descent", ok);
}
