use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use despeckle::baselines::{
    frost_filter, kuan_filter, lee_filter, median_filter, tv_denoise, TvParams, WindowSpec,
};
use despeckle::bench::{
    render_report, run_benchmark, write_report, BaselineSettings, ReportFormat,
};
use despeckle::diffusion::{perona_malik, CoherenceParams, PmParams};
use despeckle::metrics::report;
use despeckle::phantom::{generate_phantom, PhantomPattern, PhantomSpec};
use despeckle::pipeline::{run_pipeline, PipelineConfig};
use despeckle::speckle::{add_speckle, SpeckleParams};
use despeckle::{load_image, save_image};

#[derive(Parser)]
#[command(name = "despeckle", version, about = "Speckle denoising toolkit and benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternArg {
    Rings,
    Stripes,
    RingsPlusStripes,
}

impl From<PatternArg> for PhantomPattern {
    fn from(p: PatternArg) -> Self {
        match p {
            PatternArg::Rings => PhantomPattern::Rings,
            PatternArg::Stripes => PhantomPattern::Stripes,
            PatternArg::RingsPlusStripes => PhantomPattern::RingsPlusStripes,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Coherence,
    Pm,
    Lee,
    Kuan,
    Frost,
    Median,
    Tv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic phantom image
    Phantom {
        #[arg(long, default_value_t = 256)]
        width: usize,
        #[arg(long, default_value_t = 256)]
        height: usize,
        #[arg(long, value_enum, default_value = "rings-plus-stripes")]
        pattern: PatternArg,
        #[arg(long, default_value_t = 12.0)]
        frequency: f64,
        #[arg(long, default_value_t = 0.45)]
        contrast: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Add multiplicative speckle noise to an image
    Noise {
        input: PathBuf,
        #[arg(long, default_value_t = 0.02)]
        variance: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Denoise an image with the proposed pipeline or a baseline filter
    Denoise {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "coherence")]
        method: MethodArg,
        #[arg(long, default_value_t = 10)]
        iters: usize,
        #[arg(long, default_value_t = 0.2)]
        dt: f64,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        #[arg(long, default_value_t = 1.2)]
        sigma: f64,
        #[arg(long, default_value_t = 5.5)]
        rho: f64,
        /// Contrast parameter of the Perona-Malik diffusivity
        #[arg(long, default_value_t = 0.01)]
        k: f64,
        #[arg(long)]
        equalize: bool,
        #[arg(long, default_value_t = 1.25)]
        lambda_cap: f64,
        /// Window radius for Lee/Kuan/Frost/median
        #[arg(long)]
        radius: Option<usize>,
        /// Relative noise variance for Lee/Kuan
        #[arg(long, default_value_t = 0.02)]
        noise_var: f64,
        #[arg(long, default_value_t = 2.0)]
        damping: f64,
        #[arg(long, default_value_t = 1.0)]
        tv_weight: f64,
        #[arg(long, default_value_t = 1e-3)]
        tv_epsilon: f64,
        #[arg(long)]
        tv_step: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print MSE, PSNR, and MSSIM for a (reference, candidate) pair
    Metrics {
        reference: PathBuf,
        candidate: PathBuf,
    },
    /// Run the full comparative benchmark on a speckled phantom
    Bench {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.02)]
        variance: f64,
        #[arg(long, value_enum, default_value = "tsv")]
        format: FormatArg,
        /// Report path; prints to stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run() -> despeckle::Result<()> {
    match Cli::parse().command {
        Command::Phantom {
            width,
            height,
            pattern,
            frequency,
            contrast,
            seed,
            out,
        } => {
            let spec =
                PhantomSpec::new(width, height, pattern.into(), frequency, contrast, seed)?;
            save_image(&generate_phantom(&spec), out)
        }
        Command::Noise {
            input,
            variance,
            seed,
            out,
        } => {
            let img = load_image(input)?;
            let params = SpeckleParams::new(variance, seed)?;
            save_image(&add_speckle(&img, &params), out)
        }
        Command::Denoise {
            input,
            method,
            iters,
            dt,
            c,
            sigma,
            rho,
            k,
            equalize,
            lambda_cap,
            radius,
            noise_var,
            damping,
            tv_weight,
            tv_epsilon,
            tv_step,
            out,
        } => {
            let img = load_image(input)?;
            let window = |default: usize| WindowSpec::new(radius.unwrap_or(default));
            let restored = match method {
                MethodArg::Coherence => {
                    let cfg = PipelineConfig {
                        equalize,
                        coherence: CoherenceParams::new(c, sigma, rho, dt, iters, lambda_cap)?,
                        log_floor: SpeckleParams::DEFAULT_FLOOR,
                    };
                    run_pipeline(&img, &cfg)?
                }
                MethodArg::Pm => perona_malik(&img, &PmParams::new(k, sigma, dt, iters)?)?,
                MethodArg::Lee => lee_filter(&img, &window(2)?, noise_var),
                MethodArg::Kuan => kuan_filter(&img, &window(2)?, noise_var),
                MethodArg::Frost => frost_filter(&img, &window(2)?, damping),
                MethodArg::Median => median_filter(&img, &window(1)?),
                MethodArg::Tv => {
                    let step =
                        tv_step.unwrap_or(1.0 / (8.0 / tv_epsilon + tv_weight));
                    tv_denoise(&img, &TvParams::new(tv_weight, step, iters, tv_epsilon)?)
                }
            };
            save_image(&restored, out)
        }
        Command::Metrics {
            reference,
            candidate,
        } => {
            let a = load_image(reference)?;
            let b = load_image(candidate)?;
            let m = report(&a, &b)?;
            println!("mse\t{:.6}", m.mse);
            println!("psnr_db\t{:.4}", m.psnr);
            println!("mssim\t{:.4}", m.mssim);
            Ok(())
        }
        Command::Bench {
            seed,
            variance,
            format,
            out,
        } => {
            let spec = PhantomSpec::benchmark_default(seed);
            let noise = SpeckleParams::new(variance, seed)?;
            let cfg = PipelineConfig::default();
            let baselines = BaselineSettings::for_noise_variance(variance);
            let result = run_benchmark(&spec, &noise, &cfg, &baselines)?;
            let fmt = match format {
                FormatArg::Tsv => ReportFormat::Tsv,
                FormatArg::Markdown => ReportFormat::Markdown,
            };
            match out {
                Some(path) => write_report(&result, path, fmt),
                None => {
                    print!("{}", render_report(&result, fmt));
                    Ok(())
                }
            }
        }
    }
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
