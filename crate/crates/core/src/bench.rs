//! The benchmark harness: phantom -> speckle -> every filter -> metrics,
//! reported as TSV or markdown.

use std::io::Write;
use std::path::Path;

use crate::baselines::{
    frost_filter, kuan_filter, lee_filter, median_filter, tv_denoise, TvParams, WindowSpec,
};
use crate::error::{Error, Result};
use crate::metrics::{report, MetricsReport};
use crate::phantom::{generate_phantom, PhantomSpec};
use crate::pipeline::{run_pipeline, PipelineConfig};
use crate::speckle::{add_speckle, SpeckleParams};

#[derive(Debug, Clone)]
pub struct BaselineSettings {
    pub adaptive_window: WindowSpec,
    pub median_window: WindowSpec,
    pub frost_damping: f64,
    /// Relative noise variance handed to Lee/Kuan; no blind estimation.
    pub noise_var: f64,
    pub tv: TvParams,
}

impl BaselineSettings {
    pub fn for_noise_variance(noise_var: f64) -> Self {
        Self {
            adaptive_window: WindowSpec { radius: 2 },
            median_window: WindowSpec { radius: 1 },
            frost_damping: 2.0,
            noise_var,
            tv: TvParams::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub method: String,
    pub metrics: MetricsReport,
}

/// All rows are computed against the same clean reference; the noisy input
/// gets its own baseline row.
#[derive(Debug, Clone)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Tsv,
    Markdown,
}

/// Run the comparative protocol: fixed method order Lee, Median, TV, Kuan,
/// Frost, Proposed, with the noisy input reported first.
pub fn run_benchmark(
    spec: &PhantomSpec,
    noise: &SpeckleParams,
    cfg: &PipelineConfig,
    baselines: &BaselineSettings,
) -> Result<BenchReport> {
    let clean = generate_phantom(spec);
    let noisy = add_speckle(&clean, noise);

    let mut rows = Vec::with_capacity(7);
    let mut push = |name: &str, img: &crate::image::ImageBuffer| -> Result<()> {
        rows.push(BenchRow {
            method: name.to_string(),
            metrics: report(&clean, img)?,
        });
        Ok(())
    };

    push("Noisy", &noisy)?;
    push(
        "Lee",
        &lee_filter(&noisy, &baselines.adaptive_window, baselines.noise_var),
    )?;
    push("Median", &median_filter(&noisy, &baselines.median_window))?;
    push("TV", &tv_denoise(&noisy, &baselines.tv))?;
    push(
        "Kuan",
        &kuan_filter(&noisy, &baselines.adaptive_window, baselines.noise_var),
    )?;
    push(
        "Frost",
        &frost_filter(&noisy, &baselines.adaptive_window, baselines.frost_damping),
    )?;
    push("Proposed", &run_pipeline(&noisy, cfg)?)?;

    Ok(BenchReport { rows })
}

fn fmt4(v: f64) -> String {
    format!("{v:.4}")
}

pub fn render_report(report: &BenchReport, format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Tsv => {
            out.push_str("method\tmse\tpsnr_db\tmssim\n");
            for row in &report.rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    row.method,
                    fmt4(row.metrics.mse),
                    fmt4(row.metrics.psnr),
                    fmt4(row.metrics.mssim)
                ));
            }
        }
        ReportFormat::Markdown => {
            out.push_str("| method | mse | psnr_db | mssim |\n");
            out.push_str("|---|---|---|---|\n");
            for row in &report.rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    row.method,
                    fmt4(row.metrics.mse),
                    fmt4(row.metrics.psnr),
                    fmt4(row.metrics.mssim)
                ));
            }
        }
    }
    out
}

pub fn write_report(
    report: &BenchReport,
    path: impl AsRef<Path>,
    format: ReportFormat,
) -> Result<()> {
    let path = path.as_ref();
    let rendered = render_report(report, format);
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(rendered.as_bytes()))
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
}
