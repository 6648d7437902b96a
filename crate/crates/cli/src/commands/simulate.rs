//! `simulate`: run a trajectory ensemble, write its histogram (CSV) and
//! a summary (JSON) comparing the sample with the analytic law where one
//! is available.  A mean z-score beyond four flags the run as failed.

use super::support;
use crate::args::SimulateArgs;
use crate::config::{resolve_seed, resolve_workers, Physics};
use crate::error::CliError;
use crate::output::{render_json, Table};
use qreset_core::montecarlo::{
    ks_critical_1pct, log_log_tail_fit, run_ensemble, TrajectoryConfig,
};
use qreset_core::WaitingTimeDistribution;
use serde_json::json;

pub struct SimulateOutput {
    /// Histogram table (CSV bytes).
    pub histogram: Vec<u8>,
    /// Summary report (JSON bytes).
    pub summary: Vec<u8>,
    /// Set when the analytic comparison failed (|z| > 4); the caller
    /// still writes both outputs before exiting nonzero.
    pub comparison_failure: Option<String>,
}

pub fn run(args: &SimulateArgs) -> Result<SimulateOutput, CliError> {
    let physics = Physics::resolve(&args.physics)?;
    let seed = resolve_seed(args.seed)?;
    let workers = resolve_workers(args.workers)?;

    let mut cfg = TrajectoryConfig::new(
        physics.hamiltonian.clone(),
        physics.scheme,
        physics.wait,
        args.trajectories,
        seed,
    )
    .map_err(|e| CliError::Usage(e.to_string()))?
    .with_workers(workers)
    .map_err(|e| CliError::Usage(e.to_string()))?
    .with_bins(args.bins)
    .map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(t) = args.tmax {
        cfg = cfg
            .with_cutoff(t)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }

    let emp = run_ensemble(&cfg)?;

    let mut rows = Vec::with_capacity(emp.bin_counts().len());
    let densities = emp.densities();
    for (i, (&count, &density)) in
        emp.bin_counts().iter().zip(&densities).enumerate()
    {
        rows.push(vec![emp.bin_center(i), count as f64, density]);
    }
    let histogram = Table {
        columns: vec!["bin_center", "count", "density"],
        rows,
    }
    .render(crate::args::OutputFormat::Csv);

    // Analytic comparison, where the protocol admits one.
    let analytic_mean = support::analytic_mean(&physics).ok();
    let z_score = match analytic_mean {
        Some(mean) if emp.detected_count() >= 2 && emp.std_error() > 0.0 => {
            Some((emp.mean() - mean) / emp.std_error())
        }
        _ => None,
    };
    let (ks, ks_critical) = if physics.is_exponential() {
        match support::exponential_survival_curve(&physics) {
            Ok(curve) => (
                Some(emp.ks_statistic(|t| 1.0 - curve.eval(t))),
                Some(ks_critical_1pct(args.trajectories)),
            ),
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };

    // Power-law tail fit for the heavy-tailed protocol.
    let tail = match physics.wait {
        WaitingTimeDistribution::Lomax { .. } => emp
            .max_detection_time()
            .and_then(|t_max| log_log_tail_fit(&emp, (t_max / 100.0, t_max), 20).ok())
            .map(|fit| {
                json!({
                    "slope": fit.slope,
                    "amplitude": fit.amplitude,
                    "window": [fit.window.0, fit.window.1],
                    "bins_used": fit.bins_used,
                })
            }),
        _ => None,
    };

    let mut warnings: Vec<String> = Vec::new();
    if emp.cutoff_warning() {
        warnings.push(format!(
            "cutoff_too_small: censored fraction {} exceeds 1e-3; \
             raise --tmax for unbiased tail statistics",
            emp.censored_fraction()
        ));
    }

    let summary = json!({
        "model": physics.model.label(),
        "scheme": physics.scheme_number(),
        "protocol": physics.protocol_label(),
        "trajectories": args.trajectories,
        "seed": seed,
        "t_cutoff": emp.t_cutoff(),
        "bins": args.bins,
        "detected": emp.detected_count(),
        "censored": emp.censored_count(),
        "censored_fraction": emp.censored_fraction(),
        "mean": emp.mean(),
        "std_error": emp.std_error(),
        "mean_attempts": emp.mean_attempts(),
        "analytic_mean": analytic_mean,
        "z_score": z_score,
        "ks_statistic": ks,
        "ks_critical_1pct": ks_critical,
        "tail": tail,
        "warnings": warnings,
    });

    let comparison_failure = match z_score {
        Some(z) if z.abs() > 4.0 => Some(format!(
            "ensemble mean {} disagrees with the analytic value {} (z = {z:.2})",
            emp.mean(),
            analytic_mean.expect("z-score implies an analytic mean"),
        )),
        _ => None,
    };

    Ok(SimulateOutput {
        histogram,
        summary: render_json(&summary),
        comparison_failure,
    })
}
