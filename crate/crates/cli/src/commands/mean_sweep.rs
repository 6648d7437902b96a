//! `mean-sweep`: mean, variance and decay time of the detection law per
//! measurement rate, with the grid argmin rows marked.

use super::support;
use crate::args::MeanSweepArgs;
use crate::config::Physics;
use crate::error::CliError;
use crate::output::Table;

pub fn run(args: &MeanSweepArgs) -> Result<Vec<u8>, CliError> {
    let physics = Physics::resolve(&args.physics)?;
    if !physics.is_exponential() {
        return Err(CliError::Usage(
            "mean-sweep varies the exponential measurement rate; \
             it needs --protocol exponential"
                .into(),
        ));
    }
    if !(args.r_min > 0.0) || !(args.r_max > args.r_min) {
        return Err(CliError::Usage(format!(
            "rate window must satisfy 0 < r-min < r-max, got [{}, {}]",
            args.r_min, args.r_max
        )));
    }
    if args.grid < 2 {
        return Err(CliError::Usage(format!(
            "--grid needs at least two rates, got {}",
            args.grid
        )));
    }

    let n = args.grid;
    let rates: Vec<f64> = (0..n)
        .map(|i| args.r_min + (args.r_max - args.r_min) * i as f64 / (n - 1) as f64)
        .collect();

    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    for &r in &rates {
        let stats = support::exponential_stats(&physics, r)?;
        rows.push(vec![r, stats.mean, stats.variance, stats.decay_time, 0.0, 0.0]);
    }

    // Mark the grid rows minimising the mean and the decay time.
    let argmin_by = |rows: &[Vec<f64>], col: usize| {
        rows.iter()
            .enumerate()
            .min_by(|a, b| a.1[col].total_cmp(&b.1[col]))
            .map(|(i, _)| i)
            .expect("grid has at least two rows")
    };
    let mean_at = argmin_by(&rows, 1);
    let decay_at = argmin_by(&rows, 3);
    rows[mean_at][4] = 1.0;
    rows[decay_at][5] = 1.0;

    let table = Table {
        columns: vec![
            "r",
            "mean",
            "variance",
            "decay_time",
            "mean_is_argmin",
            "decay_is_argmin",
        ],
        rows,
    };
    Ok(table.render(args.output.format))
}
