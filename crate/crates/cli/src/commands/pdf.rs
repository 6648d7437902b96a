//! `pdf`: tabulate the first-detection time density over a time grid and
//! report the captured probability mass in a trailing JSON summary.

use super::support;
use crate::args::{OutputFormat, PdfArgs};
use crate::config::Physics;
use crate::error::CliError;
use crate::output::{render_json, Table};
use serde_json::json;

/// Rendered command output: the table plus a summary that is appended to
/// stdout when the table goes to a file.
pub struct PdfOutput {
    pub table: Vec<u8>,
    pub summary: Vec<u8>,
    pub format: OutputFormat,
}

pub fn run(args: &PdfArgs) -> Result<PdfOutput, CliError> {
    let physics = Physics::resolve(&args.physics)?;
    let t_max = match args.tmax {
        Some(t) => t,
        None => support::default_tmax(&physics)?,
    };
    let ts = support::time_grid(t_max, args.grid)?;
    let pdf = support::density_over_grid(&physics, &ts)?;
    let mass = support::mass_up_to(&physics, t_max)?;

    let summary = json!({
        "model": physics.model.label(),
        "scheme": physics.scheme_number(),
        "protocol": physics.protocol_label(),
        "t_max": t_max,
        "points": ts.len(),
        "normalization": mass,
    });

    let rows: Vec<Vec<f64>> = ts
        .iter()
        .zip(&pdf)
        .map(|(&t, &f)| vec![t, f])
        .collect();
    let table = Table {
        columns: vec!["t", "pdf"],
        rows,
    };

    let rendered = match args.output.format {
        OutputFormat::Csv => table.render(OutputFormat::Csv),
        OutputFormat::Json => {
            // A single JSON document carries the table and the summary.
            let value = json!({
                "columns": table.columns,
                "rows": table.rows,
                "summary": summary,
            });
            render_json(&value)
        }
    };
    Ok(PdfOutput {
        table: rendered,
        summary: render_json(&summary),
        format: args.output.format,
    })
}
