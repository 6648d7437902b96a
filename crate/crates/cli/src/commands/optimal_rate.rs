//! `optimal-rate`: measurement rates minimising the mean detection time,
//! its variance and the late-time decay time, each located numerically
//! and — for the built-in model — cross-reported in closed form.

use super::support;
use crate::args::OptimalRateArgs;
use crate::config::Physics;
use crate::error::CliError;
use crate::output::render_report;
use qreset_core::jaynes_cummings::{minimize_maximal_time, optimal_rate};
use qreset_core::optimize::{find_bracket, minimize_scalar};
use qreset_core::twolevel::transition_coupling_squared;
use qreset_core::DetectionScheme;
use serde_json::{json, Value};

pub fn run(args: &OptimalRateArgs) -> Result<Vec<u8>, CliError> {
    let physics = Physics::resolve(&args.physics)?;
    if !physics.is_exponential() {
        return Err(CliError::Usage(
            "optimal-rate varies the exponential measurement rate; \
             it needs --protocol exponential"
                .into(),
        ));
    }

    // Characteristic rate scale: the transition coupling strength.
    let r_scale = transition_coupling_squared(&physics.hamiltonian).sqrt();
    if !(r_scale > 0.0) {
        return Err(CliError::Usage(
            "the two basis states are uncoupled; no detection ever happens".into(),
        ));
    }

    let numeric = |objective: &dyn Fn(f64) -> qreset_core::Result<f64>| -> Value {
        let attempt = || -> qreset_core::Result<(f64, f64)> {
            let bracket = find_bracket(objective, 0.3 * r_scale, 1.7)?;
            minimize_scalar(objective, &bracket, 1e-10)
        };
        match attempt() {
            Ok((rate, value)) => json!({ "rate": rate, "value": value }),
            Err(e) => json!({ "error": e.to_string() }),
        }
    };

    let mean_numeric =
        numeric(&|r| support::exponential_stats_core(&physics, r).map(|s| s.mean));
    let variance_numeric =
        numeric(&|r| support::exponential_stats_core(&physics, r).map(|s| s.variance));
    let decay_numeric =
        numeric(&|r| support::exponential_stats_core(&physics, r).map(|s| s.decay_time));

    let (mean_analytic, variance_analytic, decay_analytic) =
        if physics.model.is_builtin() {
            let sector = support::sector_at(&physics, 1.0)?;
            let mean = match optimal_rate(&sector, physics.scheme) {
                Ok((rate, value)) => json!({ "rate": rate, "value": value }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            let variance = match physics.scheme {
                // The scheme-1 variance 4/r^2 + r^2/(4 a^4), a = g sqrt(n),
                // is minimised at the same rate 2a as the mean.
                DetectionScheme::Scheme1 => {
                    let a = sector.coupling() * f64::from(sector.excitation()).sqrt();
                    json!({ "rate": 2.0 * a, "value": 2.0 / (a * a) })
                }
                DetectionScheme::Scheme2 => Value::Null,
            };
            let decay = match minimize_maximal_time(&sector) {
                Ok((rate, value)) => json!({ "rate": rate, "value": value }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            (mean, variance, decay)
        } else {
            (Value::Null, Value::Null, Value::Null)
        };

    let report = json!({
        "model": physics.model.label(),
        "scheme": physics.scheme_number(),
        "protocol": physics.protocol_label(),
        "mean_minimum": { "analytic": mean_analytic, "numeric": mean_numeric },
        "variance_minimum": { "analytic": variance_analytic, "numeric": variance_numeric },
        "decay_minimum": { "analytic": decay_analytic, "numeric": decay_numeric },
    });
    Ok(render_report(&report, args.output.format))
}
