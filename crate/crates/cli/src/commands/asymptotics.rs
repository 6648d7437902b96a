//! `asymptotics`: the small-time law, the late-time law and (under
//! exponential measurement) the decay time of the detection density.

use super::support;
use crate::args::AsymptoticsArgs;
use crate::config::Physics;
use crate::error::CliError;
use crate::output::render_report;
use qreset_core::jaynes_cummings::late_time_amplitude;
use qreset_core::twolevel::ProtocolTransforms;
use qreset_core::{DetectionScheme, Error};
use serde_json::{json, Value};

pub fn run(args: &AsymptoticsArgs) -> Result<Vec<u8>, CliError> {
    let physics = Physics::resolve(&args.physics)?;

    let small_t_order = match physics.scheme {
        DetectionScheme::Scheme1 => 2,
        DetectionScheme::Scheme2 => 0,
    };

    let (small_t_coefficient, tail, t_m): (f64, Value, Option<f64>) =
        if physics.is_exponential() {
            let stats = support::exponential_stats(&physics, physics.rate)?;
            let amplitude = if physics.model.is_builtin() {
                let sector = support::sector_at(&physics, physics.rate)?;
                Some(late_time_amplitude(&sector, physics.scheme)?)
            } else {
                None
            };
            let tail = json!({
                "type": "exponential_decay",
                "decay_time": stats.decay_time,
                "amplitude": amplitude,
            });
            (stats.small_t_coefficient, tail, Some(stats.decay_time))
        } else {
            let pt = ProtocolTransforms::new(&physics.hamiltonian, physics.wait)?;
            let coefficient = pt.small_time_coefficient(physics.scheme)?;
            let tail = match pt.tail_asymptote(physics.scheme) {
                Ok((amplitude, exponent)) => json!({
                    "type": "power_law",
                    "amplitude": amplitude,
                    "exponent": exponent,
                }),
                // The waiting law may genuinely not have a power-law
                // regime; the report carries the reason verbatim.
                Err(e @ (Error::NotHeavyTailed | Error::IntegerExponent { .. })) => {
                    json!({ "type": "unavailable", "error": e.to_string() })
                }
                Err(e) => return Err(e.into()),
            };
            (coefficient, tail, None)
        };

    let report = json!({
        "model": physics.model.label(),
        "scheme": physics.scheme_number(),
        "protocol": physics.protocol_label(),
        "small_t_coefficient": small_t_coefficient,
        "small_t_order": small_t_order,
        "tail": tail,
        "t_m": t_m,
    });
    Ok(render_report(&report, args.output.format))
}
