//! Analytic routing shared by the commands: closed forms for the
//! built-in model under exponential measurement, the rational-transform
//! route for custom Hamiltonians, and the renewal/quadrature route for
//! every other protocol.

use crate::config::{Model, Physics};
use crate::error::CliError;
use qreset_core::jaynes_cummings::{
    moments_scheme1, moments_scheme2, pdf_scheme1, pdf_scheme2, survival_transform,
    JcSector,
};
use qreset_core::laplace::{TalbotConfig, TimeDomain};
use qreset_core::twolevel::{poisson_stats, ProtocolTransforms};
use qreset_core::{DetectionScheme, FirstDetectionStats};

/// The built-in sector at a given measurement rate.
pub fn sector_at(physics: &Physics, r: f64) -> Result<JcSector, CliError> {
    match physics.model {
        Model::BuiltIn { g, n } => JcSector::new(g, n, 1.0, r).map_err(Into::into),
        Model::Custom { .. } => Err(CliError::Usage(
            "built-in sector requested for a custom model".into(),
        )),
    }
}

/// Closed-form detection statistics under exponential measurement at
/// rate `r` (residue route for the built-in model, resolvent route for a
/// custom Hamiltonian).  Core error type so it can sit inside optimiser
/// closures.
pub fn exponential_stats_core(
    physics: &Physics,
    r: f64,
) -> qreset_core::Result<FirstDetectionStats> {
    match physics.model {
        Model::BuiltIn { g, n } => {
            let sector = JcSector::new(g, n, 1.0, r)?;
            match physics.scheme {
                DetectionScheme::Scheme1 => moments_scheme1(&sector),
                DetectionScheme::Scheme2 => moments_scheme2(&sector),
            }
        }
        Model::Custom { .. } => poisson_stats(&physics.hamiltonian, physics.scheme, r),
    }
}

/// [`exponential_stats_core`] with command-level error mapping.
pub fn exponential_stats(
    physics: &Physics,
    r: f64,
) -> Result<FirstDetectionStats, CliError> {
    exponential_stats_core(physics, r).map_err(Into::into)
}

/// Analytic mean detection time for any protocol, when finite.
pub fn analytic_mean(physics: &Physics) -> Result<f64, CliError> {
    if physics.is_exponential() {
        return Ok(exponential_stats(physics, physics.rate)?.mean);
    }
    let pt = ProtocolTransforms::new(&physics.hamiltonian, physics.wait)?;
    pt.mean_detection_time(physics.scheme).map_err(Into::into)
}

/// Closed-form survival curve under exponential measurement.  Only the
/// built-in model carries a rational transform with known poles; custom
/// Hamiltonians report the curve as unavailable.
pub fn exponential_survival_curve(physics: &Physics) -> Result<TimeDomain, CliError> {
    if !physics.is_exponential() {
        return Err(CliError::Usage(
            "closed survival curve needs the exponential protocol".into(),
        ));
    }
    match physics.model {
        Model::BuiltIn { .. } => {
            let transform =
                survival_transform(&sector_at(physics, physics.rate)?, physics.scheme)?;
            transform.time_domain().map_err(Into::into)
        }
        Model::Custom { .. } => Err(CliError::Usage(
            "closed survival curve is only available for the built-in model".into(),
        )),
    }
}

/// Evaluates the detection density over a grid: the residue closed form
/// for the built-in model under exponential measurement, the Talbot
/// route through the renewal transforms otherwise.  Inversion failures
/// are collected and reported with every failing grid point.
pub fn density_over_grid(physics: &Physics, ts: &[f64]) -> Result<Vec<f64>, CliError> {
    if physics.model.is_builtin() && physics.is_exponential() {
        let sector = sector_at(physics, physics.rate)?;
        return ts
            .iter()
            .map(|&t| {
                match physics.scheme {
                    DetectionScheme::Scheme1 => pdf_scheme1(&sector, t),
                    DetectionScheme::Scheme2 => pdf_scheme2(&sector, t),
                }
                .map_err(Into::into)
            })
            .collect();
    }

    let pt = ProtocolTransforms::new(&physics.hamiltonian, physics.wait)?;
    let cfg = TalbotConfig::default();
    let mut values = Vec::with_capacity(ts.len());
    let mut unstable: Vec<f64> = Vec::new();
    for &t in ts {
        match pt.density_at(physics.scheme, t, cfg) {
            Ok(v) => values.push(v),
            Err(qreset_core::Error::InversionUnstable { .. }) => unstable.push(t),
            Err(e) => return Err(e.into()),
        }
    }
    if !unstable.is_empty() {
        let listed: Vec<String> = unstable.iter().map(|t| format!("{t}")).collect();
        return Err(CliError::Numerical(format!(
            "transform inversion unstable at t = [{}]",
            listed.join(", ")
        )));
    }
    Ok(values)
}

/// Probability that detection happens by `t_max`, via the route matching
/// [`density_over_grid`].
pub fn mass_up_to(physics: &Physics, t_max: f64) -> Result<f64, CliError> {
    if physics.model.is_builtin() && physics.is_exponential() {
        let curve = exponential_survival_curve(physics)?;
        return Ok(1.0 - curve.eval(t_max));
    }
    let pt = ProtocolTransforms::new(&physics.hamiltonian, physics.wait)?;
    let survival = pt.survival_at(physics.scheme, t_max, TalbotConfig::default())?;
    Ok(1.0 - survival)
}

/// Default end of a pdf time grid: ten decay times under exponential
/// measurement, twenty mean detection times otherwise.
pub fn default_tmax(physics: &Physics) -> Result<f64, CliError> {
    if physics.is_exponential() {
        let stats = exponential_stats(physics, physics.rate)?;
        return Ok(10.0 * stats.decay_time);
    }
    match analytic_mean(physics) {
        Ok(mean) => Ok(20.0 * mean),
        Err(_) => Err(CliError::Usage(
            "no finite analytic scale for this protocol; pass --tmax explicitly".into(),
        )),
    }
}

/// Uniform grid of `n >= 2` points over `[0, t_max]`.
pub fn time_grid(t_max: f64, n: usize) -> Result<Vec<f64>, CliError> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(CliError::Usage(format!(
            "--tmax must be positive and finite, got {t_max}"
        )));
    }
    if n < 2 {
        return Err(CliError::Usage(format!(
            "--grid needs at least two points, got {n}"
        )));
    }
    Ok((0..n)
        .map(|i| t_max * i as f64 / (n - 1) as f64)
        .collect())
}
