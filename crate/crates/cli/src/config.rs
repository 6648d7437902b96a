//! Resolution of raw flag values into validated run configuration:
//! Hamiltonian loading, protocol parsing, scheme selection and the
//! environment overrides for seed and worker count.

use crate::args::PhysicsArgs;
use crate::error::CliError;
use num_complex::Complex64;
use qreset_core::{DetectionScheme, TwoLevelHamiltonian, WaitingTimeDistribution};
use serde::Deserialize;
use std::path::Path;

/// Which Hamiltonian the run uses.
#[derive(Debug, Clone)]
pub enum Model {
    /// Built-in sector: coupling `g`, excitation number `n`.
    BuiltIn { g: f64, n: u32 },
    /// Hamiltonian loaded from a JSON file.
    Custom { label: String },
}

impl Model {
    pub fn label(&self) -> String {
        match self {
            Model::BuiltIn { g, n } => format!("jc(g={g}, n={n})"),
            Model::Custom { label } => label.clone(),
        }
    }

    pub fn is_builtin(&self) -> bool {
        matches!(self, Model::BuiltIn { .. })
    }
}

/// Fully resolved physics configuration shared by every command.
#[derive(Debug, Clone)]
pub struct Physics {
    pub model: Model,
    pub hamiltonian: TwoLevelHamiltonian,
    pub scheme: DetectionScheme,
    pub wait: WaitingTimeDistribution,
    pub rate: f64,
}

impl Physics {
    pub fn resolve(args: &PhysicsArgs) -> Result<Self, CliError> {
        let scheme = parse_scheme(args.scheme)?;
        let (model, hamiltonian) = parse_model(&args.model, args.g, args.n)?;
        let wait = parse_protocol(&args.protocol, args.r)?;
        Ok(Self {
            model,
            hamiltonian,
            scheme,
            wait,
            rate: args.r,
        })
    }

    pub fn is_exponential(&self) -> bool {
        matches!(self.wait, WaitingTimeDistribution::Exponential { .. })
    }

    pub fn protocol_label(&self) -> String {
        match self.wait {
            WaitingTimeDistribution::Exponential { rate } => {
                format!("exponential(r={rate})")
            }
            WaitingTimeDistribution::Gamma { shape, scale } => {
                format!("gamma(shape={shape}, scale={scale})")
            }
            WaitingTimeDistribution::Lomax { mu_tail, tau0 } => {
                format!("lomax(mu={mu_tail}, tau0={tau0})")
            }
        }
    }

    pub fn scheme_number(&self) -> u8 {
        match self.scheme {
            DetectionScheme::Scheme1 => 1,
            DetectionScheme::Scheme2 => 2,
        }
    }
}

fn parse_scheme(raw: u8) -> Result<DetectionScheme, CliError> {
    match raw {
        1 => Ok(DetectionScheme::Scheme1),
        2 => Ok(DetectionScheme::Scheme2),
        other => Err(CliError::Usage(format!(
            "--scheme must be 1 or 2, got {other}"
        ))),
    }
}

fn parse_model(
    raw: &str,
    g: f64,
    n: u32,
) -> Result<(Model, TwoLevelHamiltonian), CliError> {
    if raw == "jc" {
        let h = TwoLevelHamiltonian::jaynes_cummings(g, n, 1.0)
            .map_err(|e| CliError::Usage(format!("built-in model: {e}")))?;
        return Ok((Model::BuiltIn { g, n }, h));
    }
    let h = load_custom_hamiltonian(Path::new(raw))?;
    let label = format!("custom({raw})");
    Ok((Model::Custom { label }, h))
}

/// On-disk shape of a custom Hamiltonian: four complex entries as
/// `[re, im]` pairs plus the basis label of the state the run starts in.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HamiltonianFile {
    h11: [f64; 2],
    h12: [f64; 2],
    h21: [f64; 2],
    h22: [f64; 2],
    #[serde(default = "default_initial_state")]
    initial_state: String,
}

fn default_initial_state() -> String {
    "plus".to_owned()
}

fn load_custom_hamiltonian(path: &Path) -> Result<TwoLevelHamiltonian, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Usage(format!("cannot read model file {}: {e}", path.display()))
    })?;
    let file: HamiltonianFile = serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!("model file {}: {e}", path.display()))
    })?;
    let c = |p: [f64; 2]| Complex64::new(p[0], p[1]);
    let entries = match file.initial_state.as_str() {
        // The internal convention starts every run in the "plus" basis
        // state; starting from "minus" is the same problem with the two
        // basis labels swapped.
        "plus" => [[c(file.h11), c(file.h12)], [c(file.h21), c(file.h22)]],
        "minus" => [[c(file.h22), c(file.h21)], [c(file.h12), c(file.h11)]],
        other => {
            return Err(CliError::Usage(format!(
                "model file {}: initial_state must be \"plus\" or \"minus\", got {other:?}",
                path.display()
            )))
        }
    };
    TwoLevelHamiltonian::new(entries).map_err(|e| {
        CliError::Usage(format!("model file {}: {e}", path.display()))
    })
}

fn parse_protocol(raw: &str, r: f64) -> Result<WaitingTimeDistribution, CliError> {
    let parts: Vec<&str> = raw.split(':').collect();
    let usage = |msg: String| CliError::Usage(format!("--protocol {raw:?}: {msg}"));
    match parts.as_slice() {
        ["exponential"] => WaitingTimeDistribution::exponential(r)
            .map_err(|e| usage(e.to_string())),
        ["gamma", shape, scale] => {
            let shape = parse_positive(shape).map_err(&usage)?;
            let scale = parse_positive(scale).map_err(&usage)?;
            WaitingTimeDistribution::gamma(shape, scale).map_err(|e| usage(e.to_string()))
        }
        ["lomax", mu, tau0] => {
            let mu = parse_positive(mu).map_err(&usage)?;
            let tau0 = parse_positive(tau0).map_err(&usage)?;
            WaitingTimeDistribution::lomax(mu, tau0).map_err(|e| usage(e.to_string()))
        }
        _ => Err(usage(
            "expected \"exponential\", \"gamma:SHAPE:SCALE\" or \"lomax:MU:TAU0\"".into(),
        )),
    }
}

fn parse_positive(raw: &str) -> Result<f64, String> {
    let v: f64 = raw
        .parse()
        .map_err(|e| format!("{raw:?} is not a number ({e})"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} must be positive and finite"))
    }
}

/// Seed resolution: `QRESET_SEED` beats the flag when set.
pub fn resolve_seed(flag: u64) -> Result<u64, CliError> {
    resolve_env("QRESET_SEED", flag)
}

/// Worker resolution: `QRESET_WORKERS` beats the flag when set.
pub fn resolve_workers(flag: usize) -> Result<usize, CliError> {
    let workers = resolve_env("QRESET_WORKERS", flag)?;
    if workers == 0 {
        return Err(CliError::Usage(
            "worker count must be at least one".into(),
        ));
    }
    Ok(workers)
}

fn resolve_env<T: std::str::FromStr>(name: &str, flag: T) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    match std::env::var(name) {
        Ok(raw) => raw
            .trim()
            .parse()
            .map_err(|e| CliError::Usage(format!("{name}={raw:?}: {e}"))),
        Err(_) => Ok(flag),
    }
}
