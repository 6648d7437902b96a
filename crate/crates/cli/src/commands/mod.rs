pub mod asymptotics;
pub mod mean_sweep;
pub mod optimal_rate;
pub mod pdf;
pub mod simulate;
pub mod support;
