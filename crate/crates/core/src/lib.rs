//! First-detection statistics of a two-level quantum system that is
//! repeatedly interrogated by projective measurements at random times.
//!
//! Between measurement attempts the system evolves unitarily under a 2x2
//! Hermitian Hamiltonian.  Each attempt asks "is the system in the detection
//! state?"; a failed attempt collapses the system onto the orthogonal state
//! and the protocol continues.  The crate provides
//!
//! - closed-form Laplace transforms of the survival probability and the
//!   first-detection density, for memoryless (Poissonian) attempts and for
//!   general renewal protocols (`twolevel`),
//! - explicit results for a resonant Jaynes-Cummings sector, including the
//!   resolvent cubic, scaled detection densities, moments and the optimal
//!   measurement rate (`jaynes_cummings`),
//! - numerical Laplace machinery: adaptive forward transforms, partial
//!   fraction inversion of rational transforms and fixed-contour Talbot
//!   inversion (`laplace`),
//! - reproducible Monte Carlo sampling of detection trajectories
//!   (`montecarlo`) and scalar minimization utilities (`optimize`).

pub mod error;
pub mod jaynes_cummings;
pub mod laplace;
pub mod montecarlo;
pub mod optimize;
pub mod qcore;
pub mod twolevel;

pub use error::{Error, Result};
pub use qcore::hamiltonian::TwoLevelHamiltonian;
pub use qcore::scheme::DetectionScheme;
pub use qcore::state::PureState;
pub use qcore::stats::FirstDetectionStats;
pub use qcore::waiting::WaitingTimeDistribution;
