//! Domain types: states, Hamiltonians, detection schemes, waiting-time laws.

pub mod hamiltonian;
pub mod scheme;
pub mod state;
pub mod stats;
pub mod waiting;
