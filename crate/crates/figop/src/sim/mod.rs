//! Deterministic grid-world exploration simulator.

pub mod env;
