//! Shared fixtures for the benchmarks.

use sinr_sched::{generate, GeneratorSpec, LengthDist, LinkInstance, ModelKind};

/// Random instance at moderate density with length diversity 64.
pub fn instance(n: usize, model: ModelKind, seed: u64) -> LinkInstance {
    let side = 4.0 * (n as f64).sqrt() * 3.0;
    let spec = GeneratorSpec::new(n, seed, side, LengthDist::Lambda { lambda: 64.0, min: 1.0 }).with_model(model);
    generate(&spec).expect("fixture spec is valid")
}
