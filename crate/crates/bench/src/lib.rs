//! Workloads shared by the criterion benches.

use braidkit::report::{run_suite, SuiteConfig, VerificationReport};
use braidkit::{build_model, Model, Result};

pub const MODELS: [&str; 4] = ["quantum_plane:2", "quantum_plane:3", "q_euclidean_4", "q_minkowski_4"];

/// A freshly built model, so caches start cold.
pub fn cold(name: &str) -> Model {
    build_model(name).expect("built-in model")
}

pub fn moments_upto(model: &Model, degree: usize) -> Result<usize> {
    (0..=degree).try_fold(0, |acc, m| Ok(acc + braidkit::integration::moments(model, m)?.len()))
}

pub fn suite(name: &str, max_degree: usize) -> VerificationReport {
    run_suite(&cold(name), SuiteConfig { max_degree, ..SuiteConfig::default() })
}
