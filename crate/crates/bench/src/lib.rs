//! Shared fixtures for the benchmarks under `benches/`.

use flagcert_core::certificates::{load_certificate, Certificate};

/// Loads a certificate from the workspace `certs/` directory.
pub fn fixture(name: &str) -> Certificate {
    let path = format!("{}/../../certs/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    load_certificate(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}
