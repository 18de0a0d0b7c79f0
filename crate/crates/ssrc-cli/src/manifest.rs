//! Run manifest embedded verbatim in every output file header, so any
//! result can be reproduced from the file alone.

use serde::{Deserialize, Serialize};

/// Convention switches mirrored into every output.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Conventions {
    /// Weyl phase for the discrete lattice: "symmetric-half" or
    /// "paper-literal".
    pub weyl: String,
    /// Sphere kernel prefactor: "2l+1" or "l+1".
    pub kernel_prefactor: String,
    /// Sphere kernel transport axis: "x" or "matched-y".
    pub kernel_rotation: String,
    /// Continuous-variable regime threshold κ in ⟨n_a⟩ ≤ κ√N.
    pub cv_kappa: f64,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            weyl: "symmetric-half".into(),
            kernel_prefactor: "2l+1".into(),
            kernel_rotation: "x".into(),
            cv_kappa: ssrc_core::fock::DEFAULT_CV_KAPPA,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub output: String,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub conventions: Conventions,
    pub threads: usize,
}

impl RunManifest {
    pub fn new(command: impl Into<String>) -> Self {
        RunManifest {
            command: command.into(),
            inputs: Vec::new(),
            output: String::new(),
            seed: None,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            conventions: Conventions::default(),
            threads: crate::threads_from_env(),
        }
    }

    pub fn with_input(mut self, path: impl Into<String>) -> Self {
        self.inputs.push(path.into());
        self
    }

    pub fn with_output(mut self, path: impl Into<String>) -> Self {
        self.output = path.into();
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Single-line JSON for `#`-prefixed CSV headers.
    pub fn header_line(&self) -> String {
        format!("# {}", serde_json::to_string(self).expect("manifest serializes"))
    }
}
