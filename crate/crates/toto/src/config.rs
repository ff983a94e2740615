//! Parameters of a run, written next to its outputs.

use serde::{Deserialize, Serialize};
use toto_core::logic::{EfCaps, FingerprintCaps};
use toto_core::types::BuildOptions;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub fingerprint_max_size: usize,
    pub fingerprint_max_order: usize,
    pub ef_max_size: usize,
    pub ef_max_rounds: usize,
    pub max_types: usize,
}

impl Default for Caps {
    fn default() -> Self {
        let f = FingerprintCaps::default();
        let e = EfCaps::default();
        Self {
            fingerprint_max_size: f.max_size,
            fingerprint_max_order: f.max_order,
            ef_max_size: e.max_size,
            ef_max_rounds: e.max_rounds,
            max_types: BuildOptions::default().max_types,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub k: usize,
    pub seed_size: usize,
    /// Truncation order of the coefficient table.
    #[serde(rename = "N")]
    pub order: usize,
    pub caps: Caps,
    pub seed: u64,
    pub output_dir: String,
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        let positive = [
            ("k", self.k),
            ("seed-size", self.seed_size),
            ("N", self.order),
            ("fingerprint size cap", self.caps.fingerprint_max_size),
            ("fingerprint order cap", self.caps.fingerprint_max_order),
            ("EF size cap", self.caps.ef_max_size),
            ("EF rounds cap", self.caps.ef_max_rounds),
            ("type count cap", self.caps.max_types),
        ];
        match positive.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(CliError::Usage(format!("{name} must be positive"))),
            None => Ok(()),
        }
    }

    pub fn build_options(&self) -> BuildOptions {
        BuildOptions {
            seed_size: self.seed_size,
            caps: FingerprintCaps {
                max_order: self.caps.fingerprint_max_order,
                max_size: self.caps.fingerprint_max_size,
            },
            max_types: self.caps.max_types,
            ..BuildOptions::default()
        }
    }

    pub fn file_name(&self) -> String {
        format!("{}.config.json", self.command)
    }
}
