use ciw_core::linalg::{is_prime, PrimeField};
use ciw_core::oracle::OracleConfig;
use ciw_core::DecideOptions;

pub const MIN_PRIME: u64 = 10_000;
pub const MIN_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Human,
    Records,
}

/// Settings shared by every subcommand, validated once.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub prime: PrimeField,
    pub seed: u64,
    pub trials: u32,
    pub oracle_enabled: bool,
    pub resource_cap: u64,
    pub output: OutputMode,
}

impl RunConfig {
    pub fn new(
        prime: u64,
        seed: u64,
        trials: u32,
        oracle_enabled: bool,
        resource_cap: u64,
        output: OutputMode,
    ) -> Result<Self, String> {
        if prime < MIN_PRIME || !is_prime(prime) {
            return Err(format!("--prime must be a prime >= {MIN_PRIME}, got {prime}"));
        }
        let prime = PrimeField::new(prime).map_err(|e| format!("--prime: {e}"))?;
        if trials == 0 {
            return Err("--trials must be at least 1".into());
        }
        if resource_cap < MIN_CAP {
            return Err(format!("--cap must be at least {MIN_CAP}, got {resource_cap}"));
        }
        Ok(Self {
            prime,
            seed,
            trials,
            oracle_enabled,
            resource_cap,
            output,
        })
    }

    pub fn oracle(&self) -> OracleConfig {
        OracleConfig {
            prime: self.prime,
            seed: self.seed,
            trials: self.trials,
            resource_cap: self.resource_cap,
            second_prime: None,
        }
    }

    pub fn decide_options(&self) -> DecideOptions {
        DecideOptions {
            oracle: self.oracle_enabled.then(|| self.oracle()),
            ..DecideOptions::default()
        }
    }

    pub fn records(&self) -> bool {
        self.output == OutputMode::Records
    }
}
