use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::scalar::is_prime;

/// The Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = 2_305_843_009_213_693_951;

/// Largest prime below 2^61 that is 1 mod 4, so that -1 is a square and
/// Fermat-type loci have plenty of F_p points.
pub const PRIME_1_MOD_4: u64 = 2_305_843_009_213_693_921;

pub const DEFAULT_TRIALS: usize = 20;

/// Prime field, trial count and seed for every randomized step.
///
/// Randomness contract: the stream for a step is a ChaCha8 generator keyed by
/// `mix(seed, fnv1a(label), trial)`, so each trial's draws depend only on
/// `(seed, label, trial)` and never on scheduling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub prime: u64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            prime: DEFAULT_PRIME,
            trials: DEFAULT_TRIALS,
            seed: 0,
        }
    }
}

impl SampleConfig {
    pub fn new(prime: u64, trials: usize, seed: u64) -> Result<Self> {
        let cfg = SampleConfig {
            prime,
            trials,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.prime < 3 || !is_prime(self.prime) {
            return Err(Error::BadPrime {
                prime: self.prime,
                reason: "not an odd prime".into(),
            });
        }
        if self.prime >= 1 << 62 {
            return Err(Error::BadPrime {
                prime: self.prime,
                reason: "primes must stay below 2^62".into(),
            });
        }
        if self.trials == 0 {
            return Err(Error::Invalid("at least one trial is required".into()));
        }
        Ok(())
    }

    pub fn with_prime(self, prime: u64) -> Self {
        SampleConfig { prime, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        SampleConfig { seed, ..self }
    }

    pub fn with_trials(self, trials: usize) -> Self {
        SampleConfig { trials, ..self }
    }

    /// Independent generator for trial `trial` of the step named `label`.
    pub fn trial_rng(&self, label: &str, trial: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        let words = [
            self.seed,
            fnv1a(label.as_bytes()),
            trial,
            splitmix(self.seed ^ trial.rotate_left(32)),
        ];
        for (chunk, w) in key.chunks_exact_mut(8).zip(words) {
            chunk.copy_from_slice(&splitmix(w).to_le_bytes());
        }
        ChaCha8Rng::from_seed(key)
    }

    /// Uniform point of F_p^n.
    pub fn random_point(&self, rng: &mut impl Rng, n: usize) -> Vec<u64> {
        (0..n).map(|_| rng.gen_range(0..self.prime)).collect()
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `log10((degree / prime)^trials)`, the Schwartz-Zippel failure bound.
pub fn log10_failure_bound(degree: u64, prime: u64, trials: usize) -> f64 {
    if degree == 0 {
        return f64::NEG_INFINITY;
    }
    trials as f64 * ((degree as f64).log10() - (prime as f64).log10())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = SampleConfig::default();
        cfg.validate().unwrap();
        assert!(is_prime(PRIME_1_MOD_4));
        assert_eq!(PRIME_1_MOD_4 % 4, 1);
        assert_eq!(PRIME_1_MOD_4 >> 60, 1);
        assert!(SampleConfig::new(15, 3, 0).is_err());
        assert!(SampleConfig::new(17, 0, 0).is_err());
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let cfg = SampleConfig::default();
        let draw = |label: &str, t: u64, seed: u64| {
            cfg.with_seed(seed).random_point(&mut cfg.with_seed(seed).trial_rng(label, t), 4)
        };
        assert_eq!(draw("a", 3, 0), draw("a", 3, 0));
        assert_ne!(draw("a", 3, 0), draw("a", 4, 0));
        assert_ne!(draw("a", 3, 0), draw("b", 3, 0));
        assert_ne!(draw("a", 3, 0), draw("a", 3, 1));
    }

    #[test]
    fn failure_bound_for_default_settings() {
        let b = log10_failure_bound(64, DEFAULT_PRIME, DEFAULT_TRIALS);
        assert!(b < -20.0);
    }
}
