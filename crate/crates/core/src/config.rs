use serde::{Deserialize, Serialize};

/// Bounds and switches shared by every engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Largest group whose elements may be streamed (and whose classes may be enumerated).
    pub enumeration_bound: u128,
    /// Largest group on which exhaustive element-scan oracles run.
    pub exhaustive_bound: u128,
    /// Largest group for the definitional brute-force subnormaliser.
    pub brute_force_bound: u128,
    /// Largest group for the element-level fusion scan; above it, conjugator search is used.
    pub fusion_scan_bound: u128,
    /// Largest number of Sylow conjugates scanned by `sylows_containing`.
    pub conjugate_scan_bound: u128,
    /// Largest orbit built by orbit–stabilizer computations.
    pub orbit_bound: u128,
    /// Largest class count accepted by the character-table engine.
    pub class_count_bound: usize,
    /// Largest group order accepted by the character-table engine.
    pub chartab_order_bound: u128,
    /// Number of candidates `ℓ ≡ 1 (mod e)` tried when searching the Dixon prime.
    pub dixon_prime_search: u64,
    pub seed: u64,
    /// Lifts every order bound.
    pub allow_large: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            enumeration_bound: 10_000_000,
            exhaustive_bound: 100_000,
            brute_force_bound: 100_000,
            fusion_scan_bound: 100_000,
            conjugate_scan_bound: 1_000_000,
            orbit_bound: 5_000_000,
            class_count_bound: 120,
            chartab_order_bound: 10_000_000,
            dixon_prime_search: 100_000,
            seed: crate::perm::DEFAULT_SEED,
            allow_large: false,
        }
    }
}

impl RunConfig {
    pub fn check(&self, what: &str, value: u128, bound: u128) -> crate::Result<()> {
        if value > bound && !self.allow_large {
            return Err(crate::Error::bound(what, value, bound));
        }
        Ok(())
    }

    pub fn validate(&self) -> crate::Result<()> {
        let all_positive = [
            self.enumeration_bound,
            self.exhaustive_bound,
            self.brute_force_bound,
            self.fusion_scan_bound,
            self.conjugate_scan_bound,
            self.orbit_bound,
            self.chartab_order_bound,
        ]
        .iter()
        .all(|&b| b > 0)
            && self.class_count_bound > 0
            && self.dixon_prime_search > 0;
        if !all_positive {
            return Err(crate::Error::InvalidInput("all bounds must be positive".into()));
        }
        Ok(())
    }
}
