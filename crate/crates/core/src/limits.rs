//! Size bounds for the exponential oracles (Leibniz expansion, map enumeration).

use std::sync::OnceLock;

/// Default bound on `n` for Leibniz expansion and n-potent map enumeration.
pub const DEFAULT_MAX_N: usize = 8;

/// Environment variable that raises [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "CONDENSATION_KIT_MAX_N";

/// The active oracle bound: [`DEFAULT_MAX_N`], or the value of
/// `CONDENSATION_KIT_MAX_N` when that parses to something larger.
pub fn max_n() -> usize {
    static CACHED: OnceLock<usize> = OnceLock::new();
    *CACHED.get_or_init(|| {
        std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map_or(DEFAULT_MAX_N, |v| v.max(DEFAULT_MAX_N))
    })
}
