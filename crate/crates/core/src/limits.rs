use serde::{Deserialize, Serialize};

/// Size guards for the brute-force parts of the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest Cartesian grid enumerated by the coefficient formula.
    pub max_grid: u64,
    /// Dense expansion: maximum number of variables.
    pub max_expand_vars: usize,
    /// Dense expansion: maximum total degree.
    pub max_expand_degree: u64,
    /// Largest exhaustive search, counted in (instance, parameter) pairs.
    pub max_instances: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_grid: 10_000_000,
            max_expand_vars: 4,
            max_expand_degree: 24,
            max_instances: 100_000_000,
        }
    }
}
