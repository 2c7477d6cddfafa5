/// Explicit size caps. Exceeding any of them is an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest Hilbert-space dimension produced by tensor products.
    pub max_dim: usize,
    /// Largest function alphabet enumerated by the correlation lift.
    pub max_functions: usize,
    /// Largest exhaustive jammer sweep `|theta|^n`.
    pub max_sweep: usize,
    /// Largest `|X|^n * |Y|^n` enumeration for correlation-assisted codes.
    pub max_corr_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: 1024,
            max_functions: 256,
            max_sweep: 4096,
            max_corr_pairs: 4096,
        }
    }
}
