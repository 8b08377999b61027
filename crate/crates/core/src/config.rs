/// Size limits for exhaustive searches and cochain assembly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order accepted by the automorphism search.
    pub max_order: usize,
    /// Largest number of candidates any enumeration may visit.
    pub max_enum: u64,
    /// Largest cochain-space dimension assembled into a matrix.
    pub max_cochain_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_order: 24, max_enum: 1 << 20, max_cochain_dim: 6000 }
    }
}
