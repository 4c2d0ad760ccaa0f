//! Size limits for the exhaustive enumeration entry points.

/// Limits applied by the enumeration-heavy operations.
///
/// Every cap violation is an explicit error, never a silent truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Largest carrier accepted by the central-element pipeline.
    pub carrier: usize,
    /// Largest carrier of a product algebra built by the checkers.
    pub product: usize,
    /// Largest carrier for full congruence-lattice enumeration.
    pub con_enum: usize,
    /// Abort threshold while closing the congruence lattice under joins.
    pub con_count: usize,
    /// Largest direct power (`|gen|^(|gen|^k)`) accepted by free-algebra generation.
    pub power: u64,
    /// Early stop on the size of a generated free algebra.
    pub free_size: usize,
    /// Maximum length of an extracted Maltsev chain.
    pub chain_len: usize,
    /// Maximum depth of a term occurring in an extracted chain.
    pub term_depth: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            carrier: 16,
            product: 64,
            con_enum: 12,
            con_count: 20_000,
            power: 1 << 20,
            free_size: 4096,
            chain_len: 64,
            term_depth: 16,
        }
    }
}

impl Caps {
    /// Caps scaled from a single carrier bound `n`: carrier and congruence
    /// enumeration accept carriers up to `n`, products up to `n^2`.
    pub fn with_carrier(n: usize) -> Self {
        Caps {
            carrier: n,
            product: n.saturating_mul(n),
            con_enum: n,
            ..Caps::default()
        }
    }
}
