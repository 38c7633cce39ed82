//! Size guards. Every potentially explosive enumeration checks one of these
//! limits and returns `SizeLimitExceeded` instead of running away.

/// Enumeration and construction limits.
///
/// `step_nodes` bounds the number of recursion nodes a single layer
/// enumeration may visit (the candidate-subset budget); `layer_base` bounds
/// the size of the poset a layer step enumerates over; `upset_base` bounds
/// the size of posets whose full upset lattice is materialized.
#[derive(Clone, Debug)]
pub struct Caps {
    /// Max elements of the poset a Vietoris step enumerates subsets over.
    pub layer_base: usize,
    /// Max recursion nodes per layer enumeration.
    pub step_nodes: u64,
    /// Max poset size for full upset-lattice enumeration.
    pub upset_base: usize,
    /// Max element count for products, pullbacks and generated posets.
    pub product_size: usize,
    /// Max distinct variables for exhaustive valuation sweeps.
    pub valuation_vars: usize,
    /// Max poset size for isomorphism search.
    pub iso_size: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            layer_base: 24,
            step_nodes: 1_000_000,
            upset_base: 24,
            product_size: 4096,
            valuation_vars: 3,
            iso_size: 64,
        }
    }
}

impl Caps {
    /// Generous limits for exhaustive test suites.
    pub fn roomy() -> Self {
        Caps {
            layer_base: 4096,
            step_nodes: 200_000_000,
            upset_base: 64,
            product_size: 1 << 16,
            valuation_vars: 4,
            iso_size: 4096,
        }
    }
}
