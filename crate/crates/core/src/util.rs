//! Small numeric helpers shared across modules.

use alloc::vec::Vec;

/// `⟨x⟩ = (1 + |x|²)^{1/2}` for a squared length already in hand.
#[inline]
pub fn bracket_of_sq(norm_sq: f64) -> f64 {
    libm::sqrt(1.0 + norm_sq)
}

/// Pairwise tree reduction with a fixed shape. The shape depends only on the
/// slice length, so sums are reproducible no matter how callers were
/// scheduled, and rounding error grows like `O(log n)` instead of `O(n)`.
pub fn tree_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            tree_sum(&values[..mid]) + tree_sum(&values[mid..])
        }
    }
}

/// Deterministic `ℓ^q` assembly of non-negative terms; `q = ∞` is a sup.
pub fn lq_combine(terms: &[f64], q: f64) -> f64 {
    if terms.is_empty() {
        return 0.0;
    }
    if q.is_infinite() {
        let mut m = 0.0f64;
        for &t in terms {
            m = m.max(t);
        }
        return m;
    }
    let powered: Vec<f64> = terms.iter().map(|&t| libm::pow(t, q)).collect();
    libm::pow(tree_sum(&powered), 1.0 / q)
}

/// FNV-1a over a byte stream; used for stable config hashes in filenames
/// and reports.
#[derive(Clone, Copy)]
pub struct Fnv1a(u64);

impl Fnv1a {
    pub fn new() -> Self {
        Fnv1a(0xcbf2_9ce4_8422_2325)
    }

    pub fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    pub fn finish(&self) -> u64 {
        self.0
    }
}

impl Default for Fnv1a {
    fn default() -> Self {
        Self::new()
    }
}
