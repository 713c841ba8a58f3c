//! Benchmark inputs shared by the criterion targets.

/// `(g, m)` instances of the verification suite, cheapest first.
pub const SUITE: [(u32, usize); 5] = [(1, 2), (0, 4), (1, 3), (0, 5), (0, 6)];

/// Instances small enough to time repeatedly.
pub fn quick_suite() -> impl Iterator<Item = (u32, usize)> {
    SUITE.into_iter().filter(|&(g, m)| 2 * g as usize + m <= 5)
}
