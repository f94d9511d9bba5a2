//! Brute-force ground truth: Cayley-graph sphere counts, minimal sizes over
//! congruence classes, and Parry's closed-form series for the even-trace
//! subgroup `<a, tat^-1, t>`.

mod bfs;
mod class_min;
mod compare;
mod parry;

pub use bfs::{ball_bfs, ball_bfs_limited, ball_elements, SphereCounts, DEFAULT_MAX_ELEMENTS};
pub use class_min::{
    class_minimum, class_minimum_limited, min_size_over_class, ClassMinimum, DEFAULT_MAX_DP_STATES,
};
pub use compare::{compare_series, Convention, SeriesComparison};
pub use parry::{parry_series, Term, PARRY_DENOMINATOR_FACTORS, PARRY_NUMERATOR_TERMS};

use crate::error::Result;
use crate::sol_language::SolConstants;

/// The fellow-traveler constants for trace `T`, with the remainder bound
/// evaluated at language parameter `n`.
pub fn sol_constants(trace: i64, n: u64) -> Result<SolConstants> {
    SolConstants::new(trace, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_for_trace_three() {
        let c = sol_constants(3, 2).unwrap();
        assert_eq!(
            (c.b, c.l, c.k, c.n, c.fellow_constant),
            (30, 150, 1671, 165, 27321)
        );
        let m = sol_constants(-3, 2).unwrap();
        assert_eq!(
            (m.b, m.l, m.k, m.n, m.fellow_constant),
            (30, 150, 1671, 165, 27321)
        );
        let four = sol_constants(4, 0).unwrap();
        let four = sol_constants(4, four.n).unwrap();
        assert_eq!(four.c, 2 * four.n + 2 * four.n * 6);
        assert!(sol_constants(2, 1).is_err());
    }
}
