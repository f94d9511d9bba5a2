use serde::{Deserialize, Serialize};

use super::SphereCounts;
use crate::automata::series::poly_mul;
use crate::automata::RationalSeries;
use crate::error::Result;

/// Which counting convention the series matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Coefficients count elements of norm exactly `i`.
    Sphere,
    /// Coefficients count elements of norm at most `i`.
    Ball,
    Neither,
}

/// Coefficient-by-coefficient comparison of a series with sphere counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesComparison {
    pub series: String,
    pub trace: i64,
    pub generators: Vec<String>,
    /// Every generator counts as one letter.
    pub generator_weight: u32,
    pub radius: u32,
    pub expected: Vec<i128>,
    pub observed: Vec<u64>,
    /// `observed - expected` per coefficient.
    pub diffs: Vec<i128>,
    pub exact_match: bool,
    /// Indices above the numerator degree at which the denominator
    /// recurrence was checked.
    pub recurrence_indices: Vec<u32>,
    pub recurrence_holds: bool,
    /// Whether `D(z) * counts(z) = N(z)` holds at every index up to the
    /// radius; beyond the numerator degree this is the recurrence.
    pub numerator_identity_holds: bool,
    /// Indices where `(D * counts)_m != N_m`.
    pub identity_failures: Vec<u32>,
    pub convention: Convention,
}

impl SeriesComparison {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("comparison serialises")
    }
}

/// Compares the Taylor coefficients of `s` with `counts`, checks the linear
/// recurrence given by the denominator, and reports whether the series
/// counts spheres, balls or neither.
pub fn compare_series(s: &RationalSeries, counts: &SphereCounts) -> Result<SeriesComparison> {
    let len = counts.counts.len();
    let expected = s.coefficients(len)?;
    let observed: Vec<i128> = counts.counts.iter().map(|&c| c as i128).collect();
    let diffs: Vec<i128> = observed.iter().zip(&expected).map(|(o, e)| o - e).collect();
    let exact_match = diffs.iter().all(|&d| d == 0);

    let product = poly_mul(&s.denominator, &observed)?;
    let deg_n = s.numerator.len() - 1;
    let identity_failures: Vec<u32> = (0..len)
        .filter(|&m| product[m] != s.numerator.get(m).copied().unwrap_or(0))
        .map(|m| m as u32)
        .collect();
    let recurrence_indices: Vec<u32> = (deg_n + 1..len).map(|m| m as u32).collect();
    let recurrence_holds = recurrence_indices
        .iter()
        .all(|m| !identity_failures.contains(m));

    let balls: Vec<i128> = counts.ball_sizes().iter().map(|&c| c as i128).collect();
    let convention = if exact_match {
        Convention::Sphere
    } else if balls == expected {
        Convention::Ball
    } else {
        Convention::Neither
    };
    Ok(SeriesComparison {
        series: s.to_string(),
        trace: counts.trace,
        generators: counts.generators.iter().map(|g| g.to_string()).collect(),
        generator_weight: 1,
        radius: counts.radius,
        expected,
        observed: counts.counts.clone(),
        diffs,
        exact_match,
        recurrence_indices,
        recurrence_holds,
        numerator_identity_holds: identity_failures.is_empty(),
        identity_failures,
        convention,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(c: Vec<u64>) -> SphereCounts {
        SphereCounts {
            trace: 3,
            radius: c.len() as u32 - 1,
            generators: vec!["a".parse().unwrap()],
            counts: c,
        }
    }

    fn fib() -> RationalSeries {
        RationalSeries::new(vec![1], vec![1, -1, -1]).unwrap()
    }

    #[test]
    fn matching_inputs() {
        let r = compare_series(&fib(), &counts(vec![1, 1, 2, 3, 5, 8, 13])).unwrap();
        assert!(r.exact_match && r.recurrence_holds && r.numerator_identity_holds);
        assert!(r.diffs.iter().all(|&d| d == 0));
        assert_eq!(r.convention, Convention::Sphere);
        assert_eq!(r.recurrence_indices, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn perturbation_is_localised() {
        let r = compare_series(&fib(), &counts(vec![1, 1, 2, 3, 5, 9, 13])).unwrap();
        let nonzero: Vec<usize> = (0..r.diffs.len()).filter(|&i| r.diffs[i] != 0).collect();
        assert_eq!(nonzero, vec![5]);
        assert!(!r.recurrence_holds);
        assert_eq!(r.convention, Convention::Neither);
    }

    #[test]
    fn ball_convention_is_diagnosed() {
        let geometric = RationalSeries::new(vec![1], vec![1, -2]).unwrap();
        let r = compare_series(&geometric, &counts(vec![1, 1, 2, 4, 8])).unwrap();
        assert_eq!(r.convention, Convention::Ball);
        assert!(!r.exact_match);
    }
}
