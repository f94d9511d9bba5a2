use crate::automata::series::poly_mul;
use crate::automata::RationalSeries;
use crate::error::{Error, Result};

/// A term `(k, j, c)` standing for `c z^(kT + j)`.
pub type Term = (u32, u32, i128);

/// Numerator terms before the factor `(1 - z)^2 (1 + z)`.
pub const PARRY_NUMERATOR_TERMS: &[Term] = &[
    (0, 0, 1),
    (0, 1, 3),
    (0, 2, 4),
    (0, 3, 4),
    (0, 4, 3),
    (0, 5, 1),
    (1, 0, -1),
    (1, 1, -3),
    (1, 2, -14),
    (1, 3, -16),
    (1, 4, -11),
    (1, 5, -5),
    (1, 6, 2),
    (2, 1, 2),
    (2, 2, -13),
    (2, 3, 35),
    (2, 4, 40),
    (2, 5, 6),
    (2, 6, -23),
    (2, 7, -7),
    (2, 8, 4),
    (2, 9, 4),
    (3, 2, -5),
    (3, 3, 31),
    (3, 4, -40),
    (3, 5, -44),
    (3, 6, 33),
    (3, 7, 25),
    (3, 8, -12),
    (3, 9, -4),
];

/// Denominator factors `(exponent, terms)`.
pub const PARRY_DENOMINATOR_FACTORS: &[(u32, &[Term])] = &[
    (
        1,
        &[
            (0, 0, 1),
            (0, 1, -2),
            (0, 2, -1),
            (1, 0, -1),
            (1, 1, 4),
            (1, 2, -1),
        ],
    ),
    (
        2,
        &[
            (0, 0, 1),
            (0, 1, -1),
            (0, 2, -1),
            (0, 3, -1),
            (1, 1, -1),
            (1, 2, 3),
            (1, 3, 1),
            (1, 4, -1),
        ],
    ),
];

const NUMERATOR_PREFACTOR: &[i128] = &[1, -1, -1, 1];

fn expand(terms: &[(u32, u32, i128)], t: u32) -> Vec<i128> {
    let deg = terms
        .iter()
        .map(|&(k, j, _)| (k * t + j) as usize)
        .max()
        .unwrap_or(0);
    let mut p = vec![0i128; deg + 1];
    for &(k, j, c) in terms {
        p[(k * t + j) as usize] += c;
    }
    p
}

/// Parry's growth series for the subgroup `<a, tat^-1, t>` of the torus
/// bundle group whose monodromy has trace `2T`, with `T = half_trace`.
pub fn parry_series(half_trace: u32) -> Result<RationalSeries> {
    if half_trace < 2 {
        return Err(Error::InvalidTrace(2 * half_trace as i64));
    }
    let numerator = poly_mul(
        NUMERATOR_PREFACTOR,
        &expand(PARRY_NUMERATOR_TERMS, half_trace),
    )?;
    let mut denominator = vec![1i128];
    for &(power, terms) in PARRY_DENOMINATOR_FACTORS {
        let f = expand(terms, half_trace);
        for _ in 0..power {
            denominator = poly_mul(&denominator, &f)?;
        }
    }
    RationalSeries::new(numerator, denominator)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficients() {
        for t in 2..8 {
            let c = parry_series(t).unwrap().coefficients(2).unwrap();
            assert_eq!(c[0], 1);
        }
        let s = parry_series(3).unwrap();
        assert_eq!(s.coefficients(2).unwrap(), vec![1, 6]);
        assert_eq!(s.numerator.len() - 1, 21);
        assert_eq!(s.denominator.len() - 1, 19);
        assert!(parry_series(1).is_err());
    }

    #[test]
    fn numerator_vanishes_doubly_at_one() {
        let s = parry_series(4).unwrap();
        let at_one: i128 = s.numerator.iter().sum();
        assert_eq!(at_one, 0);
        let derivative: i128 = s
            .numerator
            .iter()
            .enumerate()
            .map(|(i, c)| i as i128 * c)
            .sum();
        assert_eq!(derivative, 0);
    }
}
