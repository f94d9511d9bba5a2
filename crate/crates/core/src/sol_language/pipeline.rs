use serde::{Deserialize, Serialize};

use super::acceptor::rn_prime_state_estimate;
use super::{acceptor_rni, build_ln, sol_alphabet, SolConstants};
use crate::automata::{minimal_cross_section, state_limit, Automaton, RationalSeries};
use crate::error::{Error, Result};

/// Replacement values for the constants of the construction. Unset fields
/// keep their full-scale values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOverrides {
    /// Coefficient bound of the language `L_n`.
    pub n: Option<u32>,
    /// Fellow-traveler constant.
    pub k: Option<u64>,
    /// Allowed head/tail length difference in the acceptor.
    pub i: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineScale {
    /// The constants `N`, `K + (N+6) L` and `L` of the fellow-traveler argument.
    Theorem,
    /// At least one constant was overridden.
    Reduced,
}

/// The constants a pipeline run actually used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineParams {
    pub trace: i64,
    pub n: u32,
    pub k: u64,
    pub i: u32,
    /// Coefficient bound of the candidate language `L'`.
    pub l_prime_n: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub scale: PipelineScale,
    pub params: PipelineParams,
    pub cross_section: Automaton,
    pub series: RationalSeries,
}

/// Runs the construction end to end: `L_n`, the acceptor `R_{n,i}`, the
/// candidate language `L_{min(n, 5|T|)}`, the minimal cross section with
/// fellow-traveler constant `K`, and its growth series.
///
/// Full-scale constants are refused with [`Error::ResourceLimit`] carrying
/// the estimated state count of the division automaton whenever that
/// estimate exceeds the current state limit.
pub fn sol_pipeline(trace: i64, overrides: Option<PipelineOverrides>) -> Result<PipelineReport> {
    let full = SolConstants::new(trace, 0)?;
    let o = overrides.unwrap_or_default();
    let n = match o.n {
        Some(n) => n,
        None => u32::try_from(full.n).map_err(|_| Error::Overflow("language parameter"))?,
    };
    let k = o.k.unwrap_or(full.fellow_constant);
    let i = match o.i {
        Some(i) => i,
        None => u32::try_from(full.l).map_err(|_| Error::Overflow("length slack"))?,
    };
    let scale = if n as u64 == full.n && k == full.fellow_constant && i as u64 == full.l {
        PipelineScale::Theorem
    } else {
        PipelineScale::Reduced
    };
    let l_prime_n = n.min(5 * trace.unsigned_abs() as u32);
    let params = PipelineParams {
        trace,
        n,
        k,
        i,
        l_prime_n,
    };
    if n == 0 {
        return Ok(PipelineReport {
            scale,
            params,
            cross_section: Automaton::empty(1, sol_alphabet(0)),
            series: RationalSeries::zero(),
        });
    }
    let estimate = rn_prime_state_estimate(n as u64, trace);
    let limit = state_limit() as u64;
    if estimate > limit {
        return Err(Error::ResourceLimit {
            what: format!("division automaton for n = {n}, T = {trace}"),
            limit,
            estimate: Some(estimate),
        });
    }
    let l = build_ln(n, true)?;
    let l_prime = build_ln(l_prime_n, true)?;
    let r = acceptor_rni(n, i, trace)?;
    let cross_section = minimal_cross_section(&l, &l_prime, &r, k)?;
    let series = cross_section.growth_series()?;
    Ok(PipelineReport {
        scale,
        params,
        cross_section,
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_scale_is_refused_with_an_estimate() {
        match sol_pipeline(3, None) {
            Err(Error::ResourceLimit {
                estimate: Some(estimate),
                ..
            }) => {
                assert_eq!(estimate, rn_prime_state_estimate(165, 3));
                let c = 2 * 165 + 2 * 165 * 5;
                assert_eq!(estimate, 5 * (2 * c + 1) * (2 * c + 1) + 1);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn empty_language_corner() {
        let o = PipelineOverrides {
            n: Some(0),
            k: Some(1),
            i: Some(0),
        };
        let rep = sol_pipeline(3, Some(o)).unwrap();
        assert!(rep.cross_section.is_empty_language());
        assert_eq!(rep.series, RationalSeries::zero());
        assert_eq!(rep.scale, PipelineScale::Reduced);
    }
}
