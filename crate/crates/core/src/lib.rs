//! Exact growth-series machinery for the Sol torus-bundle groups
//! `G = <a, t> = Z^2 x|_M Z` with companion-matrix monodromy.
//!
//! The crate is organised bottom-up:
//!
//! * [`laurent`]: sparse integer Laurent polynomials, division modulo
//!   `1 - Tz + z^2`, and the tail/center/head split with the size function on
//!   `X = Z[z, 1/z] x Z`.
//! * [`solgroup`]: word evaluation to (unreduced type, height), group
//!   arithmetic, the equality test and explicit geodesics.
//! * [`automata`]: padded, weighted multi-tape automata with boolean
//!   operations, projection, reversal, growth-series extraction and the
//!   minimal cross-section construction.
//! * [`sol_language`]: the languages `L_n`, the encoding `psi`, the
//!   long-division acceptors and the end-to-end pipeline.
//! * [`oracle`]: brute-force ground truth (Cayley-graph BFS, class minima)
//!   and Parry's closed-form series.
//!
//! All arithmetic is exact; there are no floats anywhere in the crate.

pub mod automata;
pub mod error;
pub mod laurent;
pub mod oracle;
pub mod sol_language;
pub mod solgroup;

pub use automata::{Alphabet, Automaton, Label, RationalSeries};
pub use error::{Error, Result};
pub use laurent::{Decomposition, LaurentPoly, XElement};
pub use oracle::{SeriesComparison, SphereCounts};
pub use sol_language::{SolConstants, SolLetter, SolWord};
pub use solgroup::{GroupElement, GroupParams, GroupWord, Letter};
