//! The space of subshifts under the dyadic Hausdorff metric.
//!
//! Two points are at distance `2^{−m}` when `m` is largest with
//! `x_n = y_n` for `|n| < m`. For shift-invariant sets this makes
//! `d_H(X, Y) ≤ 2^{−m}` equivalent to `B_{2m−1}(X) = B_{2m−1}(Y)`, so
//! distances are exact dyadics read off the first language disagreement.

mod experiment;
mod families;
mod handle;

use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::polygon::PolygonError;
use crate::sftlab::SftlabError;
use crate::symdyn::{Letter, SymdynError, Word};

pub use experiment::{
    convergence_csv, limit_experiment, polygon_convergence, run_experiment, ConvergenceRow, ExperimentConfig, Family,
    LimitReport, PolygonRow,
};
pub use families::{
    remark_triangle, sft_approximation, tail_extension, three_symbol_approximant, three_symbol_words, EvenFamily,
    ForbiddenFamily, ListFamily,
};
pub use handle::{Backing, Rule, SubshiftHandle};

/// Largest alphabet for the exhaustive relabeling search.
pub const MAX_PERMUTED_ALPHABET: Letter = 8;
/// Default cap on explored state pairs when comparing languages.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Length of the central window `{n : |n| < m}`.
pub const fn window_len(m: usize) -> usize {
    2 * m - 1
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShiftspaceError {
    #[error("alphabets differ: {0} and {1}")]
    AlphabetMismatch(Letter, Letter),
    #[error("alphabet of size {k} is too large for the permutation search (at most {max})")]
    AlphabetTooLarge { k: Letter, max: Letter },
    #[error(transparent)]
    Symdyn(#[from] SymdynError),
    #[error(transparent)]
    Sftlab(#[from] SftlabError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

/// A word in exactly one of two languages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub word: String,
    /// `true` when the word belongs to the first shift.
    pub in_first: bool,
}

/// An exact value of the dyadic Hausdorff distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DyadicDistance {
    /// Largest `m` with agreeing central languages; `None` when they agree
    /// through `max_m`.
    pub exponent: Option<usize>,
    pub max_m: usize,
    pub witness: Option<Witness>,
}

impl DyadicDistance {
    pub fn is_equal_within_budget(&self) -> bool {
        self.exponent.is_none()
    }

    /// `2^{−m*}`, or `0` when equal within budget.
    pub fn value(&self) -> f64 {
        match self.exponent {
            Some(m) => 0.5f64.powi(m as i32),
            None => 0.0,
        }
    }

    /// Ordering key: larger means closer.
    fn closeness(&self) -> usize {
        self.exponent.unwrap_or(usize::MAX)
    }
}

impl fmt::Display for DyadicDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            Some(m) => write!(f, "2^-{m}"),
            None => write!(f, "0 (equal through m = {})", self.max_m),
        }
    }
}

/// `d_H(X, Y)` from the shortest word in exactly one language, searched
/// through window length `2·max_m − 1`.
pub fn subshift_hausdorff(
    x: &SubshiftHandle,
    y: &SubshiftHandle,
    max_m: usize,
    budget: usize,
) -> Result<DyadicDistance, ShiftspaceError> {
    if x.k() != y.k() {
        return Err(ShiftspaceError::AlphabetMismatch(x.k(), y.k()));
    }
    let diff = x
        .presentation()
        .first_difference(y.presentation(), window_len(max_m.max(1)), budget)?;
    Ok(from_difference(diff, max_m))
}

fn from_difference(diff: Option<(Word, bool)>, max_m: usize) -> DyadicDistance {
    match diff {
        None => DyadicDistance {
            exponent: None,
            max_m,
            witness: None,
        },
        Some((w, in_first)) => DyadicDistance {
            // B_{2m−1} agree exactly when 2m − 1 < |w|.
            exponent: Some(w.len() / 2),
            max_m,
            witness: Some(Witness {
                word: w.to_string(),
                in_first,
            }),
        },
    }
}

/// Minimum of `d_H(X, g(Y))` over all bijections `g` of the alphabet,
/// with the minimizing relabeling.
pub fn alphabet_minimized_distance(
    x: &SubshiftHandle,
    y: &SubshiftHandle,
    max_m: usize,
    budget: usize,
) -> Result<(DyadicDistance, Vec<Letter>), ShiftspaceError> {
    let k = x.k();
    if k != y.k() {
        return Err(ShiftspaceError::AlphabetMismatch(k, y.k()));
    }
    if k > MAX_PERMUTED_ALPHABET {
        return Err(ShiftspaceError::AlphabetTooLarge {
            k,
            max: MAX_PERMUTED_ALPHABET,
        });
    }
    let mut best: Option<(DyadicDistance, Vec<Letter>)> = None;
    for perm in (1..=k).permutations(k as usize) {
        let py = y.presentation().relabeled(&perm);
        let diff = x
            .presentation()
            .first_difference(&py, window_len(max_m.max(1)), budget)?;
        let d = from_difference(diff, max_m);
        let better = best.as_ref().is_none_or(|(b, _)| d.closeness() > b.closeness());
        if better {
            let done = d.exponent.is_none();
            best = Some((d, perm));
            if done {
                break;
            }
        }
    }
    Ok(best.expect("at least one permutation"))
}
