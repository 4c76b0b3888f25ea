use serde::Serialize;

use super::word::Letter;
use super::{SubshiftSpec, SymdynError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationRule {
    Forbidden,
    /// The period alternates the two letters of an excluded adjacent pair.
    ExcludedAlternation {
        pair: (Letter, Letter),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Start of the offending factor (reduced modulo the period for
    /// periodic words).
    pub position: usize,
    pub factor: Word,
    pub rule: ViolationRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Admissible,
    Inadmissible(Violation),
}

impl Verdict {
    pub fn passes(&self) -> bool {
        matches!(self, Verdict::Admissible)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Admissible => None,
            Verdict::Inadmissible(v) => Some(v),
        }
    }
}

/// Checks a finite word against the closure's forbidden factors.
pub fn is_admissible(w: &Word, s: &SubshiftSpec) -> Result<Verdict, SymdynError> {
    w.check_alphabet(s.k())?;
    Ok(match s.closure.find_factor(w.letters()) {
        None => Verdict::Admissible,
        Some((start, len)) => Verdict::Inadmissible(Violation {
            position: start,
            factor: Word::from_slice_unchecked(&w.letters()[start..start + len]),
            rule: ViolationRule::Forbidden,
        }),
    })
}

/// Checks the bi-infinite periodic word with the given period.
///
/// Enough periods are concatenated that every cyclic factor up to the
/// longest forbidden length is examined; the exclusion rule then rejects
/// periods made only of the two letters of an excluded pair.
pub fn is_admissible_periodic(period: &Word, s: &SubshiftSpec) -> Result<Verdict, SymdynError> {
    period.check_alphabet(s.k())?;
    let q = period.len();
    let longest = s.closure.max_len().max(1);
    let reps = 2usize.max(1 + (longest - 1).div_ceil(q));
    let scan: Vec<Letter> = period.letters().iter().copied().cycle().take(q * reps).collect();
    if let Some((start, len)) = s.closure.find_factor(&scan) {
        return Ok(Verdict::Inadmissible(Violation {
            position: start % q,
            factor: Word::from_slice_unchecked(&scan[start..start + len]),
            rule: ViolationRule::Forbidden,
        }));
    }
    for &(a, b) in s.exclusion.pairs() {
        if period.letters().iter().all(|&x| x == a || x == b) {
            return Ok(Verdict::Inadmissible(Violation {
                position: 0,
                factor: Word::from_slice_unchecked(period.letters()),
                rule: ViolationRule::ExcludedAlternation { pair: (a, b) },
            }));
        }
    }
    Ok(Verdict::Admissible)
}
