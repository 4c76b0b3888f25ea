use std::fmt;

use serde::Serialize;

use crate::sftlab::{check_property, entropy, entropy_of_presentation, language_property, Property, PropertyVerdict};
use crate::symdyn::{ForbiddenSet, Letter, Presentation, SubshiftSpec, Word};

use super::ShiftspaceError;

/// Shifts given by a defining rule instead of a finite forbidden list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    /// Over `{1, 2}`, forbidding `2 1^k 2` for odd `k`.
    EvenShift,
    /// Over `{1, 2, 3}`: the points with at most one symbol other than `1`.
    ThreeSymbolLimit,
    /// The orbit of the periodic point `period^∞`.
    PeriodicOrbit { k: Letter, period: Word },
}

impl Rule {
    pub fn k(&self) -> Letter {
        match self {
            Rule::EvenShift => 2,
            Rule::ThreeSymbolLimit => 3,
            Rule::PeriodicOrbit { k, .. } => *k,
        }
    }

    /// A right-resolving presentation read from any state.
    pub fn presentation(&self) -> Presentation {
        let built = match self {
            Rule::EvenShift => Presentation::from_edges(2, 2, &[(0, 2, 0), (0, 1, 1), (1, 1, 0)]),
            Rule::ThreeSymbolLimit => Presentation::from_edges(3, 2, &[(0, 1, 0), (0, 2, 1), (0, 3, 1), (1, 1, 1)]),
            Rule::PeriodicOrbit { k, period } => {
                let q = period.len();
                let edges: Vec<(usize, Letter, usize)> = period
                    .letters()
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| (i, a, (i + 1) % q))
                    .collect();
                Presentation::from_edges(*k, q, &edges)
            }
        };
        built.expect("rule presentations are deterministic")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Backing {
    Sft { forbidden: Vec<String> },
    Rule(Rule),
}

/// A subshift of `{1..k}^ℤ` together with a way to enumerate its language.
#[derive(Debug, Clone)]
pub struct SubshiftHandle {
    name: String,
    k: Letter,
    sft: Option<SubshiftSpec>,
    rule: Option<Rule>,
    presentation: Presentation,
}

impl SubshiftHandle {
    /// The closure SFT of a code space.
    pub fn sft(name: impl Into<String>, spec: SubshiftSpec) -> Self {
        SubshiftHandle {
            name: name.into(),
            k: spec.k(),
            presentation: spec.presentation(),
            sft: Some(spec),
            rule: None,
        }
    }

    pub fn from_forbidden(name: impl Into<String>, f: ForbiddenSet) -> Self {
        Self::sft(name, SubshiftSpec::sft(f))
    }

    pub fn rule(name: impl Into<String>, rule: Rule) -> Self {
        SubshiftHandle {
            name: name.into(),
            k: rule.k(),
            presentation: rule.presentation(),
            sft: None,
            rule: Some(rule),
        }
    }

    pub fn even_shift() -> Self {
        Self::rule("even_shift", Rule::EvenShift)
    }

    pub fn three_symbol_limit() -> Self {
        Self::rule("ttoct_limit", Rule::ThreeSymbolLimit)
    }

    pub fn periodic_orbit(k: Letter, period: Word) -> Self {
        let name = format!("orbit({period})");
        Self::rule(name, Rule::PeriodicOrbit { k, period })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn k(&self) -> Letter {
        self.k
    }

    pub fn spec(&self) -> Option<&SubshiftSpec> {
        self.sft.as_ref()
    }

    pub fn backing(&self) -> Backing {
        match (&self.sft, &self.rule) {
            (Some(s), _) => Backing::Sft {
                forbidden: s.closure.to_strings(),
            },
            (None, Some(r)) => Backing::Rule(r.clone()),
            (None, None) => unreachable!("a handle has a backing"),
        }
    }

    pub fn is_sft(&self) -> bool {
        self.sft.is_some()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn is_empty(&self) -> bool {
        self.presentation.is_empty()
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.presentation.accepts(w)
    }

    /// `|B_1|, …, |B_n|`.
    pub fn count_words(&self, n: usize) -> Vec<u128> {
        self.presentation.count_words(n)
    }

    /// `B_n` in lexicographic order.
    pub fn words(&self, n: usize, budget: usize) -> Result<Vec<Word>, ShiftspaceError> {
        Ok(self.presentation.enumerate(n, budget)?)
    }

    /// Exact verdict for SFTs; bounded language check at `depth` otherwise.
    pub fn property(
        &self,
        property: Property,
        depth: usize,
        budget: usize,
    ) -> Result<PropertyVerdict, ShiftspaceError> {
        match &self.sft {
            Some(s) => Ok(check_property(s, property)?),
            None => Ok(language_property(&self.presentation, property, depth, budget)?),
        }
    }

    /// Topological entropy (natural log).
    pub fn entropy(&self) -> Result<f64, ShiftspaceError> {
        match &self.sft {
            Some(s) => Ok(entropy(s, 8)?.log_perron),
            None => Ok(entropy_of_presentation(&self.presentation, 8)?.log_perron),
        }
    }
}

impl fmt::Display for SubshiftHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}
