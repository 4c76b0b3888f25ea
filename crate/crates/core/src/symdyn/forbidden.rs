use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::word::{letters_to_string, Letter};
use super::{Presentation, SymdynError, Word};
use crate::polygon::{PolygonError, PolygonSpec};

/// A finite set of forbidden words in reduced form: no retained word has
/// another retained word as a factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForbiddenSet {
    k: Letter,
    words: BTreeSet<Vec<Letter>>,
}

impl ForbiddenSet {
    pub fn new<I>(k: Letter, words: I) -> Result<Self, SymdynError>
    where
        I: IntoIterator<Item = Vec<Letter>>,
    {
        if k == 0 {
            return Err(SymdynError::AlphabetMismatch { letter: 0, k });
        }
        let mut all = BTreeSet::new();
        for w in words {
            if w.is_empty() {
                return Err(SymdynError::EmptyWord);
            }
            if let Some(&letter) = w.iter().find(|&&a| a == 0 || a > k) {
                return Err(SymdynError::AlphabetMismatch { letter, k });
            }
            all.insert(w);
        }
        Ok(ForbiddenSet { k, words: reduce(all) })
    }

    /// The empty forbidden set: the full shift.
    pub fn full_shift(k: Letter) -> Self {
        ForbiddenSet {
            k,
            words: BTreeSet::new(),
        }
    }

    /// Builds without reduction; used to test that reduction is harmless.
    pub fn unreduced<I>(k: Letter, words: I) -> Self
    where
        I: IntoIterator<Item = Vec<Letter>>,
    {
        ForbiddenSet {
            k,
            words: words.into_iter().collect(),
        }
    }

    pub fn k(&self) -> Letter {
        self.k
    }

    pub fn words(&self) -> impl Iterator<Item = &[Letter]> {
        self.words.iter().map(|w| w.as_slice())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.words.contains(w)
    }

    /// Length of the longest forbidden word.
    pub fn max_len(&self) -> usize {
        self.words.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Memory `M` of the SFT: longest forbidden length minus one.
    pub fn memory(&self) -> usize {
        self.max_len().saturating_sub(1)
    }

    pub fn with_word(&self, w: Vec<Letter>) -> Result<Self, SymdynError> {
        ForbiddenSet::new(self.k, self.words.iter().cloned().chain(std::iter::once(w)))
    }

    pub fn to_strings(&self) -> Vec<String> {
        let mut v: Vec<&Vec<Letter>> = self.words.iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        v.into_iter().map(|w| letters_to_string(w)).collect()
    }

    /// First forbidden factor of `w` as `(start, length)`.
    pub fn find_factor(&self, w: &[Letter]) -> Option<(usize, usize)> {
        let lens: BTreeSet<usize> = self.words.iter().map(|f| f.len()).collect();
        for end in 1..=w.len() {
            for &l in &lens {
                if l <= end && self.words.contains(&w[end - l..end]) {
                    return Some((end - l, l));
                }
            }
        }
        None
    }
}

fn reduce(words: BTreeSet<Vec<Letter>>) -> BTreeSet<Vec<Letter>> {
    let mut sorted: Vec<Vec<Letter>> = words.into_iter().collect();
    sorted.sort_by_key(|w| w.len());
    let mut kept: Vec<Vec<Letter>> = Vec::new();
    for w in sorted {
        let redundant = kept
            .iter()
            .any(|f| f.len() <= w.len() && w.windows(f.len()).any(|x| x == f.as_slice()));
        if !redundant {
            kept.push(w);
        }
    }
    kept.into_iter().collect()
}

/// Points removed from the closure SFT.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Exclusion {
    None,
    /// No tail (forward or backward) that eventually alternates between the
    /// two letters of one of these adjacent pairs.
    NoEventuallyPeriodicAdjacentPair(Vec<(Letter, Letter)>),
}

impl Exclusion {
    pub fn pairs(&self) -> &[(Letter, Letter)] {
        match self {
            Exclusion::None => &[],
            Exclusion::NoEventuallyPeriodicAdjacentPair(p) => p,
        }
    }
}

/// A billiard code space: the closure SFT plus an exclusion rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubshiftSpec {
    pub closure: ForbiddenSet,
    pub exclusion: Exclusion,
}

impl SubshiftSpec {
    pub fn sft(closure: ForbiddenSet) -> Self {
        SubshiftSpec {
            closure,
            exclusion: Exclusion::None,
        }
    }

    pub fn k(&self) -> Letter {
        self.closure.k()
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::from_forbidden(&self.closure)
    }

    pub fn to_file(&self) -> ForbiddenFile {
        ForbiddenFile {
            k: self.k() as usize,
            forbidden: self.closure.to_strings(),
            exclusion_pairs: self
                .exclusion
                .pairs()
                .iter()
                .map(|&(a, b)| [a as usize, b as usize])
                .collect(),
        }
    }

    pub fn from_file(file: &ForbiddenFile) -> Result<Self, SymdynError> {
        if file.k == 0 || file.k > Letter::MAX as usize {
            return Err(SymdynError::Parse(format!("alphabet size {} out of range", file.k)));
        }
        let k = file.k as Letter;
        let mut words = Vec::new();
        for s in &file.forbidden {
            let w = Word::parse(s)?;
            if w.origin().is_some() {
                return Err(SymdynError::Parse(format!("forbidden word {s:?} must not be pointed")));
            }
            words.push(w.into_letters());
        }
        let closure = ForbiddenSet::new(k, words)?;
        let mut pairs = Vec::new();
        for p in &file.exclusion_pairs {
            let (a, b) = (p[0], p[1]);
            if a == 0 || b == 0 || a > file.k || b > file.k || a == b {
                return Err(SymdynError::Parse(format!("bad exclusion pair {p:?}")));
            }
            pairs.push((a as Letter, b as Letter));
        }
        Ok(SubshiftSpec {
            closure,
            exclusion: if pairs.is_empty() {
                Exclusion::None
            } else {
                Exclusion::NoEventuallyPeriodicAdjacentPair(pairs)
            },
        })
    }

    pub fn from_json(text: &str) -> Result<Self, SymdynError> {
        let file: ForbiddenFile = serde_json::from_str(text).map_err(|e| SymdynError::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("forbidden set serializes")
    }
}

/// On-disk form of a forbidden set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForbiddenFile {
    pub k: usize,
    pub forbidden: Vec<String>,
    #[serde(default)]
    pub exclusion_pairs: Vec<[usize; 2]>,
}

/// Alternating word `a b a b …` of the given length.
pub fn alternating(a: Letter, b: Letter, len: usize) -> Vec<Letter> {
    (0..len).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

/// Code space of a polygon: immediate repetitions are forbidden, alternations
/// of symbol-length `λᵢ + 1` in the sides at a rational vertex `vᵢ` are
/// forbidden, and adjacent pairs at ideal vertices are excluded as tails.
pub fn forbidden_set(p: &PolygonSpec) -> Result<SubshiftSpec, PolygonError> {
    p.check()?;
    let k = p.k();
    if k > Letter::MAX as usize {
        return Err(PolygonError::Parse(format!("{k} sides exceed the alphabet limit")));
    }
    let mut words: Vec<Vec<Letter>> = (1..=k as Letter).map(|i| vec![i, i]).collect();
    let mut pairs = Vec::new();
    for (idx, v) in p.vertices.iter().enumerate() {
        let i = idx as Letter + 1;
        let j = (idx + 1) % k + 1;
        let j = j as Letter;
        match v.lambda() {
            Some(l) => {
                words.push(alternating(i, j, l as usize + 1));
                words.push(alternating(j, i, l as usize + 1));
            }
            None => pairs.push((i, j)),
        }
    }
    let closure = ForbiddenSet::new(k as Letter, words).expect("polygon words use the alphabet");
    Ok(SubshiftSpec {
        closure,
        exclusion: if pairs.is_empty() {
            Exclusion::None
        } else {
            Exclusion::NoEventuallyPeriodicAdjacentPair(pairs)
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::PolygonSpec;

    fn strings(s: &SubshiftSpec) -> BTreeSet<String> {
        s.closure.to_strings().into_iter().collect()
    }

    #[test]
    fn ideal_triangle_rules() {
        let s = forbidden_set(&PolygonSpec::ideal(3)).unwrap();
        assert_eq!(strings(&s), ["11", "22", "33"].iter().map(|x| x.to_string()).collect());
        assert_eq!(s.exclusion.pairs(), &[(1, 2), (2, 3), (3, 1)]);
    }

    #[test]
    fn compact_lambda4_rules() {
        let s = forbidden_set(&PolygonSpec::triangle([Some(4); 3])).unwrap();
        let want: BTreeSet<String> = ["11", "22", "33", "12121", "21212", "23232", "32323", "13131", "31313"]
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(strings(&s), want);
        assert_eq!(s.exclusion, Exclusion::None);
    }

    #[test]
    fn semi_ideal_rules() {
        let s = forbidden_set(&PolygonSpec::triangle([Some(2), None, None])).unwrap();
        let want: BTreeSet<String> = ["11", "22", "33", "121", "212"].iter().map(|x| x.to_string()).collect();
        assert_eq!(strings(&s), want);
        assert_eq!(s.exclusion.pairs(), &[(2, 3), (3, 1)]);
    }

    #[test]
    fn reduction_drops_superwords() {
        let f = ForbiddenSet::new(2, vec![vec![1, 1], vec![2, 1, 1, 2], vec![2, 2]]).unwrap();
        assert_eq!(f.to_strings(), vec!["11", "22"]);
    }

    #[test]
    fn file_round_trip() {
        let s = forbidden_set(&PolygonSpec::triangle([Some(3), None, None])).unwrap();
        assert_eq!(SubshiftSpec::from_json(&s.to_json()).unwrap(), s);
        assert!(SubshiftSpec::from_json(r#"{"k":2,"forbidden":["13"]}"#).is_err());
        assert!(SubshiftSpec::from_json(r#"{"k":2,"forbidden":[],"extra":1}"#).is_err());
    }
}
