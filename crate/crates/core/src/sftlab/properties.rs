//! Dynamical properties of shift spaces.
//!
//! SFTs are decided exactly from their essential higher-block graphs.
//! Shifts known only through a presentation are checked through the
//! language characterizations over all words of the depth length, which
//! makes a positive answer a statement up to that depth.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use super::graph::SftGraph;
use super::SftlabError;
use crate::symdyn::{letters_to_string, Letter, Presentation, StateSet, Word};

/// Largest graph for which a covering cycle is attached as a witness.
const WITNESS_VERTICES: usize = 256;
/// Largest graph for which the primitivity exponent is computed.
const EXPONENT_VERTICES: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Irreducible,
    Aperiodic,
    Transitive,
    Mixing,
    Nonwandering,
    ChainRecurrent,
    ChainTransitive,
    ChainMixing,
    Minimal,
}

impl Property {
    pub const DYNAMICAL: [Property; 7] = [
        Property::Transitive,
        Property::Mixing,
        Property::Nonwandering,
        Property::ChainRecurrent,
        Property::ChainTransitive,
        Property::ChainMixing,
        Property::Minimal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Irreducible => "irreducible",
            Property::Aperiodic => "aperiodic",
            Property::Transitive => "transitive",
            Property::Mixing => "mixing",
            Property::Nonwandering => "nonwandering",
            Property::ChainRecurrent => "chain_recurrent",
            Property::ChainTransitive => "chain_transitive",
            Property::ChainMixing => "chain_mixing",
            Property::Minimal => "minimal",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Property::Irreducible, Property::Aperiodic]
            .into_iter()
            .chain(Property::DYNAMICAL)
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    /// The search budget bound before a decision.
    Unknown,
}

impl Truth {
    pub fn is_true(self) -> bool {
        self == Truth::True
    }
}

impl Serialize for Truth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Truth::True => s.serialize_bool(true),
            Truth::False => s.serialize_bool(false),
            Truth::Unknown => s.serialize_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyVerdict {
    pub property: Property,
    pub value: Truth,
    /// Words or vertex labels supporting the verdict.
    pub witness: Vec<String>,
    /// Word length searched, absent for exact graph decisions.
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
}

impl PropertyVerdict {
    fn exact(property: Property, value: bool, witness: Vec<String>) -> Self {
        PropertyVerdict {
            property,
            value: if value { Truth::True } else { Truth::False },
            witness,
            depth: None,
            period: None,
        }
    }
}

/// Strong connectivity, with a covering cycle or an unreachable pair.
pub fn is_irreducible(g: &SftGraph) -> PropertyVerdict {
    if g.is_strongly_connected() {
        let witness = if g.n() <= WITNESS_VERTICES {
            g.covering_cycle()
                .map(|c| c.iter().map(|&i| g.labels()[i].clone()).collect())
                .unwrap_or_default()
        } else {
            Vec::new()
        };
        return PropertyVerdict::exact(Property::Irreducible, true, witness);
    }
    let labels = g.labels();
    let witness = if g.n() == 0 {
        Vec::new()
    } else {
        let from0 = g.distances_from(0);
        match from0.iter().position(|d| d.is_none()) {
            Some(j) => vec![labels[0].clone(), labels[j].clone()],
            None => {
                let j = (0..g.n()).find(|&j| g.path(j, 0).is_none()).unwrap_or(0);
                vec![labels[j].clone(), labels[0].clone()]
            }
        }
    };
    PropertyVerdict::exact(Property::Irreducible, false, witness)
}

/// Period of an irreducible graph; aperiodic exactly when it is 1.
pub fn is_aperiodic(g: &SftGraph) -> Result<PropertyVerdict, SftlabError> {
    let period = g.period()?;
    let mut witness = vec![format!("period {period}")];
    if period == 1 && g.n() <= EXPONENT_VERTICES {
        let limit = (g.n() - 1) * (g.n() - 1) + 1;
        if let Some(m) = g.primitivity_exponent(limit) {
            witness.push(format!("A^{m} > 0"));
        }
    }
    let mut v = PropertyVerdict::exact(Property::Aperiodic, period == 1, witness);
    v.period = Some(period);
    Ok(v)
}

/// Exact verdict for the vertex shift of an essential graph.
pub fn graph_property(g: &SftGraph, property: Property) -> Result<PropertyVerdict, SftlabError> {
    let tagged = |mut v: PropertyVerdict| {
        v.property = property;
        v
    };
    Ok(match property {
        Property::Irreducible | Property::Transitive | Property::ChainTransitive => tagged(is_irreducible(g)),
        Property::Aperiodic | Property::Mixing | Property::ChainMixing => {
            let irr = is_irreducible(g);
            if irr.value.is_true() {
                tagged(is_aperiodic(g)?)
            } else {
                tagged(irr)
            }
        }
        Property::Nonwandering | Property::ChainRecurrent => {
            let mut on_cycle = vec![false; g.n()];
            for c in g.nontrivial_sccs() {
                c.iter().for_each(|&i| on_cycle[i] = true);
            }
            match on_cycle.iter().position(|&b| !b) {
                None => PropertyVerdict::exact(property, true, Vec::new()),
                Some(i) => PropertyVerdict::exact(property, false, vec![g.labels()[i].clone()]),
            }
        }
        Property::Minimal => {
            let irr = is_irreducible(g);
            if !irr.value.is_true() {
                tagged(irr)
            } else {
                match (0..g.n()).find(|&i| g.successors(i).len() > 1) {
                    None => PropertyVerdict::exact(property, true, irr.witness),
                    Some(i) => PropertyVerdict::exact(property, false, vec![g.labels()[i].clone()]),
                }
            }
        }
    })
}

/// Bounded check of the language characterizations for a presented shift.
///
/// `v` and `w` range over all words of length `depth`; for the chain
/// properties the intermediate length `ℓ` ranges over `1..=depth`.
pub fn language_property(
    p: &Presentation,
    property: Property,
    depth: usize,
    budget: usize,
) -> Result<PropertyVerdict, SftlabError> {
    if p.is_empty() {
        return Err(SftlabError::EmptyShift);
    }
    let words = p.enumerate(depth.max(1), budget)?;
    let lang = Language::new(p);
    let verdict = |value: Truth, witness: Vec<String>| PropertyVerdict {
        property,
        value,
        witness,
        depth: Some(depth),
        period: None,
    };
    let pair = |v: &Word, w: &Word| vec![v.to_string(), w.to_string()];
    match property {
        Property::Irreducible | Property::Transitive => {
            for v in &words {
                let reach = lang.reachable_sets(v.letters());
                for w in &words {
                    if !reach.iter().any(|r| !p.read(r, w.letters()).is_empty()) {
                        return Ok(verdict(Truth::False, pair(v, w)));
                    }
                }
            }
            Ok(verdict(Truth::True, Vec::new()))
        }
        Property::Nonwandering => {
            for v in &words {
                let reach = lang.reachable_sets(v.letters());
                if !reach.iter().any(|r| !p.read(r, v.letters()).is_empty()) {
                    return Ok(verdict(Truth::False, vec![v.to_string()]));
                }
            }
            Ok(verdict(Truth::True, Vec::new()))
        }
        Property::Aperiodic | Property::Mixing => {
            for v in &words {
                let (_, cycle) = lang.length_sets(v.letters());
                for w in &words {
                    if cycle.iter().any(|r| p.read(r, w.letters()).is_empty()) {
                        let mut wit = pair(v, w);
                        wit.push(format!("gap lengths recur with period {}", cycle.len()));
                        return Ok(verdict(Truth::False, wit));
                    }
                }
            }
            Ok(verdict(Truth::True, Vec::new()))
        }
        Property::Minimal => {
            for v in &words {
                if let Some(cycle) = avoiding_cycle(p, v.letters()) {
                    return Ok(verdict(
                        Truth::False,
                        vec![v.to_string(), format!("({})^inf", letters_to_string(&cycle))],
                    ));
                }
            }
            Ok(verdict(Truth::True, Vec::new()))
        }
        Property::ChainRecurrent | Property::ChainTransitive | Property::ChainMixing => {
            let mut levels = Vec::with_capacity(depth);
            for l in 1..=depth.max(1) {
                levels.push(ChainLevel::new(p, l, budget)?);
            }
            let targets: Vec<(&Word, &Word)> = match property {
                Property::ChainRecurrent => words.iter().map(|v| (v, v)).collect(),
                _ => words.iter().flat_map(|v| words.iter().map(move |w| (v, w))).collect(),
            };
            for (v, w) in targets {
                let ok = levels.iter().any(|lvl| {
                    if property == Property::ChainMixing {
                        lvl.mixes(&lang, v.letters(), w.letters())
                    } else {
                        lvl.connects(&lang, v.letters(), w.letters())
                    }
                });
                if !ok {
                    return Ok(verdict(Truth::Unknown, pair(v, w)));
                }
            }
            Ok(verdict(Truth::True, Vec::new()))
        }
    }
}

/// Language queries backed by a presentation.
struct Language<'a> {
    p: &'a Presentation,
}

impl<'a> Language<'a> {
    fn new(p: &'a Presentation) -> Self {
        Language { p }
    }

    fn accepts(&self, w: &[Letter]) -> bool {
        self.p.accepts(w)
    }

    fn successors(&self, set: &[u32]) -> StateSet {
        let mut out: StateSet = (1..=self.p.k()).flat_map(|a| self.p.step(set, a)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// All state sets reached after reading `v` followed by any word.
    fn reachable_sets(&self, v: &[Letter]) -> Vec<StateSet> {
        let start = self.p.read(&self.p.all_states(), v);
        let mut seen: HashSet<StateSet> = HashSet::new();
        let mut queue = VecDeque::new();
        if !start.is_empty() {
            seen.insert(start.clone());
            queue.push_back(start);
        }
        let mut out = Vec::new();
        while let Some(s) = queue.pop_front() {
            for a in 1..=self.p.k() {
                let t = self.p.step(&s, a);
                if !t.is_empty() && seen.insert(t.clone()) {
                    queue.push_back(t.clone());
                }
            }
            out.push(s);
        }
        out
    }

    /// States reachable from `v` by gaps of each length: the sequence
    /// `U₀, U₁, …` split into its preperiod and its cycle.
    fn length_sets(&self, v: &[Letter]) -> (Vec<StateSet>, Vec<StateSet>) {
        let mut seq: Vec<StateSet> = Vec::new();
        let mut index: HashMap<StateSet, usize> = HashMap::new();
        let mut cur = self.p.read(&self.p.all_states(), v);
        loop {
            if let Some(&i) = index.get(&cur) {
                let cycle = seq.split_off(i);
                return (seq, cycle);
            }
            index.insert(cur.clone(), seq.len());
            let next = self.successors(&cur);
            seq.push(cur);
            cur = next;
        }
    }
}

/// The graph on `B_ℓ` with `u → u'` when `u a u' ∈ L` for some letter.
struct ChainLevel {
    words: Vec<Vec<Letter>>,
    succ: Vec<Vec<usize>>,
}

impl ChainLevel {
    fn new(p: &Presentation, l: usize, budget: usize) -> Result<Self, SftlabError> {
        let words: Vec<Vec<Letter>> = p.enumerate(l, budget)?.into_iter().map(|w| w.into_letters()).collect();
        let lang = Language::new(p);
        let succ = words
            .iter()
            .map(|u| (0..words.len()).filter(|&j| joins(&lang, u, &words[j])).collect())
            .collect();
        Ok(ChainLevel { words, succ })
    }

    fn starts(&self, lang: &Language, v: &[Letter]) -> Vec<bool> {
        self.words.iter().map(|u| joins(lang, v, u)).collect()
    }

    fn ends(&self, lang: &Language, w: &[Letter]) -> Vec<bool> {
        self.words.iter().map(|u| joins(lang, u, w)).collect()
    }

    fn step(&self, set: &[bool]) -> Vec<bool> {
        let mut out = vec![false; set.len()];
        for (i, &b) in set.iter().enumerate() {
            if b {
                self.succ[i].iter().for_each(|&j| out[j] = true);
            }
        }
        out
    }

    /// A chain `v a₁ v₁, v₁ a₂ v₂, …, vₙ₋₁ aₙ w` of any length.
    fn connects(&self, lang: &Language, v: &[Letter], w: &[Letter]) -> bool {
        if joins(lang, v, w) {
            return true;
        }
        let ends = self.ends(lang, w);
        let mut seen = self.starts(lang, v);
        let mut frontier = seen.clone();
        loop {
            if frontier.iter().zip(&ends).any(|(&a, &b)| a && b) {
                return true;
            }
            let next = self.step(&frontier);
            let fresh: Vec<bool> = next.iter().zip(&seen).map(|(&a, &s)| a && !s).collect();
            if !fresh.iter().any(|&b| b) {
                return false;
            }
            for (s, &f) in seen.iter_mut().zip(&fresh) {
                *s |= f;
            }
            frontier = fresh;
        }
    }

    /// Chains of every sufficiently large length.
    fn mixes(&self, lang: &Language, v: &[Letter], w: &[Letter]) -> bool {
        let ends = self.ends(lang, w);
        let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut seq: Vec<Vec<bool>> = Vec::new();
        let mut cur = self.starts(lang, v);
        loop {
            if let Some(&i) = index.get(&cur) {
                return seq[i..].iter().all(|r| r.iter().zip(&ends).any(|(&a, &b)| a && b));
            }
            index.insert(cur.clone(), seq.len());
            let next = self.step(&cur);
            seq.push(cur);
            cur = next;
        }
    }
}

/// Whether `u a w ∈ L` for some letter `a`.
fn joins(lang: &Language, u: &[Letter], w: &[Letter]) -> bool {
    let mut buf = Vec::with_capacity(u.len() + w.len() + 1);
    (1..=lang.p.k()).any(|a| {
        buf.clear();
        buf.extend_from_slice(u);
        buf.push(a);
        buf.extend_from_slice(w);
        lang.accepts(&buf)
    })
}

/// A periodic point of the presented shift that never contains `v`.
pub fn avoiding_cycle(p: &Presentation, v: &[Letter]) -> Option<Vec<Letter>> {
    let m = v.len();
    // Prefix-function automaton for the single word v.
    let mut fail = vec![0usize; m];
    for i in 1..m {
        let mut j = fail[i - 1];
        while j > 0 && v[i] != v[j] {
            j = fail[j - 1];
        }
        if v[i] == v[j] {
            j += 1;
        }
        fail[i] = j;
    }
    let kmp = |mut q: usize, a: Letter| -> usize {
        loop {
            if q < m && v[q] == a {
                return q + 1;
            }
            if q == 0 {
                return 0;
            }
            q = fail[q - 1];
        }
    };
    let n = p.n_states();
    let id = |s: u32, q: usize| s as usize * m + q;
    let mut succ = vec![Vec::new(); n * m];
    let mut letter: HashMap<(usize, usize), Letter> = HashMap::new();
    for s in 0..n as u32 {
        for q in 0..m {
            for a in 1..=p.k() {
                if let Some(t) = p.target(s, a) {
                    let r = kmp(q, a);
                    if r < m {
                        succ[id(s, q)].push(id(t, r));
                        letter.entry((id(s, q), id(t, r))).or_insert(a);
                    }
                }
            }
        }
    }
    let g = SftGraph::new(vec![String::new(); n * m], succ);
    let comp = g.nontrivial_sccs().into_iter().next()?;
    let x = comp[0];
    let cycle = g.path(x, x)?;
    Some(cycle.windows(2).map(|e| letter[&(e[0], e[1])]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symdyn::ForbiddenSet;

    fn two_fixed_points() -> Presentation {
        Presentation::from_edges(2, 2, &[(0, 1, 0), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn disjoint_orbits_are_not_transitive() {
        let p = two_fixed_points();
        let v = language_property(&p, Property::Transitive, 3, 1000).unwrap();
        assert_eq!(v.value, Truth::False);
        assert_eq!(v.witness, vec!["111", "222"]);
        let v = language_property(&p, Property::ChainTransitive, 3, 1000).unwrap();
        assert_eq!(v.value, Truth::Unknown);
        let v = language_property(&p, Property::ChainRecurrent, 3, 1000).unwrap();
        assert_eq!(v.value, Truth::True);
        let v = language_property(&p, Property::Minimal, 2, 1000).unwrap();
        assert_eq!(v.value, Truth::False);
    }

    #[test]
    fn golden_mean_language_is_mixing() {
        let p = Presentation::from_forbidden(&ForbiddenSet::new(2, vec![vec![1, 1]]).unwrap());
        for prop in Property::DYNAMICAL {
            let v = language_property(&p, prop, 4, 1000).unwrap();
            let want = if prop == Property::Minimal {
                Truth::False
            } else {
                Truth::True
            };
            assert_eq!(v.value, want, "{prop}");
        }
    }

    #[test]
    fn periodic_orbit_is_minimal_not_mixing() {
        let p = Presentation::from_edges(2, 2, &[(0, 1, 1), (1, 2, 0)]).unwrap();
        assert_eq!(
            language_property(&p, Property::Minimal, 4, 100).unwrap().value,
            Truth::True
        );
        assert_eq!(
            language_property(&p, Property::Transitive, 4, 100).unwrap().value,
            Truth::True
        );
        assert_eq!(
            language_property(&p, Property::Mixing, 4, 100).unwrap().value,
            Truth::False
        );
    }

    #[test]
    fn avoiding_cycle_spells_a_periodic_point() {
        let p = Presentation::from_forbidden(&ForbiddenSet::new(2, vec![vec![1, 1]]).unwrap());
        let c = avoiding_cycle(&p, &[2, 2]).unwrap();
        assert!(p.accepts_periodic(&c));
        assert!(!Word::new(c.repeat(3)).unwrap().contains_factor(&[2, 2]));
        assert!(avoiding_cycle(&p, &[2]).is_none());
    }

    #[test]
    fn graph_verdicts() {
        let two_cycles = SftGraph::new(
            (0..4).map(|i| i.to_string()).collect(),
            vec![vec![1], vec![0], vec![3], vec![2]],
        );
        assert_eq!(is_irreducible(&two_cycles).value, Truth::False);
        let c2 = SftGraph::new(vec!["a".into(), "b".into()], vec![vec![1], vec![0]]);
        assert!(is_irreducible(&c2).value.is_true());
        let ap = is_aperiodic(&c2).unwrap();
        assert_eq!((ap.value, ap.period), (Truth::False, Some(2)));
        assert!(graph_property(&c2, Property::Minimal).unwrap().value.is_true());
    }
}
