//! Connecting words for the mixing property.
//!
//! A connector from `u` to `v` is built from blocks `(pq)^d s` with
//! `1 ≤ d ≤ MAX_D`, optionally closed by a run `(pq)^d` or by an
//! alternating tail `xyxy…` in any two letters. Varying `d` between blocks
//! reaches every large length.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::symdyn::{Letter, Presentation, StateSet, SubshiftSpec, Word};

/// Largest exponent `d` of a block `(pq)^d s`.
pub const MAX_D: usize = 3;

/// A family of connecting words `w` with `u w v` admissible for every
/// length in `start..start + words.len()`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Connector {
    /// Block letters `[p, q, s]`.
    pub pattern: Vec<Letter>,
    pub start: usize,
    pub words: Vec<Word>,
}

/// Position inside the block grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Phase {
    /// `j` letters of the current `(pq)^d` run emitted.
    Run(usize),
    /// Alternating tail: last letter, the letter before it, length so far.
    Tail(Letter, Option<Letter>, usize),
}

impl Phase {
    fn accepting(self) -> bool {
        match self {
            Phase::Run(j) => j % 2 == 0,
            Phase::Tail(..) => true,
        }
    }

    fn next(self, k: Letter, [p, q, s]: [Letter; 3], mut f: impl FnMut(Letter, Phase)) {
        match self {
            Phase::Run(j) => {
                if j < 2 * MAX_D {
                    f(if j % 2 == 0 { p } else { q }, Phase::Run(j + 1));
                }
                if j >= 2 && j % 2 == 0 {
                    f(s, Phase::Run(0));
                }
                if j % 2 == 0 {
                    for x in 1..=k {
                        f(x, Phase::Tail(x, None, 1));
                    }
                }
            }
            Phase::Tail(last, before, e) if e <= 2 * MAX_D => match before {
                None => (1..=k)
                    .filter(|&x| x != last)
                    .for_each(|x| f(x, Phase::Tail(x, Some(last), e + 1))),
                Some(b) => f(b, Phase::Tail(b, Some(last), e + 1)),
            },
            Phase::Tail(..) => {}
        }
    }
}

type Key = (StateSet, Phase);

/// Searches connectors in the block grammar, trying the last letter of `u`
/// as the separator first. `start` is the smallest length from which
/// `count` consecutive lengths all connect; lengths up to
/// `max_start + count` are searched.
pub fn find_connector(s: &SubshiftSpec, u: &Word, v: &Word, count: usize, max_start: usize) -> Option<Connector> {
    let p = s.presentation();
    let k = s.k();
    let last = *u.letters().last()?;
    let seps = std::iter::once(last).chain((1..=k).filter(|&a| a != last));
    for sep in seps {
        for a in (1..=k).filter(|&a| a != sep) {
            for b in (1..=k).filter(|&b| b != a && b != sep) {
                if let Some(c) = connector_with(&p, u, v, [a, b, sep], count, max_start) {
                    return Some(c);
                }
            }
        }
    }
    None
}

fn connector_with(
    p: &Presentation,
    u: &Word,
    v: &Word,
    pattern: [Letter; 3],
    count: usize,
    max_start: usize,
) -> Option<Connector> {
    let after_u = p.read(&p.all_states(), u.letters());
    if after_u.is_empty() {
        return None;
    }
    let mut layers: Vec<BTreeMap<Key, Option<(Key, Letter)>>> =
        vec![BTreeMap::from([((after_u, Phase::Run(0)), None)])];
    let mut run: Vec<Vec<Letter>> = Vec::new();
    for n in 1..max_start + count {
        let mut layer: BTreeMap<Key, Option<(Key, Letter)>> = BTreeMap::new();
        for key in layers[n - 1].keys() {
            key.1.next(p.k(), pattern, |a, phase| {
                let set = p.step(&key.0, a);
                if !set.is_empty() {
                    layer.entry((set, phase)).or_insert_with(|| Some((key.clone(), a)));
                }
            });
        }
        if layer.is_empty() {
            return None;
        }
        let hit = layer
            .keys()
            .find(|(set, phase)| phase.accepting() && !p.read(set, v.letters()).is_empty())
            .cloned();
        layers.push(layer);
        match hit {
            Some(key) => {
                run.push(trace(&layers, key));
                if run.len() == count {
                    return Some(Connector {
                        pattern: pattern.to_vec(),
                        start: n + 1 - count,
                        words: run.into_iter().map(|w| Word::new(w).expect("nonempty word")).collect(),
                    });
                }
            }
            None => run.clear(),
        }
    }
    None
}

fn trace(layers: &[BTreeMap<Key, Option<(Key, Letter)>>], mut key: Key) -> Vec<Letter> {
    let mut letters = Vec::new();
    for layer in layers.iter().rev() {
        match &layer[&key] {
            Some((prev, a)) => {
                letters.push(*a);
                key = prev.clone();
            }
            None => break,
        }
    }
    letters.reverse();
    letters
}
