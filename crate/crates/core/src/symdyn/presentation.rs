//! Right-resolving labeled-graph presentations of shift spaces.
//!
//! A [`Presentation`] is a deterministic labeled graph in which every state
//! lies on a bi-infinite path. Its language is the set of labels of finite
//! paths, which is exactly `L(X)` of the presented shift. SFTs are presented
//! by the Aho–Corasick automaton of their forbidden words; rule-backed shifts
//! supply their graphs directly.

use std::collections::{HashMap, VecDeque};

use super::word::Letter;
use super::{ForbiddenSet, SymdynError, Word};

const NONE: u32 = u32::MAX;

/// A set of presentation states, kept sorted and deduplicated.
pub type StateSet = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    k: Letter,
    next: Vec<Vec<u32>>,
}

impl Presentation {
    /// Builds from labeled edges `(from, letter, to)` and trims to the
    /// essential part.
    pub fn from_edges(k: Letter, states: usize, edges: &[(usize, Letter, usize)]) -> Result<Self, SymdynError> {
        let mut next = vec![vec![NONE; k as usize]; states];
        for &(s, a, t) in edges {
            if a == 0 || a > k {
                return Err(SymdynError::AlphabetMismatch { letter: a, k });
            }
            if s >= states || t >= states {
                return Err(SymdynError::Parse(format!(
                    "edge ({s}, {a}, {t}) uses an unknown state"
                )));
            }
            let slot = &mut next[s][a as usize - 1];
            if *slot != NONE && *slot != t as u32 {
                return Err(SymdynError::Parse(format!("state {s} has two edges labeled {a}")));
            }
            *slot = t as u32;
        }
        Ok(Presentation { k, next }.trimmed())
    }

    /// Aho–Corasick automaton of `f` restricted to states on bi-infinite paths.
    pub fn from_forbidden(f: &ForbiddenSet) -> Self {
        let k = f.k() as usize;
        let mut children: Vec<Vec<u32>> = vec![vec![NONE; k]];
        let mut dead = vec![false];
        for w in f.words() {
            let mut s = 0usize;
            for &a in w {
                let c = children[s][a as usize - 1];
                s = if c == NONE {
                    children.push(vec![NONE; k]);
                    dead.push(false);
                    let id = children.len() - 1;
                    children[s][a as usize - 1] = id as u32;
                    id
                } else {
                    c as usize
                };
            }
            dead[s] = true;
        }
        let n = children.len();
        let mut fail = vec![0u32; n];
        let mut delta = vec![vec![0u32; k]; n];
        let mut queue = VecDeque::new();
        for a in 0..k {
            let c = children[0][a];
            if c == NONE {
                delta[0][a] = 0;
            } else {
                delta[0][a] = c;
                fail[c as usize] = 0;
                queue.push_back(c as usize);
            }
        }
        while let Some(s) = queue.pop_front() {
            if dead[fail[s] as usize] {
                dead[s] = true;
            }
            for a in 0..k {
                let c = children[s][a];
                if c == NONE {
                    delta[s][a] = delta[fail[s] as usize][a];
                } else {
                    fail[c as usize] = delta[fail[s] as usize][a];
                    delta[s][a] = c;
                    queue.push_back(c as usize);
                }
            }
        }
        let next = (0..n)
            .map(|s| {
                if dead[s] {
                    vec![NONE; k]
                } else {
                    delta[s]
                        .iter()
                        .map(|&t| if dead[t as usize] { NONE } else { t })
                        .collect()
                }
            })
            .collect();
        let mut p = Presentation { k: f.k(), next };
        for (row, _) in p.next.iter_mut().zip(&dead).filter(|(_, &d)| d) {
            row.iter_mut().for_each(|t| *t = NONE);
        }
        p.trimmed()
    }

    /// Removes states without both an incoming and an outgoing edge, repeatedly.
    fn trimmed(self) -> Self {
        let n = self.next.len();
        let mut alive = vec![true; n];
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (s, row) in self.next.iter().enumerate() {
            for &t in row.iter().filter(|&&t| t != NONE) {
                outdeg[s] += 1;
                indeg[t as usize] += 1;
                preds[t as usize].push(s as u32);
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&s| indeg[s] == 0 || outdeg[s] == 0).collect();
        while let Some(s) = queue.pop_front() {
            if !alive[s] {
                continue;
            }
            alive[s] = false;
            for &t in self.next[s].iter().filter(|&&t| t != NONE) {
                let t = t as usize;
                if alive[t] {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push_back(t);
                    }
                }
            }
            for &p in &preds[s] {
                let p = p as usize;
                if alive[p] {
                    outdeg[p] -= 1;
                    if outdeg[p] == 0 {
                        queue.push_back(p);
                    }
                }
            }
        }
        let mut id = vec![NONE; n];
        let mut count = 0u32;
        for s in 0..n {
            if alive[s] {
                id[s] = count;
                count += 1;
            }
        }
        let next = (0..n)
            .filter(|&s| alive[s])
            .map(|s| {
                self.next[s]
                    .iter()
                    .map(|&t| {
                        if t != NONE && alive[t as usize] {
                            id[t as usize]
                        } else {
                            NONE
                        }
                    })
                    .collect()
            })
            .collect();
        Presentation { k: self.k, next }
    }

    pub fn k(&self) -> Letter {
        self.k
    }

    pub fn n_states(&self) -> usize {
        self.next.len()
    }

    /// `true` when the presented shift is empty.
    pub fn is_empty(&self) -> bool {
        self.next.is_empty()
    }

    pub fn target(&self, state: u32, a: Letter) -> Option<u32> {
        match self.next[state as usize][a as usize - 1] {
            NONE => None,
            t => Some(t),
        }
    }

    pub fn all_states(&self) -> StateSet {
        (0..self.next.len() as u32).collect()
    }

    pub fn step(&self, set: &[u32], a: Letter) -> StateSet {
        let mut out: StateSet = set.iter().filter_map(|&s| self.target(s, a)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn read(&self, set: &[u32], w: &[Letter]) -> StateSet {
        let mut cur = set.to_vec();
        for &a in w {
            if cur.is_empty() {
                break;
            }
            cur = self.step(&cur, a);
        }
        cur
    }

    /// Membership in the language `L(X)`.
    pub fn accepts(&self, w: &[Letter]) -> bool {
        w.iter().all(|&a| a >= 1 && a <= self.k) && !self.read(&self.all_states(), w).is_empty()
    }

    /// Whether the bi-infinite periodic point `p^∞` belongs to the shift.
    pub fn accepts_periodic(&self, p: &[Letter]) -> bool {
        if p.is_empty() || !p.iter().all(|&a| a >= 1 && a <= self.k) {
            return false;
        }
        let f = |s: u32| -> Option<u32> {
            let mut cur = s;
            for &a in p {
                cur = self.target(cur, a)?;
            }
            Some(cur)
        };
        let n = self.n_states();
        (0..n as u32).any(|s0| {
            let mut s = s0;
            for _ in 0..=n {
                match f(s) {
                    Some(t) => s = t,
                    None => return false,
                }
            }
            // After n + 1 steps the orbit is inside its cycle.
            let start = s;
            for _ in 0..=n {
                match f(s) {
                    Some(t) if t == start => return true,
                    Some(t) => s = t,
                    None => return false,
                }
            }
            false
        })
    }

    /// Adjacency lists of the underlying graph, one entry per labeled edge.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.next
            .iter()
            .map(|row| row.iter().filter(|&&t| t != NONE).map(|&t| t as usize).collect())
            .collect()
    }

    /// Presentation of the image under the letter map `a ↦ map[a − 1]`
    /// (a bijection of the alphabet).
    pub fn relabeled(&self, map: &[Letter]) -> Presentation {
        let next = self
            .next
            .iter()
            .map(|row| {
                let mut out = vec![NONE; self.k as usize];
                for (a, &t) in row.iter().enumerate() {
                    out[map[a] as usize - 1] = t;
                }
                out
            })
            .collect();
        Presentation { k: self.k, next }
    }

    /// Word counts `|B_1|, …, |B_n|` by dynamic programming over reachable
    /// state sets.
    pub fn count_words(&self, n: usize) -> Vec<u128> {
        let mut counts = Vec::with_capacity(n);
        if self.is_empty() {
            return vec![0; n];
        }
        let mut level: HashMap<StateSet, u128> = HashMap::new();
        level.insert(self.all_states(), 1);
        for _ in 0..n {
            let mut nxt: HashMap<StateSet, u128> = HashMap::new();
            for (set, c) in &level {
                for a in 1..=self.k {
                    let s = self.step(set, a);
                    if !s.is_empty() {
                        *nxt.entry(s).or_insert(0) += c;
                    }
                }
            }
            counts.push(nxt.values().sum());
            level = nxt;
        }
        counts
    }

    /// All words of length `n` in lexicographic order, or `BudgetExceeded`
    /// when there are more than `budget`.
    pub fn enumerate(&self, n: usize, budget: usize) -> Result<Vec<Word>, SymdynError> {
        let total = *self.count_words(n).last().unwrap_or(&0);
        if total > budget as u128 {
            return Err(SymdynError::BudgetExceeded {
                length: n,
                count: total,
                budget,
            });
        }
        let mut out = Vec::with_capacity(total as usize);
        if n == 0 || self.is_empty() {
            return Ok(out);
        }
        let mut prefix: Vec<Letter> = Vec::with_capacity(n);
        let mut stack: Vec<(StateSet, Letter)> = vec![(self.all_states(), 1)];
        while let Some((set, a)) = stack.pop() {
            if a > self.k {
                prefix.pop();
                continue;
            }
            stack.push((set.clone(), a + 1));
            let s = self.step(&set, a);
            if s.is_empty() {
                continue;
            }
            prefix.push(a);
            if prefix.len() == n {
                out.push(Word::from_slice_unchecked(&prefix));
                prefix.pop();
            } else {
                stack.push((s, 1));
            }
        }
        Ok(out)
    }

    /// Shortest word in exactly one of the two languages, searched up to
    /// length `max_len`, with `true` when it belongs to `self`.
    ///
    /// Returns `Ok(None)` when the languages agree up to `max_len`.
    pub fn first_difference(
        &self,
        other: &Presentation,
        max_len: usize,
        budget: usize,
    ) -> Result<Option<(Word, bool)>, SymdynError> {
        if self.k != other.k {
            return Err(SymdynError::AlphabetMismatch {
                letter: other.k,
                k: self.k,
            });
        }
        type Key = (StateSet, StateSet);
        let mut parent: HashMap<Key, Option<(Key, Letter)>> = HashMap::new();
        let start: Key = (self.all_states(), other.all_states());
        let trace = |parent: &HashMap<Key, Option<(Key, Letter)>>, mut key: Key, last: Letter| {
            let mut letters = vec![last];
            while let Some(Some((prev, a))) = parent.get(&key) {
                letters.push(*a);
                key = prev.clone();
            }
            letters.reverse();
            Word::from_slice_unchecked(&letters)
        };
        if start.0.is_empty() != start.1.is_empty() {
            // One shift is empty: every letter of the other distinguishes.
            for a in 1..=self.k {
                let x = self.step(&start.0, a);
                let y = other.step(&start.1, a);
                if x.is_empty() != y.is_empty() {
                    return Ok(Some((Word::from_slice_unchecked(&[a]), !x.is_empty())));
                }
            }
        }
        parent.insert(start.clone(), None);
        let mut frontier = vec![start];
        for _depth in 0..max_len {
            let mut next_frontier = Vec::new();
            for key in &frontier {
                for a in 1..=self.k {
                    let x = self.step(&key.0, a);
                    let y = other.step(&key.1, a);
                    match (x.is_empty(), y.is_empty()) {
                        (true, true) => continue,
                        (false, true) => return Ok(Some((trace(&parent, key.clone(), a), true))),
                        (true, false) => return Ok(Some((trace(&parent, key.clone(), a), false))),
                        (false, false) => {}
                    }
                    let nk = (x, y);
                    if !parent.contains_key(&nk) {
                        if parent.len() >= budget {
                            return Err(SymdynError::BudgetExceeded {
                                length: _depth + 1,
                                count: parent.len() as u128,
                                budget,
                            });
                        }
                        parent.insert(nk.clone(), Some((key.clone(), a)));
                        next_frontier.push(nk);
                    }
                }
            }
            if next_frontier.is_empty() {
                break;
            }
            frontier = next_frontier;
        }
        Ok(None)
    }

    /// Extends `w` to the right inside the language until it has length `len`.
    pub fn extend_right(&self, w: &[Letter], len: usize) -> Option<Word> {
        let mut cur = self.read(&self.all_states(), w);
        if cur.is_empty() {
            return None;
        }
        let mut letters = w.to_vec();
        while letters.len() < len {
            let a = (1..=self.k).find(|&a| !self.step(&cur, a).is_empty())?;
            cur = self.step(&cur, a);
            letters.push(a);
        }
        Some(Word::from_slice_unchecked(&letters))
    }
}
