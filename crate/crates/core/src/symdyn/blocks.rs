use std::collections::HashMap;

use serde::Serialize;

use super::word::{letters_to_string, Letter};
use super::{ForbiddenSet, Presentation, SubshiftSpec, SymdynError, Word};
use crate::sftlab::SftGraph;

/// Words of one length together with their count `|B_n|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WordList {
    pub n: usize,
    pub count: u128,
    pub words: Vec<Word>,
}

/// `|B_1|, …, |B_n|` of the closure.
pub fn count_words(s: &SubshiftSpec, n: usize) -> Vec<u128> {
    s.presentation().count_words(n)
}

/// The length-`n` words of the closure in lexicographic order.
///
/// The exclusion rule removes points but no words, so this is also the
/// language of the code space.
pub fn enumerate_words(s: &SubshiftSpec, n: usize, budget: usize) -> Result<WordList, SymdynError> {
    let words = s.presentation().enumerate(n, budget)?;
    Ok(WordList {
        n,
        count: words.len() as u128,
        words,
    })
}

/// Vertex shift on `B_N(X)` with `u → v` when `u` and `v` overlap in
/// `N − 1` letters and `u·v_N ∈ L(X)`.
pub fn higher_block(f: &ForbiddenSet, block: usize, budget: usize) -> Result<SftGraph, SymdynError> {
    let memory = f.memory();
    if block == 0 || block <= memory {
        return Err(SymdynError::BlockTooShort { block, memory });
    }
    let p = Presentation::from_forbidden(f);
    higher_block_of(&p, block, budget)
}

pub(crate) fn higher_block_of(p: &Presentation, block: usize, budget: usize) -> Result<SftGraph, SymdynError> {
    let words = p.enumerate(block, budget)?;
    let index: HashMap<&[Letter], usize> = words.iter().enumerate().map(|(i, w)| (w.letters(), i)).collect();
    let mut succ = vec![Vec::new(); words.len()];
    let mut ext: Vec<Letter> = Vec::with_capacity(block + 1);
    for (i, u) in words.iter().enumerate() {
        for a in 1..=p.k() {
            ext.clear();
            ext.extend_from_slice(u.letters());
            ext.push(a);
            if p.accepts(&ext) {
                if let Some(&j) = index.get(&ext[1..]) {
                    succ[i].push(j);
                }
            }
        }
    }
    let labels = words.iter().map(|w| letters_to_string(w.letters())).collect();
    Ok(SftGraph::new(labels, succ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::PolygonSpec;
    use crate::symdyn::forbidden_set;

    #[test]
    fn ideal_counts() {
        for k in 3..=5usize {
            let s = forbidden_set(&PolygonSpec::ideal(k)).unwrap();
            let c = count_words(&s, 10);
            for (i, &b) in c.iter().enumerate() {
                assert_eq!(b, (k * (k - 1).pow(i as u32)) as u128);
            }
        }
        let s = forbidden_set(&PolygonSpec::ideal(3)).unwrap();
        let w = enumerate_words(&s, 2, 100).unwrap();
        assert_eq!(w.count, 6);
    }

    #[test]
    fn higher_block_examples() {
        let gm = ForbiddenSet::new(2, vec![vec![1, 1]]).unwrap();
        let g = higher_block(&gm, 2, 1000).unwrap();
        assert_eq!(g.labels(), &["12", "21", "22"]);
        let s = forbidden_set(&PolygonSpec::ideal(3)).unwrap();
        let g = higher_block(&s.closure, 2, 1000).unwrap();
        assert_eq!(g.n(), 6);
        assert!((0..6).all(|i| g.successors(i).len() == 2));
        assert!(matches!(
            higher_block(&s.closure, 1, 1000),
            Err(SymdynError::BlockTooShort { block: 1, memory: 1 })
        ));
    }
}
