//! Forbidden-word families and the SFTs cut from them.

use crate::polygon::{ray_triangle, PolygonError, PolygonSpec};
use crate::symdyn::{ForbiddenSet, Letter};

use super::SubshiftHandle;

/// An infinite forbidden family listed in a fixed order (by length, then
/// lexicographically).
pub trait ForbiddenFamily {
    fn k(&self) -> Letter;
    /// The `i`-th word, from `i = 0`.
    fn word(&self, i: usize) -> Vec<Letter>;
    fn name(&self) -> String;
}

/// `2 1^k 2` for odd `k`: the even shift.
#[derive(Debug, Clone, Copy, Default)]
pub struct EvenFamily;

impl ForbiddenFamily for EvenFamily {
    fn k(&self) -> Letter {
        2
    }

    fn word(&self, i: usize) -> Vec<Letter> {
        let mut w = vec![2];
        w.extend(std::iter::repeat_n(1, 2 * i + 1));
        w.push(2);
        w
    }

    fn name(&self) -> String {
        "even_shift".into()
    }
}

/// A finite family; words past its end are never reached by callers that
/// respect [`ListFamily::len`].
#[derive(Debug, Clone)]
pub struct ListFamily {
    pub k: Letter,
    pub words: Vec<Vec<Letter>>,
}

impl ListFamily {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl ForbiddenFamily for ListFamily {
    fn k(&self) -> Letter {
        self.k
    }

    fn word(&self, i: usize) -> Vec<Letter> {
        self.words[i].clone()
    }

    fn name(&self) -> String {
        "list".into()
    }
}

/// The SFT forbidding the first `j` words of `f`.
pub fn sft_approximation(f: &dyn ForbiddenFamily, j: usize) -> SubshiftHandle {
    let words: Vec<Vec<Letter>> = (0..j).map(|i| f.word(i)).collect();
    let set = ForbiddenSet::new(f.k(), words).expect("family words use the alphabet");
    SubshiftHandle::from_forbidden(format!("{}[{j}]", f.name()), set)
}

/// The SFT forbidding `base` together with `a b^{n0 + j}`; these increase
/// with `j` towards the SFT of `base`.
pub fn tail_extension(base: &ForbiddenSet, a: Letter, b: Letter, n0: usize, j: usize) -> SubshiftHandle {
    let mut w = vec![a];
    w.extend(std::iter::repeat_n(b, n0 + j));
    let set = base.with_word(w).expect("tail word uses the alphabet");
    SubshiftHandle::from_forbidden(format!("tail[{j}]"), set)
}

/// Forbidden words of the three-symbol family at stage `n`:
/// `22, 23, 32, 33` and `x 1^k y` for `x, y ∈ {2, 3}`, `1 ≤ k ≤ n`.
pub fn three_symbol_words(n: usize) -> Vec<Vec<Letter>> {
    let mut words = vec![vec![2, 2], vec![2, 3], vec![3, 2], vec![3, 3]];
    for k in 1..=n {
        for x in [2, 3] {
            for y in [2, 3] {
                let mut w = vec![x];
                w.extend(std::iter::repeat_n(1, k));
                w.push(y);
                words.push(w);
            }
        }
    }
    words
}

/// Stage `n` of the three-symbol family, transitive SFTs converging to
/// [`SubshiftHandle::three_symbol_limit`].
pub fn three_symbol_approximant(n: usize) -> SubshiftHandle {
    let set = ForbiddenSet::new(3, three_symbol_words(n)).expect("words over {1,2,3}");
    SubshiftHandle::from_forbidden(format!("ttoct[{n}]"), set)
}

/// Triangle with two ideal vertices and angle `π/(n + 2)` at the third.
pub fn remark_triangle(n: usize, ang_tol: f64) -> Result<PolygonSpec, PolygonError> {
    ray_triangle(n as u32 + 2, ang_tol)
}
