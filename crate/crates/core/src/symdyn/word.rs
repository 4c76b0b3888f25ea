use std::fmt;

use serde::{Deserialize, Serialize};

use super::SymdynError;

/// A letter of the alphabet `1..=k`.
pub type Letter = u8;

/// A finite word, optionally pointed at a distinguished index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
    origin: Option<usize>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self, SymdynError> {
        if letters.is_empty() {
            return Err(SymdynError::EmptyWord);
        }
        if letters.contains(&0) {
            return Err(SymdynError::AlphabetMismatch { letter: 0, k: 0 });
        }
        Ok(Word { letters, origin: None })
    }

    /// Pointed word whose letter at `origin` carries index 0.
    pub fn pointed(letters: Vec<Letter>, origin: usize) -> Result<Self, SymdynError> {
        let mut w = Word::new(letters)?;
        if origin >= w.letters.len() {
            return Err(SymdynError::Parse(format!("origin {origin} outside word")));
        }
        w.origin = Some(origin);
        Ok(w)
    }

    /// Parses digits `1..9`, or comma-separated labels for larger alphabets.
    /// A single `.` marks the letter at index 0.
    pub fn parse(text: &str) -> Result<Self, SymdynError> {
        let text = text.trim();
        let (left, right) = match text.split_once('.') {
            Some((l, r)) => (l, Some(r)),
            None => (text, None),
        };
        let parse_part = |s: &str| -> Result<Vec<Letter>, SymdynError> {
            if s.contains(',') {
                s.split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        t.trim()
                            .parse::<Letter>()
                            .map_err(|_| SymdynError::Parse(format!("bad letter {t:?}")))
                    })
                    .collect()
            } else {
                s.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c.to_digit(10) {
                        Some(d) if d > 0 => Ok(d as Letter),
                        _ => Err(SymdynError::Parse(format!("bad letter {c:?}"))),
                    })
                    .collect()
            }
        };
        let mut letters = parse_part(left)?;
        match right {
            None => Word::new(letters),
            Some(r) => {
                let origin = letters.len();
                letters.extend(parse_part(r)?);
                Word::pointed(letters, origin)
            }
        }
    }

    pub(crate) fn from_slice_unchecked(letters: &[Letter]) -> Self {
        Word {
            letters: letters.to_vec(),
            origin: None,
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn origin(&self) -> Option<usize> {
        self.origin
    }

    pub fn max_letter(&self) -> Letter {
        self.letters.iter().copied().max().unwrap_or(0)
    }

    pub fn check_alphabet(&self, k: Letter) -> Result<(), SymdynError> {
        match self.letters.iter().find(|&&a| a == 0 || a > k) {
            Some(&letter) => Err(SymdynError::AlphabetMismatch { letter, k }),
            None => Ok(()),
        }
    }

    /// Cyclic rotation moving letter `r` to the front.
    pub fn rotated(&self, r: usize) -> Word {
        let n = self.letters.len();
        let mut letters = self.letters[r % n..].to_vec();
        letters.extend_from_slice(&self.letters[..r % n]);
        Word { letters, origin: None }
    }

    pub fn is_rotation_of(&self, other: &Word) -> bool {
        self.len() == other.len() && (0..self.len()).any(|r| self.rotated(r).letters == other.letters)
    }

    pub fn contains_factor(&self, factor: &[Letter]) -> bool {
        factor.is_empty() || self.letters.windows(factor.len()).any(|w| w == factor)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters, origin: None }
    }

    /// Relabels letters through `map[letter - 1]`.
    pub fn relabeled(&self, map: &[Letter]) -> Word {
        Word {
            letters: self.letters.iter().map(|&a| map[a as usize - 1]).collect(),
            origin: self.origin,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.letters.iter().any(|&a| a > 9);
        for (i, a) in self.letters.iter().enumerate() {
            if self.origin == Some(i) {
                write!(f, ".")?;
            } else if wide && i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Writes `letters` in the compact digit form used in forbidden-set files.
pub fn letters_to_string(letters: &[Letter]) -> String {
    if letters.iter().any(|&a| a > 9) {
        letters.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    } else {
        letters.iter().map(|a| char::from(b'0' + a)).collect()
    }
}
