//! Words in a free group over a finite alphabet.

use alloc::vec::Vec;
use core::fmt;

use crate::labeled::Alphabet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A word `s_1^{e_1} s_2^{e_2} ...`, read left to right as a right action.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    syllables: Vec<(usize, Sign)>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn letter(index: usize) -> Word {
        Word {
            syllables: alloc::vec![(index, Sign::Pos)],
        }
    }

    pub fn inverse_letter(index: usize) -> Word {
        Word {
            syllables: alloc::vec![(index, Sign::Neg)],
        }
    }

    pub fn from_syllables(syllables: Vec<(usize, Sign)>) -> Word {
        Word { syllables }
    }

    pub fn syllables(&self) -> &[(usize, Sign)] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn push(&mut self, letter: usize, sign: Sign) {
        self.syllables.push((letter, sign));
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|&(l, s)| (l, s.flip())).collect(),
        }
    }

    /// Concatenation `self · other`, not reduced.
    pub fn then(&self, other: &Word) -> Word {
        let mut syllables = self.syllables.clone();
        syllables.extend_from_slice(&other.syllables);
        Word { syllables }
    }

    /// Free reduction: cancels adjacent `s s^-1` pairs.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<(usize, Sign)> = Vec::with_capacity(self.syllables.len());
        for &(l, s) in &self.syllables {
            match out.last() {
                Some(&(pl, ps)) if pl == l && ps == s.flip() => {
                    out.pop();
                }
                _ => out.push((l, s)),
            }
        }
        Word { syllables: out }
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.syllables.iter().map(|&(l, _)| l).max()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for (i, &(l, s)) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match self.alphabet.name(l) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "#{l}")?,
            }
            if s == Sign::Neg {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_cancels_nested_pairs() {
        // a b b^-1 a^-1 c -> c
        let w = Word::from_syllables(alloc::vec![
            (0, Sign::Pos),
            (1, Sign::Pos),
            (1, Sign::Neg),
            (0, Sign::Neg),
            (2, Sign::Pos),
        ]);
        assert_eq!(w.reduced(), Word::letter(2));
        assert!(w.then(&w.inverse()).reduced().is_empty());
    }

    #[test]
    fn display_uses_letter_names() {
        let alphabet = Alphabet::new(["x1", "t"]).unwrap();
        let w = Word::letter(1).then(&Word::letter(0)).then(&Word::inverse_letter(1));
        assert_eq!(alloc::format!("{}", w.display(&alphabet)), "t x1 t^-1");
        assert_eq!(alloc::format!("{}", Word::identity().display(&alphabet)), "e");
    }
}
