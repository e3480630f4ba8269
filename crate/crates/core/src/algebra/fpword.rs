use std::fmt;

use super::{AlgebraId, Generator, Word};
use crate::error::{Error, Result};

/// A word in the free product `*_l A_l` with identified units: an alternating
/// sequence of nonempty blocks, consecutive blocks from distinct algebras.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FpWord {
    blocks: Vec<Word>,
}

impl FpWord {
    pub fn unit() -> Self {
        FpWord::default()
    }

    /// Builds the normal form of a letter string, grouping adjacent letters
    /// of the same algebra into blocks.
    pub fn from_letters<I: IntoIterator<Item = Generator>>(letters: I) -> Self {
        let mut out = FpWord::unit();
        for g in letters {
            out.push_word(Word::letter(g));
        }
        out
    }

    /// Normal form of an arbitrary block list: unit blocks vanish, adjacent
    /// blocks of one algebra merge.
    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Self {
        let mut out = FpWord::unit();
        for w in words {
            out.push_word(w);
        }
        out
    }

    /// Accepts only an already-alternating list of nonempty blocks.
    pub fn from_blocks(blocks: Vec<Word>) -> Result<Self> {
        if blocks.iter().any(Word::is_unit) {
            return Err(Error::EmptyWord);
        }
        for (i, pair) in blocks.windows(2).enumerate() {
            if pair[0].algebra() == pair[1].algebra() {
                let alg = pair[0].algebra().expect("nonempty");
                return Err(Error::NotAlternating(i, i + 1, alg));
            }
        }
        Ok(FpWord { blocks })
    }

    fn push_word(&mut self, w: Word) {
        if w.is_unit() {
            return;
        }
        match self.blocks.last_mut() {
            Some(last) if last.algebra() == w.algebra() => *last = last.concat(&w),
            _ => self.blocks.push(w),
        }
    }

    pub fn blocks(&self) -> &[Word] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_unit(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn algebras(&self) -> impl Iterator<Item = AlgebraId> + '_ {
        self.blocks.iter().map(|w| w.algebra().expect("blocks are nonempty"))
    }

    pub fn letters(&self) -> impl Iterator<Item = &Generator> {
        self.blocks.iter().flat_map(|w| w.letters())
    }

    pub fn mul(&self, rhs: &FpWord) -> FpWord {
        let mut out = self.clone();
        for w in &rhs.blocks {
            out.push_word(w.clone());
        }
        out
    }

    pub fn star(&self) -> FpWord {
        FpWord { blocks: self.blocks.iter().rev().map(Word::star).collect() }
    }
}

impl fmt::Display for FpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("1");
        }
        for (i, w) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}
