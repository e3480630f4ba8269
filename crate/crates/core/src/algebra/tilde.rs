use std::fmt;

use super::{Generator, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum TildeLetter {
    Gen(Generator),
    /// A positive power of the separator `t`.
    T(u32),
}

/// Normal-form basis element of `A * C[t]`: `t^{e0} w1 t^{e1} ... wn t^{en}`.
///
/// Stored as a flat letter string in which maximal generator runs are the
/// `A`-words and `t`-powers never sit next to each other, so adjacent words
/// are always separated by a positive power of `t`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct TildeWord {
    letters: Vec<TildeLetter>,
}

impl TildeWord {
    pub fn unit() -> Self {
        TildeWord::default()
    }

    pub fn t(exp: u32) -> Self {
        let mut out = TildeWord::unit();
        out.push(TildeLetter::T(exp));
        out
    }

    pub fn from_word(w: &Word) -> Self {
        TildeWord { letters: w.letters().iter().copied().map(TildeLetter::Gen).collect() }
    }

    /// Builds `t^{e0} w1 t^{e1} ... wn t^{en}` from `n + 1` exponents and `n`
    /// nonempty words; inner exponents must be positive.
    pub fn from_parts(exponents: &[u32], words: &[Word]) -> Result<Self> {
        if exponents.len() != words.len() + 1 {
            return Err(Error::InvalidState(format!("{} exponents for {} words", exponents.len(), words.len())));
        }
        if words.iter().any(Word::is_unit) {
            return Err(Error::EmptyWord);
        }
        let inner = &exponents[1..exponents.len() - 1];
        if inner.contains(&0) {
            return Err(Error::InvalidState("inner t-exponents must be positive".into()));
        }
        let mut out = TildeWord::t(exponents[0]);
        for (w, &e) in words.iter().zip(&exponents[1..]) {
            out = out.mul(&TildeWord::from_word(w)).mul(&TildeWord::t(e));
        }
        Ok(out)
    }

    fn push(&mut self, letter: TildeLetter) {
        match letter {
            TildeLetter::T(0) => {}
            TildeLetter::T(e) => match self.letters.last_mut() {
                Some(TildeLetter::T(prev)) => *prev += e,
                _ => self.letters.push(letter),
            },
            TildeLetter::Gen(_) => self.letters.push(letter),
        }
    }

    pub fn letters(&self) -> &[TildeLetter] {
        &self.letters
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    /// True when no `A`-letter occurs (a pure power of `t`, possibly the unit).
    pub fn is_pure_t(&self) -> bool {
        self.letters.iter().all(|l| matches!(l, TildeLetter::T(_)))
    }

    pub fn mul(&self, rhs: &TildeWord) -> TildeWord {
        let mut out = TildeWord { letters: Vec::with_capacity(self.letters.len() + rhs.letters.len()) };
        out.letters.extend_from_slice(&self.letters);
        for &l in &rhs.letters {
            out.push(l);
        }
        out
    }

    /// Replaces every positive exponent by 1: the normal form modulo the
    /// two-sided ideal generated by `t(1 - t)`.
    pub fn clamp_t(&self) -> TildeWord {
        TildeWord {
            letters: self
                .letters
                .iter()
                .map(|l| match l {
                    TildeLetter::T(_) => TildeLetter::T(1),
                    g => *g,
                })
                .collect(),
        }
    }

    pub fn is_clamped(&self) -> bool {
        self.letters.iter().all(|l| !matches!(l, TildeLetter::T(e) if *e > 1))
    }

    pub fn star(&self) -> TildeWord {
        TildeWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| match l {
                    TildeLetter::Gen(g) => TildeLetter::Gen(g.star()),
                    t => *t,
                })
                .collect(),
        }
    }

    /// The maximal generator runs `w1, ..., wn` as slices.
    pub fn word_slices(&self) -> impl Iterator<Item = &[TildeLetter]> {
        self.letters.split(|l| matches!(l, TildeLetter::T(_))).filter(|run| !run.is_empty())
    }

    pub fn words(&self) -> Vec<Word> {
        self.word_slices()
            .map(|run| {
                Word::new(
                    run.iter()
                        .map(|l| match l {
                            TildeLetter::Gen(g) => *g,
                            TildeLetter::T(_) => unreachable!(),
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// `e0, ..., en` for the shape `t^{e0} w1 ... wn t^{en}`.
    pub fn exponents(&self) -> Vec<u32> {
        let mut exps = vec![0];
        let mut in_word = false;
        for l in &self.letters {
            match l {
                TildeLetter::T(e) => *exps.last_mut().expect("nonempty") = *e,
                TildeLetter::Gen(_) => {
                    if !in_word {
                        exps.push(0);
                    }
                }
            }
            in_word = matches!(l, TildeLetter::Gen(_));
        }
        exps
    }
}

impl fmt::Display for TildeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match l {
                TildeLetter::Gen(g) => write!(f, "{g}")?,
                TildeLetter::T(1) => f.write_str("t")?,
                TildeLetter::T(e) => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}
