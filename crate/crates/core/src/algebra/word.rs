use std::borrow::Borrow;
use std::fmt;

use super::Symbol;

/// Index of an ambient algebra `A_l`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AlgebraId(pub u32);

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A free generator `a` or its adjoint `a*`, tagged with its algebra.
///
/// Ordering is lexicographic on `(algebra, symbol, starred)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Generator {
    pub algebra: AlgebraId,
    pub symbol: Symbol,
    pub starred: bool,
}

impl Generator {
    pub fn new(algebra: u32, symbol: &str) -> Self {
        Generator { algebra: AlgebraId(algebra), symbol: Symbol::new(symbol), starred: false }
    }

    pub fn star(self) -> Self {
        Generator { starred: !self.starred, ..self }
    }

    /// The same letter viewed in another algebra.
    pub fn retag(self, algebra: AlgebraId) -> Self {
        Generator { algebra, ..self }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}@{}", self.symbol, if self.starred { "*" } else { "" }, self.algebra)
    }
}

/// A word in one free *-algebra; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word {
    letters: Vec<Generator>,
}

impl Word {
    pub fn unit() -> Self {
        Word::default()
    }

    /// Panics if the letters span more than one algebra.
    pub fn new(letters: Vec<Generator>) -> Self {
        assert!(letters.windows(2).all(|p| p[0].algebra == p[1].algebra), "letters of a word must share one algebra");
        Word { letters }
    }

    pub fn letter(g: Generator) -> Self {
        Word { letters: vec![g] }
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    /// `None` for the unit, which belongs to every algebra.
    pub fn algebra(&self) -> Option<AlgebraId> {
        self.letters.first().map(|g| g.algebra)
    }

    pub fn star(&self) -> Self {
        Word { letters: self.letters.iter().rev().map(|g| g.star()).collect() }
    }

    pub fn concat(&self, rhs: &Word) -> Self {
        let mut letters = Vec::with_capacity(self.len() + rhs.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&rhs.letters);
        Word::new(letters)
    }

    pub fn retag(&self, algebra: AlgebraId) -> Self {
        Word { letters: self.letters.iter().map(|g| g.retag(algebra)).collect() }
    }
}

// `Word` hashes exactly like its letter slice.
impl Borrow<[Generator]> for Word {
    fn borrow(&self) -> &[Generator] {
        &self.letters
    }
}

impl From<Vec<Generator>> for Word {
    fn from(letters: Vec<Generator>) -> Self {
        Word::new(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}
