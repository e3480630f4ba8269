use std::fmt;

use crate::algebra::{Generator, Monomial};

/// A letter of the m-fold free product: a copy of a generator or an integer
/// power of a copy of `t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FpmLetter {
    Gen { copy: usize, g: Generator },
    T { copy: usize, exp: i32 },
}

impl FpmLetter {
    pub fn copy(&self) -> usize {
        match self {
            FpmLetter::Gen { copy, .. } | FpmLetter::T { copy, .. } => *copy,
        }
    }
}

impl fmt::Display for FpmLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FpmLetter::Gen { copy, g } => write!(f, "{g}[{copy}]"),
            FpmLetter::T { copy, exp: 1 } => write!(f, "t[{copy}]"),
            FpmLetter::T { copy, exp } => write!(f, "t[{copy}]^{exp}"),
        }
    }
}

/// Normal form in `A~^{*(m)}` (or its Laurent extension): adjacent powers of
/// the same copy of `t` are merged and zero powers removed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FpmWord {
    letters: Vec<FpmLetter>,
}

impl FpmWord {
    pub fn unit() -> Self {
        FpmWord::default()
    }

    pub fn gen(copy: usize, g: Generator) -> Self {
        FpmWord { letters: vec![FpmLetter::Gen { copy, g }] }
    }

    pub fn t(copy: usize, exp: i32) -> Self {
        FpmWord::from_letters([FpmLetter::T { copy, exp }])
    }

    pub fn from_letters<I: IntoIterator<Item = FpmLetter>>(letters: I) -> Self {
        let mut out = FpmWord::unit();
        for l in letters {
            out.push(l);
        }
        out
    }

    fn push(&mut self, l: FpmLetter) {
        if let FpmLetter::T { copy, exp } = l {
            if exp == 0 {
                return;
            }
            if let Some(FpmLetter::T { copy: c, exp: e }) = self.letters.last_mut() {
                if *c == copy {
                    *e += exp;
                    if *e == 0 {
                        self.letters.pop();
                    }
                    return;
                }
            }
        }
        self.letters.push(l);
    }

    pub fn letters(&self) -> &[FpmLetter] {
        &self.letters
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn has_generator(&self) -> bool {
        self.letters.iter().any(|l| matches!(l, FpmLetter::Gen { .. }))
    }

    pub fn has_negative_power(&self) -> bool {
        self.letters.iter().any(|l| matches!(l, FpmLetter::T { exp, .. } if *exp < 0))
    }

    /// Letters reversed, generators starred; `t` is hermitian.
    pub fn star(&self) -> FpmWord {
        FpmWord::from_letters(self.letters.iter().rev().map(|l| match *l {
            FpmLetter::Gen { copy, g } => FpmLetter::Gen { copy, g: g.star() },
            t => t,
        }))
    }
}

impl Monomial for FpmWord {
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for l in &rhs.letters {
            out.push(*l);
        }
        out
    }
}

impl fmt::Display for FpmWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A simple tensor `x_1 ⊗ ... ⊗ x_N` of words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Legs(pub Vec<FpmWord>);

impl Legs {
    pub fn units(n: usize) -> Self {
        Legs(vec![FpmWord::unit(); n])
    }
}

impl Monomial for Legs {
    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.0.len(), rhs.0.len(), "tensor arity mismatch");
        Legs(self.0.iter().zip(&rhs.0).map(|(a, b)| a.mul(b)).collect())
    }
}

impl fmt::Display for Legs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}
