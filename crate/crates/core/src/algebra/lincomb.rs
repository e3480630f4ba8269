use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{FpWord, TildeWord, Word};
use crate::scalar::Scalar;

/// A basis with an associative product.
pub trait Monomial: Ord + Clone {
    fn mul(&self, rhs: &Self) -> Self;
}

impl Monomial for Word {
    fn mul(&self, rhs: &Self) -> Self {
        self.concat(rhs)
    }
}

impl Monomial for FpWord {
    fn mul(&self, rhs: &Self) -> Self {
        FpWord::mul(self, rhs)
    }
}

impl Monomial for TildeWord {
    fn mul(&self, rhs: &Self) -> Self {
        TildeWord::mul(self, rhs)
    }
}

/// Finite linear combination of basis elements with exact coefficients.
///
/// Zero coefficients are never stored, so two combinations are equal exactly
/// when their coefficient tables are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Scalar>,
}

/// An element of one free *-algebra.
pub type Element = LinComb<Word>;

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Scalar::one())
    }

    pub fn term(b: B, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, Scalar> {
        self.terms.iter()
    }

    pub fn basis_iter(&self) -> btree_map::Keys<'_, B, Scalar> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect() }
    }

    /// Linear extension of a map on basis elements.
    pub fn map_basis<B2: Ord + Clone>(&self, mut f: impl FnMut(&B) -> B2) -> LinComb<B2> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_term(f(b), c.clone());
        }
        out
    }

    /// Linear extension of a map from basis elements to combinations.
    pub fn flat_map<B2: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<B2>) -> LinComb<B2> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            for (b2, c2) in f(b).terms {
                out.add_term(b2, c * c2);
            }
        }
        out
    }

    pub fn try_flat_map<B2: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&B) -> Result<LinComb<B2>, E>,
    ) -> Result<LinComb<B2>, E> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            for (b2, c2) in f(b)?.terms {
                out.add_term(b2, c * c2);
            }
        }
        Ok(out)
    }

    /// Applies a linear functional given on the basis.
    pub fn eval<E>(&self, mut f: impl FnMut(&B) -> Result<Scalar, E>) -> Result<Scalar, E> {
        let mut acc = Scalar::zero();
        for (b, c) in &self.terms {
            let v = f(b)?;
            if !v.is_zero() {
                acc += c * v;
            }
        }
        Ok(acc)
    }
}

impl<B: Monomial> LinComb<B> {
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (b1, c1) in &self.terms {
            for (b2, c2) in &rhs.terms {
                out.add_term(b1.mul(b2), c1 * c2);
            }
        }
        out
    }
}

impl<B: Ord + Clone> FromIterator<(B, Scalar)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Scalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<B: Ord + Clone> IntoIterator for LinComb<B> {
    type Item = (B, Scalar);
    type IntoIter = btree_map::IntoIter<B, Scalar>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<B: Ord + Clone> AddAssign<&LinComb<B>> for LinComb<B> {
    fn add_assign(&mut self, rhs: &LinComb<B>) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), c.clone());
        }
    }
}

impl<B: Ord + Clone> SubAssign<&LinComb<B>> for LinComb<B> {
    fn sub_assign(&mut self, rhs: &LinComb<B>) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), -c);
        }
    }
}

impl<B: Ord + Clone> Add for &LinComb<B> {
    type Output = LinComb<B>;

    fn add(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<B: Ord + Clone> Sub for &LinComb<B> {
    type Output = LinComb<B>;

    fn sub(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<B: Ord + Clone> Add for LinComb<B> {
    type Output = LinComb<B>;

    fn add(mut self, rhs: Self) -> LinComb<B> {
        self += &rhs;
        self
    }
}

impl<B: Ord + Clone> Sub for LinComb<B> {
    type Output = LinComb<B>;

    fn sub(mut self, rhs: Self) -> LinComb<B> {
        self -= &rhs;
        self
    }
}

impl<B: Ord + Clone> Neg for LinComb<B> {
    type Output = LinComb<B>;

    fn neg(self) -> LinComb<B> {
        LinComb { terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect() }
    }
}

impl<B: Monomial> Mul for &LinComb<B> {
    type Output = LinComb<B>;

    fn mul(self, rhs: Self) -> LinComb<B> {
        LinComb::mul(self, rhs)
    }
}

impl<B: Ord + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "[{b}]")?;
            } else {
                write!(f, "{mag}·[{b}]")?;
            }
        }
        Ok(())
    }
}
