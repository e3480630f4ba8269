//! Moment functionals on free *-algebras, their Boolean extensions to
//! `A * C[t]`, and the Boolean, free and conditionally free product states.

mod cfree;
pub mod random;

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraId, Element, FpWord, Generator, TildeLetter, TildeWord, Word};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use cfree::{cfree_eval, cfree_word, free_eval, CfreeOracle};

/// A normalized moment table, declared up to a maximal word length.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    algebra: AlgebraId,
    max_degree: usize,
    hermitian: bool,
    moments: HashMap<Word, Scalar>,
}

impl MomentTable {
    /// Builds a table from explicit entries. The unit entry, if given, must
    /// be 1. With `hermitian` set, a missing `w*` entry is filled from `w`
    /// and conflicting pairs are rejected.
    pub fn new<I>(algebra: AlgebraId, max_degree: usize, entries: I, hermitian: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut moments = HashMap::new();
        for (w, c) in entries {
            if let Some(alg) = w.algebra() {
                if alg != algebra {
                    return Err(Error::AlgebraMismatch { word: w, expected: algebra });
                }
            }
            if w.len() > max_degree {
                return Err(Error::DegreeOverflow { len: w.len(), word: w, max: max_degree });
            }
            if w.is_unit() && !c.is_one() {
                return Err(Error::InvalidState(format!("moment of the unit must be 1, got {c}")));
            }
            if let Some(prev) = moments.insert(w.clone(), c.clone()) {
                if prev != c {
                    return Err(Error::InvalidState(format!("conflicting entries for `{w}`")));
                }
            }
        }
        if hermitian {
            let mirrored: Vec<(Word, Scalar)> = moments.iter().map(|(w, c)| (w.star(), c.clone())).collect();
            for (w, c) in mirrored {
                match moments.get(&w) {
                    Some(existing) if *existing != c => {
                        return Err(Error::InvalidState(format!(
                            "hermitian table has {existing} at `{w}` but {c} at its adjoint"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        moments.insert(w, c);
                    }
                }
            }
        }
        moments.insert(Word::unit(), Scalar::one());
        Ok(MomentTable { algebra, max_degree, hermitian, moments })
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.moments.iter()
    }

    fn get(&self, letters: &[Generator]) -> Result<Scalar> {
        if let Some(g) = letters.iter().find(|g| g.algebra != self.algebra) {
            return Err(Error::AlgebraMismatch { word: Word::letter(*g), expected: self.algebra });
        }
        if letters.len() > self.max_degree {
            return Err(Error::DegreeOverflow {
                word: Word::new(letters.to_vec()),
                len: letters.len(),
                max: self.max_degree,
            });
        }
        self.moments.get(letters).cloned().ok_or_else(|| Error::MissingMoment(Word::new(letters.to_vec())))
    }
}

/// A state on one free *-algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum State {
    Table(MomentTable),
    /// `pi_1`: 1 on the unit, 0 on every nonempty word.
    Point(AlgebraId),
    /// Pseudo-random moments computed on demand from a seed.
    Seeded(random::SeededState),
}

impl State {
    pub fn point(algebra: AlgebraId) -> Self {
        State::Point(algebra)
    }

    pub fn algebra(&self) -> AlgebraId {
        match self {
            State::Table(t) => t.algebra,
            State::Point(a) => *a,
            State::Seeded(s) => s.algebra,
        }
    }

    pub fn moment_letters(&self, letters: &[Generator]) -> Result<Scalar> {
        match self {
            State::Table(t) => t.get(letters),
            State::Seeded(s) => s.get(letters),
            State::Point(a) => {
                if let Some(g) = letters.iter().find(|g| g.algebra != *a) {
                    return Err(Error::AlgebraMismatch { word: Word::letter(*g), expected: *a });
                }
                Ok(if letters.is_empty() { Scalar::one() } else { Scalar::zero() })
            }
        }
    }

    pub fn moment(&self, w: &Word) -> Result<Scalar> {
        self.moment_letters(w.letters())
    }

    /// Linear extension to elements.
    pub fn eval(&self, x: &Element) -> Result<Scalar> {
        x.eval(|w| self.moment(w))
    }

    /// The same functional transported to an isomorphic copy of the algebra.
    pub fn retag(&self, algebra: AlgebraId) -> State {
        match self {
            State::Point(_) => State::Point(algebra),
            State::Seeded(s) => State::Seeded(random::SeededState { algebra, ..s.clone() }),
            State::Table(t) => State::Table(MomentTable {
                algebra,
                max_degree: t.max_degree,
                hermitian: t.hermitian,
                moments: t.moments.iter().map(|(w, c)| (w.retag(algebra), c.clone())).collect(),
            }),
        }
    }
}

impl From<MomentTable> for State {
    fn from(t: MomentTable) -> Self {
        State::Table(t)
    }
}

/// The pair `(phi, psi)` attached to one algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct StatePair {
    pub phi: State,
    pub psi: State,
}

impl StatePair {
    pub fn new(phi: State, psi: State) -> Result<Self> {
        if phi.algebra() != psi.algebra() {
            return Err(Error::InvalidState(format!(
                "phi lives on algebra {} but psi on {}",
                phi.algebra(),
                psi.algebra()
            )));
        }
        Ok(StatePair { phi, psi })
    }

    /// `psi = phi`: the free case.
    pub fn free(phi: State) -> Self {
        StatePair { psi: phi.clone(), phi }
    }

    /// `psi = pi_1`: the Boolean case.
    pub fn boolean(phi: State) -> Self {
        let psi = State::point(phi.algebra());
        StatePair { phi, psi }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.phi.algebra()
    }

    pub fn retag(&self, algebra: AlgebraId) -> StatePair {
        StatePair { phi: self.phi.retag(algebra), psi: self.psi.retag(algebra) }
    }
}

pub(crate) fn find_state(states: &[State], algebra: AlgebraId) -> Result<&State> {
    states.iter().find(|s| s.algebra() == algebra).ok_or(Error::UnknownAlgebra(algebra))
}

pub(crate) fn find_pair(pairs: &[StatePair], algebra: AlgebraId) -> Result<&StatePair> {
    pairs.iter().find(|p| p.algebra() == algebra).ok_or(Error::UnknownAlgebra(algebra))
}

/// The Boolean extension `phi~` on `A * C[t]`: the product of `phi` over the
/// `t`-separated words, all `t`-powers ignored.
pub fn boolean_extend_eval(phi: &State, u: &TildeWord) -> Result<Scalar> {
    let mut acc = Scalar::one();
    let mut letters = Vec::new();
    for run in u.word_slices() {
        letters.clear();
        letters.extend(run.iter().map(|l| match l {
            TildeLetter::Gen(g) => *g,
            TildeLetter::T(_) => unreachable!("runs contain generators only"),
        }));
        let v = phi.moment_letters(&letters)?;
        if v.is_zero() {
            return Ok(v);
        }
        acc *= v;
    }
    Ok(acc)
}

/// The Boolean product state: `phi_{k1}(w1) ... phi_{kn}(wn)` over the blocks.
pub fn boolean_product_eval(states: &[State], u: &FpWord) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for w in u.blocks() {
        let alg = w.algebra().expect("blocks are nonempty");
        acc *= find_state(states, alg)?.moment(w)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn w(alg: u32, names: &[&str]) -> Word {
        Word::new(names.iter().map(|s| Generator::new(alg, s)).collect())
    }

    fn table(alg: u32, entries: &[(&[&str], Scalar)]) -> State {
        MomentTable::new(AlgebraId(alg), 3, entries.iter().map(|(names, c)| (w(alg, names), c.clone())), false)
            .unwrap()
            .into()
    }

    #[test]
    fn boolean_extension_examples() {
        let phi = table(1, &[(&["a"], ratio(1, 2)), (&["b"], int(3)), (&["a", "b"], int(7))]);
        assert_eq!(boolean_extend_eval(&phi, &TildeWord::unit()).unwrap(), int(1));
        let twt = TildeWord::from_parts(&[1, 1], &[w(1, &["a", "b"])]).unwrap();
        assert_eq!(boolean_extend_eval(&phi, &twt).unwrap(), int(7));
        let split = TildeWord::from_parts(&[0, 1, 0], &[w(1, &["a"]), w(1, &["b"])]).unwrap();
        assert_eq!(boolean_extend_eval(&phi, &split).unwrap(), ratio(3, 2));
        assert_eq!(boolean_extend_eval(&phi, &TildeWord::t(5)).unwrap(), int(1));
    }

    #[test]
    fn degree_overflow_is_an_error() {
        let phi = table(1, &[(&["a"], int(1))]);
        let long = w(1, &["a", "a", "a", "a"]);
        assert!(matches!(phi.moment(&long), Err(Error::DegreeOverflow { len: 4, max: 3, .. })));
        assert!(matches!(phi.moment(&w(1, &["a", "a"])), Err(Error::MissingMoment(_))));
        assert!(matches!(phi.moment(&w(2, &["a"])), Err(Error::AlgebraMismatch { .. })));
    }

    #[test]
    fn unit_is_normalized() {
        let phi = table(1, &[]);
        assert_eq!(phi.moment(&Word::unit()).unwrap(), int(1));
        let bad = MomentTable::new(AlgebraId(1), 2, [(Word::unit(), int(2))], false);
        assert!(bad.is_err());
    }

    #[test]
    fn hermitian_tables_mirror_and_reject_conflicts() {
        let a = Generator::new(1, "a");
        let ab = Word::new(vec![a, a.star()]);
        let t = MomentTable::new(AlgebraId(1), 2, [(Word::letter(a), int(2))], true).unwrap();
        assert_eq!(State::from(t).moment(&Word::letter(a.star())).unwrap(), int(2));
        let clash =
            MomentTable::new(AlgebraId(1), 2, [(Word::letter(a), int(2)), (Word::letter(a.star()), int(3))], true);
        assert!(clash.is_err());
        assert_eq!(ab.star(), ab);
    }

    #[test]
    fn point_state_kills_nonempty_words() {
        let pi = State::point(AlgebraId(2));
        assert_eq!(pi.moment(&Word::unit()).unwrap(), int(1));
        assert_eq!(pi.moment(&w(2, &["b", "b"])).unwrap(), int(0));
    }

    #[test]
    fn boolean_product_factorizes_over_blocks() {
        let phi1 = table(1, &[(&["a"], int(2)), (&["c"], int(5))]);
        let phi2 = table(2, &[(&["b"], ratio(1, 3))]);
        let u = FpWord::from_words([w(1, &["a"]), w(2, &["b"]), w(1, &["c"])]);
        let states = [phi1, phi2];
        assert_eq!(boolean_product_eval(&states, &u).unwrap(), ratio(10, 3));
        assert_eq!(boolean_product_eval(&states, &FpWord::unit()).unwrap(), int(1));
    }
}
