//! The *-bialgebra `(A~^{*(m)}, Δ^(m), ε^(m))`, its Hopf extension with
//! antipode `S^(m)`, the free-version homomorphisms `ĵ^(m)`, the quotient
//! map `η` onto `A~^{⊗m}`, and convolution of states.

mod word;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraId, FpWord, Generator, LinComb, Monomial, TildeWord, Word};
use crate::error::{Error, Result};
use crate::mfree::{SlotAddr, TensorElement, TensorTerm};
use crate::scalar::Scalar;
use crate::states::{boolean_extend_eval, CfreeOracle, StatePair};

pub use word::{FpmLetter, FpmWord, Legs};

pub type FpmElement = LinComb<FpmWord>;
pub type FpmTensor = LinComb<Legs>;

/// Whether negative powers of `t` (and the antipode) are available.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Bialgebra,
    Hopf,
}

/// `A~^{*(m)}` with its coalgebra structure.
#[derive(Clone, Copy, Debug)]
pub struct Bialgebra {
    m: usize,
    mode: Mode,
}

impl Bialgebra {
    pub fn new(m: usize, mode: Mode) -> Result<Self> {
        if m == 0 {
            return Err(Error::LevelTooLow { m, min: 1 });
        }
        Ok(Bialgebra { m, mode })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn check(&self, x: &FpmWord) -> Result<()> {
        for l in x.letters() {
            if l.copy() == 0 || l.copy() > self.m {
                return Err(Error::CopyOutOfRange { copy: l.copy() as u32, m: self.m });
            }
        }
        if self.mode == Mode::Bialgebra && x.has_negative_power() {
            return Err(Error::NegativeExponent);
        }
        Ok(())
    }

    /// `t_{[k,m]} = t_(k) ... t_(m)`.
    pub fn t_range(&self, k: usize) -> FpmWord {
        FpmWord::from_letters((k..=self.m).map(|c| FpmLetter::T { copy: c, exp: 1 }))
    }

    /// `t_{[k,m]}^{-1} = t_(m)^{-1} ... t_(k)^{-1}`.
    pub fn t_range_inv(&self, k: usize) -> FpmWord {
        FpmWord::from_letters((k..=self.m).rev().map(|c| FpmLetter::T { copy: c, exp: -1 }))
    }

    /// `a_(k) - a_(k+1)`, with `a_(m+1) = 0`.
    pub fn primitive(&self, g: Generator, k: usize) -> FpmElement {
        let mut out = FpmElement::basis(FpmWord::gen(k, g));
        if k < self.m {
            out -= &FpmElement::basis(FpmWord::gen(k + 1, g));
        }
        out
    }

    fn letter_coproduct(&self, l: &FpmLetter) -> FpmTensor {
        match *l {
            FpmLetter::T { copy, exp } => {
                let t = FpmWord::t(copy, exp);
                FpmTensor::basis(Legs(vec![t.clone(), t]))
            }
            FpmLetter::Gen { copy, g } => {
                let mut out = FpmTensor::zero();
                for r in copy..=self.m {
                    let t = self.t_range(r);
                    for (p, c) in self.primitive(g, r).iter() {
                        out.add_term(Legs(vec![p.clone(), t.clone()]), c.clone());
                        out.add_term(Legs(vec![t.clone(), p.clone()]), c.clone());
                    }
                }
                out
            }
        }
    }

    /// `Δ^(m)`, extended multiplicatively from the letters.
    pub fn coproduct(&self, x: &FpmWord) -> Result<FpmTensor> {
        self.check(x)?;
        let mut acc = FpmTensor::basis(Legs::units(2));
        for l in x.letters() {
            acc = &acc * &self.letter_coproduct(l);
        }
        Ok(acc)
    }

    pub fn coproduct_elem(&self, x: &FpmElement) -> Result<FpmTensor> {
        let mut out = FpmTensor::zero();
        for (w, c) in x.iter() {
            out += &self.coproduct(w)?.scale(c);
        }
        Ok(out)
    }

    /// `Δ_k^(m) = (id ⊗ Δ_{k-1}^(m)) ∘ Δ^(m)`, with `Δ_0 = id`.
    pub fn iterated(&self, x: &FpmWord, k: usize) -> Result<FpmTensor> {
        self.check(x)?;
        let mut acc = FpmTensor::basis(Legs(vec![x.clone()]));
        for _ in 0..k {
            let last = acc.basis_iter().next().map_or(0, |l| l.0.len() - 1);
            acc = apply_leg(&acc, last, |w| self.coproduct(w))?;
        }
        Ok(acc)
    }

    /// `ε^(m)`: 1 on products of `t`-powers, 0 on anything containing a generator.
    pub fn counit(&self, x: &FpmWord) -> Scalar {
        if x.has_generator() {
            Scalar::zero()
        } else {
            Scalar::one()
        }
    }

    pub fn counit_elem(&self, x: &FpmElement) -> Scalar {
        x.iter().filter(|(w, _)| !w.has_generator()).map(|(_, c)| c.clone()).sum()
    }

    fn letter_antipode(&self, l: &FpmLetter) -> FpmElement {
        match *l {
            FpmLetter::T { copy, exp } => FpmElement::basis(FpmWord::t(copy, -exp)),
            FpmLetter::Gen { copy, g } => {
                let mut out = FpmElement::zero();
                for r in copy..=self.m {
                    let inv = FpmElement::basis(self.t_range_inv(r));
                    out -= &(&(&inv * &self.primitive(g, r)) * &inv);
                }
                out
            }
        }
    }

    /// `S^(m)`, extended antimultiplicatively. Hopf mode only.
    pub fn antipode(&self, x: &FpmWord) -> Result<FpmElement> {
        if self.mode != Mode::Hopf {
            return Err(Error::NotHopf);
        }
        self.check(x)?;
        let mut acc = FpmElement::basis(FpmWord::unit());
        for l in x.letters().iter().rev() {
            acc = &acc * &self.letter_antipode(l);
        }
        Ok(acc)
    }

    pub fn antipode_elem(&self, x: &FpmElement) -> Result<FpmElement> {
        let mut out = FpmElement::zero();
        for (w, c) in x.iter() {
            out += &self.antipode(w)?.scale(c);
        }
        Ok(out)
    }

    /// `ĵ_N^(m)` on a word of `A_1 * ... * A_N`, where the algebra id of each
    /// block is its leg index. Generators land in the legs retagged to `base`.
    pub fn hat_j(&self, u: &FpWord, legs: usize, base: AlgebraId) -> Result<FpmTensor> {
        let mut acc = FpmTensor::basis(Legs::units(legs));
        for g in u.letters() {
            let i = g.algebra.0 as usize;
            if i == 0 || i > legs {
                return Err(Error::UnknownAlgebra(g.algebra));
            }
            let mut factor = FpmTensor::zero();
            for k in 1..=self.m {
                let t = self.t_range(k);
                for (p, c) in self.primitive(g.retag(base), k).iter() {
                    let mut ws = vec![t.clone(); legs];
                    ws[i - 1] = p.clone();
                    factor.add_term(Legs(ws), c.clone());
                }
            }
            acc = &acc * &factor;
        }
        Ok(acc)
    }

    /// `η`: sort letters into tensor factors by copy index, keeping their
    /// order within each copy, then clamp. Factors are placed on `algebra`
    /// and generators retagged to it.
    pub fn eta(&self, x: &FpmWord, algebra: AlgebraId) -> Result<TensorTerm> {
        self.check(x)?;
        if x.has_negative_power() {
            return Err(Error::NegativeExponent);
        }
        let mut slots = vec![TildeWord::unit(); self.m];
        for l in x.letters() {
            let piece = match *l {
                FpmLetter::Gen { g, .. } => TildeWord::from_word(&Word::letter(g.retag(algebra))),
                FpmLetter::T { exp, .. } => TildeWord::t(exp as u32),
            };
            let s = &mut slots[l.copy() - 1];
            *s = s.mul(&piece);
        }
        Ok(slots
            .iter()
            .enumerate()
            .fold(TensorTerm::unit(), |acc, (i, x)| acc.mul(&TensorTerm::single(SlotAddr::new(algebra, i + 1), x))))
    }

    /// `η ⊗ ... ⊗ η`, leg `i` placed on algebra `i`.
    pub fn eta_tensor(&self, x: &FpmTensor) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (legs, c) in x.iter() {
            let mut term = TensorTerm::unit();
            for (i, leg) in legs.0.iter().enumerate() {
                term = term.mul(&self.eta(leg, AlgebraId(i as u32 + 1))?);
            }
            out.add_term(term, c.clone());
        }
        Ok(out)
    }

    /// `Φ^_l = (φ~_l ⊗ ψ~_l^{⊗(m-1)}) ∘ η` on one word.
    pub fn phi_hat(&self, pair: &StatePair, x: &FpmWord) -> Result<Scalar> {
        let term = self.eta(x, pair.algebra())?;
        let mut v = Scalar::one();
        for (addr, w) in term.slots() {
            let state = if addr.pos == 1 { &pair.phi } else { &pair.psi };
            v *= boolean_extend_eval(state, w)?;
            if v.is_zero() {
                break;
            }
        }
        Ok(v)
    }

    /// `(Φ^_1 ⋆ ... ⋆ Φ^_N) ∘ î_1 (w)`, all pairs on the algebra of `w`.
    pub fn convolve(&self, pairs: &[StatePair], w: &Word) -> Result<Scalar> {
        if pairs.is_empty() {
            return Err(Error::InvalidState("convolution needs at least one state pair".into()));
        }
        check_same_algebra(pairs, w)?;
        let expanded = self.iterated(&hat_i1(w), pairs.len() - 1)?;
        expanded.eval(|legs| {
            let mut v = Scalar::one();
            for (pair, leg) in pairs.iter().zip(&legs.0) {
                v *= self.phi_hat(pair, leg)?;
                if v.is_zero() {
                    break;
                }
            }
            Ok(v)
        })
    }
}

/// `î_1`: every letter to copy 1.
pub fn hat_i1(w: &Word) -> FpmWord {
    FpmWord::from_letters(w.letters().iter().map(|g| FpmLetter::Gen { copy: 1, g: *g }))
}

/// `δ_N(w)`: the product over letters of `a^(1) + ... + a^(N)`, copy `i`
/// carried as algebra id `i`.
pub fn delta_n(w: &Word, n: usize) -> LinComb<FpWord> {
    let mut acc = LinComb::basis(FpWord::unit());
    for g in w.letters() {
        let factor: LinComb<FpWord> =
            (1..=n as u32).map(|i| (FpWord::from_letters([g.retag(AlgebraId(i))]), Scalar::one())).collect();
        acc = &acc * &factor;
    }
    acc
}

/// `δ = δ_2`.
pub fn delta(w: &Word) -> LinComb<FpWord> {
    delta_n(w, 2)
}

/// The conditionally free convolution `(*_l (φ_l, ψ_l)) ∘ δ_N (w)`.
pub fn cfree_convolve(pairs: &[StatePair], w: &Word) -> Result<Scalar> {
    check_same_algebra(pairs, w)?;
    let copies: Vec<StatePair> = pairs.iter().enumerate().map(|(i, p)| p.retag(AlgebraId(i as u32 + 1))).collect();
    let mut oracle = CfreeOracle::new(&copies);
    delta_n(w, pairs.len()).eval(|u| oracle.eval_word(u))
}

fn check_same_algebra(pairs: &[StatePair], w: &Word) -> Result<()> {
    if let Some(alg) = w.algebra() {
        if let Some(p) = pairs.iter().find(|p| p.algebra() != alg) {
            return Err(Error::AlgebraMismatch { word: w.clone(), expected: p.algebra() });
        }
    }
    Ok(())
}

/// Applies a linear map `leg -> tensor` to one leg, splicing its legs in.
pub fn apply_leg(x: &FpmTensor, leg: usize, mut f: impl FnMut(&FpmWord) -> Result<FpmTensor>) -> Result<FpmTensor> {
    let mut out = FpmTensor::zero();
    for (legs, c) in x.iter() {
        for (inner, d) in f(&legs.0[leg])?.iter() {
            let mut ws = legs.0[..leg].to_vec();
            ws.extend(inner.0.iter().cloned());
            ws.extend(legs.0[leg + 1..].iter().cloned());
            out.add_term(Legs(ws), c * d);
        }
    }
    Ok(out)
}

/// Applies a linear map `leg -> element` to one leg, keeping the arity.
pub fn map_leg(x: &FpmTensor, leg: usize, mut f: impl FnMut(&FpmWord) -> Result<FpmElement>) -> Result<FpmTensor> {
    apply_leg(x, leg, |w| Ok(f(w)?.map_basis(|v| Legs(vec![v.clone()]))))
}

/// Applies a functional to one leg, removing it.
pub fn contract_leg(x: &FpmTensor, leg: usize, mut f: impl FnMut(&FpmWord) -> Scalar) -> FpmTensor {
    apply_leg(x, leg, |w| Ok(FpmTensor::term(Legs(Vec::new()), f(w)))).expect("infallible")
}

/// Multiplication of all legs into one word.
pub fn multiply(x: &FpmTensor) -> FpmElement {
    x.map_basis(|legs| legs.0.iter().fold(FpmWord::unit(), |acc, w| acc.mul(w)))
}

/// Identifies a single-leg tensor with an element.
pub fn single_leg(x: &FpmTensor) -> FpmElement {
    x.map_basis(|legs| {
        assert_eq!(legs.0.len(), 1, "expected a single leg");
        legs.0[0].clone()
    })
}

pub fn star_elem(x: &FpmElement) -> FpmElement {
    x.map_basis(FpmWord::star)
}

/// `∗ ⊗ ... ⊗ ∗`.
pub fn star_tensor(x: &FpmTensor) -> FpmTensor {
    x.map_basis(|legs| Legs(legs.0.iter().map(FpmWord::star).collect()))
}
