//! The m-free construction: the homomorphisms `j^(m)` from the free product
//! into `(A_1~)^{⊗m} ⊗ (A_2~)^{⊗m} ⊗ ...`, the product state `Φ~^(m)`, and the
//! condition maps `Ψ^(m)` with their helper elements.

mod poly;
mod tensor;

use num_traits::Zero;

use crate::algebra::{AlgebraId, FpWord, Generator, Monomial, TildeWord, Word};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::states::{boolean_extend_eval, find_pair, StatePair};

pub use poly::{eval_poly, MomentMonomial, MomentPoly, MomentVar, Which};
pub use tensor::{embed, t_block, SlotAddr, TensorElement, TensorTerm};

/// How `j^(m)` of a free-product word is expanded.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Expansion {
    /// Product of `j^(m)` over single letters.
    Letters,
    /// Product over blocks of the block form `sum_k i_k(w) ⊗ (T_k - T_{k-1})`.
    Blocks,
    /// Block form with the level of block `i` of `n` capped at
    /// `min(i, n + 1 - i, m)`. Preserves values under `Φ~^(m)`, not elements.
    Pyramidal,
}

impl Expansion {
    /// Full block expansion up to six blocks, pyramidal beyond.
    pub fn default_for(blocks: usize) -> Self {
        if blocks > 6 {
            Expansion::Pyramidal
        } else {
            Expansion::Blocks
        }
    }
}

/// A level `m >= 1` together with a state pair for each algebra.
#[derive(Clone, Debug)]
pub struct MContext {
    m: usize,
    pairs: Vec<StatePair>,
}

impl MContext {
    pub fn new(m: usize, mut pairs: Vec<StatePair>) -> Result<Self> {
        if m == 0 {
            return Err(Error::LevelTooLow { m, min: 1 });
        }
        if pairs.is_empty() {
            return Err(Error::InvalidState("at least one algebra is required".into()));
        }
        pairs.sort_by_key(StatePair::algebra);
        if let Some(w) = pairs.windows(2).find(|w| w[0].algebra() == w[1].algebra()) {
            return Err(Error::InvalidState(format!("algebra {} given twice", w[0].algebra())));
        }
        Ok(MContext { m, pairs })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn pairs(&self) -> &[StatePair] {
        &self.pairs
    }

    pub fn algebras(&self) -> impl Iterator<Item = AlgebraId> + '_ {
        self.pairs.iter().map(StatePair::algebra)
    }

    /// The same algebras and states at another level.
    pub fn with_level(&self, m: usize) -> Result<MContext> {
        MContext::new(m, self.pairs.clone())
    }

    fn check_algebra(&self, l: AlgebraId) -> Result<()> {
        find_pair(&self.pairs, l).map(|_| ())
    }

    fn others(&self, l: AlgebraId) -> impl Iterator<Item = AlgebraId> + '_ {
        self.algebras().filter(move |x| *x != l)
    }

    /// `T_k`: `t_{[k,m]}` in the factors of every algebra other than `l`.
    /// `None` stands for `T_0 = 0`.
    pub fn separator(&self, l: AlgebraId, k: usize) -> Option<TensorTerm> {
        (k > 0).then(|| {
            TensorTerm::separators(self.others(l).flat_map(|o| (k..=self.m).map(move |p| SlotAddr::new(o, p))))
        })
    }

    /// `t` at position `p` of every algebra other than `l`.
    fn t_at(&self, l: AlgebraId, p: usize) -> TensorTerm {
        TensorTerm::separators(self.others(l).map(|o| SlotAddr::new(o, p)))
    }

    /// `j_{l,k}^(m)(w) = i_{k,m}(w) ⊗ (T_k - T_{k-1})`.
    pub fn j_level(&self, w: &Word, k: usize) -> Result<TensorElement> {
        let l = w.algebra().ok_or(Error::EmptyWord)?;
        self.check_algebra(l)?;
        let head = embed(l, k, self.m, &TildeWord::from_word(w))?;
        let mut out = TensorElement::basis(head.mul(&self.separator(l, k).expect("k >= 1")));
        if let Some(prev) = self.separator(l, k - 1) {
            out -= &TensorElement::basis(head.mul(&prev));
        }
        Ok(out)
    }

    /// `j_l^(m)` on a nonempty word of one algebra, in block form.
    pub fn j_block(&self, w: &Word) -> Result<TensorElement> {
        self.j_block_capped(w, self.m)
    }

    fn j_block_capped(&self, w: &Word, cap: usize) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for k in 1..=cap.min(self.m) {
            out += &self.j_level(w, k)?;
        }
        Ok(out)
    }

    /// `j_l^(m)(a)` for a single generator.
    pub fn j_letter(&self, a: Generator) -> Result<TensorElement> {
        self.j_block(&Word::letter(a))
    }

    /// `j^(m)(u)`, reduced modulo the clamping ideal.
    pub fn j_eval(&self, u: &FpWord, expansion: Expansion) -> Result<TensorElement> {
        let n = u.len();
        let mut acc = TensorElement::basis(TensorTerm::unit());
        for (i, w) in u.blocks().iter().enumerate() {
            let factor = match expansion {
                Expansion::Blocks => self.j_block(w)?,
                Expansion::Pyramidal => self.j_block_capped(w, (i + 1).min(n - i))?,
                Expansion::Letters => {
                    let mut f = TensorElement::basis(TensorTerm::unit());
                    for a in w.letters() {
                        f = &f * &self.j_letter(*a)?;
                    }
                    f
                }
            };
            acc = &acc * &factor;
        }
        Ok(acc)
    }

    fn slot_value(&self, addr: SlotAddr, x: &TildeWord) -> Result<Scalar> {
        let pair = find_pair(&self.pairs, addr.algebra)?;
        let state = if addr.pos == 1 { &pair.phi } else { &pair.psi };
        boolean_extend_eval(state, x)
    }

    /// `Φ~^(m)`: `φ~_l` on the first factor of each algebra, `ψ~_l` on the rest.
    pub fn phi_m_eval(&self, e: &TensorElement) -> Result<Scalar> {
        e.eval(|term| {
            let mut v = Scalar::from_integer(1.into());
            for (addr, x) in term.slots() {
                v *= self.slot_value(*addr, x)?;
                if v.is_zero() {
                    break;
                }
            }
            Ok(v)
        })
    }

    /// `Φ~^(m)` as a polynomial in the moments of the states.
    pub fn phi_m_poly(&self, e: &TensorElement) -> Result<MomentPoly> {
        let mut out = MomentPoly::zero();
        for (term, c) in e.iter() {
            let mut mono = MomentMonomial::one();
            for (addr, x) in term.slots() {
                self.check_algebra(addr.algebra)?;
                let which = if addr.pos == 1 { Which::Phi } else { Which::Psi };
                mono = mono.mul(&poly::boolean_monomial(addr.algebra, which, x.letters()));
            }
            out.add_term(mono, c.clone());
        }
        Ok(out)
    }

    /// The m-free product state `Φ~^(m) ∘ j^(m)` on a free-product word.
    pub fn mfree_eval(&self, u: &FpWord) -> Result<Scalar> {
        self.mfree_eval_with(u, Expansion::default_for(u.len()))
    }

    pub fn mfree_eval_with(&self, u: &FpWord, expansion: Expansion) -> Result<Scalar> {
        self.phi_m_eval(&self.j_eval(u, expansion)?)
    }

    /// `Φ~^(m) ∘ j^(m)(u)` as a state-independent moment polynomial.
    pub fn mfree_poly(&self, u: &FpWord, expansion: Expansion) -> Result<MomentPoly> {
        self.phi_m_poly(&self.j_eval(u, expansion)?)
    }

    /// `Ψ^(m)`: `ψ~_l` applied to the last factor of each algebra. The
    /// result lives at level `m - 1`.
    pub fn psi_condition(&self, e: &TensorElement) -> Result<TensorElement> {
        if self.m < 2 {
            return Err(Error::LevelTooLow { m: self.m, min: 2 });
        }
        let mut out = TensorElement::zero();
        for (term, c) in e.iter() {
            let mut coeff = c.clone();
            for (addr, x) in term.slots().iter().filter(|(a, _)| a.pos == self.m) {
                let pair = find_pair(&self.pairs, addr.algebra)?;
                coeff *= boolean_extend_eval(&pair.psi, x)?;
            }
            out.add_term(term.restrict(|a| a.pos < self.m), coeff);
        }
        Ok(out)
    }

    fn psi_of(&self, w: &Word) -> Result<(AlgebraId, Scalar)> {
        let l = w.algebra().ok_or(Error::EmptyWord)?;
        let pair = find_pair(&self.pairs, l)?;
        Ok((l, pair.psi.moment(w)?))
    }

    /// `d_l^(m)(w) = i_{m,m}(w) ⊗ t` at position `m` of the other algebras.
    /// At `m = 1` the word is replaced by the scalar `ψ_l(w)`.
    pub fn d_element(&self, w: &Word) -> Result<TensorElement> {
        if self.m == 1 {
            let (l, psi) = self.psi_of(w)?;
            return Ok(TensorElement::term(self.t_at(l, 1), psi));
        }
        let l = w.algebra().ok_or(Error::EmptyWord)?;
        self.check_algebra(l)?;
        let head = embed(l, self.m, self.m, &TildeWord::from_word(w))?;
        Ok(TensorElement::basis(head.mul(&self.t_at(l, self.m))))
    }

    /// `h_l(w) = ψ_l(w)·t` at the last position of the other algebras.
    pub fn h_element(&self, w: &Word) -> Result<TensorElement> {
        let (l, psi) = self.psi_of(w)?;
        Ok(TensorElement::term(self.t_at(l, self.m), psi))
    }

    /// `g_l(w) = ψ_l(w)·(I - t)` at the last position of the other algebras.
    pub fn g_element(&self, w: &Word) -> Result<TensorElement> {
        let (_, psi) = self.psi_of(w)?;
        let unit = TensorElement::term(TensorTerm::unit(), psi);
        Ok(&unit - &self.h_element(w)?)
    }
}

#[cfg(test)]
mod tests;
