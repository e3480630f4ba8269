use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{find_pair, StatePair};
use crate::algebra::{AlgebraId, Element, FpWord, Word};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Memoizing evaluator of the conditionally free product of `(phi_l, psi_l)`.
///
/// Writing each block as `w_i = w_i° + psi(w_i)` and expanding gives, on an
/// alternating word with `n >= 2` blocks,
///
/// `phi(w_1...w_n) = prod_i (phi(w_i) - psi(w_i))
///     + sum_{U nonempty} (-1)^{|U|+1} prod_{i in U} psi(w_i) phi(prod_{i not in U} w_i)`
///
/// where the last product is taken in the free product, so neighbours of a
/// removed block merge. Every term on the right has fewer blocks.
pub struct CfreeOracle<'a> {
    pairs: &'a [StatePair],
    memo: HashMap<FpWord, Scalar>,
}

impl<'a> CfreeOracle<'a> {
    pub fn new(pairs: &'a [StatePair]) -> Self {
        CfreeOracle { pairs, memo: HashMap::new() }
    }

    pub fn pairs(&self) -> &'a [StatePair] {
        self.pairs
    }

    /// Value on a word of the free product.
    pub fn eval_word(&mut self, u: &FpWord) -> Result<Scalar> {
        match u.len() {
            0 => return Ok(Scalar::one()),
            1 => {
                let w = &u.blocks()[0];
                return find_pair(self.pairs, alg(w))?.phi.moment(w);
            }
            _ => {}
        }
        if let Some(v) = self.memo.get(u) {
            return Ok(v.clone());
        }
        let blocks = u.blocks();
        let n = blocks.len();
        let mut psi = Vec::with_capacity(n);
        let mut centered = Scalar::one();
        for w in blocks {
            let pair = find_pair(self.pairs, alg(w))?;
            let p = pair.psi.moment(w)?;
            centered *= pair.phi.moment(w)? - &p;
            psi.push(p);
        }
        let mut total = centered;
        for mask in 1u64..(1u64 << n) {
            let mut coeff = Scalar::one();
            for (i, p) in psi.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    coeff *= p;
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let rest = FpWord::from_words(
                blocks.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 0).map(|(_, w)| w.clone()),
            );
            let v = self.eval_word(&rest)?;
            if mask.count_ones() % 2 == 1 {
                total += coeff * v;
            } else {
                total -= coeff * v;
            }
        }
        self.memo.insert(u.clone(), total.clone());
        Ok(total)
    }

    /// Value on a product `x_1 ... x_n` of elements, `x_i` in algebra `k_i`
    /// with `k_i != k_{i+1}`, by multilinear expansion.
    pub fn eval(&mut self, blocks: &[(AlgebraId, Element)]) -> Result<Scalar> {
        check_alternating(blocks)?;
        let mut acc = Scalar::zero();
        let mut chosen = Vec::with_capacity(blocks.len());
        self.expand(blocks, &mut chosen, Scalar::one(), &mut acc)?;
        Ok(acc)
    }

    fn expand(
        &mut self,
        rest: &[(AlgebraId, Element)],
        chosen: &mut Vec<Word>,
        coeff: Scalar,
        acc: &mut Scalar,
    ) -> Result<()> {
        let Some(((_, x), tail)) = rest.split_first() else {
            let v = self.eval_word(&FpWord::from_words(chosen.iter().cloned()))?;
            *acc += coeff * v;
            return Ok(());
        };
        for (w, c) in x.iter() {
            chosen.push(w.clone());
            self.expand(tail, chosen, &coeff * c, acc)?;
            chosen.pop();
        }
        Ok(())
    }
}

fn alg(w: &Word) -> AlgebraId {
    w.algebra().expect("free product blocks are nonempty")
}

fn check_alternating(blocks: &[(AlgebraId, Element)]) -> Result<()> {
    for (i, (k, x)) in blocks.iter().enumerate() {
        if let Some(w) = x.basis_iter().find(|w| w.algebra().is_some_and(|a| a != *k)) {
            return Err(Error::AlgebraMismatch { word: w.clone(), expected: *k });
        }
        if i > 0 && blocks[i - 1].0 == *k {
            return Err(Error::NotAlternating(i - 1, i, *k));
        }
    }
    Ok(())
}

/// The conditionally free product state on an alternating product of elements.
pub fn cfree_eval(pairs: &[StatePair], blocks: &[(AlgebraId, Element)]) -> Result<Scalar> {
    CfreeOracle::new(pairs).eval(blocks)
}

/// The conditionally free product state on a single free-product word.
pub fn cfree_word(pairs: &[StatePair], u: &FpWord) -> Result<Scalar> {
    CfreeOracle::new(pairs).eval_word(u)
}

/// The free product state: `psi_l = phi_l` throughout.
pub fn free_eval(states: &[super::State], u: &FpWord) -> Result<Scalar> {
    let pairs: Vec<StatePair> = states.iter().cloned().map(StatePair::free).collect();
    cfree_word(&pairs, u)
}
