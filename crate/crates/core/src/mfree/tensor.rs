use std::fmt;

use crate::algebra::{AlgebraId, LinComb, Monomial, TildeWord};
use crate::error::{Error, Result};

/// Position `pos` (1-based) among the `m` tensor factors of algebra `algebra`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SlotAddr {
    pub algebra: AlgebraId,
    pub pos: usize,
}

impl SlotAddr {
    pub fn new(algebra: AlgebraId, pos: usize) -> Self {
        SlotAddr { algebra, pos }
    }
}

impl fmt::Display for SlotAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.algebra, self.pos)
    }
}

/// A simple tensor of clamped `TildeWord`s. Slots not listed hold the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct TensorTerm {
    slots: Vec<(SlotAddr, TildeWord)>,
}

pub type TensorElement = LinComb<TensorTerm>;

impl TensorTerm {
    pub fn unit() -> Self {
        TensorTerm::default()
    }

    pub fn single(addr: SlotAddr, x: &TildeWord) -> Self {
        let x = x.clamp_t();
        if x.is_unit() {
            TensorTerm::unit()
        } else {
            TensorTerm { slots: vec![(addr, x)] }
        }
    }

    /// `t` in each listed slot.
    pub fn separators<I: IntoIterator<Item = SlotAddr>>(addrs: I) -> Self {
        let mut slots: Vec<(SlotAddr, TildeWord)> = addrs.into_iter().map(|a| (a, TildeWord::t(1))).collect();
        slots.sort_by_key(|(a, _)| *a);
        slots.dedup_by_key(|(a, _)| *a);
        TensorTerm { slots }
    }

    pub fn slots(&self) -> &[(SlotAddr, TildeWord)] {
        &self.slots
    }

    pub fn slot(&self, addr: SlotAddr) -> Option<&TildeWord> {
        self.slots.binary_search_by_key(&addr, |(a, _)| *a).ok().map(|i| &self.slots[i].1)
    }

    pub fn is_unit(&self) -> bool {
        self.slots.is_empty()
    }

    /// Keeps the slots accepted by `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(SlotAddr) -> bool) -> TensorTerm {
        TensorTerm { slots: self.slots.iter().filter(|(a, _)| keep(*a)).cloned().collect() }
    }
}

impl Monomial for TensorTerm {
    fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.slots, &rhs.slots);
        let mut slots = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    slots.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    slots.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    slots.push((a[i].0, a[i].1.mul(&b[j].1).clamp_t()));
                    i += 1;
                    j += 1;
                }
            }
        }
        slots.extend_from_slice(&a[i..]);
        slots.extend_from_slice(&b[j..]);
        TensorTerm { slots }
    }
}

impl fmt::Display for TensorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slots.is_empty() {
            return write!(f, "I");
        }
        for (i, (a, x)) in self.slots.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊗ ")?;
            }
            write!(f, "{a}:{x}")?;
        }
        Ok(())
    }
}

/// `i_{k,m}(x)` placed in the tensor factors of algebra `l`.
pub fn embed(l: AlgebraId, k: usize, m: usize, x: &TildeWord) -> Result<TensorTerm> {
    if k == 0 || k > m {
        return Err(Error::PositionOutOfRange { pos: k, m });
    }
    Ok(TensorTerm::single(SlotAddr::new(l, k), x))
}

/// `t_{[k,m]}` in the factors of algebra `l`: zero for `k = 0`, the unit for
/// `k > m`.
pub fn t_block(l: AlgebraId, k: usize, m: usize) -> crate::algebra::LinComb<TensorTerm> {
    if k == 0 {
        return TensorElement::zero();
    }
    TensorElement::basis(TensorTerm::separators((k..=m).map(|p| SlotAddr::new(l, p))))
}
