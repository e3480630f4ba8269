use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{AlgebraId, LinComb, Monomial, TildeLetter, Word};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::states::{find_pair, StatePair};

/// Which functional of the pair a moment refers to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Which {
    Phi,
    Psi,
}

/// An unknown moment `phi_l(w)` or `psi_l(w)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MomentVar {
    pub algebra: AlgebraId,
    pub which: Which,
    pub word: Word,
}

impl fmt::Display for MomentVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.which {
            Which::Phi => "phi",
            Which::Psi => "psi",
        };
        write!(f, "{name}{}({})", self.algebra, self.word)
    }
}

/// A commutative monomial in moment variables, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct MomentMonomial(Vec<MomentVar>);

impl MomentMonomial {
    pub fn one() -> Self {
        MomentMonomial::default()
    }

    pub fn var(v: MomentVar) -> Self {
        MomentMonomial(vec![v])
    }

    pub fn vars(&self) -> &[MomentVar] {
        &self.0
    }
}

impl Monomial for MomentMonomial {
    fn mul(&self, rhs: &Self) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + rhs.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&rhs.0);
        v.sort();
        MomentMonomial(v)
    }
}

impl fmt::Display for MomentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A polynomial in moments, state-independent; evaluate it against any
/// family of state pairs.
pub type MomentPoly = LinComb<MomentMonomial>;

/// The monomial of the Boolean extension on a run-separated `TildeWord`.
pub(crate) fn boolean_monomial(algebra: AlgebraId, which: Which, runs: &[TildeLetter]) -> MomentMonomial {
    let mut vars = Vec::new();
    for run in runs.split(|l| matches!(l, TildeLetter::T(_))) {
        if run.is_empty() {
            continue;
        }
        let word = Word::new(
            run.iter()
                .map(|l| match l {
                    TildeLetter::Gen(g) => *g,
                    TildeLetter::T(_) => unreachable!(),
                })
                .collect(),
        );
        vars.push(MomentVar { algebra, which, word });
    }
    vars.sort();
    MomentMonomial(vars)
}

/// Evaluates a moment polynomial, looking each distinct moment up once.
pub fn eval_poly(poly: &MomentPoly, pairs: &[StatePair]) -> Result<Scalar> {
    let mut cache: HashMap<&MomentVar, Scalar> = HashMap::new();
    let mut total = Scalar::zero();
    for (mono, c) in poly.iter() {
        let mut term = c.clone();
        for v in mono.vars() {
            let value = match cache.get(v) {
                Some(x) => x.clone(),
                None => {
                    let pair = find_pair(pairs, v.algebra)?;
                    let state = match v.which {
                        Which::Phi => &pair.phi,
                        Which::Psi => &pair.psi,
                    };
                    let x = state.moment(&v.word)?;
                    cache.insert(v, x.clone());
                    x
                }
            };
            if value.is_zero() {
                term = Scalar::zero();
                break;
            }
            term *= value;
        }
        total += term;
    }
    Ok(total)
}
