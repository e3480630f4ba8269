//! Seeded random rational states.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MomentTable, State, StatePair};
use crate::algebra::{AlgebraId, Generator, Word};
use crate::error::{Error, Result};
use crate::scalar::{ratio, Scalar};

/// `p/q` with `|p| <= 9`, `1 <= q <= 9`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// A state whose moment at `w` is a small rational drawn from a generator
/// seeded by `(seed, w)`. Nothing is stored, so high degrees are cheap.
/// The algebra tag does not enter the draw: retagged copies agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeededState {
    pub algebra: AlgebraId,
    pub seed: u64,
    pub max_degree: usize,
    pub hermitian: bool,
}

impl SeededState {
    pub fn new(algebra: AlgebraId, seed: u64, max_degree: usize, hermitian: bool) -> Self {
        SeededState { algebra, seed, max_degree, hermitian }
    }

    pub(crate) fn get(&self, letters: &[Generator]) -> Result<Scalar> {
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
        if letters.is_empty() {
            return Ok(Scalar::one());
        }
        let key = if self.hermitian {
            let adjoint: Vec<Generator> = letters.iter().rev().map(|g| g.star()).collect();
            if adjoint.as_slice() < letters {
                fingerprint(self.seed, &adjoint)
            } else {
                fingerprint(self.seed, letters)
            }
        } else {
            fingerprint(self.seed, letters)
        };
        Ok(small_rational(&mut ChaCha8Rng::seed_from_u64(key)))
    }
}

/// FNV-1a over the seed and the letters' names and star flags.
fn fingerprint(seed: u64, letters: &[Generator]) -> u64 {
    const PRIME: u64 = 0x100_0000_01b3;
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |bytes: &[u8]| {
        for b in bytes {
            h ^= u64::from(*b);
            h = h.wrapping_mul(PRIME);
        }
    };
    feed(&seed.to_le_bytes());
    for g in letters {
        feed(g.symbol.as_str().as_bytes());
        feed(&[0xff, u8::from(g.starred)]);
    }
    h
}

/// Independent seeded `phi` and `psi` on one algebra.
pub fn seeded_pair(algebra: AlgebraId, seed: u64, max_degree: usize) -> StatePair {
    let phi = SeededState::new(algebra, seed.wrapping_mul(2), max_degree, false);
    let psi = SeededState::new(algebra, seed.wrapping_mul(2).wrapping_add(1), max_degree, false);
    StatePair { phi: State::Seeded(phi), psi: State::Seeded(psi) }
}

/// Every word of length `1..=degree` over the generators and their adjoints.
pub fn all_words(algebra: AlgebraId, generators: &[&str], degree: usize) -> Vec<Word> {
    let letters: Vec<Generator> = generators
        .iter()
        .flat_map(|s| {
            let g = Generator::new(algebra.0, s);
            [g, g.star()]
        })
        .collect();
    let mut out = Vec::new();
    let mut layer = vec![Word::unit()];
    for _ in 0..degree {
        let next: Vec<Word> =
            layer.iter().flat_map(|w| letters.iter().map(move |g| w.concat(&Word::letter(*g)))).collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A full moment table with independent small rational entries. With
/// `hermitian` set, `w` and `w*` share one draw.
pub fn random_table<R: Rng + ?Sized>(
    rng: &mut R,
    algebra: AlgebraId,
    generators: &[&str],
    degree: usize,
    hermitian: bool,
) -> MomentTable {
    let mut entries: Vec<(Word, Scalar)> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for w in all_words(algebra, generators, degree) {
        let v = match hermitian.then(|| seen.get(&w.star()).cloned()).flatten() {
            Some(v) => v,
            None => small_rational(rng),
        };
        if hermitian {
            seen.insert(w.clone(), v.clone());
        }
        entries.push((w, v));
    }
    MomentTable::new(algebra, degree, entries, hermitian).expect("generated tables are consistent")
}

/// Independent random `phi` and `psi` on one algebra.
pub fn random_pair<R: Rng + ?Sized>(
    rng: &mut R,
    algebra: AlgebraId,
    generators: &[&str],
    degree: usize,
    hermitian: bool,
) -> StatePair {
    let phi = random_table(rng, algebra, generators, degree, hermitian);
    let psi = random_table(rng, algebra, generators, degree, hermitian);
    StatePair { phi: phi.into(), psi: psi.into() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::State;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn word_counts() {
        assert_eq!(all_words(AlgebraId(1), &["a"], 3).len(), 2 + 4 + 8);
        assert_eq!(all_words(AlgebraId(1), &["a", "b"], 2).len(), 4 + 16);
    }

    #[test]
    fn seeded_tables_are_reproducible() {
        let t1 = random_table(&mut ChaCha8Rng::seed_from_u64(9), AlgebraId(1), &["a"], 3, false);
        let t2 = random_table(&mut ChaCha8Rng::seed_from_u64(9), AlgebraId(1), &["a"], 3, false);
        assert_eq!(t1, t2);
    }

    #[test]
    fn hermitian_tables_are_symmetric() {
        let t = random_table(&mut ChaCha8Rng::seed_from_u64(3), AlgebraId(2), &["b", "c"], 3, true);
        let s = State::from(t);
        for w in all_words(AlgebraId(2), &["b", "c"], 3) {
            assert_eq!(s.moment(&w).unwrap(), s.moment(&w.star()).unwrap());
        }
    }

    #[test]
    fn seeded_states_are_deterministic_and_degree_bounded() {
        let s = State::Seeded(SeededState::new(AlgebraId(1), 5, 3, false));
        let w = Word::new(vec![Generator::new(1, "a"), Generator::new(1, "b").star()]);
        assert_eq!(s.moment(&w).unwrap(), s.moment(&w).unwrap());
        assert_eq!(s.moment(&Word::unit()).unwrap(), Scalar::one());
        assert_eq!(s.retag(AlgebraId(4)).moment(&w.retag(AlgebraId(4))).unwrap(), s.moment(&w).unwrap());
        let long = Word::new(vec![Generator::new(1, "a"); 4]);
        assert!(matches!(s.moment(&long), Err(Error::DegreeOverflow { .. })));
        let h = State::Seeded(SeededState::new(AlgebraId(1), 5, 3, true));
        assert_eq!(h.moment(&w).unwrap(), h.moment(&w.star()).unwrap());
        let values: std::collections::BTreeSet<String> =
            all_words(AlgebraId(1), &["a"], 3).iter().map(|w| s.moment(w).unwrap().to_string()).collect();
        assert!(values.len() > 3);
    }

    #[test]
    fn entries_are_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..200 {
            let r = small_rational(&mut rng);
            assert!(r.numer().magnitude() <= &9u32.into() && r.denom() <= &9.into());
        }
    }
}
