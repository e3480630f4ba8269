//! Seeded self-checks of the engine's identities.

use std::fmt;

use mfree_core::bialgebra::{
    apply_leg, cfree_convolve, contract_leg, delta, hat_i1, map_leg, multiply, single_leg, Bialgebra, FpmElement,
    FpmTensor, FpmWord, Mode,
};
use mfree_core::mfree::{eval_poly, Expansion, MContext, TensorElement, TensorTerm};
use mfree_core::noncrossing::{free_cumulants, free_mixed_moment};
use mfree_core::scalar::{int, Scalar};
use mfree_core::states::random::{seeded_pair, small_rational};
use mfree_core::states::{boolean_product_eval, cfree_word, free_eval, MomentTable, State, StatePair};
use mfree_core::{AlgebraId, FpWord, Generator, LinComb, TildeWord, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Algebra,
    States,
    Mfree,
    Bialgebra,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Algebra => "algebra",
            Suite::States => "states",
            Suite::Mfree => "mfree",
            Suite::Bialgebra => "bialgebra",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub n_max: usize,
    pub m_max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub n_max: usize,
    pub m_max: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn cmd_verify(suite: Suite, seed: u64, bounds: Bounds) -> Result<VerifyReport> {
    if bounds.n_max == 0 || bounds.m_max == 0 {
        return Err(CliError::Usage("--n-max and --m-max must be at least 1".into()));
    }
    let v = Verifier { seed, bounds };
    let mut checks = Vec::new();
    if matches!(suite, Suite::Algebra | Suite::All) {
        checks.extend(v.algebra());
    }
    if matches!(suite, Suite::States | Suite::All) {
        checks.extend(v.states());
    }
    if matches!(suite, Suite::Mfree | Suite::All) {
        checks.extend(v.mfree());
    }
    if matches!(suite, Suite::Bialgebra | Suite::All) {
        checks.extend(v.bialgebra());
    }
    Ok(VerifyReport { seed, n_max: bounds.n_max, m_max: bounds.m_max, checks })
}

/// Counts cases and keeps the first failure.
struct Tally {
    suite: &'static str,
    name: &'static str,
    cases: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new(suite: &'static str, name: &'static str) -> Self {
        Tally { suite, name, cases: 0, counterexample: None }
    }

    fn expect(&mut self, outcome: mfree_core::Result<bool>, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if self.counterexample.is_some() {
            return;
        }
        match outcome {
            Ok(true) => {}
            Ok(false) => self.counterexample = Some(describe()),
            Err(e) => self.counterexample = Some(format!("{}: {e}", describe())),
        }
    }

    fn equal(
        &mut self,
        lhs: mfree_core::Result<Scalar>,
        rhs: mfree_core::Result<Scalar>,
        what: impl FnOnce() -> String,
    ) {
        let mut shown = String::new();
        let outcome = lhs.and_then(|l| {
            rhs.map(|r| {
                shown = format!("{l} vs {r}");
                l == r
            })
        });
        self.expect(outcome, || format!("{}: {shown}", what()));
    }

    fn done(self) -> Check {
        Check {
            suite: self.suite.into(),
            name: self.name.into(),
            cases: self.cases,
            passed: self.counterexample.is_none(),
            counterexample: self.counterexample,
        }
    }
}

struct Verifier {
    seed: u64,
    bounds: Bounds,
}

const LETTERS: [&str; 2] = ["a", "b"];

impl Verifier {
    /// An independent stream per check.
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
    }

    /// `count` independent state sets on algebras `1..=k`.
    fn state_sets(&self, salt: u64, count: u64, k: u32) -> Vec<Vec<StatePair>> {
        (0..count)
            .map(|i| {
                (1..=k)
                    .map(|l| {
                        let s = self.seed.wrapping_mul(1_000_003).wrapping_add(salt * 1000 + i * 10 + u64::from(l));
                        seeded_pair(AlgebraId(l), s, 64)
                    })
                    .collect()
            })
            .collect()
    }

    fn algebra(&self) -> Vec<Check> {
        let n = self.bounds.n_max;
        let mut rng = self.rng(1);
        let mut assoc = Tally::new("algebra", "free product is associative and unital");
        let mut star = Tally::new("algebra", "adjoint is an antimultiplicative involution");
        let mut clamp = Tally::new("algebra", "separator clamping is a congruence");
        let mut bilinear = Tally::new("algebra", "product of combinations is bilinear");
        for _ in 0..200 {
            let (u, v, w) = (random_fp(&mut rng, 2, n), random_fp(&mut rng, 2, n), random_fp(&mut rng, 2, n));
            assoc.expect(
                Ok(u.mul(&v).mul(&w) == u.mul(&v.mul(&w))
                    && u.mul(&FpWord::unit()) == u
                    && FpWord::unit().mul(&u) == u),
                || format!("u={u} v={v} w={w}"),
            );
            star.expect(Ok(u.mul(&v).star() == v.star().mul(&u.star()) && u.star().star() == u), || {
                format!("u={u} v={v}")
            });
            let (x, y) = (random_tilde(&mut rng, n), random_tilde(&mut rng, n));
            clamp.expect(Ok(x.mul(&y).clamp_t() == x.clamp_t().mul(&y.clamp_t()).clamp_t()), || {
                format!("x={x:?} y={y:?}")
            });
            let comb = |rng: &mut ChaCha8Rng| -> LinComb<FpWord> {
                (0..3).map(|_| (random_fp(rng, 2, n.min(3)), small_rational(rng))).collect()
            };
            let (p, q, r) = (comb(&mut rng), comb(&mut rng), comb(&mut rng));
            let sum = &p + &q;
            bilinear.expect(Ok(&sum * &r == &(&p * &r) + &(&q * &r) && &r * &sum == &(&r * &p) + &(&r * &q)), || {
                format!("p={p} q={q} r={r}")
            });
        }
        vec![assoc.done(), star.done(), clamp.done(), bilinear.done()]
    }

    fn states(&self) -> Vec<Check> {
        let n = self.bounds.n_max;
        let mut rng = self.rng(2);
        let sets = self.state_sets(2, 3, 2);
        let mut boolean = Tally::new("states", "c-free with psi = point is the Boolean product");
        let mut single = Tally::new("states", "c-free on a single block is phi");
        for _ in 0..100 {
            let blocks = rng.gen_range(1..=n);
            let u = random_alternating(&mut rng, 2, blocks, 2);
            for pairs in &sets {
                let phis: Vec<State> = pairs.iter().map(|p| p.phi.clone()).collect();
                let bool_pairs: Vec<StatePair> = phis.iter().cloned().map(StatePair::boolean).collect();
                boolean.equal(cfree_word(&bool_pairs, &u), boolean_product_eval(&phis, &u), || format!("u={u}"));
            }
            let w = random_word_upto(&mut rng, AlgebraId(1), n);
            for pairs in &sets {
                single.equal(cfree_word(pairs, &FpWord::from_words([w.clone()])), pairs[0].phi.moment(&w), || {
                    format!("w={w}")
                });
            }
        }

        let mut oracle = Tally::new("states", "free product matches the noncrossing-partition oracle");
        let len_max = n.min(6);
        for _ in 0..2 {
            let mut states = Vec::new();
            let mut cumulants = Vec::new();
            for l in 1..=3u32 {
                let x = Generator::new(l, "x");
                let mut moments = vec![int(1)];
                let mut entries = Vec::new();
                for k in 1..=len_max {
                    let v = small_rational(&mut rng);
                    entries.push((Word::new(vec![x; k]), v.clone()));
                    moments.push(v);
                }
                states.push(State::from(
                    MomentTable::new(AlgebraId(l), len_max, entries, false).expect("consistent table"),
                ));
                cumulants.push(free_cumulants(&moments));
            }
            for len in 1..=len_max as u32 {
                for code in 0..3usize.pow(len) {
                    let colors: Vec<usize> = (0..len).map(|i| code / 3usize.pow(i) % 3).collect();
                    let u = FpWord::from_letters(colors.iter().map(|&c| Generator::new(c as u32 + 1, "x")));
                    oracle
                        .equal(free_eval(&states, &u), Ok(free_mixed_moment(&colors, &cumulants)), || format!("u={u}"));
                }
            }
        }
        vec![boolean.done(), single.done(), oracle.done()]
    }

    fn mfree(&self) -> Vec<Check> {
        let Bounds { n_max, m_max } = self.bounds;
        let mut rng = self.rng(3);
        let sets = self.state_sets(3, 2, 2);
        let ctx = |m: usize, pairs: &[StatePair]| MContext::new(m, pairs.to_vec()).expect("valid context");

        let mut agree = Tally::new("mfree", "m-free equals c-free on at most 2m blocks");
        let mut pruning = Tally::new("mfree", "pyramidal pruning equals the full expansion");
        for m in 1..=m_max {
            let c = ctx(m, &sets[0]);
            for n in 1..=n_max {
                for u in block_patterns(&mut rng, n) {
                    if n <= 2 * m {
                        match c.mfree_poly(&u, Expansion::default_for(n)) {
                            Ok(poly) => {
                                for pairs in &sets {
                                    agree.equal(eval_poly(&poly, pairs), cfree_word(pairs, &u), || {
                                        format!("m={m} u={u}")
                                    });
                                }
                            }
                            Err(e) => agree.expect(Err(e), || format!("m={m} u={u}")),
                        }
                    }
                    if rng.gen_bool(0.25) {
                        let full = c.mfree_poly(&u, Expansion::Blocks);
                        let pruned = c.mfree_poly(&u, Expansion::Pyramidal);
                        pruning.expect(full.and_then(|f| pruned.map(|p| p == f)), || format!("m={m} u={u}"));
                    }
                }
            }
        }

        let mut marginals = Tally::new("mfree", "marginals are preserved");
        let mut boolean = Tally::new("mfree", "m = 1 is the Boolean product");
        for _ in 0..50 {
            let l = AlgebraId(rng.gen_range(1..=2));
            let w = random_word_upto(&mut rng, l, n_max);
            let u = FpWord::from_words([w.clone()]);
            for pairs in &sets {
                for m in 1..=m_max {
                    let expected = pairs[l.0 as usize - 1].phi.moment(&w);
                    marginals.equal(ctx(m, pairs).mfree_eval(&u), expected, || format!("m={m} w={w}"));
                }
            }
            let blocks = rng.gen_range(1..=n_max);
            let u = random_alternating(&mut rng, 2, blocks, 2);
            for pairs in &sets {
                let phis: Vec<State> = pairs.iter().map(|p| p.phi.clone()).collect();
                boolean.equal(ctx(1, pairs).mfree_eval(&u), boolean_product_eval(&phis, &u), || format!("u={u}"));
            }
        }

        let mut centred = Tally::new("mfree", "centred blocks factorize on at most 2m blocks");
        for m in 1..=m_max {
            for _ in 0..20 {
                let blocks = rng.gen_range(1..=n_max.min(2 * m));
                let u = random_alternating(&mut rng, 2, blocks, 2);
                for pairs in &sets {
                    let c = ctx(m, pairs);
                    let lhs = u
                        .blocks()
                        .iter()
                        .try_fold(TensorElement::basis(TensorTerm::unit()), |acc, w| {
                            Ok(&acc * &(&c.j_block(w)? - &c.d_element(w)?))
                        })
                        .and_then(|e| c.phi_m_eval(&e));
                    let rhs = u.blocks().iter().try_fold(int(1), |acc, w| {
                        let p = &pairs[w.algebra().expect("nonempty block").0 as usize - 1];
                        Ok(acc * (p.phi.moment(w)? - p.psi.moment(w)?))
                    });
                    centred.equal(lhs, rhs, || format!("m={m} u={u}"));
                }
            }
        }
        vec![agree.done(), marginals.done(), boolean.done(), centred.done(), pruning.done()]
    }

    fn bialgebra(&self) -> Vec<Check> {
        let Bounds { n_max, m_max } = self.bounds;
        let mut rng = self.rng(4);
        let mut counit = Tally::new("bialgebra", "counit laws on generators");
        let mut coassoc = Tally::new("bialgebra", "coassociativity on generators");
        let mut antipode = Tally::new("bialgebra", "antipode law on generators");
        let mut doubling = Tally::new("bialgebra", "hat-j of the doubling equals the coproduct of i1");
        let mut convolution = Tally::new("bialgebra", "convolution equals the c-free convolution");
        for m in 1..=m_max {
            let hopf = Bialgebra::new(m, Mode::Hopf).expect("m >= 1");
            for (name, x) in generators(&hopf) {
                let what = || format!("m={m} x={name}");
                let d = match hopf.coproduct_elem(&x) {
                    Ok(d) => d,
                    Err(e) => {
                        counit.expect(Err(e), what);
                        continue;
                    }
                };
                let left = single_leg(&contract_leg(&d, 0, |w| hopf.counit(w)));
                let right = single_leg(&contract_leg(&d, 1, |w| hopf.counit(w)));
                counit.expect(Ok(left == x && right == x), what);
                let outcome = apply_leg(&d, 0, |w| hopf.coproduct(w))
                    .and_then(|l| apply_leg(&d, 1, |w| hopf.coproduct(w)).map(|r| l == r));
                coassoc.expect(outcome, what);
                let unit = FpmElement::term(FpmWord::unit(), hopf.counit_elem(&x));
                let outcome = map_leg(&d, 0, |w| hopf.antipode(w)).and_then(|sl| {
                    map_leg(&d, 1, |w| hopf.antipode(w)).map(|sr| multiply(&sl) == unit && multiply(&sr) == unit)
                });
                antipode.expect(outcome, what);
            }

            let bi = Bialgebra::new(m, Mode::Bialgebra).expect("m >= 1");
            for _ in 0..30 {
                let w = random_word_upto(&mut rng, AlgebraId(1), n_max.min(4));
                let lhs = delta(&w).iter().try_fold(FpmTensor::zero(), |mut acc, (u, c)| {
                    acc += &bi.hat_j(u, 2, AlgebraId(1))?.scale(c);
                    Ok(acc)
                });
                let outcome = lhs.and_then(|l| bi.coproduct(&hat_i1(&w)).map(|r| l == r));
                doubling.expect(outcome, || format!("m={m} w={w}"));
            }

            for legs in 2..=3u64 {
                let pairs: Vec<StatePair> = (0..legs)
                    .map(|i| seeded_pair(AlgebraId(1), self.seed.wrapping_mul(7919).wrapping_add(legs * 100 + i), 64))
                    .collect();
                for _ in 0..10 {
                    let w = random_word_upto(&mut rng, AlgebraId(1), convolution_length(m, legs as usize).min(n_max));
                    convolution
                        .equal(bi.convolve(&pairs, &w), cfree_convolve(&pairs, &w), || format!("m={m} N={legs} w={w}"));
                }
            }
        }
        vec![counit.done(), coassoc.done(), antipode.done(), doubling.done(), convolution.done()]
    }
}

/// Longest word length checked against the c-free convolution of `legs`
/// states at level `m`: `2m`, capped to keep the iterated coproduct small.
pub fn convolution_length(m: usize, legs: usize) -> usize {
    (2 * m).min(if legs <= 2 { 4 } else { 3 })
}

fn random_letter<R: Rng>(rng: &mut R, l: AlgebraId) -> Generator {
    let g = Generator::new(l.0, LETTERS[rng.gen_range(0..LETTERS.len())]);
    if rng.gen_bool(0.5) {
        g.star()
    } else {
        g
    }
}

fn random_word<R: Rng>(rng: &mut R, l: AlgebraId, len: usize) -> Word {
    Word::new((0..len).map(|_| random_letter(rng, l)).collect())
}

fn random_word_upto<R: Rng>(rng: &mut R, l: AlgebraId, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    random_word(rng, l, len)
}

/// An alternating word over algebras `1..=k` with block lengths `1..=max_len`.
fn random_alternating<R: Rng>(rng: &mut R, k: u32, blocks: usize, max_len: usize) -> FpWord {
    let mut prev = 0;
    let words = (0..blocks).map(|_| {
        let l = loop {
            let l = rng.gen_range(1..=k);
            if l != prev {
                break l;
            }
        };
        prev = l;
        let len = rng.gen_range(1..=max_len);
        random_word(rng, AlgebraId(l), len)
    });
    FpWord::from_words(words.collect::<Vec<_>>())
}

fn random_fp<R: Rng>(rng: &mut R, k: u32, max_letters: usize) -> FpWord {
    let len = rng.gen_range(0..=max_letters);
    FpWord::from_letters(
        (0..len)
            .map(|_| {
                let l = AlgebraId(rng.gen_range(1..=k));
                random_letter(rng, l)
            })
            .collect::<Vec<_>>(),
    )
}

fn random_tilde<R: Rng>(rng: &mut R, max_pieces: usize) -> TildeWord {
    (0..rng.gen_range(0..=max_pieces)).fold(TildeWord::unit(), |acc, _| {
        let piece = if rng.gen_bool(0.4) {
            TildeWord::t(rng.gen_range(1..=3))
        } else {
            let len = rng.gen_range(1..=2);
            TildeWord::from_word(&random_word(rng, AlgebraId(1), len))
        };
        acc.mul(&piece)
    })
}

/// Both starting algebras and every choice of block lengths 1 or 2, with
/// random letters.
fn block_patterns<R: Rng>(rng: &mut R, n: usize) -> Vec<FpWord> {
    let mut out = Vec::new();
    for start in 1..=2u32 {
        for mask in 0..(1u32 << n) {
            let blocks: Vec<Word> = (0..n)
                .map(|i| {
                    let l = if i % 2 == 0 { start } else { 3 - start };
                    random_word(rng, AlgebraId(l), 1 + (mask >> i & 1) as usize)
                })
                .collect();
            out.push(FpWord::from_words(blocks));
        }
    }
    out
}

/// `t^{±1}`, `a`, `a*` in every copy and the primitive `a_(k) - a_(k+1)`.
fn generators(bi: &Bialgebra) -> Vec<(String, FpmElement)> {
    let a = Generator::new(1, "a");
    let mut out = Vec::new();
    for k in 1..=bi.m() {
        out.push((format!("t[{k}]"), FpmElement::basis(FpmWord::t(k, 1))));
        out.push((format!("t[{k}]^-1"), FpmElement::basis(FpmWord::t(k, -1))));
        out.push((format!("a[{k}]"), FpmElement::basis(FpmWord::gen(k, a))));
        out.push((format!("a*[{k}]"), FpmElement::basis(FpmWord::gen(k, a.star()))));
        out.push((format!("a[{k}]-a[{}]", k + 1), bi.primitive(a, k)));
    }
    out
}
