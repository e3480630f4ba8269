//! Acceptance suite. Prints one PASS/FAIL line per criterion; run with
//! `cargo test -p mfree-core --test acceptance -- --nocapture` to see them.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use mfree_core::bialgebra::{
    apply_leg, contract_leg, delta, hat_i1, map_leg, multiply, single_leg, star_elem, Bialgebra, FpmElement, FpmLetter,
    FpmTensor, FpmWord, Mode,
};
use mfree_core::mfree::{eval_poly, Expansion, MContext, TensorElement, TensorTerm};
use mfree_core::noncrossing::{free_cumulants, free_mixed_moment};
use mfree_core::scalar::{int, Scalar};
use mfree_core::states::random::random_pair;
use mfree_core::states::{boolean_product_eval, cfree_word, free_eval, MomentTable, State, StatePair};
use mfree_core::{AlgebraId, FpWord, Generator, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot hold as stated; they must still be evaluated and
/// must come out red.
const KNOWN_RED: &[&str] = &["9d"];

struct Outcome {
    id: &'static str,
    passed: bool,
    detail: String,
}

struct Report(Vec<Outcome>);

impl Report {
    fn record(&mut self, id: &'static str, title: &str, passed: bool, detail: String) {
        let tag = if passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {id:<3} {title}: {detail}");
        self.0.push(Outcome { id, passed, detail });
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn gen(alg: u32, s: &str) -> Generator {
    Generator::new(alg, s)
}

fn state_sets(count: u64, algebras: u32, gens: &[&str], degree: usize, offset: u64) -> Vec<Vec<StatePair>> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(offset + i);
            (1..=algebras).map(|l| random_pair(&mut rng, AlgebraId(l), gens, degree, false)).collect()
        })
        .collect()
}

/// Every sequence of `n` algebras from `1..=k` with neighbours distinct.
fn algebra_patterns(k: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in out {
            for a in (1..=k).filter(|a| p.last() != Some(a)) {
                let mut q = p.clone();
                q.push(a);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Every alternating word over `k` algebras with `n` blocks whose block
/// lengths are 1 or 2, letters drawn from `a`, `a*`.
fn block_patterns<R: Rng>(rng: &mut R, k: u32, n: usize) -> Vec<FpWord> {
    let mut out = Vec::new();
    for algs in algebra_patterns(k, n) {
        for mask in 0..(1u32 << n) {
            let blocks = algs.iter().enumerate().map(|(i, &l)| {
                let len = 1 + (mask >> i & 1) as usize;
                Word::new((0..len).map(|_| letter(rng, l)).collect())
            });
            out.push(FpWord::from_words(blocks));
        }
    }
    out
}

fn letter<R: Rng>(rng: &mut R, l: u32) -> Generator {
    let g = gen(l, "a");
    if rng.gen_bool(0.5) {
        g.star()
    } else {
        g
    }
}

/// All words of length `0..=max` over the given letters.
fn words_over(letters: &[Generator], max: usize) -> Vec<Word> {
    let mut out = vec![Word::unit()];
    let mut layer = vec![Word::unit()];
    for _ in 0..max {
        layer = layer.iter().flat_map(|w| letters.iter().map(move |g| w.concat(&Word::letter(*g)))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn moments(pairs: &[StatePair], w: &Word) -> (Scalar, Scalar) {
    let p = pairs.iter().find(|p| Some(p.algebra()) == w.algebra()).unwrap();
    (p.phi.moment(w).unwrap(), p.psi.moment(w).unwrap())
}

fn example_one(report: &mut Report) {
    let sets = state_sets(100, 2, &["a", "c", "b"], 2, 1);
    let (a1, a2, b) = (gen(1, "a"), gen(1, "c"), gen(2, "b"));
    let u = FpWord::from_letters([a1, b, a2]);
    let ((ok_formula, ok_cfree), dt) = timed(|| {
        let ctx = MContext::new(2, sets[0].clone()).unwrap();
        let poly = ctx.mfree_poly(&u, Expansion::Blocks).unwrap();
        let mut ok = (true, true);
        for pairs in &sets {
            let f1 = |gs: &[Generator]| moments(pairs, &Word::new(gs.to_vec())).0;
            let (f2, p2) = moments(pairs, &Word::letter(b));
            let expected = f1(&[a1]) * f1(&[a2]) * &f2 + f1(&[a1, a2]) * &p2 - f1(&[a1]) * f1(&[a2]) * &p2;
            ok.0 &= eval_poly(&poly, pairs).unwrap() == expected;
            ok.1 &= cfree_word(pairs, &u).unwrap() == expected;
        }
        ok
    });
    let passed = ok_formula && ok_cfree && dt < Duration::from_secs(1);
    report.record(
        "1",
        "three-letter closed form (a1 b a2, m=2)",
        passed,
        format!(
            "100 state pairs; m-free = corrected formula: {ok_formula}; corrected formula = c-free: {ok_cfree}; {} (limit 1s)",
            secs(dt)
        ),
    );
}

fn example_two(report: &mut Report) {
    let sets = state_sets(100, 2, &["a", "c", "b", "d"], 2, 101);
    let (a1, a2, b1, b2) = (gen(1, "a"), gen(1, "c"), gen(2, "b"), gen(2, "d"));
    let u = FpWord::from_letters([a1, b1, a2, b2]);
    let ((ok_formula, ok_cfree), dt) = timed(|| {
        let ctx = MContext::new(2, sets[0].clone()).unwrap();
        let poly = ctx.mfree_poly(&u, Expansion::Blocks).unwrap();
        let mut ok = (true, true);
        for pairs in &sets {
            let f = |gs: &[Generator]| moments(pairs, &Word::new(gs.to_vec())).0;
            let s = |gs: &[Generator]| moments(pairs, &Word::new(gs.to_vec())).1;
            let expected = f(&[a1]) * f(&[a2]) * f(&[b1]) * f(&[b2])
                + f(&[a1]) * s(&[a2]) * (f(&[b1, b2]) - f(&[b1]) * f(&[b2]))
                + (f(&[a1, a2]) - f(&[a1]) * f(&[a2])) * f(&[b2]) * s(&[b1]);
            ok.0 &= eval_poly(&poly, pairs).unwrap() == expected;
            ok.1 &= cfree_word(pairs, &u).unwrap() == expected;
        }
        ok
    });
    let passed = ok_formula && ok_cfree && dt < Duration::from_secs(1);
    report.record(
        "2",
        "four-letter closed form (a1 b1 a2 b2, m=2)",
        passed,
        format!(
            "100 state pairs; m-free = formula: {ok_formula}; formula = c-free: {ok_cfree}; {} (limit 1s)",
            secs(dt)
        ),
    );
}

/// `mfree_eval = cfree_eval` on every pattern with `n <= 2m` blocks.
fn agreement(k: u32, levels: &[usize], sets: &[Vec<StatePair>], seed: u64) -> (usize, usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checked, mut patterns) = (0, 0);
    let mut failures = Vec::new();
    for &m in levels {
        let ctx = MContext::new(m, sets[0].clone()).unwrap();
        for n in 1..=2 * m {
            for u in block_patterns(&mut rng, k, n) {
                patterns += 1;
                let poly = ctx.mfree_poly(&u, Expansion::default_for(n)).unwrap();
                for pairs in sets {
                    checked += 1;
                    if eval_poly(&poly, pairs).unwrap() != cfree_word(pairs, &u).unwrap() {
                        failures.push(format!("m={m} u={u}"));
                    }
                }
            }
        }
    }
    (patterns, checked, failures)
}

fn theorem_two_algebras(report: &mut Report) {
    let sets = state_sets(20, 2, &["a"], 6, 1000);
    let ((patterns, checked, failures), dt) = timed(|| agreement(2, &[1, 2, 3], &sets, 7));
    let passed = failures.is_empty() && dt < Duration::from_secs(60);
    report.record(
        "3",
        "m-free = c-free, two algebras, n <= 2m, m in {1,2,3}",
        passed,
        format!(
            "{patterns} patterns x 20 state sets = {checked} checks, {} mismatches; {} (limit 60s)",
            failures.len(),
            secs(dt)
        ),
    );
}

fn theorem_three_algebras(report: &mut Report) {
    let sets = state_sets(20, 3, &["a"], 4, 2000);
    let ((patterns, checked, failures), dt) = timed(|| agreement(3, &[1, 2], &sets, 8));
    let passed = failures.is_empty() && dt < Duration::from_secs(60);
    report.record(
        "4",
        "m-free = c-free, three algebras, n <= 2m, m in {1,2}",
        passed,
        format!(
            "{patterns} patterns x 20 state sets = {checked} checks, {} mismatches; {} (limit 60s)",
            failures.len(),
            secs(dt)
        ),
    );
}

fn boolean_base(report: &mut Report) {
    let sets = state_sets(3, 2, &["a"], 10, 3000);
    let blocks: Vec<Vec<Word>> =
        (1..=2).map(|l| words_over(&[gen(l, "a"), gen(l, "a").star()], 2).into_iter().skip(1).collect()).collect();
    let ((count, bad), dt) = timed(|| {
        let (mut count, mut bad) = (0, 0);
        let ctxs: Vec<MContext> = sets.iter().map(|p| MContext::new(1, p.clone()).unwrap()).collect();
        let phis: Vec<Vec<State>> = ctxs.iter().map(|c| c.pairs().iter().map(|p| p.phi.clone()).collect()).collect();
        for n in 0..=5 {
            for algs in algebra_patterns(2, n) {
                let mut words = vec![Vec::new()];
                for &l in &algs {
                    words = words
                        .into_iter()
                        .flat_map(|prefix: Vec<Word>| {
                            blocks[l as usize - 1].iter().map(move |w| {
                                let mut p = prefix.clone();
                                p.push(w.clone());
                                p
                            })
                        })
                        .collect();
                }
                for ws in words {
                    let u = FpWord::from_words(ws);
                    let poly = ctxs[0].mfree_poly(&u, Expansion::default_for(n)).unwrap();
                    for (ctx, states) in ctxs.iter().zip(&phis) {
                        count += 1;
                        if eval_poly(&poly, ctx.pairs()).unwrap() != boolean_product_eval(states, &u).unwrap() {
                            bad += 1;
                        }
                    }
                }
            }
        }
        (count, bad)
    });
    let passed = bad == 0 && dt < Duration::from_secs(10);
    report.record(
        "5",
        "m=1 is the Boolean product",
        passed,
        format!("{count} checks (n <= 5, block length <= 2, 3 state sets), {bad} mismatches; {} (limit 10s)", secs(dt)),
    );
}

fn marginals(report: &mut Report) {
    let sets = state_sets(5, 2, &["a", "b"], 4, 4000);
    let (mut count, mut bad) = (0, 0);
    for pairs in &sets {
        for m in 1..=4 {
            let ctx = MContext::new(m, pairs.clone()).unwrap();
            for l in 1..=2 {
                let letters = [gen(l, "a"), gen(l, "a").star(), gen(l, "b"), gen(l, "b").star()];
                for w in words_over(&letters, 4) {
                    count += 1;
                    let u = FpWord::from_words([w.clone()]);
                    let expected = if w.is_unit() { int(1) } else { moments(pairs, &w).0 };
                    if ctx.mfree_eval(&u).unwrap() != expected {
                        bad += 1;
                    }
                }
            }
        }
    }
    report.record(
        "6",
        "marginals preserved, m <= 4, single-algebra words of length <= 4",
        bad == 0,
        format!("{count} checks over 5 state sets, {bad} mismatches"),
    );
}

fn centred_factorization(report: &mut Report) {
    let sets = state_sets(5, 2, &["a"], 6, 5000);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut count, mut bad) = (0, 0);
    for m in 1..=3 {
        let ctx = MContext::new(m, sets[0].clone()).unwrap();
        for n in 1..=2 * m {
            for u in block_patterns(&mut rng, 2, n) {
                let mut prod = TensorElement::basis(TensorTerm::unit());
                for w in u.blocks() {
                    prod = &prod * &(&ctx.j_block(w).unwrap() - &ctx.d_element(w).unwrap());
                }
                for pairs in &sets {
                    count += 1;
                    let c = MContext::new(m, pairs.clone()).unwrap();
                    // d at m = 1 carries psi as a coefficient, so rebuild per state set.
                    let value = if m == 1 {
                        let mut p = TensorElement::basis(TensorTerm::unit());
                        for w in u.blocks() {
                            p = &p * &(&c.j_block(w).unwrap() - &c.d_element(w).unwrap());
                        }
                        c.phi_m_eval(&p).unwrap()
                    } else {
                        c.phi_m_eval(&prod).unwrap()
                    };
                    let expected: Scalar = u
                        .blocks()
                        .iter()
                        .map(|w| {
                            let (phi, psi) = moments(pairs, w);
                            phi - psi
                        })
                        .product();
                    if value != expected {
                        bad += 1;
                    }
                }
            }
        }
    }
    report.record("7", "centred factorization, n <= 2m, m <= 3", bad == 0, format!("{count} checks, {bad} mismatches"));
}

fn doubling_compatibility(report: &mut Report) {
    let (a, b) = (gen(1, "a"), gen(1, "b"));
    let mut words = words_over(&[a, a.star(), b, b.star()], 3);
    words.extend(words_over(&[a, a.star()], 4).into_iter().filter(|w| w.len() == 4));
    let (mut count, mut bad) = (0, 0);
    for m in 1..=3 {
        let bi = Bialgebra::new(m, Mode::Bialgebra).unwrap();
        for w in &words {
            count += 1;
            let mut jd = FpmTensor::zero();
            for (u, c) in delta(w).iter() {
                jd += &bi.hat_j(u, 2, AlgebraId(1)).unwrap().scale(c);
            }
            if jd != bi.coproduct(&hat_i1(w)).unwrap() {
                bad += 1;
            }
        }
    }
    report.record(
        "8",
        "hat-j o delta = coproduct o i1, m <= 3, words of length <= 4",
        bad == 0,
        format!("{count} symbolic identities ({} words per level), {bad} mismatches", words.len()),
    );
}

fn hopf_generators(bi: &Bialgebra) -> Vec<(String, FpmElement)> {
    let a = gen(1, "a");
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

/// Collects every maximal run of `t`-letters by copy index: the normal form
/// modulo commuting copies of `t`.
fn commute_t(x: &FpmElement) -> FpmElement {
    x.map_basis(|w| {
        let mut out = Vec::new();
        let mut run: BTreeMap<usize, i32> = BTreeMap::new();
        for l in w.letters() {
            match *l {
                FpmLetter::T { copy, exp } => *run.entry(copy).or_default() += exp,
                g => {
                    out.extend(std::mem::take(&mut run).into_iter().map(|(copy, exp)| FpmLetter::T { copy, exp }));
                    out.push(g);
                }
            }
        }
        out.extend(run.into_iter().map(|(copy, exp)| FpmLetter::T { copy, exp }));
        FpmWord::from_letters(out)
    })
}

fn hopf_axioms(report: &mut Report) {
    let (mut counit_bad, mut coassoc_bad, mut antipode_bad, mut total) = (0, 0, 0, 0);
    let mut involution_bad = Vec::new();
    let mut involution_bad_mod_t = 0;
    for m in 1..=3 {
        let bi = Bialgebra::new(m, Mode::Hopf).unwrap();
        for (name, x) in hopf_generators(&bi) {
            total += 1;
            let d = bi.coproduct_elem(&x).unwrap();
            let left_counit = single_leg(&contract_leg(&d, 0, |w| bi.counit(w)));
            let right_counit = single_leg(&contract_leg(&d, 1, |w| bi.counit(w)));
            if left_counit != x || right_counit != x {
                counit_bad += 1;
            }
            let left = apply_leg(&d, 0, |w| bi.coproduct(w)).unwrap();
            let right = apply_leg(&d, 1, |w| bi.coproduct(w)).unwrap();
            if left != right {
                coassoc_bad += 1;
            }
            let unit = FpmElement::term(FpmWord::unit(), bi.counit_elem(&x));
            let s_id = multiply(&map_leg(&d, 0, |w| bi.antipode(w)).unwrap());
            let id_s = multiply(&map_leg(&d, 1, |w| bi.antipode(w)).unwrap());
            if s_id != unit || id_s != unit {
                antipode_bad += 1;
            }
            let inner = star_elem(&bi.antipode_elem(&star_elem(&x)).unwrap());
            let back = bi.antipode_elem(&inner).unwrap();
            if back != x {
                involution_bad.push(format!("m={m} x={name}"));
            }
            if commute_t(&back) != commute_t(&x) {
                involution_bad_mod_t += 1;
            }
        }
    }
    report.record(
        "9a",
        "counit laws on generators, m <= 3",
        counit_bad == 0,
        format!("{total} generators, {counit_bad} failures"),
    );
    report.record(
        "9b",
        "coassociativity on generators, m <= 3",
        coassoc_bad == 0,
        format!("{total} generators, {coassoc_bad} failures"),
    );
    report.record(
        "9c",
        "antipode law m(S (x) id)D = m(id (x) S)D = e1, m <= 3",
        antipode_bad == 0,
        format!("{total} generators, {antipode_bad} failures"),
    );
    let shown: Vec<&str> = involution_bad.iter().take(3).map(String::as_str).collect();
    report.record(
        "9d",
        "S(S(x*)*) = x on generators, m <= 3, full free product",
        involution_bad.is_empty(),
        format!(
            "{} of {total} generators fail (e.g. {}); modulo commuting t's: {} failures",
            involution_bad.len(),
            shown.join(", "),
            involution_bad_mod_t
        ),
    );
}

fn convolution(report: &mut Report) {
    let a = gen(1, "a");
    let words: Vec<Word> = words_over(&[a, a.star()], 3);
    let mut rng = ChaCha8Rng::seed_from_u64(6000);
    let pairs3: Vec<StatePair> = (0..3).map(|_| random_pair(&mut rng, AlgebraId(1), &["a"], 3, false)).collect();
    let mut lines = Vec::new();
    let mut passed = true;
    for (n, levels) in [(2usize, 4usize), (3, 3)] {
        let pairs = &pairs3[..n];
        let mut thresholds: BTreeMap<usize, usize> = BTreeMap::new();
        for w in &words {
            let target = mfree_core::bialgebra::cfree_convolve(pairs, w).unwrap();
            let values: Vec<Scalar> =
                (1..=levels).map(|m| Bialgebra::new(m, Mode::Bialgebra).unwrap().convolve(pairs, w).unwrap()).collect();
            // Smallest level from which every computed value equals the target.
            let from = (0..levels).rev().take_while(|&i| values[i] == target).last().map(|i| i + 1);
            match from {
                Some(m0) => {
                    let e = thresholds.entry(w.len()).or_insert(0);
                    *e = (*e).max(m0);
                }
                None => passed = false,
            }
        }
        let summary: Vec<String> = thresholds.iter().map(|(len, m0)| format!("l(w)={len}: m>={m0}")).collect();
        lines.push(format!("N={n}, m<= {levels}: {}", summary.join(", ")));
        if thresholds.len() != 4 {
            passed = false;
        }
    }
    report.record(
        "10",
        "convolution stabilizes at the c-free convolution, words of length <= 3",
        passed,
        format!("{} words; observed thresholds {}", words.len(), lines.join("; ")),
    );
}

fn noncrossing_cross_check(report: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(7000);
    let (mut count, mut bad) = (0, 0);
    for _ in 0..3 {
        let mut states = Vec::new();
        let mut cumulants = Vec::new();
        for l in 1..=3u32 {
            let x = gen(l, "x");
            let mut ms = vec![int(1)];
            let mut entries = Vec::new();
            for k in 1..=6 {
                let v = mfree_core::states::random::small_rational(&mut rng);
                entries.push((Word::new(vec![x; k]), v.clone()));
                ms.push(v);
            }
            states.push(State::from(MomentTable::new(AlgebraId(l), 6, entries, false).unwrap()));
            cumulants.push(free_cumulants(&ms));
        }
        for len in 1..=6u32 {
            for code in 0..3usize.pow(len) {
                let colors: Vec<usize> = (0..len).map(|i| code / 3usize.pow(i) % 3).collect();
                let u = FpWord::from_letters(colors.iter().map(|&c| gen(c as u32 + 1, "x")));
                count += 1;
                if free_eval(&states, &u).unwrap() != free_mixed_moment(&colors, &cumulants) {
                    bad += 1;
                }
            }
        }
    }
    report.record(
        "11",
        "free product = noncrossing-partition oracle, total degree <= 6",
        bad == 0,
        format!("{count} mixed moments of 3 free variables over 3 state sets, {bad} mismatches"),
    );
}

fn pruning(report: &mut Report) {
    let ctx_pairs = state_sets(1, 2, &["a"], 6, 8000).remove(0);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut count, mut bad) = (0, 0);
    for m in 1..=3 {
        let ctx = MContext::new(m, ctx_pairs.clone()).unwrap();
        for n in 1..=6 {
            for u in block_patterns(&mut rng, 2, n) {
                count += 1;
                let pruned = ctx.mfree_poly(&u, Expansion::Pyramidal).unwrap();
                let full = ctx.mfree_poly(&u, Expansion::Blocks).unwrap();
                if pruned != full {
                    bad += 1;
                }
            }
        }
    }
    report.record(
        "12",
        "pyramidal pruning = full expansion, m <= 3, n <= 6",
        bad == 0,
        format!("{count} words compared as moment polynomials, {bad} mismatches"),
    );
}

#[test]
fn acceptance() {
    let mut report = Report(Vec::new());
    example_one(&mut report);
    example_two(&mut report);
    theorem_two_algebras(&mut report);
    theorem_three_algebras(&mut report);
    boolean_base(&mut report);
    marginals(&mut report);
    centred_factorization(&mut report);
    doubling_compatibility(&mut report);
    hopf_axioms(&mut report);
    convolution(&mut report);
    noncrossing_cross_check(&mut report);
    pruning(&mut report);

    let unexpected: Vec<String> = report
        .0
        .iter()
        .filter(|o| o.passed == KNOWN_RED.contains(&o.id))
        .map(|o| format!("{} ({})", o.id, o.detail))
        .collect();
    assert!(unexpected.is_empty(), "unexpected outcomes: {unexpected:?}");
}
