use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::scalar::int;
use crate::states::random::random_pair;
use crate::states::{boolean_product_eval, cfree_word, State};

fn g(alg: u32, s: &str) -> Generator {
    Generator::new(alg, s)
}

/// `"a t b"` over one algebra; `t` is the separator.
fn tw(alg: u32, text: &str) -> TildeWord {
    text.split_whitespace().fold(TildeWord::unit(), |acc, tok| {
        let x = if tok == "t" {
            TildeWord::t(1)
        } else if let Some(name) = tok.strip_suffix('*') {
            TildeWord::from_word(&Word::letter(g(alg, name).star()))
        } else {
            TildeWord::from_word(&Word::letter(g(alg, tok)))
        };
        acc.mul(&x)
    })
}

/// A simple tensor from `(algebra, position, text)` triples.
fn term(slots: &[(u32, usize, &str)]) -> TensorTerm {
    slots.iter().fold(TensorTerm::unit(), |acc, (l, p, text)| {
        acc.mul(&TensorTerm::single(SlotAddr::new(AlgebraId(*l), *p), &tw(*l, text)))
    })
}

fn el(terms: &[(i64, &[(u32, usize, &str)])]) -> TensorElement {
    terms.iter().map(|(c, slots)| (term(slots), int(*c))).collect()
}

fn pairs(seed: u64, algebras: &[u32], degree: usize) -> Vec<StatePair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    algebras.iter().map(|l| random_pair(&mut rng, AlgebraId(*l), &["a", "c"], degree, false)).collect()
}

fn ctx(m: usize, seed: u64) -> MContext {
    MContext::new(m, pairs(seed, &[1, 2], 6)).unwrap()
}

#[test]
fn j_letter_at_level_one() {
    let c = ctx(1, 0);
    assert_eq!(c.j_letter(g(1, "a")).unwrap(), el(&[(1, &[(1, 1, "a"), (2, 1, "t")])]));
}

#[test]
fn j_letter_at_level_two() {
    let c = ctx(2, 0);
    let expected = el(&[
        (1, &[(1, 1, "a"), (2, 1, "t"), (2, 2, "t")]),
        (1, &[(1, 2, "a"), (2, 2, "t")]),
        (-1, &[(1, 2, "a"), (2, 1, "t"), (2, 2, "t")]),
    ]);
    assert_eq!(c.j_letter(g(1, "a")).unwrap(), expected);
    let expected_b = el(&[
        (1, &[(1, 1, "t"), (1, 2, "t"), (2, 1, "c")]),
        (1, &[(1, 2, "t"), (2, 2, "c")]),
        (-1, &[(1, 1, "t"), (1, 2, "t"), (2, 2, "c")]),
    ]);
    assert_eq!(c.j_letter(g(2, "c")).unwrap(), expected_b);
}

#[test]
fn j_letter_has_2m_minus_1_terms() {
    for m in 1..=4 {
        assert_eq!(ctx(m, 0).j_letter(g(2, "a")).unwrap().len(), 2 * m - 1);
    }
}

#[test]
fn j_block_at_level_one_is_w_tensor_t() {
    let c = ctx(1, 0);
    let w = Word::new(vec![g(1, "a"), g(1, "c"), g(1, "a")]);
    assert_eq!(c.j_block(&w).unwrap(), el(&[(1, &[(1, 1, "a c a"), (2, 1, "t")])]));
}

#[test]
fn block_form_matches_letter_products() {
    for m in 1..=3 {
        let c = ctx(m, 0);
        let w = Word::new(vec![g(1, "a"), g(1, "c").star(), g(1, "a")]);
        let u = FpWord::from_words([w.clone()]);
        assert_eq!(c.j_eval(&u, Expansion::Letters).unwrap(), c.j_block(&w).unwrap());
    }
}

#[test]
fn j_of_unit_is_unit() {
    let c = ctx(3, 0);
    assert_eq!(c.j_eval(&FpWord::unit(), Expansion::Blocks).unwrap(), TensorElement::basis(TensorTerm::unit()));
}

#[test]
fn three_letter_reduced_element_has_the_same_value() {
    let c = ctx(2, 1);
    let u = FpWord::from_letters([g(1, "a"), g(2, "c"), g(1, "c")]);
    let displayed = el(&[
        (1, &[(1, 1, "a t c"), (1, 2, "t"), (2, 1, "t c t"), (2, 2, "t")]),
        (1, &[(1, 1, "a c"), (1, 2, "t"), (2, 1, "t"), (2, 2, "t c t")]),
        (-1, &[(1, 1, "a t c"), (1, 2, "t"), (2, 1, "t"), (2, 2, "t c t")]),
    ]);
    let ours = c.mfree_poly(&u, Expansion::Blocks).unwrap();
    assert_eq!(ours, c.phi_m_poly(&displayed).unwrap());
}

#[test]
fn four_letter_reduced_element_has_the_same_value() {
    let c = ctx(2, 2);
    let u = FpWord::from_letters([g(1, "a"), g(2, "a"), g(1, "c"), g(2, "c")]);
    let displayed = el(&[
        (1, &[(1, 1, "a t c t"), (1, 2, "t"), (2, 1, "t a t c"), (2, 2, "t")]),
        (1, &[(1, 1, "a t"), (1, 2, "t c t"), (2, 1, "t a c"), (2, 2, "t")]),
        (-1, &[(1, 1, "a t"), (1, 2, "t c t"), (2, 1, "t a t c"), (2, 2, "t")]),
        (1, &[(1, 1, "a c t"), (1, 2, "t"), (2, 1, "t c"), (2, 2, "t a t")]),
        (-1, &[(1, 1, "a t c t"), (1, 2, "t"), (2, 1, "t c"), (2, 2, "t a t")]),
    ]);
    let ours = c.mfree_poly(&u, Expansion::Blocks).unwrap();
    assert_eq!(ours, c.phi_m_poly(&displayed).unwrap());
}

#[test]
fn phi_m_examples() {
    let c = ctx(2, 3);
    let w = Word::new(vec![g(1, "a"), g(1, "c")]);
    let v = Word::letter(g(1, "a").star());
    let phi = |w: &Word| c.pairs()[0].phi.moment(w).unwrap();
    let psi = |w: &Word| c.pairs()[0].psi.moment(w).unwrap();
    assert_eq!(c.phi_m_eval(&TensorElement::basis(TensorTerm::unit())).unwrap(), int(1));
    assert_eq!(c.phi_m_eval(&el(&[(1, &[(1, 1, "a c")])])).unwrap(), phi(&w));
    assert_eq!(c.phi_m_eval(&el(&[(1, &[(1, 1, "a c"), (1, 2, "a*")])])).unwrap(), phi(&w) * psi(&v));
}

#[test]
fn symbolic_and_numeric_evaluation_agree() {
    let c = ctx(3, 4);
    let u = FpWord::from_words([
        Word::new(vec![g(1, "a"), g(1, "c")]),
        Word::letter(g(2, "a")),
        Word::letter(g(1, "a").star()),
        Word::new(vec![g(2, "c"), g(2, "c")]),
    ]);
    let e = c.j_eval(&u, Expansion::Blocks).unwrap();
    let poly = c.phi_m_poly(&e).unwrap();
    assert_eq!(eval_poly(&poly, c.pairs()).unwrap(), c.phi_m_eval(&e).unwrap());
}

#[test]
fn condition_map_examples() {
    let c = ctx(3, 5);
    let unit = TensorElement::basis(TensorTerm::unit());
    assert_eq!(c.psi_condition(&unit).unwrap(), unit);
    let w = Word::new(vec![g(1, "a"), g(1, "a")]);
    let psi = c.pairs()[0].psi.moment(&w).unwrap();
    let d = c.d_element(&w).unwrap();
    assert_eq!(c.psi_condition(&d).unwrap(), TensorElement::term(TensorTerm::unit(), psi));
    assert!(matches!(ctx(1, 0).psi_condition(&unit), Err(Error::LevelTooLow { m: 1, min: 2 })));
}

#[test]
fn condition_map_factors_the_product_state() {
    for m in 2..=3 {
        let c = ctx(m, 6);
        let lower = c.with_level(m - 1).unwrap();
        let u = FpWord::from_words([
            Word::letter(g(2, "a")),
            Word::new(vec![g(1, "c"), g(1, "a")]),
            Word::letter(g(2, "c").star()),
            Word::letter(g(1, "a")),
        ]);
        let e = c.j_eval(&u, Expansion::Blocks).unwrap();
        let conditioned = c.psi_condition(&e).unwrap();
        assert_eq!(c.phi_m_eval(&e).unwrap(), lower.phi_m_eval(&conditioned).unwrap());
    }
}

#[test]
fn condition_of_j_is_lower_j_plus_g() {
    for m in 2..=4 {
        let c = ctx(m, 7);
        let lower = c.with_level(m - 1).unwrap();
        for w in [Word::letter(g(1, "a")), Word::new(vec![g(2, "c"), g(2, "a")])] {
            let lhs = c.psi_condition(&c.j_block(&w).unwrap()).unwrap();
            let rhs = &lower.j_block(&w).unwrap() + &lower.g_element(&w).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn g_and_h_complement() {
    let c = ctx(2, 8);
    let w = Word::letter(g(2, "a"));
    let psi = c.pairs()[1].psi.moment(&w).unwrap();
    let sum = &c.g_element(&w).unwrap() + &c.h_element(&w).unwrap();
    assert_eq!(sum, TensorElement::term(TensorTerm::unit(), psi));
}

#[test]
fn h_minus_d_is_killed_by_the_condition_map() {
    for m in 2..=4 {
        let c = ctx(m, 9);
        for w in [Word::letter(g(1, "a")), Word::new(vec![g(2, "c"), g(2, "a")])] {
            let diff = &c.h_element(&w).unwrap() - &c.d_element(&w).unwrap();
            assert!(c.psi_condition(&diff).unwrap().is_zero());
        }
    }
}

#[test]
fn d_element_shape() {
    let c = ctx(3, 0);
    let w = Word::letter(g(1, "a"));
    assert_eq!(c.d_element(&w).unwrap(), el(&[(1, &[(1, 3, "a"), (2, 3, "t")])]));
    let c1 = ctx(1, 0);
    let psi = c1.pairs()[0].psi.moment(&w).unwrap();
    assert_eq!(c1.d_element(&w).unwrap(), TensorElement::term(term(&[(2, 1, "t")]), psi));
}

#[test]
fn inert_algebras_change_nothing() {
    let two = MContext::new(2, pairs(10, &[1, 2], 6)).unwrap();
    let mut with_third = pairs(10, &[1, 2], 6);
    with_third.extend(pairs(11, &[3], 6));
    let three = MContext::new(2, with_third).unwrap();
    let u = FpWord::from_letters([g(1, "a"), g(2, "c"), g(1, "a"), g(2, "a")]);
    assert_eq!(two.mfree_eval(&u).unwrap(), three.mfree_eval(&u).unwrap());
    let single = FpWord::from_letters([g(2, "c"), g(2, "c")]);
    assert_eq!(two.mfree_eval(&single).unwrap(), three.mfree_eval(&single).unwrap());
}

#[test]
fn level_one_is_boolean() {
    let c = ctx(1, 12);
    let states: Vec<State> = c.pairs().iter().map(|p| p.phi.clone()).collect();
    let u =
        FpWord::from_words([Word::new(vec![g(1, "a"), g(1, "a")]), Word::letter(g(2, "c")), Word::letter(g(1, "c"))]);
    assert_eq!(c.mfree_eval(&u).unwrap(), boolean_product_eval(&states, &u).unwrap());
}

#[test]
fn agrees_with_cfree_up_to_2m_blocks() {
    let c = ctx(2, 13);
    let u = FpWord::from_letters([g(2, "a"), g(1, "c"), g(2, "c"), g(1, "a")]);
    assert_eq!(c.mfree_eval(&u).unwrap(), cfree_word(c.pairs(), &u).unwrap());
}

#[test]
fn pyramidal_pruning_preserves_the_value() {
    let c = ctx(3, 14);
    let u = FpWord::from_letters([g(1, "a"), g(2, "c"), g(1, "c"), g(2, "a"), g(1, "a")]);
    assert_eq!(c.mfree_eval_with(&u, Expansion::Pyramidal).unwrap(), c.mfree_eval_with(&u, Expansion::Blocks).unwrap());
}

#[test]
fn errors() {
    assert!(matches!(MContext::new(0, pairs(0, &[1], 2)), Err(Error::LevelTooLow { .. })));
    let c = ctx(2, 0);
    assert!(matches!(c.j_letter(g(5, "a")), Err(Error::UnknownAlgebra(AlgebraId(5)))));
    assert!(matches!(c.j_block(&Word::unit()), Err(Error::EmptyWord)));
}
