//! Independent oracle for the straightening engine: a brute-force word
//! rewriter that repeatedly swaps the first adjacent out-of-order pair using
//! `xy = yx + [x,y]`, with no sharing, memoization, or ordering tricks.
//! The library's normal forms must agree with it on every enumerated word.

use std::collections::BTreeMap;

use uea::pbw::{mono_mul, Gen, Monomial, UEAElement};
use uea::Rat;

type OracleGen = (u16, u16); // (row, col)
type Word = Vec<OracleGen>;

/// Canonical order used by the oracle: by (col, row).
fn out_of_order(x: OracleGen, y: OracleGen) -> bool {
    (x.1, x.0) > (y.1, y.0)
}

/// `[e_ab, e_cd] = d_bc e_ad - d_da e_cb` from scratch.
fn oracle_bracket(x: OracleGen, y: OracleGen) -> Vec<(OracleGen, i128)> {
    let mut out = Vec::new();
    if x.1 == y.0 {
        out.push(((x.0, y.1), 1));
    }
    if y.1 == x.0 {
        out.push(((y.0, x.1), -1));
    }
    out
}

/// Normalize a word by exhaustive rewriting.
fn oracle_normalize(word: Word) -> BTreeMap<Word, i128> {
    let mut out: BTreeMap<Word, i128> = BTreeMap::new();
    let mut stack: Vec<(Word, i128)> = vec![(word, 1)];
    while let Some((w, c)) = stack.pop() {
        match (0..w.len().saturating_sub(1)).find(|&i| out_of_order(w[i], w[i + 1])) {
            None => {
                let e = out.entry(w).or_insert(0);
                *e += c;
            }
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                stack.push((swapped, c));
                for (g, s) in oracle_bracket(w[i], w[i + 1]) {
                    let mut shorter = w.clone();
                    shorter.splice(i..i + 2, [g]);
                    stack.push((shorter, c * s));
                }
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Sorted-word key for a library monomial, for comparison with the oracle.
fn monomial_key(m: &Monomial) -> Word {
    let mut w: Word = m.word().into_iter().map(|g| (g.row, g.col)).collect();
    w.sort_by_key(|&(r, c)| (c, r));
    w
}

fn library_normalize(word: &Word, n: usize) -> BTreeMap<Word, i128> {
    let mut acc = UEAElement::<Rat>::one(n);
    for &(r, c) in word {
        acc = acc.mul_ref(&UEAElement::generator(n, r as usize, c as usize));
    }
    acc.terms()
        .map(|(m, coeff)| {
            assert!(coeff.is_integer(), "straightening coefficients are integers");
            let k: i128 = coeff.to_integer().try_into().expect("small coefficient");
            (monomial_key(m), k)
        })
        .collect()
}

fn all_gens(n: u16) -> Vec<OracleGen> {
    let mut v = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            v.push((i, j));
        }
    }
    v
}

fn all_words(n: u16, len: usize) -> Vec<Word> {
    let gens = all_gens(n);
    let mut words: Vec<Word> = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .iter()
            .flat_map(|w| {
                gens.iter().map(move |&g| {
                    let mut w2 = w.clone();
                    w2.push(g);
                    w2
                })
            })
            .collect();
    }
    words
}

#[test]
fn oracle_sanity() {
    // e12 e21 -> e21 e12 + e11 - e22
    let got = oracle_normalize(vec![(1, 2), (2, 1)]);
    let mut expected = BTreeMap::new();
    expected.insert(vec![(2, 1), (1, 2)], 1);
    expected.insert(vec![(1, 1)], 1);
    expected.insert(vec![(2, 2)], -1);
    assert_eq!(got, expected);
    // already-normal words are fixed
    assert_eq!(
        oracle_normalize(vec![(1, 1), (2, 1)]),
        BTreeMap::from([(vec![(1, 1), (2, 1)], 1)])
    );
}

#[test]
fn agrees_on_all_words_n2_len3() {
    for len in 0..=3 {
        for word in all_words(2, len) {
            let oracle = oracle_normalize(word.clone());
            let lib = library_normalize(&word, 2);
            assert_eq!(lib, oracle, "word {word:?}");
        }
    }
}

#[test]
fn agrees_on_all_words_n3_len2() {
    for len in 0..=2 {
        for word in all_words(3, len) {
            let oracle = oracle_normalize(word.clone());
            let lib = library_normalize(&word, 3);
            assert_eq!(lib, oracle, "word {word:?}");
        }
    }
}

#[test]
fn mono_mul_agrees_with_oracle_on_monomial_pairs() {
    // all canonical monomials of degree <= 2 over n = 2, multiplied pairwise
    let monos = uea::pbw::monomials_up_to(2, 2);
    for m1 in &monos {
        for m2 in &monos {
            let mut word: Word = m1.word().iter().map(|g| (g.row, g.col)).collect();
            word.extend(m2.word().iter().map(|g: &Gen| (g.row, g.col)));
            let oracle = oracle_normalize(word.clone());
            let lib: BTreeMap<Word, i128> = mono_mul::<Rat>(m1, m2, 2)
                .terms()
                .map(|(m, coeff)| {
                    let k: i128 = coeff.to_integer().try_into().unwrap();
                    (monomial_key(m), k)
                })
                .collect();
            assert_eq!(lib, oracle, "{m1:?} * {m2:?}");
        }
    }
}
