//! Acceptance gate: one test per criterion, each printing a single pass line.
//! Everything is exact (zero tolerance); randomized criteria use a fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uea::action::{b_eigenvalues, Mutation};
use uea::expr::{parse_uea, print_normal};
use uea::pbw::{monomials_up_to, Gen, Monomial};
use uea::scalar::Scalar;
use uea::verify::{
    check_bracket_axiom, check_degree_contract, check_equivalence, check_gelfand_central,
    check_glemma, check_mod_leading, check_rel_operator, check_singular_submodule,
    reduce_to_constant, socle_layers,
};
use uea::{Element, Rat, RatMatrix, Spec};

fn q23() -> RatMatrix {
    RatMatrix::from_int_rows(&[&[1, 2], &[3, 5]])
}

fn pass(criterion: usize, name: &str, detail: String) {
    println!("criterion {criterion} ({name}): PASS — {detail}");
}

fn random_element(rng: &mut ChaCha8Rng, n: usize, max_deg: usize) -> Element {
    loop {
        let mut e = Element::zero(n);
        for _ in 0..rng.gen_range(1..=4) {
            let mut m = Monomial::one();
            for _ in 0..rng.gen_range(0..=max_deg) {
                m = m.times_gen(Gen::new(rng.gen_range(1..=n), rng.gen_range(1..=n)));
            }
            let c = Rat::from_ratio(rng.gen_range(-9i128..=9), rng.gen_range(1i128..=9));
            e.add_term(m, c);
        }
        if !e.is_zero() {
            return e;
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    RatMatrix::from_rows(
        (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Rat::from_ratio(rng.gen_range(-9i128..=9), rng.gen_range(1i128..=9)))
                    .collect()
            })
            .collect(),
    )
}

#[test]
fn criterion_01_bracket_axiom() {
    let mut total = 0;
    for (spec, deg) in [
        (Spec::identity(1), 3),
        (Spec::identity(2), 2),
        (Spec::new(q23()), 2),
    ] {
        let r = check_bracket_axiom(&spec, deg, Mutation::None, false).unwrap();
        assert!(r.passed(), "failures: {:?}", r.failures);
        total += r.attempted;
    }
    pass(1, "bracket axiom", format!("{total} exact checks over both Q values"));
}

#[test]
fn criterion_02_formula_equivalence() {
    let mut total = 0;
    for spec in [Spec::identity(1), Spec::identity(2), Spec::new(q23())] {
        let r = check_equivalence(&spec, 2).unwrap();
        assert!(r.passed(), "failures: {:?}", r.failures);
        total += r.attempted;
    }
    pass(
        2,
        "formula equivalence",
        format!("act = act_alternative = act_identity∘twist, {total} comparisons"),
    );
}

#[test]
fn criterion_03_trace_lemma_and_centrality() {
    let mut total = 0;
    for n in 1..=3 {
        let r = check_glemma::<Rat>(n, 3);
        assert!(r.passed(), "failures: {:?}", r.failures);
        total += r.attempted;
        let r = check_gelfand_central::<Rat>(n, 3);
        assert!(r.passed(), "failures: {:?}", r.failures);
        total += r.attempted;
    }
    pass(3, "trace lemma + Gelfand centrality", format!("{total} checks, n ≤ 3"));
}

#[test]
fn criterion_04_parabolic_lemmas() {
    let mut total = 0;
    for n in 1..=2 {
        let r = check_rel_operator::<Rat>(n, 3, 3);
        assert!(r.passed(), "failures: {:?}", r.failures);
        total += r.attempted;
        let r = check_mod_leading::<Rat>(n, 3);
        assert!(r.passed(), "failures: {:?}", r.failures);
        total += r.attempted;
    }
    pass(4, "operator identity + leading term", format!("{total} checks, n ≤ 2"));
}

#[test]
fn criterion_05_simplicity_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..50 {
        let n = 1 + (trial % 2);
        let f = random_element(&mut rng, n, 4);
        let (c, word) = reduce_to_constant(&f).unwrap_or_else(|e| {
            panic!("trial {trial}: reduction failed on {}: {e}", print_normal(&f))
        });
        assert_ne!(c, Rat::from_int(0), "trial {trial}: zero constant, word {word}");
    }
    pass(5, "simplicity witness", "50 random vectors reduced to nonzero constants".into());
}

#[test]
fn criterion_06_socle_layers() {
    for (spec, label) in [
        (Spec::identity(1), "n=1"),
        (Spec::identity(2), "n=2 Q=I"),
        (Spec::new(q23()), "n=2 Q=[[1,2],[3,5]]"),
    ] {
        let r = socle_layers(&spec, 4).unwrap();
        assert!(
            r.matches_layer,
            "{label}: layers {:?} vs binomial {:?}",
            r.layers, r.binomial
        );
    }
    pass(
        6,
        "socle layers",
        "layer dimensions equal C(n²+k−2, k−1) for k ≤ 4 (layer interpretation)".into(),
    );
}

#[test]
fn criterion_07_eigenvalue_recovery() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 10 {
        let n = rng.gen_range(1..=3);
        let q = random_matrix(&mut rng, n);
        if q.is_singular() {
            continue;
        }
        assert_eq!(b_eigenvalues(&Spec::new(q.clone())), q);
        done += 1;
    }
    pass(7, "eigenvalue recovery", "b_eigenvalues(Q) = Q for 10 random nonsingular Q".into());
}

#[test]
fn criterion_08_singular_q_submodule() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 5 {
        // random rank-one Q = u vᵀ is singular and generically nonzero
        let u: Vec<Rat> = (0..2).map(|_| Rat::from_int(rng.gen_range(-5i128..=5))).collect();
        let v: Vec<Rat> = (0..2).map(|_| Rat::from_int(rng.gen_range(-5i128..=5))).collect();
        let mut q = RatMatrix::zero(2);
        for i in 0..2 {
            for j in 0..2 {
                q.set(i, j, u[i].clone() * v[j].clone());
            }
        }
        if q.is_zero() {
            continue;
        }
        let r = check_singular_submodule(&q, 2).unwrap();
        assert!(r.passed(), "failures: {:?}", r.failures);
        done += 1;
    }
    pass(8, "singular Q submodule", "proper-submodule identity for 5 random singular Q".into());
}

#[test]
fn criterion_09_degree_contract() {
    let mut total = 0;
    for spec in [Spec::identity(1), Spec::identity(2), Spec::new(q23())] {
        let r = check_degree_contract(&spec, 3).unwrap();
        assert!(r.passed(), "failures: {:?}", r.failures);
        total += r.attempted;
    }
    pass(
        9,
        "degree contract",
        format!("A/B/C/D raise degree by ≤ 1/0/2/1 on {total} checks"),
    );
}

#[test]
fn criterion_10_mutation_sensitivity() {
    let spec = Spec::new(q23());
    for m in Mutation::ALL {
        let r = check_bracket_axiom(&spec, 2, m, true).unwrap();
        assert!(!r.passed(), "mutation {} went undetected at n = 2", m.name());
    }
    pass(
        10,
        "mutation sensitivity",
        "all four formula corruptions produce bracket counterexamples".into(),
    );
}

#[test]
fn criterion_11_parser_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..200 {
        let n = 1 + (trial % 3);
        let a = random_element(&mut rng, n, 4);
        let printed = print_normal(&a);
        let back: Element = parse_uea(&printed, n).unwrap();
        assert_eq!(a, back, "trial {trial}: {printed}");
    }
    pass(
        11,
        "parser round trip",
        "parse∘print identity on 200 random elements (CLI contract covered in uea-cli tests)"
            .into(),
    );
}

#[test]
fn filtration_dimension() {
    // dim M^(d) = C(n²+d, n²): the desk-scale Gelfand-Kirillov statement
    fn binom(a: usize, b: usize) -> usize {
        uea::verify::binomial(a, b)
    }
    for n in 1..=2usize {
        for d in 0..=4usize {
            assert_eq!(monomials_up_to(n, d).len(), binom(n * n + d, n * n));
        }
    }
}
