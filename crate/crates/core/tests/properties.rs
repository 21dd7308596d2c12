//! Property tests: algebraic laws of the straightening product, the defining
//! relations, the homomorphism property of psi/phi, and round-trip guarantees
//! of the expression language.

use proptest::prelude::*;

use uea::expr::{element_from_json, element_to_json, parse_uea, print_normal};
use uea::matrix::{phi, psi};
use uea::pbw::{commutator, mono_mul, Gen, Monomial};
use uea::scalar::Scalar;
use uea::{Element, Rat};

fn gen_strategy(n: usize) -> impl Strategy<Value = Gen> {
    (1..=n, 1..=n).prop_map(|(i, j)| Gen::new(i, j))
}

fn monomial_strategy(n: usize, max_deg: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec((gen_strategy(n), 1..=max_deg), 0..=2).prop_map(move |exps| {
        let mut total = 0;
        Monomial::from_exps(exps.into_iter().map_while(|(g, e)| {
            if total + e > max_deg {
                None
            } else {
                total += e;
                Some((g, e))
            }
        }))
    })
}

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-1_000_000i64..=1_000_000, 1i64..=1_000_000)
        .prop_map(|(p, q)| Rat::from_ratio(p as i128, q as i128))
}

fn element_strategy(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec((monomial_strategy(n, max_deg), rat_strategy()), 0..=max_terms).prop_map(
        move |terms| {
            let mut e = Element::zero(n);
            for (m, c) in terms {
                e.add_term(m, c);
            }
            e
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip(
        (n, a) in (1usize..=3).prop_flat_map(|n| {
            element_strategy(n, 4, 5).prop_map(move |a| (n, a))
        })
    ) {
        let printed = print_normal(&a);
        let back: Element = parse_uea(&printed, n).unwrap();
        prop_assert_eq!(&a, &back, "printed: {}", printed);
    }

    #[test]
    fn json_round_trip(a in element_strategy(2, 4, 5)) {
        let v = element_to_json(&a);
        let back: Element = element_from_json(&v, 2).unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn print_is_deterministic_under_reordering(
        a in element_strategy(2, 3, 4),
        b in element_strategy(2, 3, 4),
    ) {
        let ab = a.add_ref(&b);
        let ba = b.add_ref(&a);
        prop_assert_eq!(&ab, &ba);
        prop_assert_eq!(print_normal(&ab), print_normal(&ba));
    }

    #[test]
    fn product_is_associative(
        a in element_strategy(2, 2, 2),
        b in element_strategy(2, 2, 2),
        c in element_strategy(2, 2, 2),
    ) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
    }

    #[test]
    fn product_distributes(
        a in element_strategy(2, 2, 2),
        b in element_strategy(2, 2, 2),
        c in element_strategy(2, 2, 2),
    ) {
        prop_assert_eq!(
            a.mul_ref(&b.add_ref(&c)),
            a.mul_ref(&b).add_ref(&a.mul_ref(&c))
        );
    }

    #[test]
    fn commutator_is_antisymmetric(
        a in element_strategy(2, 2, 2),
        b in element_strategy(2, 2, 2),
    ) {
        prop_assert_eq!(commutator(&a, &b), commutator(&b, &a).neg_ref());
    }

    #[test]
    fn generators_satisfy_defining_relations(x in gen_strategy(3), y in gen_strategy(3)) {
        // [e_ab, e_cd] = d_bc e_ad - d_da e_cb in the straightened product
        let n = 3;
        let ex = Element::generator(n, x.row as usize, x.col as usize);
        let ey = Element::generator(n, y.row as usize, y.col as usize);
        let mut rhs = Element::zero(n);
        if x.col == y.row {
            rhs.add_term(Monomial::gen(Gen::new(x.row as usize, y.col as usize)), Rat::from_int(1));
        }
        if y.col == x.row {
            rhs.add_term(Monomial::gen(Gen::new(y.row as usize, x.col as usize)), Rat::from_int(-1));
        }
        prop_assert_eq!(commutator(&ex, &ey), rhs);
    }

    #[test]
    fn jacobi_identity_on_generators(
        x in gen_strategy(3),
        y in gen_strategy(3),
        z in gen_strategy(3),
    ) {
        let n = 3;
        let e = |g: Gen| Element::generator(n, g.row as usize, g.col as usize);
        let (ex, ey, ez) = (e(x), e(y), e(z));
        let total = commutator(&ex, &commutator(&ey, &ez))
            .add_ref(&commutator(&ey, &commutator(&ez, &ex)))
            .add_ref(&commutator(&ez, &commutator(&ex, &ey)));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn renormalizing_normal_forms_is_identity(a in element_strategy(2, 3, 4)) {
        let mut again = Element::zero(2);
        for (m, c) in a.terms() {
            again = again.add_ref(&mono_mul::<Rat>(m, &Monomial::one(), 2).scale(c));
        }
        prop_assert_eq!(a, again);
    }

    #[test]
    fn psi_phi_are_homomorphisms(
        m1 in monomial_strategy(2, 2),
        m2 in monomial_strategy(2, 2),
    ) {
        let a = Element::monomial(2, m1);
        let b = Element::monomial(2, m2);
        prop_assert_eq!(psi(&a.mul_ref(&b)), psi(&a).mul(&psi(&b)));
        prop_assert_eq!(phi(&a.mul_ref(&b)), phi(&a).mul(&phi(&b)));
    }

    #[test]
    fn degree_of_product_is_sum_of_degrees(
        m1 in monomial_strategy(2, 3),
        m2 in monomial_strategy(2, 3),
    ) {
        let p = mono_mul::<Rat>(&m1, &m2, 2);
        prop_assert_eq!(p.degree(), Some(m1.degree() + m2.degree()));
        // and the top term is the commutative merge with coefficient 1
        prop_assert_eq!(p.coeff(&m1.merged(&m2)), Rat::from_int(1));
    }
}
