//! Exact arithmetic in `U(gl_n)`: sparse PBW-normal-form elements with a
//! straightening (normal-ordering) multiplication engine.
//!
//! The gl_n bracket is `[e_ab, e_cd] = d_bc e_ad - d_da e_cb`. Products of
//! generators are rewritten into the canonical PBW word order by bubble
//! insertion: one generator at a time is moved into position, and every
//! bracket term strictly drops the total degree, so the rewriting terminates.
//!
//! The canonical generator order sorts `e[i,j]` by `(j, i)`; for `n = 2` the
//! PBW words read `e[1,1]^a e[2,1]^b e[1,2]^c e[2,2]^d`. Straightening itself
//! has integer structure constants, so the inner engine works over `i128` and
//! is shared (and memoized) across all scalar instantiations.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::scalar::Scalar;

/// Index of a generator `e[row,col]` of gl_n; 1-based, both in `[1, n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gen {
    pub row: u16,
    pub col: u16,
}

impl Gen {
    pub fn new(row: usize, col: usize) -> Self {
        assert!(row >= 1 && col >= 1, "generator indices are 1-based");
        Gen {
            row: row as u16,
            col: col as u16,
        }
    }

    pub fn in_rank(self, n: usize) -> bool {
        (1..=n).contains(&(self.row as usize)) && (1..=n).contains(&(self.col as usize))
    }
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.col, self.row).cmp(&(other.col, other.row))
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Gen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e[{},{}]", self.row, self.col)
    }
}

/// `[e_ab, e_cd] = d_bc e_ad - d_da e_cb`, collected with signs.
pub fn bracket_gens(x: Gen, y: Gen) -> Vec<(Gen, i128)> {
    let mut acc: BTreeMap<Gen, i128> = BTreeMap::new();
    if x.col == y.row {
        *acc.entry(Gen {
            row: x.row,
            col: y.col,
        })
        .or_insert(0) += 1;
    }
    if y.col == x.row {
        *acc.entry(Gen {
            row: y.row,
            col: x.col,
        })
        .or_insert(0) -= 1;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// A PBW monomial: a finite exponent map over generators. The empty map is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: BTreeMap<Gen, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn gen(g: Gen) -> Self {
        let mut exps = BTreeMap::new();
        exps.insert(g, 1);
        Monomial { exps }
    }

    pub fn from_exps(exps: impl IntoIterator<Item = (Gen, u32)>) -> Self {
        let mut m = Monomial::one();
        for (g, e) in exps {
            if e > 0 {
                *m.exps.entry(g).or_insert(0) += e;
            }
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.exps.values().map(|&e| e as usize).sum()
    }

    pub fn exponent(&self, g: Gen) -> u32 {
        self.exps.get(&g).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> impl Iterator<Item = (Gen, u32)> + '_ {
        self.exps.iter().map(|(&g, &e)| (g, e))
    }

    /// The monomial as a word of generators in canonical reading order.
    pub fn word(&self) -> Vec<Gen> {
        let mut w = Vec::with_capacity(self.degree());
        for (&g, &e) in &self.exps {
            for _ in 0..e {
                w.push(g);
            }
        }
        w
    }

    pub fn max_gen(&self) -> Option<Gen> {
        self.exps.keys().next_back().copied()
    }

    /// Bump the exponent of `g` by one.
    pub fn times_gen(&self, g: Gen) -> Self {
        let mut m = self.clone();
        *m.exps.entry(g).or_insert(0) += 1;
        m
    }

    /// Remove one copy of `g`; `g` must divide the monomial.
    pub fn without_one(&self, g: Gen) -> Self {
        let mut m = self.clone();
        match m.exps.get_mut(&g) {
            Some(e) if *e > 1 => *e -= 1,
            Some(_) => {
                m.exps.remove(&g);
            }
            None => panic!("{g} does not divide {self:?}"),
        }
        m
    }

    /// Exponentwise product (the commutative merge, no straightening).
    pub fn merged(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for (&g, &e) in &other.exps {
            *m.exps.entry(g).or_insert(0) += e;
        }
        m
    }

    pub fn max_index(&self) -> usize {
        self.exps
            .keys()
            .map(|g| g.row.max(g.col) as usize)
            .max()
            .unwrap_or(0)
    }
}

impl Ord for Monomial {
    /// Degree first, then lexicographically on the word in canonical order.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.word().cmp(&other.word()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

type IntTerms = BTreeMap<Monomial, i128>;

fn add_term(acc: &mut IntTerms, m: Monomial, c: i128) {
    if c == 0 {
        return;
    }
    *acc.entry(m).or_insert(0) += c;
}

fn sweep_zeros(acc: &mut IntTerms) {
    acc.retain(|_, c| *c != 0);
}

fn memo_limit() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("UEA_MEMO_LIMIT")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(1_000_000)
    })
}

fn memo() -> &'static Mutex<HashMap<(Monomial, Gen), Arc<Vec<(Monomial, i128)>>>> {
    static MEMO: OnceLock<Mutex<HashMap<(Monomial, Gen), Arc<Vec<(Monomial, i128)>>>>> =
        OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Normal form of (normal monomial) * (generator), integer coefficients.
fn mono_gen(m: &Monomial, g: Gen) -> Arc<Vec<(Monomial, i128)>> {
    if let Some(hit) = memo().lock().unwrap().get(&(m.clone(), g)) {
        return hit.clone();
    }
    let result: IntTerms = match m.max_gen() {
        Some(h) if h > g => {
            // m = m' h with h > g, so m g = (m' g) h + m' [h, g].
            let m1 = m.without_one(h);
            let mut acc = IntTerms::new();
            for (t, c) in mono_gen(&m1, g).iter() {
                for (t2, c2) in mono_gen(t, h).iter() {
                    add_term(&mut acc, t2.clone(), c * c2);
                }
            }
            for (b, s) in bracket_gens(h, g) {
                for (t, c) in mono_gen(&m1, b).iter() {
                    add_term(&mut acc, t.clone(), s * c);
                }
            }
            sweep_zeros(&mut acc);
            acc
        }
        _ => {
            let mut acc = IntTerms::new();
            acc.insert(m.times_gen(g), 1);
            acc
        }
    };
    let arc = Arc::new(result.into_iter().collect::<Vec<_>>());
    let mut guard = memo().lock().unwrap();
    if guard.len() < memo_limit() {
        guard.insert((m.clone(), g), arc.clone());
    }
    arc
}

/// Normal form of the concatenation `m1 m2`, integer coefficients.
pub(crate) fn mono_mul_int(m1: &Monomial, m2: &Monomial) -> IntTerms {
    let mut acc = IntTerms::new();
    acc.insert(m1.clone(), 1);
    for g in m2.word() {
        let mut next = IntTerms::new();
        for (t, c) in &acc {
            for (t2, c2) in mono_gen(t, g).iter() {
                add_term(&mut next, t2.clone(), c * c2);
            }
        }
        sweep_zeros(&mut next);
        acc = next;
    }
    acc
}

/// A sparse element of `U(gl_n)`: a finite map from PBW monomials to scalars.
#[derive(Clone, PartialEq, Debug)]
pub struct UEAElement<S> {
    rank: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> UEAElement<S> {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "rank n >= 1 required");
        UEAElement {
            rank: n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, S::one())
    }

    pub fn constant(n: usize, c: S) -> Self {
        let mut e = Self::zero(n);
        e.add_term(Monomial::one(), c);
        e
    }

    /// The generator `e[i,j]`; indices 1-based in `[1, n]`.
    pub fn generator(n: usize, i: usize, j: usize) -> Self {
        let g = Gen::new(i, j);
        assert!(g.in_rank(n), "e[{i},{j}] out of range for n = {n}");
        let mut e = Self::zero(n);
        e.add_term(Monomial::gen(g), S::one());
        e
    }

    pub fn monomial(n: usize, m: Monomial) -> Self {
        assert!(m.max_index() <= n, "monomial out of range for n = {n}");
        let mut e = Self::zero(n);
        e.add_term(m, S::one());
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Max total degree over stored monomials; `None` is the bottom value of 0.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// `Some(c)` iff the element is the constant `c` (including 0).
    pub fn constant_value(&self) -> Option<S> {
        match self.degree() {
            None => Some(S::zero()),
            Some(0) => Some(self.coeff(&Monomial::one())),
            Some(_) => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn assert_rank(&self, other: &Self) {
        assert_eq!(
            self.rank, other.rank,
            "rank mismatch: {} vs {}",
            self.rank, other.rank
        );
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.assert_rank(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.rank);
        if s.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    /// Straightening product: the bilinear extension of PBW normal ordering.
    pub fn mul_ref(&self, other: &Self) -> Self {
        self.assert_rank(other);
        let mut out = Self::zero(self.rank);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1.clone() * c2.clone();
                for (m, k) in mono_mul_int(m1, m2) {
                    out.add_term(m, c.clone() * S::from_int(k));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.rank);
        for _ in 0..k {
            out = out.mul_ref(self);
        }
        out
    }
}

/// Normal form of the concatenated word `m1 m2` as an element over rank `n`.
pub fn mono_mul<S: Scalar>(m1: &Monomial, m2: &Monomial, n: usize) -> UEAElement<S> {
    assert!(
        m1.max_index() <= n && m2.max_index() <= n,
        "rank mismatch: monomial indices exceed n = {n}"
    );
    let mut out = UEAElement::zero(n);
    for (m, k) in mono_mul_int(m1, m2) {
        out.add_term(m, S::from_int(k));
    }
    out
}

/// `ab - ba`.
pub fn commutator<S: Scalar>(a: &UEAElement<S>, b: &UEAElement<S>) -> UEAElement<S> {
    a.mul_ref(b).sub_ref(&b.mul_ref(a))
}

/// All PBW monomials over rank `n` of total degree at most `d`, in canonical
/// (degree, then lex) order.
pub fn monomials_up_to(n: usize, d: usize) -> Vec<Monomial> {
    let mut gens: Vec<Gen> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            gens.push(Gen::new(i, j));
        }
    }
    gens.sort();
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![Monomial::one()];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &frontier {
            // extend only with generators >= the max one to avoid duplicates
            let lo = m.max_gen();
            for &g in gens.iter().filter(|&&g| lo.map_or(true, |h| g >= h)) {
                next.push(m.times_gen(g));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out.dedup();
    out
}

impl<'a, S: Scalar> Add for &'a UEAElement<S> {
    type Output = UEAElement<S>;
    fn add(self, rhs: Self) -> UEAElement<S> {
        self.add_ref(rhs)
    }
}

impl<'a, S: Scalar> Sub for &'a UEAElement<S> {
    type Output = UEAElement<S>;
    fn sub(self, rhs: Self) -> UEAElement<S> {
        self.sub_ref(rhs)
    }
}

impl<'a, S: Scalar> Mul for &'a UEAElement<S> {
    type Output = UEAElement<S>;
    fn mul(self, rhs: Self) -> UEAElement<S> {
        self.mul_ref(rhs)
    }
}

impl<'a, S: Scalar> Neg for &'a UEAElement<S> {
    type Output = UEAElement<S>;
    fn neg(self) -> UEAElement<S> {
        self.neg_ref()
    }
}
