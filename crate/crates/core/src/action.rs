//! The gl_2n-module structures on `U(gl_n)`.
//!
//! An element of gl_2n is a `2n x 2n` scalar matrix viewed in block form
//! `(A B; C D)`. For `Q = I` the action on `a` in `U(gl_n)` is the five-term
//! formula
//!
//! ```text
//! A a - a D + tr(psi(a).B^T) - tr(phi(a).F^2.C) - tr(phi(a).C) tr(F)
//! ```
//!
//! and for a general nonsingular `Q` the module is the twist of this one by
//! the automorphism `(A B; C D) -> (A, B.S^-1; S.C, S.D.S^-1)` with
//! `S = Q^-T`. Both routes are implemented: the direct twisted formula
//! ([`act`]) and the twist-then-identity composition ([`act_via_twist`]),
//! together with the parabolic action valid for singular `Q` and the
//! subset-sum evaluation on monomial factor lists ([`act_alternative`]).

use crate::matrix::{f_power, gelfand, phi, psi, NumericMatrix, UEAMatrix};
use crate::pbw::{Monomial, UEAElement};
use crate::scalar::Scalar;
use crate::Error;

/// An element of gl_2n: a `2n x 2n` scalar matrix with block views.
#[derive(Clone, PartialEq, Debug)]
pub struct Gl2nElement<S> {
    n: usize,
    mat: NumericMatrix<S>,
}

impl<S: Scalar> Gl2nElement<S> {
    pub fn new(n: usize, mat: NumericMatrix<S>) -> Self {
        assert_eq!(mat.size(), 2 * n, "gl_2n element must be 2n x 2n");
        Gl2nElement { n, mat }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, NumericMatrix::zero(2 * n))
    }

    /// The basis unit `e[i,j]` of gl_2n; `i, j` 1-based in `[1, 2n]`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        Self::new(n, NumericMatrix::unit(2 * n, i, j))
    }

    pub fn from_blocks(
        a: &NumericMatrix<S>,
        b: &NumericMatrix<S>,
        c: &NumericMatrix<S>,
        d: &NumericMatrix<S>,
    ) -> Self {
        let n = a.size();
        assert!(b.size() == n && c.size() == n && d.size() == n);
        let mut mat = NumericMatrix::zero(2 * n);
        for i in 0..n {
            for j in 0..n {
                mat.set(i, j, a.get(i, j).clone());
                mat.set(i, n + j, b.get(i, j).clone());
                mat.set(n + i, j, c.get(i, j).clone());
                mat.set(n + i, n + j, d.get(i, j).clone());
            }
        }
        Gl2nElement { n, mat }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &NumericMatrix<S> {
        &self.mat
    }

    fn block(&self, ro: usize, co: usize) -> NumericMatrix<S> {
        let n = self.n;
        let mut out = NumericMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.mat.get(ro + i, co + j).clone());
            }
        }
        out
    }

    pub fn block_a(&self) -> NumericMatrix<S> {
        self.block(0, 0)
    }

    pub fn block_b(&self) -> NumericMatrix<S> {
        self.block(0, self.n)
    }

    pub fn block_c(&self) -> NumericMatrix<S> {
        self.block(self.n, 0)
    }

    pub fn block_d(&self) -> NumericMatrix<S> {
        self.block(self.n, self.n)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Gl2nElement {
            n: self.n,
            mat: self.mat.add(&other.mat),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Gl2nElement {
            n: self.n,
            mat: self.mat.scale(s),
        }
    }

    /// Lie bracket in gl_2n.
    pub fn commutator(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Gl2nElement {
            n: self.n,
            mat: self.mat.commutator(&other.mat),
        }
    }
}

/// The pair `(n, Q)` fixing the module `M_Q`, with `Q^-T` cached when it
/// exists. Singular `Q` is allowed; only the parabolic action is then defined.
#[derive(Clone, Debug)]
pub struct ModuleSpec<S> {
    n: usize,
    q: NumericMatrix<S>,
    q_inv_t: Option<NumericMatrix<S>>,
}

impl<S: Scalar> ModuleSpec<S> {
    pub fn new(q: NumericMatrix<S>) -> Self {
        let n = q.size();
        let q_inv_t = q.inverse_transpose();
        ModuleSpec { n, q, q_inv_t }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(NumericMatrix::identity(n))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &NumericMatrix<S> {
        &self.q
    }

    pub fn is_nonsingular(&self) -> bool {
        self.q_inv_t.is_some()
    }

    pub fn q_inv_t(&self) -> Result<&NumericMatrix<S>, Error> {
        self.q_inv_t.as_ref().ok_or(Error::SingularQ)
    }
}

/// Diagnostic corruptions of the action formula, used by the verification
/// suites to demonstrate that the bracket-axiom check is sensitive.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mutation {
    None,
    /// Use the literal `- a D` instead of `- a (Q^-T.D.Q^T)`.
    LiteralDTerm,
    /// Flip the sign of the `tr(phi(a).C) tr(F)` term.
    SignFlipCTrace,
    /// Drop the `F^2` factor from the first C-term.
    DropFSquared,
    /// Replace `Q^-T` by `Q` throughout.
    QForQInvT,
}

impl Mutation {
    pub fn parse(name: &str) -> Option<Mutation> {
        match name {
            "literal-d-term" => Some(Mutation::LiteralDTerm),
            "sign-flip-c-trace" => Some(Mutation::SignFlipCTrace),
            "drop-f-squared" => Some(Mutation::DropFSquared),
            "q-for-q-inv-t" => Some(Mutation::QForQInvT),
            _ => None,
        }
    }

    pub const ALL: [Mutation; 4] = [
        Mutation::LiteralDTerm,
        Mutation::SignFlipCTrace,
        Mutation::DropFSquared,
        Mutation::QForQInvT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::None => "none",
            Mutation::LiteralDTerm => "literal-d-term",
            Mutation::SignFlipCTrace => "sign-flip-c-trace",
            Mutation::DropFSquared => "drop-f-squared",
            Mutation::QForQInvT => "q-for-q-inv-t",
        }
    }
}

fn check_rank<S: Scalar>(x: &Gl2nElement<S>, a: &UEAElement<S>) -> Result<(), Error> {
    if x.rank() != a.rank() {
        return Err(Error::RankMismatch {
            left: x.rank(),
            right: a.rank(),
        });
    }
    Ok(())
}

/// The `Q = I` action (the five-term formula).
pub fn act_identity<S: Scalar>(
    x: &Gl2nElement<S>,
    a: &UEAElement<S>,
) -> Result<UEAElement<S>, Error> {
    check_rank(x, a)?;
    act_formula(x, a, &NumericMatrix::identity(x.rank()), None, Mutation::None)
}

/// The general action for nonsingular `Q`, via the explicit twisted formula.
pub fn act<S: Scalar>(
    spec: &ModuleSpec<S>,
    x: &Gl2nElement<S>,
    a: &UEAElement<S>,
) -> Result<UEAElement<S>, Error> {
    act_mutated(spec, x, a, Mutation::None)
}

/// [`act`] with a formula corruption applied (diagnostics only).
pub fn act_mutated<S: Scalar>(
    spec: &ModuleSpec<S>,
    x: &Gl2nElement<S>,
    a: &UEAElement<S>,
    mutation: Mutation,
) -> Result<UEAElement<S>, Error> {
    check_rank(x, a)?;
    if x.rank() != spec.rank() {
        return Err(Error::RankMismatch {
            left: x.rank(),
            right: spec.rank(),
        });
    }
    let q_inv_t = spec.q_inv_t()?;
    act_formula(x, a, spec.q(), Some(q_inv_t), mutation)
}

/// Shared evaluation of
/// `A a - a (Q^-T.D.Q^T) + tr(psi(a).Q.B^T) - tr(phi(a).F^2.Q^-T.C) - tr(phi(a).Q^-T.C) tr(F)`.
fn act_formula<S: Scalar>(
    x: &Gl2nElement<S>,
    a: &UEAElement<S>,
    q: &NumericMatrix<S>,
    q_inv_t: Option<&NumericMatrix<S>>,
    mutation: Mutation,
) -> Result<UEAElement<S>, Error> {
    let n = x.rank();
    let q_inv_t = match (q_inv_t, mutation) {
        (_, Mutation::QForQInvT) => q.clone(),
        (Some(m), _) => m.clone(),
        (None, _) => NumericMatrix::identity(n), // Q = I case
    };
    let (ba, bb, bc, bd) = (x.block_a(), x.block_b(), x.block_c(), x.block_d());
    let mut out = ba.to_uea().mul_ref(a);

    // D-term
    let d_eff = if mutation == Mutation::LiteralDTerm {
        bd
    } else {
        q_inv_t.mul(&bd).mul(&q.transpose())
    };
    out = out.sub_ref(&a.mul_ref(&d_eff.to_uea()));

    // B-term: tr(psi(a).Q.B^T)
    if !bb.is_zero() {
        let t = psi(a)
            .mul(&UEAMatrix::embed(&q.mul(&bb.transpose())))
            .trace();
        out = out.add_ref(&t);
    }

    // C-terms
    if !bc.is_zero() {
        let qc = q_inv_t.mul(&bc);
        let pa = phi(a);
        let t1 = if mutation == Mutation::DropFSquared {
            pa.mul(&UEAMatrix::embed(&qc)).trace()
        } else {
            pa.mul(&f_power(n, 2)).mul(&UEAMatrix::embed(&qc)).trace()
        };
        out = out.sub_ref(&t1);
        let t2 = pa.mul(&UEAMatrix::embed(&qc)).trace().mul_ref(&gelfand(n, 1));
        if mutation == Mutation::SignFlipCTrace {
            out = out.add_ref(&t2);
        } else {
            out = out.sub_ref(&t2);
        }
    }
    Ok(out)
}

/// The automorphism `phi_S`: `(A B; C D) -> (A, B.S^-1; S.C, S.D.S^-1)`.
pub fn twist<S: Scalar>(s: &NumericMatrix<S>, x: &Gl2nElement<S>) -> Result<Gl2nElement<S>, Error> {
    let s_inv = s.inverse().ok_or(Error::SingularMatrix)?;
    let a = x.block_a();
    let b = x.block_b().mul(&s_inv);
    let c = s.mul(&x.block_c());
    let d = s.mul(&x.block_d()).mul(&s_inv);
    Ok(Gl2nElement::from_blocks(&a, &b, &c, &d))
}

/// The general action computed as `act_identity(twist(Q^-T, X), a)`; agrees
/// with [`act`] and serves as an independent route for cross-checks.
pub fn act_via_twist<S: Scalar>(
    spec: &ModuleSpec<S>,
    x: &Gl2nElement<S>,
    a: &UEAElement<S>,
) -> Result<UEAElement<S>, Error> {
    let twisted = twist(spec.q_inv_t()?, x)?;
    act_identity(&twisted, a)
}

/// The parabolic action `A a + tr(psi(a).Q.B^T)`, defined for all `Q` but
/// only on elements with zero C and D blocks.
pub fn act_parabolic<S: Scalar>(
    spec: &ModuleSpec<S>,
    x: &Gl2nElement<S>,
    a: &UEAElement<S>,
) -> Result<UEAElement<S>, Error> {
    check_rank(x, a)?;
    if !x.block_c().is_zero() || !x.block_d().is_zero() {
        return Err(Error::NonParabolic);
    }
    let mut out = x.block_a().to_uea().mul_ref(a);
    let bb = x.block_b();
    if !bb.is_zero() {
        let t = psi(a)
            .mul(&UEAMatrix::embed(&spec.q().mul(&bb.transpose())))
            .trace();
        out = out.add_ref(&t);
    }
    Ok(out)
}

/// Convert a PBW monomial into its factor list of numeric matrix units, one
/// unit per generator occurrence, in canonical reading order.
pub fn monomial_factors<S: Scalar>(m: &Monomial, n: usize) -> Vec<NumericMatrix<S>> {
    m.word()
        .into_iter()
        .map(|g| NumericMatrix::unit(n, g.row as usize, g.col as usize))
        .collect()
}

/// The subset-sum formula evaluated on a product of degree-1 factors
/// `a = A_1 ... A_k`. Numeric products are taken inside the traces, products
/// in `U(gl_n)` outside.
pub fn act_alternative<S: Scalar>(
    spec: &ModuleSpec<S>,
    x: &Gl2nElement<S>,
    factors: &[NumericMatrix<S>],
) -> Result<UEAElement<S>, Error> {
    let n = spec.rank();
    if x.rank() != n {
        return Err(Error::RankMismatch {
            left: x.rank(),
            right: n,
        });
    }
    let q_inv_t = spec.q_inv_t()?.clone();
    let q = spec.q();
    let k = factors.len();
    assert!(factors.iter().all(|f| f.size() == n), "factor size mismatch");

    let uea_product = |idx: &[usize]| -> UEAElement<S> {
        let mut acc = UEAElement::one(n);
        for &i in idx {
            acc = acc.mul_ref(&factors[i].to_uea());
        }
        acc
    };

    let a = uea_product(&(0..k).collect::<Vec<_>>());
    let (ba, bb, bc, bd) = (x.block_a(), x.block_b(), x.block_c(), x.block_d());

    let mut out = ba.to_uea().mul_ref(&a);
    out = out.sub_ref(&a.mul_ref(&q_inv_t.mul(&bd).mul(&q.transpose()).to_uea()));

    let f2 = f_power::<S>(n, 2);
    let tr_f = gelfand::<S>(n, 1);
    for mask in 0u32..(1 << k) {
        let inside: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).collect();
        let outside: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) == 0).collect();

        // numeric products over the subset, in index order
        let mut prod = NumericMatrix::identity(n);
        let mut prod_t = NumericMatrix::identity(n);
        for &i in &inside {
            prod = prod.mul(&factors[i]);
            prod_t = prod_t.mul(&factors[i].transpose());
        }

        let mut bracket = UEAElement::zero(n);
        if !bb.is_zero() {
            let sign = if inside.len() % 2 == 0 {
                S::one()
            } else {
                -S::one()
            };
            let t = bb.transpose().mul(&prod_t).mul(q).trace();
            bracket = bracket.add_ref(&UEAElement::constant(n, sign * t));
        }
        if !bc.is_zero() {
            let qcp = q_inv_t.mul(&bc).mul(&prod);
            bracket = bracket.sub_ref(&UEAMatrix::embed(&qcp).mul(&f2).trace());
            bracket = bracket.sub_ref(&tr_f.scale(&qcp.trace()));
        }
        if !bracket.is_zero() {
            out = out.add_ref(&uea_product(&outside).mul_ref(&bracket));
        }
    }
    Ok(out)
}

/// The matrix of scalars `(e_{i,n+j} . 1)_{ij}`; equals `Q` exactly. Uses the
/// parabolic action, so singular `Q` is allowed.
pub fn b_eigenvalues<S: Scalar>(spec: &ModuleSpec<S>) -> NumericMatrix<S> {
    let n = spec.rank();
    let one = UEAElement::one(n);
    let mut out = NumericMatrix::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            let v = act_parabolic(spec, &Gl2nElement::unit(n, i, n + j), &one)
                .expect("B-unit is parabolic");
            let c = v
                .constant_value()
                .expect("B-unit acts on the generator by a scalar");
            out.set(i - 1, j - 1, c);
        }
    }
    out
}
