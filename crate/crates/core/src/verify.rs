//! Mechanical verification suites for the identities the module construction
//! rests on, with counterexample reporting.
//!
//! Every suite enumerates its inputs deterministically (row-major basis order,
//! degree-then-lex monomial order), performs exact equality checks, and
//! returns a [`VerificationReport`] listing any failures. The suites cover the
//! bracket axiom of the action, the trace lemma, Gelfand centrality, the two
//! parabolic lemmas, the equivalence of the three action routes, degree
//! bounds, the reduction-to-constant simplicity witness, socle layers, and
//! the proper submodule attached to a singular `Q`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{
    act_alternative, act_identity, act_mutated, act_parabolic, act_via_twist, monomial_factors,
    Gl2nElement, ModuleSpec, Mutation,
};
use crate::expr::print_normal;
use crate::matrix::{f_power, gelfand, psi, NumericMatrix, UEAMatrix};
use crate::pbw::{commutator, monomials_up_to, Gen, Monomial, UEAElement};
use crate::scalar::Scalar;
use crate::Error;

/// A single failed check: what was fed in, and both sides of the inequality.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: Value,
    pub attempted: usize,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    fn new(suite: &str, params: Value) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            params,
            attempted: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check<S: Scalar>(
        &mut self,
        input: impl FnOnce() -> String,
        expected: &UEAElement<S>,
        got: &UEAElement<S>,
    ) {
        self.attempted += 1;
        if expected != got {
            self.failures.push(Failure {
                input: input(),
                expected: print_normal(expected),
                got: print_normal(got),
            });
        }
    }
}

fn q_json<S: Scalar>(q: &NumericMatrix<S>) -> Value {
    let n = q.size();
    let rows: Vec<Vec<String>> = (0..n)
        .map(|i| (0..n).map(|j| q.get(i, j).to_string()).collect())
        .collect();
    json!(rows)
}

fn mono_desc<S: Scalar>(m: &Monomial, n: usize) -> String {
    print_normal(&UEAElement::<S>::monomial(n, m.clone()))
}

/// `C(a, b)` in exact integer arithmetic (small arguments only).
pub fn binomial(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..b {
        r = r * (a - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// Bracket axiom of the action: `X.(Y.a) - Y.(X.a) = [X,Y].a` over all basis
/// pairs of gl_2n and all PBW monomials of degree at most `deg_bound`.
///
/// `mutation` corrupts the formula for sensitivity experiments; `fail_fast`
/// stops at the first counterexample.
pub fn check_bracket_axiom<S: Scalar>(
    spec: &ModuleSpec<S>,
    deg_bound: usize,
    mutation: Mutation,
    fail_fast: bool,
) -> Result<VerificationReport, Error> {
    let n = spec.rank();
    spec.q_inv_t()?;
    let mut report = VerificationReport::new(
        "bracket",
        json!({
            "n": n,
            "q": q_json(spec.q()),
            "deg": deg_bound,
            "mutation": mutation.name(),
        }),
    );
    let monos = monomials_up_to(n, deg_bound);
    let units: Vec<(usize, usize)> = (1..=2 * n)
        .flat_map(|i| (1..=2 * n).map(move |j| (i, j)))
        .collect();
    'outer: for &(i, j) in &units {
        let x = Gl2nElement::unit(n, i, j);
        for &(k, l) in &units {
            let y = Gl2nElement::unit(n, k, l);
            let xy = x.commutator(&y);
            for m in &monos {
                let a = UEAElement::<S>::monomial(n, m.clone());
                let lhs = act_mutated(spec, &x, &act_mutated(spec, &y, &a, mutation)?, mutation)?
                    .sub_ref(&act_mutated(
                        spec,
                        &y,
                        &act_mutated(spec, &x, &a, mutation)?,
                        mutation,
                    )?);
                let rhs = act_mutated(spec, &xy, &a, mutation)?;
                report.check(
                    || format!("X=e[{i},{j}], Y=e[{k},{l}], a={}", mono_desc::<S>(m, n)),
                    &rhs,
                    &lhs,
                );
                if fail_fast && !report.passed() {
                    break 'outer;
                }
            }
        }
    }
    Ok(report)
}

/// Trace lemma: `[A, tr(B.F^m)] = tr([A,B].F^m)` for all basis pairs of gl_n
/// and `1 <= m <= m_max`.
pub fn check_glemma<S: Scalar>(n: usize, m_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new("glemma", json!({ "n": n, "mMax": m_max }));
    for m in 1..=m_max {
        let fm = f_power::<S>(n, m);
        for i in 1..=n {
            for j in 1..=n {
                let a_elt = UEAElement::<S>::generator(n, i, j);
                let a_mat = NumericMatrix::<S>::unit(n, i, j);
                for k in 1..=n {
                    for l in 1..=n {
                        let b_mat = NumericMatrix::<S>::unit(n, k, l);
                        let lhs = commutator(
                            &a_elt,
                            &UEAMatrix::embed(&b_mat).mul(&fm).trace(),
                        );
                        let rhs = UEAMatrix::embed(&a_mat.commutator(&b_mat)).mul(&fm).trace();
                        report.check(
                            || format!("A=e[{i},{j}], B=e[{k},{l}], m={m}"),
                            &rhs,
                            &lhs,
                        );
                    }
                }
            }
        }
    }
    report
}

/// Gelfand centrality: `[e_ij, tr(F^k)] = 0` for `k <= k_max`.
pub fn check_gelfand_central<S: Scalar>(n: usize, k_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new("gelfand", json!({ "n": n, "kMax": k_max }));
    for k in 1..=k_max {
        let g = gelfand::<S>(n, k);
        for i in 1..=n {
            for j in 1..=n {
                let c = commutator(&UEAElement::<S>::generator(n, i, j), &g);
                report.check(
                    || format!("[e[{i},{j}], tr(F^{k})]"),
                    &UEAElement::zero(n),
                    &c,
                );
            }
        }
    }
    report
}

/// Commutation of a B-unit past a power of a generator, as an operator
/// identity on the `Q = I` module:
///
/// ```text
/// [e_{j,k+n}, e_ij^m] = -m e_ij^{m-1} e_{i,k+n}            (i != j)
/// [e_{j,k+n}, e_jj^m] = ((e_jj - 1)^m - e_jj^m) e_{j,k+n}  (i =  j)
/// ```
pub fn check_rel_operator<S: Scalar>(n: usize, m_max: u32, deg_bound: usize) -> VerificationReport {
    let mut report = VerificationReport::new(
        "rel",
        json!({ "n": n, "mMax": m_max, "deg": deg_bound }),
    );
    let monos = monomials_up_to(n, deg_bound);
    for i in 1..=n {
        for j in 1..=n {
            let eij = UEAElement::<S>::generator(n, i, j);
            for k in 1..=n {
                let b_jk = Gl2nElement::unit(n, j, n + k);
                let b_ik = Gl2nElement::unit(n, i, n + k);
                for m in 1..=m_max {
                    let eij_m = eij.pow(m);
                    // operator multiplying the B-action in the right-hand side
                    let coeff = if i == j {
                        (&eij - &UEAElement::one(n)).pow(m).sub_ref(&eij_m)
                    } else {
                        eij.pow(m - 1).scale(&S::from_int(-(m as i128)))
                    };
                    for mono in &monos {
                        let a = UEAElement::<S>::monomial(n, mono.clone());
                        let lhs = act_identity(&b_jk, &eij_m.mul_ref(&a))
                            .unwrap()
                            .sub_ref(&eij_m.mul_ref(&act_identity(&b_jk, &a).unwrap()));
                        let rhs = coeff.mul_ref(&act_identity(&b_ik, &a).unwrap());
                        report.check(
                            || {
                                format!(
                                    "i={i}, j={j}, k={k}, m={m}, a={}",
                                    mono_desc::<S>(mono, n)
                                )
                            },
                            &rhs,
                            &lhs,
                        );
                    }
                }
            }
        }
    }
    report
}

fn deg_at_most<S: Scalar>(a: &UEAElement<S>, bound: i64) -> bool {
    a.degree().map_or(true, |d| (d as i64) <= bound)
}

/// Leading-term statement for the `Q = I` module: for a PBW monomial `f` of
/// degree `d`, `g := (e_{j,k+n} - d_jk).f` has degree at most `d - 1`, and
/// `g + l_kj (f with the e_kj exponent decremented)` has degree at most
/// `d - 2`.
pub fn check_mod_leading<S: Scalar>(n: usize, deg_bound: usize) -> VerificationReport {
    let mut report = VerificationReport::new("mod", json!({ "n": n, "deg": deg_bound }));
    for f in monomials_up_to(n, deg_bound) {
        let d = f.degree() as i64;
        let fe = UEAElement::<S>::monomial(n, f.clone());
        for j in 1..=n {
            for k in 1..=n {
                let mut g = act_identity(&Gl2nElement::unit(n, j, n + k), &fe).unwrap();
                if j == k {
                    g = g.sub_ref(&fe);
                }
                report.attempted += 1;
                if !deg_at_most(&g, d - 1) {
                    report.failures.push(Failure {
                        input: format!("f={}, (j,k)=({j},{k})", mono_desc::<S>(&f, n)),
                        expected: format!("degree <= {}", d - 1),
                        got: print_normal(&g),
                    });
                    continue;
                }
                let l = f.exponent(Gen::new(k, j));
                let mut h = g;
                if l > 0 {
                    let dec = UEAElement::<S>::monomial(n, f.without_one(Gen::new(k, j)));
                    h = h.add_ref(&dec.scale(&S::from_int(l as i128)));
                }
                report.attempted += 1;
                if !deg_at_most(&h, d - 2) {
                    report.failures.push(Failure {
                        input: format!("f={}, (j,k)=({j},{k})", mono_desc::<S>(&f, n)),
                        expected: format!("degree <= {}", d - 2),
                        got: print_normal(&h),
                    });
                }
            }
        }
    }
    report
}

/// Simplicity/cyclicity witness over the `Q = I` module: pick a maximal-degree
/// monomial `p = prod e_ij^{l_ij}` of `f`, apply the commuting operator
/// product `B_p = prod (e_{j,n+i} - d_ij)^{l_ij}`, and return the resulting
/// constant (nonzero for every tested input) together with the operator word.
pub fn reduce_to_constant<S: Scalar>(f: &UEAElement<S>) -> Result<(S, String), Error> {
    if f.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = f.rank();
    // term order is degree-then-lex, so the last key has maximal degree
    let p = f.terms().last().map(|(m, _)| m.clone()).unwrap();
    let mut v = f.clone();
    let mut word = String::new();
    for (g, l) in p.exps() {
        let (i, j) = (g.row as usize, g.col as usize);
        let op = Gl2nElement::unit(n, j, n + i);
        let delta = i == j;
        for _ in 0..l {
            let prev = v;
            v = act_identity(&op, &prev)?;
            if delta {
                v = v.sub_ref(&prev);
            }
        }
        if delta {
            word.push_str(&format!("(e[{j},{}]-1)", n + i));
        } else {
            word.push_str(&format!("e[{j},{}]", n + i));
        }
        if l > 1 {
            word.push_str(&format!("^{l}"));
        }
    }
    if word.is_empty() {
        word.push('1');
    }
    match v.constant_value() {
        Some(c) if !c.is_zero() => Ok((c, word)),
        _ => Err(Error::ReductionDegenerate(print_normal(&v))),
    }
}

/// Serialized outcome of the socle-layer computation.
#[derive(Clone, Debug, Serialize)]
pub struct SocleReport {
    pub n: usize,
    pub k_max: usize,
    /// `dim ker(m^k) - dim ker(m^(k-1))` for `k = 1..k_max`.
    pub layers: Vec<usize>,
    /// `dim ker(m^k)` for `k = 1..k_max`.
    pub cumulative: Vec<usize>,
    /// `C(n^2 + k - 2, k - 1)` for `k = 1..k_max`.
    pub binomial: Vec<usize>,
    pub matches_layer: bool,
    pub matches_cumulative: bool,
}

/// Socle layer dimensions of `M_Q`: exact kernels of powers of the ideal
/// spanned by the operators `e_{i,n+j} - q_ij`. Each such operator strictly
/// lowers filtration degree, so `ker(m^k)` lives inside the span of monomials
/// of degree `< k` and truncating at degree `k_max - 1` is exact.
pub fn socle_layers<S: Scalar>(spec: &ModuleSpec<S>, k_max: usize) -> Result<SocleReport, Error> {
    let n = spec.rank();
    spec.q_inv_t()?;
    assert!(k_max >= 1, "k_max >= 1 required");
    let basis = monomials_up_to(n, k_max - 1);
    let dim = basis.len();
    let index: std::collections::HashMap<&Monomial, usize> =
        basis.iter().enumerate().map(|(c, m)| (m, c)).collect();

    // matrix of each operator T_ij: column c holds T(basis[c]) in the basis
    let mut ops: Vec<Vec<Vec<S>>> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let unit = Gl2nElement::unit(n, i, n + j);
            let q_ij = spec.q().get(i - 1, j - 1).clone();
            let mut mat = vec![vec![S::zero(); dim]; dim];
            for (c, b) in basis.iter().enumerate() {
                let a = UEAElement::<S>::monomial(n, b.clone());
                let image = act_parabolic(spec, &unit, &a)?.sub_ref(&a.scale(&q_ij));
                for (m, coeff) in image.terms() {
                    mat[index[m]][c] = coeff.clone();
                }
            }
            ops.push(mat);
        }
    }

    let reduce = |rows: Vec<Vec<S>>| -> Vec<Vec<S>> { crate::matrix::row_reduce(rows, dim) };
    let row_times = |row: &[S], op: &[Vec<S>]| -> Vec<S> {
        let mut out = vec![S::zero(); dim];
        for (r, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for c in 0..dim {
                if !op[r][c].is_zero() {
                    out[c] = out[c].clone() + x.clone() * op[r][c].clone();
                }
            }
        }
        out
    };

    // rows_k spans the constraints cutting out ker(m^k); rows_0 = full space
    let mut rows: Vec<Vec<S>> = (0..dim)
        .map(|i| {
            let mut v = vec![S::zero(); dim];
            v[i] = S::one();
            v
        })
        .collect();
    let mut cumulative = Vec::new();
    for _ in 1..=k_max {
        let mut next = Vec::new();
        for op in &ops {
            for row in &rows {
                next.push(row_times(row, op));
            }
        }
        rows = reduce(next);
        cumulative.push(dim - rows.len());
    }

    let mut layers = Vec::new();
    let mut prev = 0;
    for &c in &cumulative {
        layers.push(c - prev);
        prev = c;
    }
    let binom: Vec<usize> = (1..=k_max).map(|k| binomial(n * n + k - 2, k - 1)).collect();
    Ok(SocleReport {
        n,
        k_max,
        matches_layer: layers == binom,
        matches_cumulative: cumulative == binom,
        layers,
        cumulative,
        binomial: binom,
    })
}

/// Proper submodule attached to a singular `Q`: with `A0` a nonzero matrix
/// satisfying `Q^T A0 = 0` and `alpha = sum (A0)_ij e_ij`, every B-unit
/// satisfies `e_{i,n+j}.(a alpha) = tr(Q.B^T.psi(a)) alpha`.
pub fn check_singular_submodule<S: Scalar>(
    q: &NumericMatrix<S>,
    deg_bound: usize,
) -> Result<VerificationReport, Error> {
    let n = q.size();
    if !q.is_singular() {
        return Err(Error::NonsingularQ);
    }
    let spec = ModuleSpec::new(q.clone());
    // nonzero A0 with Q^T A0 = 0: a kernel vector of Q^T in the first column
    let a0 = if q.is_zero() {
        NumericMatrix::<S>::unit(n, 1, 1)
    } else {
        let kernel = q.transpose().nullspace();
        let v = kernel.first().expect("singular matrix has a kernel vector");
        let mut m = NumericMatrix::zero(n);
        for (i, x) in v.iter().enumerate() {
            m.set(i, 0, x.clone());
        }
        m
    };
    let alpha = a0.to_uea();
    let mut report = VerificationReport::new(
        "singular",
        json!({ "n": n, "q": q_json(q), "deg": deg_bound }),
    );
    for mono in monomials_up_to(n, deg_bound) {
        let a = UEAElement::<S>::monomial(n, mono.clone());
        let psi_a = psi(&a);
        for i in 1..=n {
            for j in 1..=n {
                let b = NumericMatrix::<S>::unit(n, i, j);
                let lhs = act_parabolic(
                    &spec,
                    &Gl2nElement::unit(n, i, n + j),
                    &a.mul_ref(&alpha),
                )?;
                let scalar = UEAMatrix::embed(&q.mul(&b.transpose())).mul(&psi_a).trace();
                let rhs = scalar.mul_ref(&alpha);
                report.check(
                    || format!("B=e[{i},{j}], a={}", mono_desc::<S>(&mono, n)),
                    &rhs,
                    &lhs,
                );
            }
        }
    }
    Ok(report)
}

/// Equivalence of the three action routes: the direct twisted formula, the
/// subset-sum evaluation on factor lists, and twist-then-identity.
pub fn check_equivalence<S: Scalar>(
    spec: &ModuleSpec<S>,
    deg_bound: usize,
) -> Result<VerificationReport, Error> {
    let n = spec.rank();
    spec.q_inv_t()?;
    let mut report = VerificationReport::new(
        "equivalence",
        json!({ "n": n, "q": q_json(spec.q()), "deg": deg_bound }),
    );
    for mono in monomials_up_to(n, deg_bound) {
        let a = UEAElement::<S>::monomial(n, mono.clone());
        let factors = monomial_factors::<S>(&mono, n);
        for i in 1..=2 * n {
            for j in 1..=2 * n {
                let x = Gl2nElement::unit(n, i, j);
                let direct = act_mutated(spec, &x, &a, Mutation::None)?;
                let alt = act_alternative(spec, &x, &factors)?;
                let twisted = act_via_twist(spec, &x, &a)?;
                report.check(
                    || format!("alternative: X=e[{i},{j}], a={}", mono_desc::<S>(&mono, n)),
                    &direct,
                    &alt,
                );
                report.check(
                    || format!("via-twist: X=e[{i},{j}], a={}", mono_desc::<S>(&mono, n)),
                    &direct,
                    &twisted,
                );
            }
        }
    }
    Ok(report)
}

/// Degree contract of the action: block-units raise filtration degree by at
/// most 1, 0, 2, 1 for the A, B, C, D blocks respectively.
pub fn check_degree_contract<S: Scalar>(
    spec: &ModuleSpec<S>,
    deg_bound: usize,
) -> Result<VerificationReport, Error> {
    let n = spec.rank();
    spec.q_inv_t()?;
    let mut report = VerificationReport::new(
        "degree",
        json!({ "n": n, "q": q_json(spec.q()), "deg": deg_bound }),
    );
    for mono in monomials_up_to(n, deg_bound) {
        let a = UEAElement::<S>::monomial(n, mono.clone());
        let d = mono.degree() as i64;
        for i in 1..=2 * n {
            for j in 1..=2 * n {
                let raise: i64 = match (i <= n, j <= n) {
                    (true, true) => 1,  // A
                    (true, false) => 0, // B
                    (false, true) => 2, // C
                    (false, false) => 1, // D
                };
                let image = act_mutated(spec, &Gl2nElement::unit(n, i, j), &a, Mutation::None)?;
                report.attempted += 1;
                if !deg_at_most(&image, d + raise) {
                    report.failures.push(Failure {
                        input: format!("X=e[{i},{j}], a={}", mono_desc::<S>(&mono, n)),
                        expected: format!("degree <= {}", d + raise),
                        got: print_normal(&image),
                    });
                }
            }
        }
    }
    Ok(report)
}
