//! Matrices over the scalars and over `U(gl_n)`.
//!
//! `UEAMatrix` realizes the identification of `U(A) (x) A` with
//! `Mat_n(U(A))`, including the extended trace `tr(a (x) B) = a tr(B)`.
//! This module also houses the matrix `F = (e_{j,i})_{i,j}`, its powers,
//! the Gelfand invariants `tr(F^k)`, and the algebra homomorphisms
//! `psi: e_ij -> e_ij I - E_ji` and `phi: e_ij -> e_ij I + E_ij`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::pbw::{mono_mul_int, Monomial, UEAElement};
use crate::scalar::Scalar;

/// A square matrix with scalar entries, row-major storage, 0-based indexing.
#[derive(Clone, PartialEq, Debug)]
pub struct NumericMatrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> NumericMatrix<S> {
    pub fn zero(n: usize) -> Self {
        NumericMatrix {
            n,
            data: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// The matrix unit with a single 1 in (1-based) position `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        assert!((1..=n).contains(&i) && (1..=n).contains(&j));
        let mut m = Self::zero(n);
        m.set(i - 1, j - 1, S::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        NumericMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i128]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&k| S::from_int(k)).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        NumericMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NumericMatrix {
            n: self.n,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        NumericMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = S::zero();
                for k in 0..n {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> S {
        let mut acc = S::zero();
        for i in 0..self.n {
            acc = acc + self.get(i, i).clone();
        }
        acc
    }

    /// Commutator `self . other - other . self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn determinant(&self) -> S {
        let n = self.n;
        let mut a: Vec<Vec<S>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut det = S::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero());
            let Some(p) = pivot else {
                return S::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pv = a[col][col].clone();
            det = det * pv.clone();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone() / pv.clone();
                for c in col..n {
                    a[r][c] = a[r][c].clone() - f.clone() * a[col][c].clone();
                }
            }
        }
        det
    }

    pub fn is_singular(&self) -> bool {
        self.determinant().is_zero()
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut row: Vec<S> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        S::one()
                    } else {
                        S::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(p, col);
            let pv = a[col][col].clone();
            for c in 0..2 * n {
                a[col][c] = a[col][c].clone() / pv.clone();
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    a[r][c] = a[r][c].clone() - f.clone() * a[col][c].clone();
                }
            }
        }
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a[i][n + j].clone());
            }
        }
        Some(out)
    }

    /// `(M^-1)^T`, the `-T` abbreviation.
    pub fn inverse_transpose(&self) -> Option<Self> {
        self.inverse().map(|m| m.transpose())
    }

    /// A basis of the right nullspace, as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let rows: Vec<Vec<S>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        nullspace_of_rows(rows, self.n)
    }
}

/// Row-reduce in place; returns the pivot column of each eliminated row.
fn rref<S: Scalar>(rows: &mut Vec<Vec<S>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let pv = rows[r][col].clone();
        for c in col..width {
            rows[r][c] = rows[r][c].clone() / pv.clone();
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for c in col..width {
                rows[i][c] = rows[i][c].clone() - f.clone() * rows[r][c].clone();
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank_of_rows<S: Scalar>(mut rows: Vec<Vec<S>>, width: usize) -> usize {
    rref(&mut rows, width).len()
}

/// Row-reduce and drop the zero rows; the result is a basis of the row space.
pub fn row_reduce<S: Scalar>(mut rows: Vec<Vec<S>>, width: usize) -> Vec<Vec<S>> {
    let rank = rref(&mut rows, width).len();
    rows.truncate(rank);
    rows
}

pub fn nullspace_of_rows<S: Scalar>(mut rows: Vec<Vec<S>>, width: usize) -> Vec<Vec<S>> {
    let pivots = rref(&mut rows, width);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![S::zero(); width];
            v[fc] = S::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][fc].clone();
            }
            v
        })
        .collect()
}

/// An `n x n` matrix with entries in `U(gl_n)`, all sharing the same rank `n`.
#[derive(Clone, PartialEq, Debug)]
pub struct UEAMatrix<S> {
    n: usize,
    entries: Vec<UEAElement<S>>,
}

impl<S: Scalar> UEAMatrix<S> {
    pub fn zero(n: usize) -> Self {
        UEAMatrix {
            n,
            entries: vec![UEAElement::zero(n); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, UEAElement::one(n));
        }
        m
    }

    /// Numeric matrices embed as constant entries; this map is an algebra map.
    pub fn embed(m: &NumericMatrix<S>) -> Self {
        let n = m.size();
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, UEAElement::constant(n, m.get(i, j).clone()));
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &UEAElement<S> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: UEAElement<S>) {
        assert_eq!(v.rank(), self.n, "entry rank must equal matrix size");
        self.entries[i * self.n + j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        UEAMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        UEAMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a.scale(s)).collect(),
        }
    }

    /// Matrix product with entrywise noncommutative multiplication; the order
    /// of the factors is preserved in every entry.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.n, other.n,
            "rank mismatch: {} vs {}",
            self.n, other.n
        );
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = UEAElement::zero(n);
                for k in 0..n {
                    acc = acc.add_ref(&self.get(i, k).mul_ref(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// The extended trace: sum of diagonal entries.
    pub fn trace(&self) -> UEAElement<S> {
        let mut acc = UEAElement::zero(self.n);
        for i in 0..self.n {
            acc = acc.add_ref(self.get(i, i));
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }
}

/// The matrix `F = (e_{j,i})_{i,j}`: entry `(i, j)` is the generator `e[j,i]`.
pub fn f_matrix<S: Scalar>(n: usize) -> UEAMatrix<S> {
    let mut out = UEAMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, UEAElement::generator(n, j + 1, i + 1));
        }
    }
    out
}

/// `F^m` for `m >= 1`, in the convention fixed by
/// `tr(E_ij.F^m) = sum e_{i,r_1} e_{r_1,r_2} ... e_{r_{m-1},j}`:
/// the power is taken of the untransposed generator matrix `F^T = (e_ij)`
/// and the result transposed back. The entries do not commute, so this
/// differs from iterated matrix multiplication of `F` itself for `n >= 2`
/// (and only this version satisfies the bracket axiom of the action).
pub fn f_power<S: Scalar>(n: usize, m: u32) -> UEAMatrix<S> {
    assert!(m >= 1, "m >= 1 required");
    let g = f_matrix::<S>(n).transpose(); // entry (i, j) is e[i+1,j+1]
    let mut out = g.clone();
    for _ in 1..m {
        out = out.mul(&g);
    }
    out.transpose()
}

/// The Gelfand invariant `tr(F^k)`, central in `U(gl_n)`.
pub fn gelfand<S: Scalar>(n: usize, k: u32) -> UEAElement<S> {
    assert!(k >= 1, "k >= 1 required");
    f_power::<S>(n, k).trace()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum HomKind {
    Psi,
    Phi,
}

type IntMatrix = Vec<Vec<(Monomial, i128)>>;

fn hom_memo() -> &'static Mutex<HashMap<(Monomial, usize, HomKind), Arc<IntMatrix>>> {
    static MEMO: OnceLock<Mutex<HashMap<(Monomial, usize, HomKind), Arc<IntMatrix>>>> =
        OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Image of a single monomial under psi or phi, with integer coefficients.
/// Entry `(i, j)` of the result is stored at index `i * n + j`.
fn hom_monomial(m: &Monomial, n: usize, kind: HomKind) -> Arc<IntMatrix> {
    let key = (m.clone(), n, kind);
    if let Some(hit) = hom_memo().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let result: IntMatrix = match m.exps().next().map(|(g, _)| g) {
        None => {
            // identity matrix
            let mut id = vec![Vec::new(); n * n];
            for i in 0..n {
                id[i * n + i].push((Monomial::one(), 1));
            }
            id
        }
        Some(g) => {
            // peel the first factor: psi(g m') = psi'(g) . psi(m')
            let rest = m.without_one(g);
            let rest_img = hom_monomial(&rest, n, kind);
            // generator image: e_g * I -/+ matrix unit
            let (ur, uc, sign): (usize, usize, i128) = match kind {
                HomKind::Psi => (g.col as usize - 1, g.row as usize - 1, -1),
                HomKind::Phi => (g.row as usize - 1, g.col as usize - 1, 1),
            };
            let gm = Monomial::gen(g);
            let mut out: Vec<std::collections::BTreeMap<Monomial, i128>> =
                vec![Default::default(); n * n];
            for i in 0..n {
                for j in 0..n {
                    let acc = &mut out[i * n + j];
                    // (e_g I) row i picks rest_img[i][j], left-multiplied by e_g
                    for (t, c) in &rest_img[i * n + j] {
                        for (p, k) in mono_mul_int(&gm, t) {
                            *acc.entry(p).or_insert(0) += c * k;
                        }
                    }
                    // the unit matrix row: sign * rest_img[uc][j] when i == ur
                    if i == ur {
                        for (t, c) in &rest_img[uc * n + j] {
                            *acc.entry(t.clone()).or_insert(0) += sign * c;
                        }
                    }
                }
            }
            out.into_iter()
                .map(|m| m.into_iter().filter(|&(_, c)| c != 0).collect())
                .collect()
        }
    };
    let arc = Arc::new(result);
    hom_memo().lock().unwrap().insert(key, arc.clone());
    arc
}

fn hom<S: Scalar>(a: &UEAElement<S>, kind: HomKind) -> UEAMatrix<S> {
    let n = a.rank();
    let mut out = UEAMatrix::zero(n);
    for (m, c) in a.terms() {
        let img = hom_monomial(m, n, kind);
        for i in 0..n {
            for j in 0..n {
                let mut e = out.get(i, j).clone();
                for (t, k) in &img[i * n + j] {
                    e.add_term(t.clone(), c.clone() * S::from_int(*k));
                }
                out.set(i, j, e);
            }
        }
    }
    out
}

/// The algebra homomorphism generated by `e_ij -> e_ij I - E_ji`.
pub fn psi<S: Scalar>(a: &UEAElement<S>) -> UEAMatrix<S> {
    hom(a, HomKind::Psi)
}

/// The algebra homomorphism generated by `e_ij -> e_ij I + E_ij`.
pub fn phi<S: Scalar>(a: &UEAElement<S>) -> UEAMatrix<S> {
    hom(a, HomKind::Phi)
}

impl<S: Scalar> NumericMatrix<S> {
    /// Lift to the degree-1 element `sum m_ij e[i,j]` of `U(gl_n)`.
    pub fn to_uea(&self) -> UEAElement<S> {
        let n = self.n;
        let mut out = UEAElement::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.add_term(
                    Monomial::gen(crate::pbw::Gen::new(i + 1, j + 1)),
                    self.get(i, j).clone(),
                );
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::commutator;
    use crate::{Element, ElementMatrix, Rat, RatMatrix};

    fn e(n: usize, i: usize, j: usize) -> Element {
        Element::generator(n, i, j)
    }

    #[test]
    fn embed_is_multiplicative_on_units() {
        let a = RatMatrix::unit(2, 1, 1);
        let b = RatMatrix::unit(2, 1, 2);
        let left = ElementMatrix::embed(&a).mul(&ElementMatrix::embed(&b));
        assert_eq!(left, ElementMatrix::embed(&a.mul(&b)));
        let m = f_matrix::<Rat>(2);
        assert_eq!(ElementMatrix::identity(2).mul(&m), m);
    }

    #[test]
    fn f_entries_and_powers() {
        // entry (i,j) of F is e[j,i]
        let f = f_matrix::<Rat>(2);
        assert_eq!(*f.get(0, 0), e(2, 1, 1));
        assert_eq!(*f.get(0, 1), e(2, 2, 1));
        assert_eq!(*f.get(1, 0), e(2, 1, 2));
        assert_eq!(*f.get(1, 1), e(2, 2, 2));
        let f3 = f_power::<Rat>(1, 3);
        assert_eq!(*f3.get(0, 0), e(1, 1, 1).pow(3));
        let ff = f_power::<Rat>(1, 2);
        assert_eq!(*ff.get(0, 0), e(1, 1, 1).pow(2));
    }

    #[test]
    fn trace_of_unit_against_f_recovers_generator() {
        // tr(E_ij . F) = e_ij
        for n in 1..=3usize {
            let f = f_matrix::<Rat>(n);
            for i in 1..=n {
                for j in 1..=n {
                    let t = ElementMatrix::embed(&RatMatrix::unit(n, i, j)).mul(&f).trace();
                    assert_eq!(t, e(n, i, j));
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        assert_eq!(
            ElementMatrix::embed(&RatMatrix::identity(2)).trace(),
            Element::constant(2, Rat::from_int(2))
        );
        assert_eq!(f_matrix::<Rat>(2).trace(), &e(2, 1, 1) + &e(2, 2, 2));
        assert!(ElementMatrix::embed(&RatMatrix::unit(2, 1, 2)).trace().is_zero());
    }

    #[test]
    fn gelfand_small_cases() {
        assert_eq!(gelfand::<Rat>(2, 1), &e(2, 1, 1) + &e(2, 2, 2));
        assert_eq!(gelfand::<Rat>(1, 2), e(1, 1, 1).pow(2));
        // tr(F^2) = e11^2 + e21 e12 + e12 e21 + e22^2 straightened
        let expected = &(&e(2, 1, 1).pow(2) + &(&e(2, 2, 1) * &e(2, 1, 2)))
            + &(&(&e(2, 1, 2) * &e(2, 2, 1)) + &e(2, 2, 2).pow(2));
        assert_eq!(gelfand::<Rat>(2, 2), expected);
        // centrality
        for i in 1..=2 {
            for j in 1..=2 {
                assert!(commutator(&e(2, i, j), &gelfand::<Rat>(2, 2)).is_zero());
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&Element::one(2)), ElementMatrix::identity(2));
        // n=1: psi(e11^m) = (e11 - 1)^m
        for m in 0..4u32 {
            let a = e(1, 1, 1).pow(m);
            let img = psi(&a);
            let expected = (&e(1, 1, 1) - &Element::one(1)).pow(m);
            assert_eq!(*img.get(0, 0), expected);
        }
        // psi(e12) for n=2 is [[e12, 0], [-1, e12]]
        let img = psi(&e(2, 1, 2));
        assert_eq!(*img.get(0, 0), e(2, 1, 2));
        assert!(img.get(0, 1).is_zero());
        assert_eq!(*img.get(1, 0), Element::constant(2, Rat::from_int(-1)));
        assert_eq!(*img.get(1, 1), e(2, 1, 2));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&Element::one(2)), ElementMatrix::identity(2));
        assert_eq!(
            *phi(&e(1, 1, 1)).get(0, 0),
            &e(1, 1, 1) + &Element::one(1)
        );
        // homomorphism on a product
        let a = &e(2, 1, 1) * &e(2, 1, 2);
        assert_eq!(phi(&a), phi(&e(2, 1, 1)).mul(&phi(&e(2, 1, 2))));
    }

    #[test]
    fn psi_is_homomorphism_on_samples() {
        let samples = [
            e(2, 1, 2),
            &e(2, 2, 1) * &e(2, 2, 2),
            &(&e(2, 1, 1) * &e(2, 1, 2)) * &e(2, 2, 1),
        ];
        for a in &samples {
            for b in &samples {
                assert_eq!(psi(&a.mul_ref(b)), psi(a).mul(&psi(b)));
                assert_eq!(phi(&a.mul_ref(b)), phi(a).mul(&phi(b)));
            }
        }
    }

    #[test]
    fn determinant_inverse_nullspace() {
        let q = RatMatrix::from_int_rows(&[&[1, 2], &[3, 5]]);
        assert_eq!(q.determinant(), Rat::from_int(-1));
        let inv = q.inverse().unwrap();
        assert_eq!(q.mul(&inv), RatMatrix::identity(2));
        let singular = RatMatrix::from_int_rows(&[&[1, 0], &[0, 0]]);
        assert!(singular.is_singular());
        assert!(singular.inverse().is_none());
        let ns = singular.transpose().nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], Rat::from_int(0));
        assert_eq!(ns[0][1], Rat::from_int(1));
    }
}
