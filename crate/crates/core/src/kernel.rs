//! Exact-arithmetic linear algebra substrate.
//!
//! Everything downstream (Lie brackets, Cayley tables at the linearized
//! level, comultiplications) is a dense coefficient tensor over ℚ. All
//! arithmetic is arbitrary-precision rational, so every comparison in the
//! crate is exact structural equality: an axiom either holds or it does not.

use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Scalar type for the whole crate: arbitrary-precision rationals.
///
/// `num_rational::BigRational` keeps values in lowest terms with a positive
/// denominator, so `==` is exact mathematical equality.
pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Rational `p/q`. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("singular matrix: {0}")]
    SingularMatrix(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
}

/// A finite-dimensional vector space with a fixed, labelled basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedSpace {
    labels: Vec<String>,
}

impl BasedSpace {
    pub fn new(labels: Vec<String>) -> Result<Self, KernelError> {
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(KernelError::DuplicateLabel(a.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// Basis `{prefix}0, {prefix}1, ...` of the given dimension.
    pub fn numbered(prefix: &str, dim: usize) -> Self {
        Self {
            labels: (0..dim).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Direct sum; on label collision the parts are prefixed `m.`/`h.`.
    pub fn direct_sum(&self, other: &BasedSpace) -> BasedSpace {
        let collide = self.labels.iter().any(|l| other.labels.contains(l));
        let mut labels = Vec::with_capacity(self.dim() + other.dim());
        for l in &self.labels {
            labels.push(if collide { format!("m.{l}") } else { l.clone() });
        }
        for l in &other.labels {
            labels.push(if collide { format!("h.{l}") } else { l.clone() });
        }
        BasedSpace { labels }
    }

    /// Tensor product basis, labelled `a⊗b` in row-major order.
    pub fn tensor(&self, other: &BasedSpace) -> BasedSpace {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        BasedSpace { labels }
    }
}

pub fn zero_vector(dim: usize) -> Vec<Rational> {
    vec![Rational::zero(); dim]
}

pub fn unit_vector(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vector(dim);
    v[i] = Rational::one();
    v
}

pub fn vec_is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Rational, v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| c * x).collect()
}

pub fn vec_addassign(acc: &mut [Rational], v: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

/// Dense row-major matrix of rationals. A linear map `V → W` is stored with
/// one row per domain basis vector: `apply(v)[k] = Σ_i v[i]·at(i,k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, KernelError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(KernelError::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rat(n)).collect())
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    /// Row-vector application: `(v·M)[k] = Σ_i v[i]·M[i][k]`.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, KernelError> {
        if v.len() != self.rows {
            return Err(KernelError::DimensionMismatch(format!(
                "vector of length {} applied to {}×{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = zero_vector(self.cols);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for k in 0..self.cols {
                out[k] += vi * self.at(i, k);
            }
        }
        Ok(out)
    }

    /// `self · other` (composition of row-convention maps: first self, then other).
    pub fn mul(&self, other: &Matrix) -> Result<Matrix, KernelError> {
        if self.cols != other.rows {
            return Err(KernelError::DimensionMismatch(format!(
                "{}×{} · {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.cols {
                    *out.at_mut(i, k) += a * other.at(j, k);
                }
            }
        }
        Ok(out)
    }

    /// Exact inverse via Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix, KernelError> {
        if self.rows != self.cols {
            return Err(KernelError::ShapeMismatch(format!(
                "inverse of non-square {}×{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero()).ok_or_else(|| {
                KernelError::SingularMatrix(format!("no pivot in column {col}"))
            })?;
            if pivot != col {
                for c in 0..n {
                    let (p, q) = (pivot * n + c, col * n + c);
                    a.data.swap(p, q);
                    inv.data.swap(p, q);
                }
            }
            let scale = a.at(col, col).clone();
            for c in 0..n {
                *a.at_mut(col, c) /= &scale;
                *inv.at_mut(col, c) /= &scale;
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for c in 0..n {
                    let av = a.at(col, c).clone();
                    let iv = inv.at(col, c).clone();
                    *a.at_mut(r, c) -= &f * av;
                    *inv.at_mut(r, c) -= &f * iv;
                }
            }
        }
        Ok(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dense rank-3 coefficient array `[i][j][k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor3 {
    d0: usize,
    d1: usize,
    d2: usize,
    data: Vec<Rational>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Self {
            d0,
            d1,
            d2,
            data: vec![Rational::zero(); d0 * d1 * d2],
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.d0, self.d1, self.d2)
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[(i * self.d1 + j) * self.d2 + k]
    }

    pub fn at_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Rational {
        &mut self.data[(i * self.d1 + j) * self.d2 + k]
    }

    /// The slice `[i][j][·]`.
    pub fn fiber(&self, i: usize, j: usize) -> &[Rational] {
        let base = (i * self.d1 + j) * self.d2;
        &self.data[base..base + self.d2]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        *self.at_mut(i, j, k) = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

/// A bilinear map `left ⊗ right → codomain` as a dense coefficient tensor:
/// `(e_i, f_j) ↦ Σ_k coeffs[i][j][k] g_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearMapTensor {
    pub left: BasedSpace,
    pub right: BasedSpace,
    pub codomain: BasedSpace,
    pub coeffs: Tensor3,
}

impl BilinearMapTensor {
    pub fn zero(left: BasedSpace, right: BasedSpace, codomain: BasedSpace) -> Self {
        let coeffs = Tensor3::zeros(left.dim(), right.dim(), codomain.dim());
        Self {
            left,
            right,
            codomain,
            coeffs,
        }
    }

    pub fn new(
        left: BasedSpace,
        right: BasedSpace,
        codomain: BasedSpace,
        coeffs: Tensor3,
    ) -> Result<Self, KernelError> {
        if coeffs.dims() != (left.dim(), right.dim(), codomain.dim()) {
            return Err(KernelError::ShapeMismatch(format!(
                "tensor dims {:?} do not match spaces {}⊗{}→{}",
                coeffs.dims(),
                left.dim(),
                right.dim(),
                codomain.dim()
            )));
        }
        Ok(Self {
            left,
            right,
            codomain,
            coeffs,
        })
    }

    /// Value on a pair of basis vectors, as coordinates in the codomain.
    pub fn eval_basis(&self, i: usize, j: usize) -> &[Rational] {
        self.coeffs.fiber(i, j)
    }

    /// Bilinear evaluation on arbitrary coordinate vectors.
    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, KernelError> {
        if x.len() != self.left.dim() || y.len() != self.right.dim() {
            return Err(KernelError::DimensionMismatch(format!(
                "eval on ({}, {}) against {}⊗{}",
                x.len(),
                y.len(),
                self.left.dim(),
                self.right.dim()
            )));
        }
        let mut out = zero_vector(self.codomain.dim());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, acc) in out.iter_mut().enumerate() {
                    *acc += &c * self.coeffs.at(i, j, k);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// `coeffs[i][j][·] + coeffs[j][i][·] = 0` for every pair. Over ℚ this is
    /// equivalent to vanishing on the diagonal of the ambient square.
    pub fn is_antisymmetric(&self) -> bool {
        let n = self.left.dim();
        if n != self.right.dim() {
            return false;
        }
        for i in 0..n {
            for j in i..n {
                let a = self.eval_basis(i, j);
                let b = self.eval_basis(j, i);
                if !vec_is_zero(&vec_add(a, b)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Two complementary subspaces of an ambient based space, each given by an
/// explicit basis written in ambient coordinates (one basis vector per row
/// of `m_basis` / `h_basis`).
#[derive(Debug, Clone)]
pub struct SubspacePair {
    pub ambient: BasedSpace,
    pub m_basis: Matrix,
    pub h_basis: Matrix,
    change: Matrix,
    change_inv: Matrix,
}

impl SubspacePair {
    pub fn new(
        ambient: BasedSpace,
        m_basis: Matrix,
        h_basis: Matrix,
    ) -> Result<Self, KernelError> {
        let n = ambient.dim();
        if m_basis.cols() != n || h_basis.cols() != n {
            return Err(KernelError::DimensionMismatch(
                "subspace basis vectors must live in the ambient space".into(),
            ));
        }
        if m_basis.rows() + h_basis.rows() != n {
            return Err(KernelError::DimensionMismatch(format!(
                "subspace dims {} + {} must sum to ambient dim {}",
                m_basis.rows(),
                h_basis.rows(),
                n
            )));
        }
        // Rows of `change` are the concatenated basis; invertibility is the
        // complementarity test.
        let mut change = Matrix::zeros(n, n);
        for r in 0..m_basis.rows() {
            for c in 0..n {
                *change.at_mut(r, c) = m_basis.at(r, c).clone();
            }
        }
        for r in 0..h_basis.rows() {
            for c in 0..n {
                *change.at_mut(m_basis.rows() + r, c) = h_basis.at(r, c).clone();
            }
        }
        let change_inv = change.inverse()?;
        Ok(Self {
            ambient,
            m_basis,
            h_basis,
            change,
            change_inv,
        })
    }

    pub fn m_dim(&self) -> usize {
        self.m_basis.rows()
    }

    pub fn h_dim(&self) -> usize {
        self.h_basis.rows()
    }

    /// Change-of-basis matrix whose rows are the adapted basis (𝔪 first).
    pub fn change_matrix(&self) -> &Matrix {
        &self.change
    }

    /// Split an ambient vector into exact 𝔪- and 𝔥-coordinates, so that
    /// `m_coords·m_basis + h_coords·h_basis` reconstructs it.
    pub fn project_components(
        &self,
        v: &[Rational],
    ) -> Result<(Vec<Rational>, Vec<Rational>), KernelError> {
        if v.len() != self.ambient.dim() {
            return Err(KernelError::DimensionMismatch(format!(
                "vector of length {} in ambient of dim {}",
                v.len(),
                self.ambient.dim()
            )));
        }
        // change_inv maps ambient coordinates to adapted coordinates: the
        // adapted coordinate row vector a satisfies a·change = v.
        let adapted = self.change_inv.transpose().apply(v)?;
        let (m, h) = adapted.split_at(self.m_dim());
        Ok((m.to_vec(), h.to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_inverse_is_identity() {
        let m = Matrix::identity(3);
        assert_eq!(m.inverse().unwrap(), Matrix::identity(3));
    }

    #[test]
    fn diagonal_inverse() {
        let m = Matrix::from_int_rows(&[&[2, 0], &[0, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(*inv.at(0, 0), ratio(1, 2));
        assert_eq!(*inv.at(1, 1), ratio(1, 4));
        assert_eq!(*inv.at(0, 1), rat(0));
        assert_eq!(*inv.at(1, 0), rat(0));
    }

    #[test]
    fn nontrivial_split_inverse_checks_by_product() {
        // Non-coordinate 𝔪 = span{e+f, f} inside a 2-dim block: invert and
        // multiply back.
        let m = Matrix::from_int_rows(&[&[1, 0], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(m.inverse(), Err(KernelError::SingularMatrix(_))));
    }

    #[test]
    fn project_unit_and_zero() {
        let ambient = BasedSpace::numbered("e", 3);
        let pair = SubspacePair::new(
            ambient,
            Matrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0]]),
            Matrix::from_int_rows(&[&[0, 0, 1]]),
        )
        .unwrap();
        let (m, h) = pair.project_components(&unit_vector(3, 0)).unwrap();
        assert_eq!(m, vec![rat(1), rat(0)]);
        assert_eq!(h, vec![rat(0)]);
        let (m, h) = pair.project_components(&zero_vector(3)).unwrap();
        assert!(vec_is_zero(&m) && vec_is_zero(&h));
    }

    #[test]
    fn project_sl2_mixed_vector() {
        // sl₂ basis (e, f, h); 𝔪 = span{e,f}, 𝔥 = span{h}; v = e + h.
        let ambient = BasedSpace::new(vec!["e".into(), "f".into(), "h".into()]).unwrap();
        let pair = SubspacePair::new(
            ambient,
            Matrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0]]),
            Matrix::from_int_rows(&[&[0, 0, 1]]),
        )
        .unwrap();
        let v = vec![rat(1), rat(0), rat(1)];
        let (m, h) = pair.project_components(&v).unwrap();
        assert_eq!(m, vec![rat(1), rat(0)]);
        assert_eq!(h, vec![rat(1)]);
    }

    #[test]
    fn projection_reconstructs_on_random_vectors() {
        // Oblique split of a 3-dim space; reconstruction must be exact.
        let ambient = BasedSpace::numbered("v", 3);
        let pair = SubspacePair::new(
            ambient,
            Matrix::from_int_rows(&[&[1, 1, 0], &[0, 1, 1]]),
            Matrix::from_int_rows(&[&[1, 0, 1]]),
        )
        .unwrap();
        let mut state = 11u64;
        for _ in 0..100 {
            let v: Vec<Rational> = (0..3)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    ratio((state >> 33) as i64 % 17 - 8, ((state >> 12) % 7 + 1) as i64)
                })
                .collect();
            let (m, h) = pair.project_components(&v).unwrap();
            let mut rec = zero_vector(3);
            for (i, c) in m.iter().enumerate() {
                vec_addassign(&mut rec, &vec_scale(c, pair.m_basis.row(i)));
            }
            for (i, c) in h.iter().enumerate() {
                vec_addassign(&mut rec, &vec_scale(c, pair.h_basis.row(i)));
            }
            assert_eq!(rec, v);
        }
    }

    #[test]
    fn eval_bilinear_zero_and_single_entry() {
        let a = BasedSpace::numbered("a", 2);
        let b = BasedSpace::numbered("b", 3);
        let c = BasedSpace::numbered("c", 4);
        let zero = BilinearMapTensor::zero(a.clone(), b.clone(), c.clone());
        assert!(vec_is_zero(
            &zero.eval(&unit_vector(2, 0), &unit_vector(3, 1)).unwrap()
        ));
        let mut t = Tensor3::zeros(2, 3, 4);
        t.set(0, 1, 2, rat(3));
        let single = BilinearMapTensor::new(a, b, c, t).unwrap();
        let out = single.eval(&unit_vector(2, 0), &unit_vector(3, 1)).unwrap();
        assert_eq!(out, vec![rat(0), rat(0), rat(3), rat(0)]);
    }

    #[test]
    fn eval_bilinear_is_linear_in_first_argument() {
        let s = BasedSpace::numbered("x", 2);
        let mut t = Tensor3::zeros(2, 2, 2);
        t.set(0, 0, 0, rat(2));
        t.set(0, 1, 1, ratio(1, 3));
        t.set(1, 0, 1, rat(-1));
        t.set(1, 1, 0, ratio(5, 2));
        let bl = BilinearMapTensor::new(s.clone(), s.clone(), s, t).unwrap();
        let mut state = 5u64;
        let mut r = move || {
            state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            ratio((state >> 40) as i64 % 9 - 4, ((state >> 20) % 5 + 1) as i64)
        };
        for _ in 0..50 {
            let (al, be) = (r(), r());
            let x: Vec<Rational> = vec![r(), r()];
            let x2: Vec<Rational> = vec![r(), r()];
            let y: Vec<Rational> = vec![r(), r()];
            let lhs = bl
                .eval(&vec_add(&vec_scale(&al, &x), &vec_scale(&be, &x2)), &y)
                .unwrap();
            let rhs = vec_add(
                &vec_scale(&al, &bl.eval(&x, &y).unwrap()),
                &vec_scale(&be, &bl.eval(&x2, &y).unwrap()),
            );
            assert_eq!(lhs, rhs);
        }
    }
}
