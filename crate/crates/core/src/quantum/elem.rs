//! Elements of iterated tensor products, with the leg surgery needed to
//! evaluate Sweedler expressions mechanically.
//!
//! A structure map is a rank-3 coefficient array; a Sweedler expression is a
//! chain of three moves on a multi-leg element:
//!
//! * [`Elem::split`] — replace one leg by two through a `V → A⊗B` tensor
//!   (comultiplications, coactions, δ, σ);
//! * [`Elem::fuse`] — contract two legs into one through an `A⊗B → V`
//!   tensor (multiplications, actions, cocycle maps);
//! * [`Elem::cap`] — close a leg with a functional (counits, characters).
//!
//! Storage is sparse: group-like fixtures stay single-term through arbitrary
//! chains, and dim-2 fuzz data stays small.

use crate::kernel::{Matrix, Rational, Tensor3};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem {
    dims: Vec<usize>,
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl Elem {
    pub fn zero(dims: Vec<usize>) -> Self {
        Self {
            dims,
            terms: BTreeMap::new(),
        }
    }

    /// Basis element `e_{idx[0]} ⊗ … ⊗ e_{idx[k]}`.
    pub fn basis(dims: Vec<usize>, idx: &[usize]) -> Self {
        assert_eq!(dims.len(), idx.len());
        let key: Vec<u8> = idx.iter().map(|&i| {
            debug_assert!(i < 256);
            i as u8
        }).collect();
        let mut terms = BTreeMap::new();
        terms.insert(key, Rational::from_integer(1.into()));
        Self { dims, terms }
    }

    /// Single-leg element from dense coordinates.
    pub fn from_dense(dim: usize, coords: &[Rational]) -> Self {
        let mut e = Self::zero(vec![dim]);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                e.terms.insert(vec![i as u8], c.clone());
            }
        }
        e
    }

    pub fn legs(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(terms: &mut BTreeMap<Vec<u8>, Rational>, key: Vec<u8>, c: Rational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Elem {
        if c.is_zero() {
            return Elem::zero(self.dims.clone());
        }
        Elem {
            dims: self.dims.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Elem) -> Elem {
        debug_assert_eq!(self.dims, other.dims);
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            Self::insert(&mut terms, k.clone(), v.clone());
        }
        Elem {
            dims: self.dims.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        debug_assert_eq!(self.dims, other.dims);
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            Self::insert(&mut terms, k.clone(), -v.clone());
        }
        Elem {
            dims: self.dims.clone(),
            terms,
        }
    }

    /// Tensor with another element on the right.
    pub fn outer(&self, other: &Elem) -> Elem {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut terms = BTreeMap::new();
        for (k1, v1) in &self.terms {
            for (k2, v2) in &other.terms {
                let mut key = k1.clone();
                key.extend_from_slice(k2);
                Self::insert(&mut terms, key, v1 * v2);
            }
        }
        Elem { dims, terms }
    }

    /// Replace leg `leg` through `t: V → A⊗B`, where `t` has dims
    /// `(dim V, dim A, dim B)`; the two new legs occupy positions
    /// `leg, leg+1`.
    pub fn split(&self, leg: usize, t: &Tensor3) -> Elem {
        let (d0, d1, d2) = t.dims();
        assert_eq!(self.dims[leg], d0, "split leg dimension");
        let mut dims = self.dims.clone();
        dims.splice(leg..=leg, [d1, d2]);
        let mut terms = BTreeMap::new();
        for (key, c) in &self.terms {
            let i = key[leg] as usize;
            for j in 0..d1 {
                for k in 0..d2 {
                    let coeff = t.at(i, j, k);
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut nk = key.clone();
                    nk.splice(leg..=leg, [j as u8, k as u8]);
                    Self::insert(&mut terms, nk, c * coeff);
                }
            }
        }
        Elem { dims, terms }
    }

    /// Contract legs `a < b` through `t: A⊗B → V` with dims
    /// `(dim A, dim B, dim V)`; the result leg lands at position `a`.
    pub fn fuse(&self, a: usize, b: usize, t: &Tensor3) -> Elem {
        self.fuse_impl(a, b, t, false)
    }

    /// Like [`Elem::fuse`] but feeding the legs in the opposite order:
    /// contracts through `t(leg_b, leg_a)`. The result still lands at `a`.
    pub fn fuse_flip(&self, a: usize, b: usize, t: &Tensor3) -> Elem {
        self.fuse_impl(a, b, t, true)
    }

    fn fuse_impl(&self, a: usize, b: usize, t: &Tensor3, flip: bool) -> Elem {
        assert!(a < b, "fuse legs must be ordered");
        let (d0, d1, d2) = t.dims();
        let (da, db) = if flip { (d1, d0) } else { (d0, d1) };
        assert_eq!(self.dims[a], da, "fuse left leg dimension");
        assert_eq!(self.dims[b], db, "fuse right leg dimension");
        let mut dims = self.dims.clone();
        dims.remove(b);
        dims[a] = d2;
        let mut terms = BTreeMap::new();
        for (key, c) in &self.terms {
            let (i, j) = if flip {
                (key[b] as usize, key[a] as usize)
            } else {
                (key[a] as usize, key[b] as usize)
            };
            for k in 0..d2 {
                let coeff = t.at(i, j, k);
                if coeff.is_zero() {
                    continue;
                }
                let mut nk = key.clone();
                nk.remove(b);
                nk[a] = k as u8;
                Self::insert(&mut terms, nk, c * coeff);
            }
        }
        Elem { dims, terms }
    }

    /// Close leg `leg` with the functional `cov`.
    pub fn cap(&self, leg: usize, cov: &[Rational]) -> Elem {
        assert_eq!(self.dims[leg], cov.len(), "cap leg dimension");
        let mut dims = self.dims.clone();
        dims.remove(leg);
        let mut terms = BTreeMap::new();
        for (key, c) in &self.terms {
            let w = &cov[key[leg] as usize];
            if w.is_zero() {
                continue;
            }
            let mut nk = key.clone();
            nk.remove(leg);
            Self::insert(&mut terms, nk, c * w);
        }
        Elem { dims, terms }
    }

    /// Apply a linear map to one leg; `m` has one row per input index.
    pub fn map1(&self, leg: usize, m: &Matrix) -> Elem {
        assert_eq!(self.dims[leg], m.rows(), "map1 leg dimension");
        let mut dims = self.dims.clone();
        dims[leg] = m.cols();
        let mut terms = BTreeMap::new();
        for (key, c) in &self.terms {
            let i = key[leg] as usize;
            for k in 0..m.cols() {
                let coeff = m.at(i, k);
                if coeff.is_zero() {
                    continue;
                }
                let mut nk = key.clone();
                nk[leg] = k as u8;
                Self::insert(&mut terms, nk, c * coeff);
            }
        }
        Elem { dims, terms }
    }

    /// Reorder legs: output leg `p` is input leg `perm[p]`.
    pub fn permute(&self, perm: &[usize]) -> Elem {
        assert_eq!(perm.len(), self.dims.len());
        let dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let mut terms = BTreeMap::new();
        for (key, c) in &self.terms {
            let nk: Vec<u8> = perm.iter().map(|&p| key[p]).collect();
            Self::insert(&mut terms, nk, c.clone());
        }
        Elem { dims, terms }
    }

    /// Dense coordinates in row-major leg order.
    pub fn to_dense(&self) -> Vec<Rational> {
        let size: usize = self.dims.iter().product();
        let mut out = vec![Rational::zero(); size];
        for (key, c) in &self.terms {
            let mut idx = 0usize;
            for (p, &k) in key.iter().enumerate() {
                idx = idx * self.dims[p] + k as usize;
            }
            out[idx] = c.clone();
        }
        out
    }

    /// Iterate nonzero terms as (index tuple, coefficient).
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> {
        self.terms
            .iter()
            .map(|(k, v)| (k.iter().map(|&b| b as usize).collect(), v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    fn delta_grouplike(dim: usize) -> Tensor3 {
        let mut t = Tensor3::zeros(dim, dim, dim);
        for i in 0..dim {
            t.set(i, i, i, rat(1));
        }
        t
    }

    #[test]
    fn split_then_cap_recovers_basis() {
        let d = delta_grouplike(3);
        let counit = vec![rat(1), rat(1), rat(1)];
        let e = Elem::basis(vec![3], &[1]);
        let split = e.split(0, &d);
        assert_eq!(split.cap(0, &counit), e);
        assert_eq!(split.cap(1, &counit), e);
    }

    #[test]
    fn split_order_commutes_for_coassociative_delta() {
        // Primitive-style Δe1 = e0⊗e1 + e1⊗e0, Δe0 = e0⊗e0: expanding the
        // first or the second leg gives the same rank-3 element.
        let mut d = Tensor3::zeros(2, 2, 2);
        d.set(0, 0, 0, rat(1));
        d.set(1, 0, 1, rat(1));
        d.set(1, 1, 0, rat(1));
        let e = Elem::basis(vec![2], &[1]).split(0, &d);
        assert_eq!(e.split(0, &d), e.split(1, &d));
    }

    #[test]
    fn fuse_flip_reverses_arguments() {
        // Non-commutative toy product on dim 2: e_i·e_j = e_i (left wins).
        let mut t = Tensor3::zeros(2, 2, 2);
        for i in 0..2 {
            for j in 0..2 {
                t.set(i, j, i, rat(1));
            }
        }
        let e = Elem::basis(vec![2, 2], &[0, 1]);
        assert_eq!(e.fuse(0, 1, &t), Elem::basis(vec![2], &[0]));
        assert_eq!(e.fuse_flip(0, 1, &t), Elem::basis(vec![2], &[1]));
    }

    #[test]
    fn permute_moves_legs() {
        let e = Elem::basis(vec![2, 3, 4], &[1, 2, 3]);
        let p = e.permute(&[2, 0, 1]);
        assert_eq!(p, Elem::basis(vec![4, 2, 3], &[3, 1, 2]));
    }
}
