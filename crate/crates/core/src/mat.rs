//! Small dense matrices over the field, in the simple-root basis.
//!
//! Group elements act on V = span(α_1 … α_n); the matrix of an element g
//! has column j equal to the coordinates of g·α_j.  Matrices are the
//! canonical identity of an element: two elements are equal iff their
//! matrices are syntactically equal (field elements are canonical).

use crate::field::{FieldCtx, FieldElem};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    n: usize,
    /// Row-major entries.
    e: Box<[FieldElem]>,
}

impl Mat {
    pub fn identity(f: &FieldCtx, n: usize) -> Mat {
        let mut e = vec![f.zero(); n * n];
        for i in 0..n {
            e[i * n + i] = f.one();
        }
        Mat { n, e: e.into_boxed_slice() }
    }

    pub fn from_entries(n: usize, entries: Vec<FieldElem>) -> Mat {
        assert_eq!(entries.len(), n * n);
        Mat { n, e: entries.into_boxed_slice() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElem {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.e[i * self.n + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<FieldElem> {
        (0..self.n).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn mul(&self, f: &FieldCtx, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut e = vec![f.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        e[i * n + j] = f.add(&e[i * n + j], &f.mul(a, b));
                    }
                }
            }
        }
        Mat { n, e: e.into_boxed_slice() }
    }

    /// Matrix–vector product (coordinates of the image of a root).
    pub fn mul_vec(&self, f: &FieldCtx, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = f.zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = f.add(&acc, &f.mul(self.at(i, j), x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_identity(&self, f: &FieldCtx) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let want_one = i == j;
                let v = self.at(i, j);
                if want_one {
                    if *v != f.one() {
                        return false;
                    }
                } else if !v.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}
