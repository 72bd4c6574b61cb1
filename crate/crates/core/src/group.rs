//! The geometric representation of a Coxeter system and its elements.
//!
//! Elements are stored as exact matrices in the simple-root basis together
//! with the matrix of the inverse, so both right and left descent sets are
//! column-sign tests.  Words are derived data: the ShortLex normal form is
//! computed on demand by peeling the least left descent and cached.

use std::fmt;

use once_cell::sync::OnceCell;

use crate::field::{FieldCtx, FieldElem};
use crate::mat::Mat;
use crate::system::{Bond, CoxeterSystem};

/// Which half-space of a wall a chamber lies in, or the sign of a root.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Positive,
    Negative,
}

/// A group element: its matrix, the matrix of its inverse, and its length.
///
/// Equality and hashing use the matrix alone; the other fields are
/// determined by it.
#[derive(Clone, Debug)]
pub struct Elt {
    mat: Mat,
    inv: Mat,
    len: u32,
    word: OnceCell<Box<[u8]>>,
}

impl PartialEq for Elt {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for Elt {}

impl std::hash::Hash for Elt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl Elt {
    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn inv_mat(&self) -> &Mat {
        &self.inv
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    /// Install an already-known ShortLex word (no-op if one is cached).
    pub(crate) fn cache_word(&self, letters: Box<[u8]>) {
        debug_assert_eq!(letters.len(), self.len as usize);
        let _ = self.word.set(letters);
    }
}

/// The wall (reflection hyperplane) of a positive root.
///
/// Identified by the root's coordinate vector; the reflection it carries is
/// computed lazily.
#[derive(Clone, Debug)]
pub struct Wall {
    root: Vec<FieldElem>,
    refl: OnceCell<Elt>,
}

impl PartialEq for Wall {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root
    }
}

impl Eq for Wall {}

impl std::hash::Hash for Wall {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.root.hash(state);
    }
}

impl Wall {
    pub fn new(root: Vec<FieldElem>) -> Wall {
        Wall { root, refl: OnceCell::new() }
    }

    pub fn root(&self) -> &[FieldElem] {
        &self.root
    }
}

/// A Coxeter system realised on V = span(α_1 … α_n) with its bilinear form.
pub struct CoxeterGroup {
    sys: CoxeterSystem,
    field: FieldCtx,
    /// Row-major n×n matrix of the bilinear form.
    bform: Vec<FieldElem>,
    /// Generator matrices (columns: s·α_j).
    gens: Vec<Mat>,
    identity_mat: Mat,
}

impl CoxeterGroup {
    pub fn new(sys: CoxeterSystem) -> CoxeterGroup {
        let n = sys.rank();
        let field = FieldCtx::new(sys.field_n());
        let half = field.from_ratio(1, 2);
        let mut bform = vec![field.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                bform[i * n + j] = if i == j {
                    field.one()
                } else {
                    match sys.bond(i, j) {
                        Bond::Infinite => field.from_int(-1),
                        Bond::Finite(2) => field.zero(),
                        Bond::Finite(m) => {
                            // −cos(π/m) = −D_{N/m}(c)/2 where c = 2cos(π/N).
                            let d = field.two_cos_pi_over(m);
                            field.neg(&field.mul(&d, &half))
                        }
                    }
                };
            }
        }
        let gens = (0..n)
            .map(|s| {
                let mut m = Mat::identity(&field, n);
                for j in 0..n {
                    let b = &bform[s * n + j];
                    if !b.is_zero() {
                        let cur = m.at(s, j).clone();
                        let twice = field.mul_int(b, 2);
                        m.set(s, j, field.sub(&cur, &twice));
                    }
                }
                m
            })
            .collect();
        let identity_mat = Mat::identity(&field, n);
        CoxeterGroup { sys, field, bform, gens, identity_mat }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    pub fn bform_entry(&self, i: usize, j: usize) -> &FieldElem {
        &self.bform[i * self.rank() + j]
    }

    /// The symmetric bilinear form (x | y) = xᵀ B y.
    pub fn inner(&self, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
        let n = self.rank();
        let mut acc = self.field.zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = self.field.zero();
            for j in 0..n {
                if !y[j].is_zero() {
                    row = self.field.add(&row, &self.field.mul(&self.bform[i * n + j], &y[j]));
                }
            }
            acc = self.field.add(&acc, &self.field.mul(&x[i], &row));
        }
        acc
    }

    /// (α_s | x): one row of the form, no allocation of a simple-root vector.
    pub fn inner_simple(&self, s: usize, x: &[FieldElem]) -> FieldElem {
        let n = self.rank();
        let mut acc = self.field.zero();
        for j in 0..n {
            if !x[j].is_zero() {
                acc = self.field.add(&acc, &self.field.mul(&self.bform[s * n + j], &x[j]));
            }
        }
        acc
    }

    /// Coordinates of the simple root α_s.
    pub fn simple_root(&self, s: usize) -> Vec<FieldElem> {
        let mut v = vec![self.field.zero(); self.rank()];
        v[s] = self.field.one();
        v
    }

    /// The sign of a root vector.  Every root is a nonnegative or nonpositive
    /// combination of simple roots; mixed signs indicate a non-root input.
    pub fn root_sign(&self, coords: &[FieldElem]) -> Sign {
        let mut pos = false;
        let mut neg = false;
        for c in coords {
            if c.is_zero() {
                continue;
            }
            if self.field.is_positive(c) {
                pos = true;
            } else {
                neg = true;
            }
        }
        match (pos, neg) {
            (true, false) => Sign::Positive,
            (false, true) => Sign::Negative,
            _ => panic!("vector is not a root: mixed or zero coordinate signs"),
        }
    }

    // ----- element construction ---------------------------------------

    pub fn identity(&self) -> Elt {
        let word = OnceCell::new();
        word.set(Vec::new().into_boxed_slice()).unwrap();
        Elt { mat: self.identity_mat.clone(), inv: self.identity_mat.clone(), len: 0, word }
    }

    pub fn generator(&self, s: usize) -> Elt {
        let word = OnceCell::new();
        word.set(vec![s as u8].into_boxed_slice()).unwrap();
        Elt { mat: self.gens[s].clone(), inv: self.gens[s].clone(), len: 1, word }
    }

    /// Matrix of g·s: a sparse column update touching only columns j with
    /// B_sj ≠ 0.
    pub fn mat_right_mul(&self, m: &Mat, s: usize) -> Mat {
        let n = self.rank();
        let mut out = m.clone();
        let col_s = m.col(s);
        for j in 0..n {
            let b = &self.bform[s * n + j];
            if b.is_zero() {
                continue;
            }
            let coef = self.field.mul_int(b, 2);
            for i in 0..n {
                if col_s[i].is_zero() {
                    continue;
                }
                let cur = out.at(i, j).clone();
                out.set(i, j, self.field.sub(&cur, &self.field.mul(&coef, &col_s[i])));
            }
        }
        out
    }

    /// Matrix of s·g: a sparse row update (row s becomes a combination of the
    /// rows j with B_sj ≠ 0).
    pub fn mat_left_mul(&self, s: usize, m: &Mat) -> Mat {
        let n = self.rank();
        let mut out = m.clone();
        for k in 0..n {
            let mut acc = m.at(s, k).clone();
            for j in 0..n {
                let b = &self.bform[s * n + j];
                if b.is_zero() || m.at(j, k).is_zero() {
                    continue;
                }
                let t = self.field.mul(&self.field.mul_int(b, 2), m.at(j, k));
                acc = self.field.sub(&acc, &t);
            }
            out.set(s, k, acc);
        }
        out
    }

    pub fn right_mul(&self, g: &Elt, s: usize) -> Elt {
        let len = if self.right_descent(g, s) { g.len - 1 } else { g.len + 1 };
        Elt {
            mat: self.mat_right_mul(&g.mat, s),
            inv: self.mat_left_mul(s, &g.inv),
            len,
            word: OnceCell::new(),
        }
    }

    pub fn left_mul(&self, s: usize, g: &Elt) -> Elt {
        let len = if self.left_descent(g, s) { g.len - 1 } else { g.len + 1 };
        Elt {
            mat: self.mat_left_mul(s, &g.mat),
            inv: self.mat_right_mul(&g.inv, s),
            len,
            word: OnceCell::new(),
        }
    }

    pub fn invert(&self, g: &Elt) -> Elt {
        Elt { mat: g.inv.clone(), inv: g.mat.clone(), len: g.len, word: OnceCell::new() }
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        let mat = a.mat.mul(&self.field, &b.mat);
        let inv = b.inv.mul(&self.field, &a.inv);
        let len = self.peel_length(&mat, a.len + b.len);
        Elt { mat, inv, len, word: OnceCell::new() }
    }

    /// Reconstruct an element from its matrix by peeling right descents.
    pub fn from_matrix(&self, mat: &Mat, max_len: u32) -> Elt {
        let mut cur = mat.clone();
        let mut letters = Vec::new();
        while !cur.is_identity(&self.field) {
            let s = (0..self.rank())
                .find(|&s| self.root_sign(&cur.col(s)) == Sign::Negative)
                .expect("non-identity matrix with no right descent");
            cur = self.mat_right_mul(&cur, s);
            letters.push(s);
            assert!(
                letters.len() as u32 <= max_len,
                "descent peel exceeded the length bound; matrix is not a group element"
            );
        }
        // mat·s₁·…·s_k = id, so mat⁻¹ is the product of the peeled letters
        // in peel order.
        let mut inv = self.identity_mat.clone();
        for &s in &letters {
            inv = self.mat_right_mul(&inv, s);
        }
        debug_assert!(mat.mul(&self.field, &inv).is_identity(&self.field));
        Elt { mat: mat.clone(), inv, len: letters.len() as u32, word: OnceCell::new() }
    }

    fn peel_length(&self, mat: &Mat, cap: u32) -> u32 {
        let mut cur = mat.clone();
        let mut len = 0u32;
        while !cur.is_identity(&self.field) {
            let s = (0..self.rank())
                .find(|&s| self.root_sign(&cur.col(s)) == Sign::Negative)
                .expect("non-identity matrix with no right descent");
            cur = self.mat_right_mul(&cur, s);
            len += 1;
            assert!(len <= cap, "length peel exceeded ℓ(a)+ℓ(b)");
        }
        len
    }

    pub fn product_of_word(&self, word: &[usize]) -> Elt {
        let mut g = self.identity();
        for &s in word {
            g = self.right_mul(&g, s);
        }
        g
    }

    // ----- descents and words ------------------------------------------

    /// s is a right descent of g iff g·α_s is a negative root.
    pub fn right_descent(&self, g: &Elt, s: usize) -> bool {
        self.root_sign(&g.mat.col(s)) == Sign::Negative
    }

    /// s is a left descent of g iff g⁻¹·α_s is a negative root.
    pub fn left_descent(&self, g: &Elt, s: usize) -> bool {
        self.root_sign(&g.inv.col(s)) == Sign::Negative
    }

    pub fn right_descents(&self, g: &Elt) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.right_descent(g, s)).collect()
    }

    pub fn left_descents(&self, g: &Elt) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.left_descent(g, s)).collect()
    }

    /// The ShortLex normal form: repeatedly peel the least left descent.
    pub fn word<'g>(&self, g: &'g Elt) -> &'g [u8] {
        g.word.get_or_init(|| {
            let mut mat = g.mat.clone();
            let mut inv = g.inv.clone();
            let mut letters = Vec::with_capacity(g.len as usize);
            for _ in 0..g.len {
                let s = (0..self.rank())
                    .find(|&s| self.root_sign(&inv.col(s)) == Sign::Negative)
                    .expect("length-positive element with no left descent");
                letters.push(s as u8);
                mat = self.mat_left_mul(s, &mat);
                inv = self.mat_right_mul(&inv, s);
            }
            assert!(mat.is_identity(&self.field), "peel did not terminate at the identity");
            letters.into_boxed_slice()
        })
    }

    pub fn word_string(&self, g: &Elt) -> String {
        if g.is_identity() {
            return "e".to_string();
        }
        self.word(g)
            .iter()
            .map(|&s| self.sys.generator_label(s as usize))
            .collect::<Vec<_>>()
            .join(".")
    }

    // ----- walls ---------------------------------------------------------

    /// The wall crossed by the edge g — g·s, i.e. the positive root in
    /// {±g·α_s}.
    pub fn edge_wall(&self, g: &Elt, s: usize) -> Wall {
        let col = g.mat.col(s);
        let root = match self.root_sign(&col) {
            Sign::Positive => col,
            Sign::Negative => col.iter().map(|c| self.field.neg(c)).collect(),
        };
        Wall::new(root)
    }

    /// The inversion walls of g: walls separating the chamber of g from the
    /// fundamental chamber.  These are the prefix walls of any reduced word;
    /// there are exactly ℓ(g) of them.
    pub fn inversion_walls(&self, g: &Elt) -> Vec<Wall> {
        let word = self.word(g).to_vec();
        let mut walls = Vec::with_capacity(word.len());
        let mut mat = self.identity_mat.clone();
        for &s in &word {
            let root = mat.col(s as usize);
            debug_assert_eq!(self.root_sign(&root), Sign::Positive);
            walls.push(Wall::new(root));
            mat = self.mat_right_mul(&mat, s as usize);
        }
        walls
    }

    /// The reflection carried by a wall, as a group element.
    pub fn reflection<'w>(&self, wall: &'w Wall) -> &'w Elt {
        wall.refl.get_or_init(|| {
            let n = self.rank();
            let beta = &wall.root;
            let mut entries = Vec::with_capacity(n * n);
            // r_β(α_j) = α_j − 2(β|α_j)·β, so column j is e_j − 2(β|α_j)β.
            let coeffs: Vec<FieldElem> =
                (0..n).map(|j| self.field.mul_int(&self.inner_simple(j, beta), 2)).collect();
            for i in 0..n {
                for j in 0..n {
                    let mut v = if i == j { self.field.one() } else { self.field.zero() };
                    if !beta[i].is_zero() && !coeffs[j].is_zero() {
                        v = self.field.sub(&v, &self.field.mul(&coeffs[j], &beta[i]));
                    }
                    entries.push(v);
                }
            }
            let mat = Mat::from_entries(n, entries);
            self.from_matrix(&mat, u32::MAX)
        })
    }

    /// Does the wall separate the chambers of x and y?
    pub fn separates(&self, wall: &Wall, x: &Elt, y: &Elt) -> bool {
        self.side_of(wall, x) != self.side_of(wall, y)
    }

    /// Which side of the wall the chamber of g lies on (Positive = the side
    /// of the fundamental chamber).
    pub fn side_of(&self, wall: &Wall, g: &Elt) -> Sign {
        self.root_sign(&g.inv.mul_vec(&self.field, &wall.root))
    }

    // ----- weak order ------------------------------------------------------

    /// Right weak order: p ⪯ g iff ℓ(p) + ℓ(p⁻¹g) = ℓ(g), equivalently the
    /// inversion walls of p are contained in those of g.
    pub fn weak_leq(&self, p: &Elt, g: &Elt) -> bool {
        if p.len > g.len {
            return false;
        }
        let quot = p.inv.mul(&self.field, &g.mat);
        self.peel_length(&quot, p.len + g.len) == g.len - p.len
    }
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGroup({})", self.sys.canonical_string())
    }
}
