//! Positive roots: depth, dominance, and the finite set of small roots.
//!
//! A positive root is *small* (elementary) when no wall separates its wall
//! from the fundamental chamber — equivalently, when it dominates no other
//! positive root.  The small roots are exactly the roots reachable from the
//! simple ones by reflections s·α with (α_s | α) strictly between −1 and 0,
//! and there are finitely many of them in every Coxeter group.

use std::collections::HashMap;

use crate::field::FieldElem;
use crate::group::{CoxeterGroup, Sign, Wall};

pub type RootVec = Vec<FieldElem>;

/// s·α in coordinates: only the s-th coordinate changes.
pub fn reflect_simple(w: &CoxeterGroup, s: usize, root: &[FieldElem]) -> RootVec {
    let f = w.field();
    let mut out = root.to_vec();
    let twice = f.mul_int(&w.inner_simple(s, root), 2);
    out[s] = f.sub(&root[s], &twice);
    out
}

/// Depth of a positive root: the least k with β = s_1…s_{k−1}·α_s, i.e. the
/// number of walls weakly separating the wall of β from the fundamental
/// chamber.  dp(sβ) = dp(β) − 1 exactly when (α_s | β) > 0 (and β ≠ α_s),
/// so the greedy descent below is exact.
pub fn depth(w: &CoxeterGroup, root: &[FieldElem]) -> u32 {
    debug_assert_eq!(w.root_sign(root), Sign::Positive);
    let f = w.field();
    let mut cur = root.to_vec();
    let mut d = 1u32;
    'outer: loop {
        if let Some(s) = simple_index(w, &cur) {
            let _ = s;
            return d;
        }
        for s in 0..w.rank() {
            if f.is_positive(&w.inner_simple(s, &cur)) {
                cur = reflect_simple(w, s, &cur);
                d += 1;
                continue 'outer;
            }
        }
        panic!("positive root with no descent towards a simple root");
    }
}

/// Is the vector a simple root, and if so which one?
fn simple_index(w: &CoxeterGroup, root: &[FieldElem]) -> Option<usize> {
    let f = w.field();
    let mut hit = None;
    for (i, c) in root.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if *c != f.one() || hit.is_some() {
            return None;
        }
        hit = Some(i);
    }
    hit
}

/// β dominates α: every chamber on the far side of the wall of β is also on
/// the far side of the wall of α.  For distinct positive roots this holds
/// exactly when (β | α) ≥ 1 and β is the deeper of the two.
pub fn dominates(w: &CoxeterGroup, beta: &[FieldElem], alpha: &[FieldElem]) -> bool {
    if beta == alpha {
        return false;
    }
    let f = w.field();
    let ip = w.inner(beta, alpha);
    if f.cmp(&ip, &f.one()) == std::cmp::Ordering::Less {
        return false;
    }
    depth(w, beta) > depth(w, alpha)
}

/// Where s sends a small root, for automaton transitions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReflectEntry {
    /// s·α_s = −α_s: the root is α_s itself.
    NegativeSimple,
    /// s·α is again small, with this index.
    Small(u32),
    /// s·α is a positive root outside the small set.
    NotSmall,
}

/// The small roots of the system, in (depth, coordinate-lex) order, with the
/// generator action tabulated on them.
pub struct SmallRoots {
    roots: Vec<RootVec>,
    depths: Vec<u32>,
    index: HashMap<RootVec, u32>,
    /// table[a][s] describes s · roots[a].
    table: Vec<Vec<ReflectEntry>>,
}

impl SmallRoots {
    /// Breadth-first closure from the simple roots: from a small root α,
    /// s·α is small exactly when −1 < (α_s | α) < 0 (new wall) or s·α is
    /// already known.  `cap` bounds the set size.
    pub fn compute(w: &CoxeterGroup, cap: usize) -> Result<SmallRoots, String> {
        let f = w.field();
        let neg_one = f.from_int(-1);
        let mut roots: Vec<RootVec> = Vec::new();
        let mut index: HashMap<RootVec, u32> = HashMap::new();
        let mut layer: Vec<RootVec> = (0..w.rank()).map(|s| w.simple_root(s)).collect();
        let mut depth_now = 1u32;
        let mut depths = Vec::new();
        while !layer.is_empty() {
            layer.sort_by(|a, b| {
                a.iter().zip(b.iter()).map(|(x, y)| f.cmp(x, y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
            });
            let mut next: Vec<RootVec> = Vec::new();
            for root in layer {
                if index.contains_key(&root) {
                    continue;
                }
                index.insert(root.clone(), roots.len() as u32);
                depths.push(depth_now);
                roots.push(root.clone());
                if roots.len() > cap {
                    return Err(format!("more than {cap} small roots; raise the cap"));
                }
                for s in 0..w.rank() {
                    let ip = w.inner_simple(s, &root);
                    if f.is_negative(&ip) && f.cmp(&ip, &neg_one) == std::cmp::Ordering::Greater {
                        let image = reflect_simple(w, s, &root);
                        if !index.contains_key(&image) {
                            next.push(image);
                        }
                    }
                }
            }
            layer = next;
            depth_now += 1;
        }
        let table = (0..roots.len())
            .map(|a| {
                (0..w.rank())
                    .map(|s| {
                        if simple_index(w, &roots[a]) == Some(s) {
                            ReflectEntry::NegativeSimple
                        } else {
                            let image = reflect_simple(w, s, &roots[a]);
                            match index.get(&image) {
                                Some(&b) => ReflectEntry::Small(b),
                                None => ReflectEntry::NotSmall,
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(SmallRoots { roots, depths, index, table })
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, a: u32) -> &RootVec {
        &self.roots[a as usize]
    }

    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }

    pub fn depth_of(&self, a: u32) -> u32 {
        self.depths[a as usize]
    }

    pub fn index_of(&self, root: &[FieldElem]) -> Option<u32> {
        self.index.get(root).copied()
    }

    pub fn entry(&self, a: u32, s: usize) -> ReflectEntry {
        self.table[a as usize][s]
    }

    /// The elementary walls, in small-root order.
    pub fn walls(&self) -> Vec<Wall> {
        self.roots.iter().map(|r| Wall::new(r.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::CoxeterSystem;

    fn group(text: &str) -> CoxeterGroup {
        CoxeterGroup::new(CoxeterSystem::parse(text).unwrap())
    }

    fn root_str(w: &CoxeterGroup, r: &[FieldElem]) -> String {
        let parts: Vec<String> = r.iter().map(|c| format!("{c}")).collect();
        let _ = w;
        parts.join(", ")
    }

    #[test]
    fn depths_in_the_infinite_dihedral_group() {
        let w = group("I2(inf)");
        // Walk s·t·s·… outward: prefix roots have depths 1, 2, 3, …
        let mut mat = crate::mat::Mat::identity(w.field(), 2);
        for k in 0..6 {
            let s = k % 2;
            let root = mat.col(s);
            assert_eq!(depth(&w, &root), k as u32 + 1);
            mat = w.mat_right_mul(&mat, s);
        }
    }

    #[test]
    fn dominance_in_the_infinite_dihedral_group() {
        let w = group("I2(inf)");
        let f = w.field();
        let a_s = w.simple_root(0);
        let a_t = w.simple_root(1);
        // s·α_t = α_t + 2α_s has depth 2 and pairs to (s·α_t | α_s) = 1.
        let sa_t = reflect_simple(&w, 0, &a_t);
        assert_eq!(sa_t, vec![f.from_int(2), f.one()]);
        assert!(dominates(&w, &sa_t, &a_s));
        assert!(!dominates(&w, &a_s, &sa_t));
        // (s·α_t | α_t) = −1·2 + 1 = −1 < 1: no dominance against α_t.
        assert!(!dominates(&w, &sa_t, &a_t));
        // Simple roots dominate nothing.
        assert!(!dominates(&w, &a_s, &a_t));
        assert!(!dominates(&w, &a_t, &a_s));
        // Deeper roots dominate shallower ones on the same side.
        let stsa_t = reflect_simple(&w, 0, &reflect_simple(&w, 1, &sa_t));
        assert_eq!(depth(&w, &stsa_t), 4);
        assert!(dominates(&w, &stsa_t, &sa_t));
        assert!(dominates(&w, &stsa_t, &a_s));
    }

    #[test]
    fn small_root_counts() {
        // Finite groups: all positive roots are small.
        for (name, positives) in [("A2", 3), ("B2", 4), ("G2", 6), ("A3", 6), ("B3", 9), ("H3", 15)]
        {
            let w = group(name);
            let sr = SmallRoots::compute(&w, 1_000_000).unwrap();
            assert_eq!(sr.len(), positives, "{name}");
        }
        // Infinite dihedral: only the two simple roots.
        let w = group("I2(inf)");
        let sr = SmallRoots::compute(&w, 1_000_000).unwrap();
        assert_eq!(sr.len(), 2);
        // Affine groups: twice the positive roots of the finite part.
        for (name, count) in [("Atilde2", 6), ("Ctilde2", 8), ("Gtilde2", 12)] {
            let w = group(name);
            let sr = SmallRoots::compute(&w, 1_000_000).unwrap();
            assert_eq!(sr.len(), count, "{name}");
        }
    }

    #[test]
    fn small_roots_are_unit_and_ordered() {
        let w = group("triangle(3,3,4)");
        let sr = SmallRoots::compute(&w, 1_000_000).unwrap();
        let f = w.field();
        for a in 0..sr.len() as u32 {
            assert_eq!(w.inner(sr.root(a), sr.root(a)), f.one(), "unit norm");
            assert_eq!(depth(&w, sr.root(a)), sr.depth_of(a), "tabulated depth");
            if a > 0 {
                assert!(sr.depth_of(a - 1) <= sr.depth_of(a), "depth-sorted");
            }
        }
    }

    #[test]
    fn small_roots_dominate_nothing(){
        // Smallness ⟺ the root dominates no positive root.  Cross-check on
        // dihedral systems where the root list is easy to enumerate: walk
        // all prefix roots to depth 8 and test every pair.
        for name in ["I2(inf)", "G2"] {
            let w = group(name);
            let sr = SmallRoots::compute(&w, 1_000_000).unwrap();
            let mut all: Vec<RootVec> = Vec::new();
            for start in 0..2 {
                let mut mat = crate::mat::Mat::identity(w.field(), 2);
                for k in 0..8 {
                    let s = (start + k) % 2;
                    let root = mat.col(s);
                    if w.root_sign(&root) == Sign::Negative {
                        break; // walked past the longest element (finite case)
                    }
                    if !all.contains(&root) {
                        all.push(root.clone());
                    }
                    mat = w.mat_right_mul(&mat, s);
                }
            }
            for beta in &all {
                let small = sr.index_of(beta).is_some();
                let dominating = all.iter().any(|alpha| dominates(&w, beta, alpha));
                assert_eq!(
                    small,
                    !dominating,
                    "{name}: root [{}] small={} but dominates something={}",
                    root_str(&w, beta),
                    small,
                    dominating
                );
            }
        }
    }

    #[test]
    fn reflect_table_matches_direct_reflection() {
        let w = group("Atilde2");
        let sr = SmallRoots::compute(&w, 1_000_000).unwrap();
        for a in 0..sr.len() as u32 {
            for s in 0..w.rank() {
                let image = reflect_simple(&w, s, sr.root(a));
                match sr.entry(a, s) {
                    ReflectEntry::NegativeSimple => {
                        assert_eq!(w.root_sign(&image), Sign::Negative)
                    }
                    ReflectEntry::Small(b) => assert_eq!(&image, sr.root(b)),
                    ReflectEntry::NotSmall => {
                        assert_eq!(w.root_sign(&image), Sign::Positive);
                        assert!(sr.index_of(&image).is_none());
                    }
                }
            }
        }
    }
}
