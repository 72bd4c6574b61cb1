//! Brute-force ground truth, recomputed without the root/automaton
//! machinery: lengths are BFS depths, walls are conjugate reflection
//! matrices interned from Cayley-graph edges, separation is a parity
//! bit propagated along BFS trees, and partitions come from raw
//! length-additivity profiles.  Everything here exists to disagree
//! loudly with the main path if either side is wrong.

pub mod bipodality;

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::field::FieldElem;
use crate::group::{CoxeterGroup, Sign};
use crate::mat::Mat;

/// A fixed-width bit row; one bit per wall.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn get(&self, i: u32) -> bool {
        self.0[i as usize / 64] >> (i % 64) & 1 == 1
    }

    fn toggle(&mut self, i: u32) {
        self.0[i as usize / 64] ^= 1 << (i % 64);
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    fn minus_nonempty(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & !b != 0)
    }

    fn ones(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (b, &block) in self.0.iter().enumerate() {
            let mut rest = block;
            while rest != 0 {
                out.push((b * 64) as u32 + rest.trailing_zeros());
                rest &= rest - 1;
            }
        }
        out
    }
}

/// Cayley ball built from matrix products alone.  Element ids are BFS
/// discovery order with letters ascending; `depth` is the BFS layer and
/// doubles as the oracle's notion of length.
pub struct OracleBall<'w> {
    w: &'w CoxeterGroup,
    radius: u32,
    mats: Vec<Mat>,
    invs: Vec<Mat>,
    depth: Vec<u32>,
    parent: Vec<(u32, u8)>,
    adj: Vec<Vec<Option<u32>>>,
    index: HashMap<Mat, u32>,
    edge_walls: Vec<Vec<Option<u32>>>,
    wall_mats: Vec<Mat>,
    wall_dirs: Vec<Vec<FieldElem>>,
    wall_norms: Vec<FieldElem>,
    wall_index: HashMap<Mat, u32>,
    wall_edges: Vec<Vec<(u32, u8)>>,
    sep: Vec<Bits>,
}

impl<'w> OracleBall<'w> {
    pub fn build(w: &'w CoxeterGroup, radius: u32, cap: usize) -> Result<OracleBall<'w>, String> {
        let rank = w.rank();
        let id_mat = w.identity().mat().clone();
        let mut mats = vec![id_mat.clone()];
        let mut invs = vec![id_mat.clone()];
        let mut depth = vec![0u32];
        let mut parent = vec![(0u32, 0u8)];
        let mut index = HashMap::from([(id_mat, 0u32)]);
        let mut head = 0usize;
        while head < mats.len() {
            let x = head as u32;
            head += 1;
            if depth[x as usize] == radius {
                continue;
            }
            for s in 0..rank {
                let m2 = w.mat_right_mul(&mats[x as usize], s);
                if !index.contains_key(&m2) {
                    if mats.len() >= cap {
                        return Err(format!("ball size cap {cap} exceeded at radius {radius}"));
                    }
                    index.insert(m2.clone(), mats.len() as u32);
                    invs.push(w.mat_left_mul(s, &invs[x as usize]));
                    depth.push(depth[x as usize] + 1);
                    parent.push((x, s as u8));
                    mats.push(m2);
                }
            }
        }

        let n = mats.len();
        let mut adj = vec![vec![None; rank]; n];
        let mut edge_walls = vec![vec![None; rank]; n];
        let mut wall_mats: Vec<Mat> = Vec::new();
        let mut wall_dirs: Vec<Vec<FieldElem>> = Vec::new();
        let mut wall_index: HashMap<Mat, u32> = HashMap::new();
        let mut wall_edges: Vec<Vec<(u32, u8)>> = Vec::new();
        for x in 0..n {
            for s in 0..rank {
                let m2 = w.mat_right_mul(&mats[x], s);
                let Some(&y) = index.get(&m2) else { continue };
                adj[x][s] = Some(y);
                if depth[x] < depth[y as usize] {
                    // The wall of the edge (x, xs) as a reflection matrix,
                    // xs·x⁻¹, interned on first sight.
                    let refl = m2.mul(w.field(), &invs[x]);
                    let wid = *wall_index.entry(refl.clone()).or_insert_with(|| {
                        wall_mats.push(refl.clone());
                        wall_dirs.push(reflection_direction(w, &refl));
                        wall_edges.push(Vec::new());
                        (wall_mats.len() - 1) as u32
                    });
                    wall_edges[wid as usize].push((x as u32, s as u8));
                    edge_walls[x][s] = Some(wid);
                }
            }
        }
        for x in 0..n {
            for s in 0..rank {
                if let Some(y) = adj[x][s] {
                    if depth[x] > depth[y as usize] {
                        edge_walls[x][s] = edge_walls[y as usize][s];
                    }
                }
            }
        }

        let nwalls = wall_mats.len();
        let wall_norms: Vec<FieldElem> = wall_dirs.iter().map(|d| w.inner(d, d)).collect();
        let mut sep = vec![Bits::new(nwalls); n];
        for x in 1..n {
            let (p, s) = parent[x];
            let mut bits = sep[p as usize].clone();
            bits.toggle(edge_walls[p as usize][s as usize].unwrap());
            sep[x] = bits;
        }
        // Parity coherence around every cycle: any edge, tree or not,
        // must flip exactly its own wall's bit.
        for x in 0..n {
            for s in 0..rank {
                if let Some(y) = adj[x][s] {
                    let wid = edge_walls[x][s].unwrap();
                    let mut expect = sep[x].clone();
                    expect.toggle(wid);
                    assert!(sep[y as usize] == expect, "side parity broken on edge ({x},{s})");
                }
            }
        }

        Ok(OracleBall {
            w,
            radius,
            mats,
            invs,
            depth,
            parent,
            adj,
            index,
            edge_walls,
            wall_mats,
            wall_dirs,
            wall_norms,
            wall_index,
            wall_edges,
            sep,
        })
    }

    pub fn group(&self) -> &'w CoxeterGroup {
        self.w
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn depth_of(&self, x: u32) -> u32 {
        self.depth[x as usize]
    }

    pub fn mat_of(&self, x: u32) -> &Mat {
        &self.mats[x as usize]
    }

    pub fn inv_mat_of(&self, x: u32) -> &Mat {
        &self.invs[x as usize]
    }

    pub fn id_of_mat(&self, m: &Mat) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn neighbour(&self, x: u32, s: usize) -> Option<u32> {
        self.adj[x as usize][s]
    }

    /// A reduced word for x, read off the BFS tree.
    pub fn word_to(&self, x: u32) -> Vec<u8> {
        let mut out = Vec::new();
        let mut cur = x;
        while cur != 0 {
            let (p, s) = self.parent[cur as usize];
            out.push(s);
            cur = p;
        }
        out.reverse();
        out
    }

    /// Reduced iff the BFS depth climbs at every step.  None when the
    /// word is longer than the radius, where the walk could leave the
    /// ball.
    pub fn oracle_reduced(&self, word: &[u8]) -> Option<bool> {
        if word.len() as u32 > self.radius {
            return None;
        }
        let mut cur = 0u32;
        let mut rising = true;
        for &s in word {
            let next = self.adj[cur as usize][s as usize]?;
            rising &= self.depth[next as usize] == self.depth[cur as usize] + 1;
            cur = next;
        }
        Some(rising)
    }

    /// Number of reduced words per length, by descent recursion over the
    /// ball — no automaton involved.
    pub fn reduced_word_counts(&self, max_len: u32) -> Vec<BigUint> {
        let max_len = max_len.min(self.radius);
        let mut order: Vec<u32> = (0..self.len() as u32).collect();
        order.sort_by_key(|&x| self.depth[x as usize]);
        let mut per_elem = vec![BigUint::zero(); self.len()];
        per_elem[0] = BigUint::one();
        let mut counts = vec![BigUint::zero(); max_len as usize + 1];
        counts[0] = BigUint::one();
        for &x in &order {
            if x == 0 || self.depth[x as usize] > max_len {
                continue;
            }
            let mut total = BigUint::zero();
            for s in 0..self.w.rank() {
                if let Some(y) = self.adj[x as usize][s] {
                    if self.depth[y as usize] + 1 == self.depth[x as usize] {
                        total += &per_elem[y as usize];
                    }
                }
            }
            counts[self.depth[x as usize] as usize] += &total;
            per_elem[x as usize] = total;
        }
        counts
    }

    pub fn wall_count(&self) -> usize {
        self.wall_mats.len()
    }

    pub fn wall_mat(&self, wid: u32) -> &Mat {
        &self.wall_mats[wid as usize]
    }

    pub fn wall_id_of_mat(&self, m: &Mat) -> Option<u32> {
        self.wall_index.get(m).copied()
    }

    /// Positive multiple of the wall's positive root, recovered from the
    /// reflection matrix.
    pub fn wall_direction(&self, wid: u32) -> &[FieldElem] {
        &self.wall_dirs[wid as usize]
    }

    pub fn edge_wall_id(&self, x: u32, s: usize) -> Option<u32> {
        self.edge_walls[x as usize][s]
    }

    pub fn dual_edges(&self, wid: u32) -> &[(u32, u8)] {
        &self.wall_edges[wid as usize]
    }

    /// Depth of a wall: length of the shallowest chamber on its far side.
    pub fn wall_depth(&self, wid: u32) -> u32 {
        self.wall_edges[wid as usize]
            .iter()
            .map(|&(x, _)| self.depth[x as usize] + 1)
            .min()
            .expect("every interned wall has a dual edge")
    }

    /// Which side of the wall x lies on; false is the identity side.
    pub fn side(&self, wid: u32, x: u32) -> bool {
        self.sep[x as usize].get(wid)
    }

    /// Ids of the walls separating x from the identity.
    pub fn sep_ids(&self, x: u32) -> Vec<u32> {
        self.sep[x as usize].ones()
    }

    /// Weak order by inclusion of separating-wall sets.
    pub fn oracle_weak_leq(&self, p: u32, g: u32) -> bool {
        self.sep[p as usize].is_subset(&self.sep[g as usize])
    }

    /// Whether two distinct walls cross, i.e. their hyperplanes meet inside
    /// the Tits cone.  They do exactly when the reflections they carry
    /// generate a finite dihedral group, which in terms of the (unit) roots
    /// means |(β|γ)| < 1.  The stored directions are only positive
    /// multiples of the roots, so the comparison is made scale-free:
    /// (d_u|d_v)² < (d_u|d_u)(d_v|d_v).
    pub fn walls_cross(&self, u: u32, v: u32) -> bool {
        let f = self.w.field();
        let a = self.w.inner(self.wall_direction(u), self.wall_direction(v));
        let lhs = f.mul(&a, &a);
        let rhs = f.mul(&self.wall_norms[u as usize], &self.wall_norms[v as usize]);
        f.cmp(&lhs, &rhs) == std::cmp::Ordering::Less
    }

    /// Whether wall u separates the chamber g from the wall `target`.
    /// Exact: u must not cross `target` (so the whole of `target` lies in
    /// one half-space of u), and the half containing `target` — read off
    /// one in-ball dual edge — must be opposite g.  Truncation cannot
    /// produce false positives or negatives here; only walls never
    /// interned in the ball escape the search entirely.
    pub fn separates_from_wall(&self, u: u32, g: u32, target: u32) -> bool {
        if u == target || self.walls_cross(u, target) {
            return false;
        }
        let &(x, s) = self.wall_edges[target as usize]
            .first()
            .expect("every interned wall has a dual edge");
        let y = self.adj[x as usize][s as usize].unwrap();
        debug_assert_eq!(self.side(u, x), self.side(u, y));
        self.side(u, x) != self.side(u, g)
    }

    /// Small walls by the half-space criterion: no other wall separates
    /// them from the identity.  The per-pair test is exact, and any wall
    /// separating an interned wall from the identity is itself interned
    /// (it crosses the tree path to a dual-edge endpoint), so the only
    /// truncation left is visibility: a small wall too deep to have been
    /// interned at this radius is absent, which the `depth_cap` makes
    /// explicit.
    pub fn oracle_small_walls(&self, depth_cap: u32) -> Vec<u32> {
        let nwalls = self.wall_count() as u32;
        (0..nwalls)
            .filter(|&beta| self.wall_depth(beta) <= depth_cap)
            .filter(|&beta| !(0..nwalls).any(|gamma| gamma != beta && self.separates_from_wall(gamma, 0, beta)))
            .collect()
    }

    /// Cone-type partition of ball(R − margin) by length-additivity
    /// profiles against ball(margin) — g ~ h iff T(g⁻¹) and T(h⁻¹) agree
    /// on the probe ball.  Demands the same partition at margin − 1
    /// before accepting; `Err` means the radius is too small to know.
    pub fn oracle_cone_partition(&self, margin: u32) -> Result<(Vec<u32>, Vec<u32>), String> {
        if margin < 2 {
            return Err("cone partition needs margin ≥ 2 for the stability check".into());
        }
        if margin > self.radius {
            return Err(format!("margin {margin} exceeds radius {}", self.radius));
        }
        let domain: Vec<u32> = (0..self.len() as u32)
            .filter(|&x| self.depth[x as usize] + margin <= self.radius)
            .collect();
        let stable = self.additivity_classes(&domain, margin);
        let wider_domain: Vec<u32> = (0..self.len() as u32)
            .filter(|&x| self.depth[x as usize] + margin - 1 <= self.radius)
            .collect();
        let coarse = self.additivity_classes(&wider_domain, margin - 1);
        let coarse_on_domain: Vec<u32> = {
            let pos: HashMap<u32, usize> =
                wider_domain.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            canonical_classes(domain.iter().map(|x| coarse[pos[x]]))
        };
        if canonical_classes(stable.iter().copied()) != coarse_on_domain {
            return Err(format!(
                "cone partition unstable between margins {} and {margin}; raise the radius",
                margin - 1
            ));
        }
        Ok((domain, canonical_classes(stable.iter().copied())))
    }

    fn additivity_classes(&self, domain: &[u32], probe_radius: u32) -> Vec<u32> {
        let probes: Vec<u32> = (0..self.len() as u32)
            .filter(|&x| self.depth[x as usize] <= probe_radius)
            .collect();
        let mut profiles: HashMap<Vec<bool>, u32> = HashMap::new();
        let mut classes = Vec::with_capacity(domain.len());
        for &g in domain {
            let profile: Vec<bool> = probes
                .iter()
                .map(|&x| {
                    let prod = self.invs[g as usize].mul(self.w.field(), &self.mats[x as usize]);
                    let pid = self.index[&prod];
                    self.depth[pid as usize] == self.depth[g as usize] + self.depth[x as usize]
                })
                .collect();
            let next = profiles.len() as u32;
            classes.push(*profiles.entry(profile).or_insert(next));
        }
        classes
    }

    /// The unique ⪯-smallest member, or a witness pair falsifying
    /// uniqueness at desk scale.
    pub fn oracle_part_minimum(&self, members: &[u32]) -> Result<u32, (u32, u32)> {
        assert!(!members.is_empty());
        let min_depth = members.iter().map(|&x| self.depth[x as usize]).min().unwrap();
        let shallow: Vec<u32> = members
            .iter()
            .copied()
            .filter(|&x| self.depth[x as usize] == min_depth)
            .collect();
        if shallow.len() > 1 {
            return Err((shallow[0], shallow[1]));
        }
        let m = shallow[0];
        for &y in members {
            if !self.oracle_weak_leq(m, y) {
                return Err((m, y));
            }
        }
        Ok(m)
    }
}

/// Extract a positive multiple of the reflection's positive root from
/// its matrix: every nonzero column of (refl − id) is such a multiple,
/// up to the sign fixed by the root-coordinate signs.
fn reflection_direction(w: &CoxeterGroup, refl: &Mat) -> Vec<FieldElem> {
    let f = w.field();
    let n = refl.n();
    for j in 0..n {
        let mut col: Vec<FieldElem> = (0..n).map(|i| refl.at(i, j).clone()).collect();
        col[j] = f.sub(&col[j], &f.one());
        if col.iter().any(|e| !e.is_zero()) {
            return match w.root_sign(&col) {
                Sign::Positive => col,
                Sign::Negative => col.iter().map(|e| f.neg(e)).collect(),
            };
        }
    }
    panic!("reflection matrix equals the identity");
}

/// Relabel class ids by first appearance so partitions compare by Eq.
fn canonical_classes<I: IntoIterator<Item = u32>>(classes: I) -> Vec<u32> {
    let mut relabel: HashMap<u32, u32> = HashMap::new();
    classes
        .into_iter()
        .map(|c| {
            let next = relabel.len() as u32;
            *relabel.entry(c).or_insert(next)
        })
        .collect()
}
