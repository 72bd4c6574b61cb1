//! SVG pictures of affine rank-3 systems.
//!
//! An irreducible affine system of rank 3 acts on a Euclidean plane, and the
//! chambers of the ball become a patch of alcove triangles.  We draw that
//! patch and colour each alcove by the part it belongs to: Shi parts
//! (signature fibres) or cone-type parts (states of the minimal automaton).
//! The number of distinct colours used is reported back, so callers can
//! compare the picture against an independent part count.
//!
//! Geometry: the bilinear form has a one-dimensional radical spanned by
//! `delta = sum c_i alpha_i` with all `c_i > 0`.  The contragredient action
//! preserves the affine plane `{ f : f(delta) = 1 }`, on which the quotient
//! form induces a Euclidean metric.  The fundamental alcove has vertices
//! `v_j = e_j / c_j` in dual coordinates, and the alcove of `g` has vertices
//! whose dual coordinates are the rows of the matrix of `g^{-1}` divided by
//! the same `c_j`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automata::Dfa;
use crate::conetype::cone_state;
use crate::enumerate::Ball;
use crate::field::{FieldCtx, FieldElem};
use crate::group::CoxeterGroup;
use crate::roots::SmallRoots;
use crate::shi::signature;

/// Which partition of the chambers to colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    /// Shi parts: fibres of the small-inversion signature.  Also draws the
    /// lines of the small-root walls on top of the alcoves.
    Shi,
    /// Cone-type parts: fibres of the minimal automaton's state map.
    Cones,
}

/// A finished picture plus the number of distinct fills it uses.
#[derive(Debug)]
pub struct Rendering {
    pub svg: String,
    /// Distinct parts realised by the rendered alcoves (= distinct fill
    /// colours in the SVG).
    pub classes: usize,
}

/// Computes the radical direction `(c_0, c_1, c_2)` of the bilinear form,
/// normalised to have positive entries, or explains why the system is not
/// irreducible affine of rank 3.
fn affine_kernel(w: &CoxeterGroup) -> Result<Vec<FieldElem>, String> {
    if w.rank() != 3 {
        return Err(format!("rendering needs rank 3, got rank {}", w.rank()));
    }
    let f = w.field();
    let b = |i: usize, j: usize| w.bform_entry(i, j).clone();

    // Positive semidefinite with unit diagonal: every 2x2 principal minor
    // 1 - b_ij^2 must be nonnegative and the determinant must vanish.
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let m = f.sub(&f.one(), &f.mul(&b(i, j), &b(i, j)));
        if f.is_negative(&m) {
            return Err("form is indefinite; the system is not affine".into());
        }
    }
    let det = det3(f, &b);
    match f.sign(&det) {
        std::cmp::Ordering::Equal => {}
        std::cmp::Ordering::Greater => {
            return Err("form is definite; the group is finite, not affine".into())
        }
        std::cmp::Ordering::Less => {
            return Err("form is indefinite; the system is not affine".into())
        }
    }

    // The radical is the kernel, found as a cross product of two rows.
    let row = |i: usize| [b(i, 0), b(i, 1), b(i, 2)];
    let mut kernel = None;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = cross(f, &row(i), &row(j));
        if c.iter().any(|x| !x.is_zero()) {
            kernel = Some(c);
            break;
        }
    }
    let mut kernel = kernel.ok_or("form has rank at most 1; not an affine system")?;

    // Irreducible affine means the radical vector has no zero coordinate and
    // a uniform sign (the marks of the diagram).
    if kernel.iter().any(|x| x.is_zero()) {
        return Err("system is reducible; its alcoves are unbounded".into());
    }
    if f.is_negative(&kernel[0]) {
        for x in kernel.iter_mut() {
            *x = f.neg(x);
        }
    }
    if kernel.iter().any(|x| f.is_negative(x)) {
        return Err("radical direction has mixed signs; not an affine system".into());
    }
    Ok(kernel)
}

fn det3(f: &FieldCtx, b: &dyn Fn(usize, usize) -> FieldElem) -> FieldElem {
    let minor = |i: usize, j: usize, k: usize, l: usize| {
        f.sub(&f.mul(&b(i, k), &b(j, l)), &f.mul(&b(i, l), &b(j, k)))
    };
    let t0 = f.mul(&b(0, 0), &minor(1, 2, 1, 2));
    let t1 = f.mul(&b(0, 1), &minor(1, 2, 0, 2));
    let t2 = f.mul(&b(0, 2), &minor(1, 2, 0, 1));
    f.add(&f.sub(&t0, &t1), &t2)
}

fn cross(f: &FieldCtx, a: &[FieldElem; 3], b: &[FieldElem; 3]) -> Vec<FieldElem> {
    let c = |i: usize, j: usize| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
    vec![c(1, 2), c(2, 0), c(0, 1)]
}

/// Golden-angle palette: successive hues differ by ~137.5 degrees, so any
/// modest number of parts stays visually distinct.
fn fill_colour(class: usize) -> String {
    let hue = (class as f64 * 137.50776405003785).rem_euclid(360.0);
    let (r, g, b) = hsl_to_rgb(hue, 0.55, 0.72);
    format!("#{:02x}{:02x}{:02x}", r, g, b)
}

fn hsl_to_rgb(h: f64, s: f64, l: f64) -> (u8, u8, u8) {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp.rem_euclid(2.0) - 1.0).abs());
    let (r1, g1, b1) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let to = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    (to(r1), to(g1), to(b1))
}

/// Renders the ball of an irreducible affine rank-3 system as an SVG of
/// coloured alcove triangles.
///
/// `Shi` mode colours by signature and overlays the small-root wall lines;
/// `Cones` mode colours by the state of the minimal automaton.  Errors if
/// the system is not irreducible affine of rank 3.
pub fn render(
    ball: &Ball<'_>,
    sr: &SmallRoots,
    min_dfa: &Dfa,
    mode: RenderMode,
) -> Result<Rendering, String> {
    let w = ball.group();
    let f = w.field();
    let kernel = affine_kernel(w)?;
    let marks: Vec<f64> = kernel.iter().map(|c| f.to_f64(c)).collect();

    // Chart axes: a pair of simple roots with |B(a_p, a_q)| < 1 (any bond
    // below infinity).  The third coordinate is eliminated through the
    // radical constraint f(delta) = 1.
    let (p, q) = [(0usize, 1usize), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(i, j)| {
            let b = f.to_f64(w.bform_entry(i, j));
            1.0 - b * b > 1e-9
        })
        .ok_or("no pair of simple roots spans a Euclidean plane")?;
    let bpq = f.to_f64(w.bform_entry(p, q));
    let t = (1.0 - bpq * bpq).sqrt();

    // Orthonormalising chart map; y is negated because SVG's y axis points
    // down.
    let plot = |fp: f64, fq: f64| ((fp - bpq * fq) / t, -fq);

    let mut points: Vec<[(f64, f64); 3]> = Vec::with_capacity(ball.len());
    let mut class_of: Vec<usize> = Vec::with_capacity(ball.len());
    let mut shi_classes: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut cone_classes: HashMap<u32, usize> = HashMap::new();
    for id in 0..ball.len() as u32 {
        let g = ball.elt(id);
        let inv = g.inv_mat();
        let mut tri = [(0.0, 0.0); 3];
        for (j, corner) in tri.iter_mut().enumerate() {
            let fp = f.to_f64(inv.at(j, p)) / marks[j];
            let fq = f.to_f64(inv.at(j, q)) / marks[j];
            *corner = plot(fp, fq);
        }
        points.push(tri);
        let class = match mode {
            RenderMode::Shi => {
                let sig = signature(w, sr, g);
                let next = shi_classes.len();
                *shi_classes.entry(sig).or_insert(next)
            }
            RenderMode::Cones => {
                let state = cone_state(w, min_dfa, g);
                let next = cone_classes.len();
                *cone_classes.entry(state).or_insert(next)
            }
        };
        class_of.push(class);
    }
    let classes = shi_classes.len().max(cone_classes.len());

    let xs = points.iter().flatten().map(|p| p.0);
    let ys = points.iter().flatten().map(|p| p.1);
    let (min_x, max_x) = bounds(xs);
    let (min_y, max_y) = bounds(ys);
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let pad = span * 0.04;
    let view = (
        min_x - pad,
        min_y - pad,
        (max_x - min_x) + 2.0 * pad,
        (max_y - min_y) + 2.0 * pad,
    );
    let stroke = span * 0.004;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" \
         viewBox=\"{:.4} {:.4} {:.4} {:.4}\">",
        view.0, view.1, view.2, view.3
    );
    for (tri, &class) in points.iter().zip(&class_of) {
        let _ = writeln!(
            svg,
            "  <polygon points=\"{:.4},{:.4} {:.4},{:.4} {:.4},{:.4}\" \
             fill=\"{}\" stroke=\"#444444\" stroke-width=\"{:.4}\"/>",
            tri[0].0,
            tri[0].1,
            tri[1].0,
            tri[1].1,
            tri[2].0,
            tri[2].1,
            fill_colour(class),
            stroke
        );
    }

    if mode == RenderMode::Shi {
        // Each small root beta contributes the wall line f(beta) = 0.  In
        // chart coordinates the radical constraint turns this into an affine
        // line, clipped here against the view box.
        let k = 3 - p - q;
        for root in sr.roots() {
            let rv: Vec<f64> = root.iter().map(|x| f.to_f64(x)).collect();
            let a = rv[p] - rv[k] * marks[p] / marks[k];
            let b = rv[q] - rv[k] * marks[q] / marks[k];
            let c = rv[k] / marks[k];
            // Substitute the inverse chart map: fp = t*x - b*y', fq = -y'
            // (plot negates fq).
            let lx = a * t;
            let ly = -(a * bpq + b);
            if let Some(((x1, y1), (x2, y2))) = clip_line(lx, ly, c, view) {
                let _ = writeln!(
                    svg,
                    "  <line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" \
                     stroke=\"#111111\" stroke-width=\"{:.4}\"/>",
                    x1,
                    y1,
                    x2,
                    y2,
                    stroke * 2.5
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(Rendering { svg, classes })
}

fn bounds(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in vals {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Clips the line `lx*x + ly*y + c = 0` against the rectangle
/// `(x0, y0, width, height)`; returns the endpoints of the visible segment.
fn clip_line(
    lx: f64,
    ly: f64,
    c: f64,
    rect: (f64, f64, f64, f64),
) -> Option<((f64, f64), (f64, f64))> {
    let (x0, y0, w, h) = rect;
    let (x1, y1) = (x0 + w, y0 + h);
    let mut hits: Vec<(f64, f64)> = Vec::new();
    let mut push = |x: f64, y: f64| {
        if hits.iter().all(|&(px, py)| (px - x).abs() + (py - y).abs() > 1e-9) {
            hits.push((x, y));
        }
    };
    if ly.abs() > 1e-12 {
        for x in [x0, x1] {
            let y = -(lx * x + c) / ly;
            if (y0..=y1).contains(&y) {
                push(x, y);
            }
        }
    }
    if lx.abs() > 1e-12 {
        for y in [y0, y1] {
            let x = -(ly * y + c) / lx;
            if (x0..=x1).contains(&x) {
                push(x, y);
            }
        }
    }
    if hits.len() < 2 {
        return None;
    }
    // Take the farthest pair so corner grazing cannot truncate the segment.
    let mut best = (hits[0], hits[1]);
    let mut best_d = -1.0;
    for i in 0..hits.len() {
        for j in i + 1..hits.len() {
            let d = (hits[i].0 - hits[j].0).powi(2) + (hits[i].1 - hits[j].1).powi(2);
            if d > best_d {
                best_d = d;
                best = (hits[i], hits[j]);
            }
        }
    }
    Some(best)
}
