//! Exact arithmetic in the real cyclotomic field ℚ(c), c = 2·cos(π/N).
//!
//! Every quantity derived from a Coxeter matrix with finite bond set
//! {m_st} lives in ℚ(2cos(π/N)) where N = lcm of the finite off-diagonal
//! bonds: the Tits form entries are −cos(π/m) = −D_{N/m}(c)/2 with D_k the
//! dilated Chebyshev polynomial (D_k(2cosθ) = 2cos kθ).  Elements are
//! represented as integer polynomials in `c` of degree < deg(ψ), reduced
//! modulo the minimal polynomial ψ of `c`, over a single positive integer
//! denominator.  The representation is canonical, so equality and hashing
//! are syntactic.
//!
//! Sign decisions are made by interval arithmetic: `c` is bracketed by a
//! certified rational interval (Machin's formula for π plus a truncated
//! Taylor series for cos, both alternating series with exact rational
//! terms, so the truncation error is bounded by the first omitted term).
//! A reduced nonzero element cannot evaluate to zero at `c` (ψ is its
//! minimal polynomial), so refining the interval always terminates.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element of ℚ(2cos π/N): `num[0] + num[1]·c + … + num[d−1]·c^{d−1}`
/// all over `den`.  Canonical: `den > 0`, gcd of all numerator
/// coefficients with `den` is 1, and the zero element is all-zero over 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    num: Box<[BigInt]>,
    den: BigInt,
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|a| a.is_zero())
    }

    /// True when the element lies in ℚ (only the constant coefficient is set).
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|a| a.is_zero())
    }

    pub fn numerator_coeffs(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    /// Renders as a single reduced fraction, e.g. `(c^2 + 2*c - 1)/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut poly = String::new();
        for (k, a) in self.num.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if poly.is_empty() {
                if a.is_negative() {
                    poly.push('-');
                }
            } else if a.is_negative() {
                poly.push_str(" - ");
            } else {
                poly.push_str(" + ");
            }
            let mag = a.abs();
            let lead = if mag.is_one() && k > 0 { String::new() } else { mag.to_string() };
            match k {
                0 => poly.push_str(&mag.to_string()),
                1 => {
                    poly.push_str(&lead);
                    if !lead.is_empty() {
                        poly.push('*');
                    }
                    poly.push('c');
                }
                _ => {
                    poly.push_str(&lead);
                    if !lead.is_empty() {
                        poly.push('*');
                    }
                    poly.push_str(&format!("c^{k}"));
                }
            }
        }
        if self.den.is_one() {
            write!(f, "{poly}")
        } else if self.num.iter().filter(|a| !a.is_zero()).count() == 1 {
            write!(f, "{poly}/{}", self.den)
        } else {
            write!(f, "({poly})/{}", self.den)
        }
    }
}

/// Dyadic bracket for c: the interval [lo/2^scale, hi/2^scale].  Keeping
/// the endpoints as plain integers at a power-of-two scale keeps the sign
/// evaluation loop in integer arithmetic (no gcd reduction per operation).
struct CBounds {
    lo: BigInt,
    hi: BigInt,
    scale: u32,
}

/// Arithmetic context for one field ℚ(2cos π/N).
///
/// All elements produced by a context have the same fixed degree; mixing
/// elements across contexts is a programming error (lengths will differ or
/// results will be nonsense, and debug builds assert).
pub struct FieldCtx {
    n: u32,
    min_poly: Vec<BigInt>,
    deg: usize,
    c_bounds: Mutex<CBounds>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("n", &self.n)
            .field("deg", &self.deg)
            .finish()
    }
}

impl FieldCtx {
    /// Builds the field for `c = 2cos(π/n)`, `n ≥ 2`.
    pub fn new(n: u32) -> FieldCtx {
        assert!(n >= 2, "field parameter N must be at least 2");
        let min_poly = min_poly_two_cos(n);
        let deg = min_poly.len() - 1;
        debug_assert_eq!(deg as u64, euler_phi(2 * n as u64) / 2);
        FieldCtx {
            n,
            min_poly,
            deg,
            c_bounds: Mutex::new(CBounds {
                lo: BigInt::zero(),
                hi: BigInt::from(2),
                scale: 0,
            }),
        }
    }

    /// The `N` in `c = 2cos(π/N)`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Degree of the field extension over ℚ (= φ(2N)/2).
    pub fn degree(&self) -> usize {
        self.deg
    }

    /// Minimal polynomial of `c`, ascending coefficients, monic.
    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            num: vec![BigInt::zero(); self.deg].into_boxed_slice(),
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldElem {
        let mut num = vec![BigInt::zero(); self.deg];
        num[0] = v.into();
        self.canon(num, BigInt::one())
    }

    pub fn from_ratio(&self, p: i64, q: i64) -> FieldElem {
        assert!(q != 0);
        let mut num = vec![BigInt::zero(); self.deg];
        num[0] = p.into();
        self.canon(num, q.into())
    }

    /// The generator `c` itself as a field element.
    pub fn gen_c(&self) -> FieldElem {
        let poly = vec![BigInt::zero(), BigInt::one()];
        FieldElem {
            num: self.reduce(poly).into_boxed_slice(),
            den: BigInt::one(),
        }
    }

    /// `2cos(π/m)` for a finite bond `m` dividing N.
    pub fn two_cos_pi_over(&self, m: u32) -> FieldElem {
        assert!(m >= 1 && self.n % m == 0, "bond {m} does not divide N={}", self.n);
        let d = chebyshev_dilated((self.n / m) as usize);
        self.canon(self.reduce(d), BigInt::one())
    }

    /// Reduces an integer polynomial in `c` modulo the minimal polynomial,
    /// returning exactly `deg` ascending coefficients.
    fn reduce(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.deg;
        while poly.len() > d {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - d;
            // min_poly is monic: subtract top·x^shift·(ψ − x^d).
            for (i, a) in self.min_poly[..d].iter().enumerate() {
                let t = &top * a;
                poly[shift + i] -= t;
            }
        }
        poly.resize(d, BigInt::zero());
        poly
    }

    /// Canonical form: strip the gcd of numerator content and denominator.
    fn canon(&self, num: Vec<BigInt>, den: BigInt) -> FieldElem {
        debug_assert_eq!(num.len(), self.deg);
        debug_assert!(!den.is_zero());
        if num.iter().all(|a| a.is_zero()) {
            return self.zero();
        }
        let mut g = den.abs();
        for a in &num {
            if !a.is_zero() {
                g = g.gcd(a);
            }
            if g.is_one() {
                break;
            }
        }
        if den.is_negative() {
            g = -g;
        }
        let num = num.into_iter().map(|a| a / &g).collect::<Vec<_>>();
        FieldElem {
            num: num.into_boxed_slice(),
            den: den / g,
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        debug_assert_eq!(a.num.len(), self.deg);
        let num = a
            .num
            .iter()
            .zip(b.num.iter())
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        self.canon(num, &a.den * &b.den)
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let num = a
            .num
            .iter()
            .zip(b.num.iter())
            .map(|(x, y)| x * &b.den - y * &a.den)
            .collect();
        self.canon(num, &a.den * &b.den)
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem {
            num: a.num.iter().map(|x| -x).collect(),
            den: a.den.clone(),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut conv = vec![BigInt::zero(); 2 * self.deg - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        self.canon(self.reduce(conv), &a.den * &b.den)
    }

    /// `a·k` for a small integer `k` (common in reflection formulas).
    pub fn mul_int(&self, a: &FieldElem, k: i64) -> FieldElem {
        let num = a.num.iter().map(|x| x * k).collect();
        self.canon(num, a.den.clone())
    }

    /// Sign of the real number the element denotes.
    pub fn sign(&self, a: &FieldElem) -> Ordering {
        if a.is_zero() {
            return Ordering::Equal;
        }
        if a.is_rational() {
            // den > 0, so the constant coefficient decides.
            return a.num[0].cmp(&BigInt::zero());
        }
        // Interval refinement; ψ is the minimal polynomial of c, so a
        // nonzero reduced element cannot vanish at c and this terminates.
        let mut bits = 64u32;
        loop {
            let (lo, hi, scale) = self.c_interval(bits);
            let (vlo, vhi) = eval_interval(&a.num, &lo, &hi, scale);
            if vlo.is_positive() {
                return Ordering::Greater;
            }
            if vhi.is_negative() {
                return Ordering::Less;
            }
            assert!(bits < (1 << 22), "sign refinement failed to converge");
            bits *= 2;
        }
    }

    pub fn cmp(&self, a: &FieldElem, b: &FieldElem) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        self.sign(&self.sub(a, b))
    }

    pub fn is_positive(&self, a: &FieldElem) -> bool {
        self.sign(a) == Ordering::Greater
    }

    pub fn is_negative(&self, a: &FieldElem) -> bool {
        self.sign(a) == Ordering::Less
    }

    /// Approximate value, for rendering only.
    pub fn to_f64(&self, a: &FieldElem) -> f64 {
        let c = 2.0 * (std::f64::consts::PI / self.n as f64).cos();
        let mut acc = 0.0;
        for coeff in a.num.iter().rev() {
            acc = acc * c + coeff.to_f64().unwrap_or(f64::NAN);
        }
        acc / a.den.to_f64().unwrap_or(f64::NAN)
    }

    /// Certified dyadic interval around `c`: `(lo, hi, scale)` with
    /// `lo/2^scale ≤ c ≤ hi/2^scale`, at least `bits` bits tight.
    fn c_interval(&self, bits: u32) -> (BigInt, BigInt, u32) {
        let mut guard = self.c_bounds.lock().unwrap();
        if guard.scale >= bits {
            return (guard.lo.clone(), guard.hi.clone(), guard.scale);
        }
        let tol = pow2_inv(bits + 4);
        let (pi_lo, pi_hi) = pi_bounds(&tol);
        let n = BigRational::from_integer(self.n.into());
        let x_lo = pi_lo / &n;
        let x_hi = pi_hi / &n;
        // cos is decreasing on [0, π], and 0 < π/N ≤ π/2.
        let (lo_at_hi, _) = cos_bounds(&x_hi, &tol);
        let (_, hi_at_lo) = cos_bounds(&x_lo, &tol);
        let two = BigRational::from_integer(2.into());
        // Outward dyadic rounding keeps the bracket certified.
        guard.lo = dyadic_floor(&(&two * lo_at_hi), bits);
        guard.hi = dyadic_ceil(&(&two * hi_at_lo), bits);
        guard.scale = bits;
        debug_assert!(guard.lo <= guard.hi);
        (guard.lo.clone(), guard.hi.clone(), guard.scale)
    }
}

fn dyadic_floor(r: &BigRational, bits: u32) -> BigInt {
    (r.numer() << bits).div_floor(r.denom())
}

fn dyadic_ceil(r: &BigRational, bits: u32) -> BigInt {
    (r.numer() << bits).div_ceil(r.denom())
}

/// Interval Horner evaluation of an integer polynomial over the dyadic
/// interval [lo/2^scale, hi/2^scale], all in integer arithmetic with
/// outward rounding.  Returns bounds at the same scale.
fn eval_interval(coeffs: &[BigInt], lo: &BigInt, hi: &BigInt, scale: u32) -> (BigInt, BigInt) {
    let mut rlo = BigInt::zero();
    let mut rhi = BigInt::zero();
    for a in coeffs.iter().rev() {
        // r ← r·[lo,hi] + a; products land at scale 2·scale and are shifted
        // back with floor (lower end) / ceil (upper end).
        let p1 = &rlo * lo;
        let p2 = &rlo * hi;
        let p3 = &rhi * lo;
        let p4 = &rhi * hi;
        let mut min = &p1;
        let mut max = &p1;
        for p in [&p2, &p3, &p4] {
            if p < min {
                min = p;
            }
            if p > max {
                max = p;
            }
        }
        let shifted = a << scale;
        let min = floor_shr(min, scale);
        let max = ceil_shr(max, scale);
        rlo = min + &shifted;
        rhi = max + shifted;
    }
    (rlo, rhi)
}

fn floor_shr(x: &BigInt, scale: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << scale))
}

fn ceil_shr(x: &BigInt, scale: u32) -> BigInt {
    x.div_ceil(&(BigInt::one() << scale))
}

fn pow2_inv(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// Certified bounds for π via Machin's formula
/// π = 16·arctan(1/5) − 4·arctan(1/239).
fn pi_bounds(tol: &BigRational) -> (BigRational, BigRational) {
    let t = tol / BigRational::from_integer(32.into());
    let (a5_lo, a5_hi) = arctan_inv_bounds(5, &t);
    let (a239_lo, a239_hi) = arctan_inv_bounds(239, &t);
    let c16 = BigRational::from_integer(16.into());
    let c4 = BigRational::from_integer(4.into());
    (&c16 * a5_lo - &c4 * a239_hi, &c16 * a5_hi - &c4 * a239_lo)
}

/// Bounds for arctan(1/x), x ≥ 2, by the alternating Leibniz series.
fn arctan_inv_bounds(x: i64, tol: &BigRational) -> (BigRational, BigRational) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = BigInt::from(x); // x^{2k+1}
    let mut sum = BigRational::zero();
    let mut k = 0u32;
    loop {
        let term = BigRational::new(BigInt::one(), &power * BigInt::from(2 * k as i64 + 1));
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power *= &x2;
        let next = BigRational::new(BigInt::one(), &power * BigInt::from(2 * k as i64 + 3));
        if &next < tol {
            // Alternating with decreasing terms: error within ±next.
            return (&sum - &next, sum + next);
        }
        k += 1;
    }
}

/// Bounds for cos(x), 0 ≤ x ≤ 2, by the Taylor series (terms decrease in
/// magnitude from the x⁴ term on, so the tail is bounded by the next term).
fn cos_bounds(x: &BigRational, tol: &BigRational) -> (BigRational, BigRational) {
    debug_assert!(!x.is_negative() && *x <= BigRational::from_integer(2.into()));
    let x2 = x * x;
    let mut term = BigRational::one(); // |x^{2k}/(2k)!|
    let mut sum = BigRational::one();
    let mut k = 0u32;
    loop {
        k += 1;
        let d = BigInt::from(2 * k as i64 - 1) * BigInt::from(2 * k as i64);
        term = term * &x2 / BigRational::from_integer(d);
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        if k >= 2 && &term < tol {
            return (&sum - &term, &sum + &term);
        }
    }
}

/// Dilated Chebyshev polynomial D_k with D_k(2cosθ) = 2cos(kθ):
/// D_0 = 2, D_1 = y, D_{k+1} = y·D_k − D_{k−1}.  Ascending coefficients.
fn chebyshev_dilated(k: usize) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = vec![2.into()];
    if k == 0 {
        return prev;
    }
    let mut cur: Vec<BigInt> = vec![0.into(), 1.into()];
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, a) in cur.iter().enumerate() {
            next[i + 1] += a;
        }
        for (i, a) in prev.iter().enumerate() {
            next[i] -= a;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Minimal polynomial of 2cos(π/n) over ℚ, ascending coefficients, monic.
///
/// 2cos(π/n) = ζ + ζ⁻¹ for ζ a primitive 2n-th root of unity, so the
/// minimal polynomial of degree φ(2n)/2 is obtained from the palindromic
/// cyclotomic polynomial Φ_{2n}(x) = x^d·ψ(x + 1/x) by expanding
/// x^k + x^{−k} = D_k(x + 1/x).
fn min_poly_two_cos(n: u32) -> Vec<BigInt> {
    let phi = cyclotomic(2 * n as u64);
    let deg = phi.len() - 1;
    debug_assert!(deg % 2 == 0 && deg >= 2);
    let d = deg / 2;
    let mut psi = vec![BigInt::zero(); d + 1];
    psi[0] = phi[d].clone();
    for k in 1..=d {
        let cheb = chebyshev_dilated(k);
        for (i, a) in cheb.iter().enumerate() {
            psi[i] += a * &phi[d + k];
        }
    }
    assert!(psi[d].is_one(), "real cyclotomic reduction must be monic");
    psi
}

/// Cyclotomic polynomial Φ_n, ascending coefficients.
fn cyclotomic(n: u64) -> Vec<BigInt> {
    // Φ_n = (x^n − 1) / Π_{d|n, d<n} Φ_d, computed recursively.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut quot = num;
    for d in 1..n {
        if n % d == 0 {
            quot = poly_div_exact(&quot, &cyclotomic(d));
        }
    }
    quot
}

/// Exact division of integer polynomials (monic divisor), asserting zero
/// remainder.  Ascending coefficients.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert!(b.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(db)];
    for i in (db..rem.len()).rev() {
        let coef = std::mem::take(&mut rem[i]);
        if coef.is_zero() {
            continue;
        }
        let qi = i - db;
        for (j, bc) in b[..db].iter().enumerate() {
            let t = &coef * bc;
            rem[qi + j] -= t;
        }
        quot[qi] = coef;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "polynomial division not exact");
    quot
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |v: Vec<BigInt>| v.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(cyclotomic(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(as_i64(cyclotomic(24)), vec![1, 0, 0, 0, -1, 0, 0, 0, 1]);
    }

    #[test]
    fn minimal_polynomials_of_two_cos() {
        let as_i64 = |v: Vec<BigInt>| v.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        // c = 2cos(π/2) = 0
        assert_eq!(as_i64(min_poly_two_cos(2)), vec![0, 1]);
        // c = 2cos(π/3) = 1
        assert_eq!(as_i64(min_poly_two_cos(3)), vec![-1, 1]);
        // c = 2cos(π/4) = √2
        assert_eq!(as_i64(min_poly_two_cos(4)), vec![-2, 0, 1]);
        // c = 2cos(π/5) = golden ratio
        assert_eq!(as_i64(min_poly_two_cos(5)), vec![-1, -1, 1]);
        // c = 2cos(π/6) = √3
        assert_eq!(as_i64(min_poly_two_cos(6)), vec![-3, 0, 1]);
        // c = 2cos(π/12) = (√6+√2)/2, root of y⁴ − 4y² + 1
        assert_eq!(as_i64(min_poly_two_cos(12)), vec![1, 0, -4, 0, 1]);
    }

    #[test]
    fn field_degree_matches_phi() {
        for (n, deg) in [(2u32, 1usize), (3, 1), (4, 2), (5, 2), (6, 2), (12, 4), (30, 8)] {
            assert_eq!(FieldCtx::new(n).degree(), deg, "N = {n}");
        }
    }

    #[test]
    fn arithmetic_and_canonical_form() {
        let f = FieldCtx::new(12);
        let c = f.gen_c();
        // c² = 2 + √3, so c⁴ − 4c² + 1 = 0.
        let c2 = f.mul(&c, &c);
        let c4 = f.mul(&c2, &c2);
        let back = f.add(&f.sub(&c4, &f.mul_int(&c2, 4)), &f.one());
        assert!(back.is_zero());
        // Halves cancel exactly.
        let h = f.from_ratio(1, 2);
        assert_eq!(f.add(&h, &h), f.one());
        // Canonical: 2/4 == 1/2.
        let q = f.from_ratio(2, 4);
        assert_eq!(q, h);
        // Denominator sign is normalized.
        assert_eq!(f.from_ratio(1, -2), f.from_ratio(-1, 2));
    }

    #[test]
    fn two_cos_values() {
        let f = FieldCtx::new(12);
        // 2cos(π/2) = 0, 2cos(π/3) = 1, 2cos(π/6) = √3, 2cos(π/4) = √2.
        assert!(f.two_cos_pi_over(2).is_zero());
        assert_eq!(f.two_cos_pi_over(3), f.one());
        let r3 = f.two_cos_pi_over(6);
        assert_eq!(f.mul(&r3, &r3), f.from_int(3));
        let r2 = f.two_cos_pi_over(4);
        assert_eq!(f.mul(&r2, &r2), f.from_int(2));
        // And the generator itself: 2cos(π/12).
        assert_eq!(f.two_cos_pi_over(12), f.gen_c());
    }

    #[test]
    fn signs_are_certified() {
        let f = FieldCtx::new(12);
        let c = f.gen_c(); // ≈ 1.93185
        assert_eq!(f.sign(&c), Ordering::Greater);
        assert_eq!(f.sign(&f.sub(&c, &f.from_int(2))), Ordering::Less);
        assert_eq!(f.sign(&f.sub(&c, &f.from_ratio(19, 10))), Ordering::Greater);
        // √3·√2 = √6 ≈ 2.449: compare against 49/20 = 2.45.
        let r6 = f.mul(&f.two_cos_pi_over(6), &f.two_cos_pi_over(4));
        assert_eq!(f.cmp(&r6, &f.from_ratio(49, 20)), Ordering::Less);
        assert_eq!(f.cmp(&r6, &f.from_ratio(24, 10)), Ordering::Greater);
        // Degenerate field: everything rational.
        let q = FieldCtx::new(2);
        assert_eq!(q.degree(), 1);
        assert!(q.gen_c().is_zero());
        assert_eq!(q.sign(&q.from_ratio(-3, 7)), Ordering::Less);
    }

    #[test]
    fn display_forms() {
        let f = FieldCtx::new(12);
        let e = f.add(&f.mul(&f.gen_c(), &f.gen_c()), &f.from_ratio(-1, 3));
        assert_eq!(e.to_string(), "(3*c^2 - 1)/3");
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(f.from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(f.gen_c().to_string(), "c");
    }

    #[test]
    fn golden_ratio_field() {
        let f = FieldCtx::new(5);
        let phi = f.gen_c(); // 2cos(π/5) = (1+√5)/2
        // φ² = φ + 1
        assert_eq!(f.mul(&phi, &phi), f.add(&phi, &f.one()));
        assert_eq!(f.sign(&f.sub(&phi, &f.from_ratio(8, 5))), Ordering::Greater);
        assert_eq!(f.sign(&f.sub(&phi, &f.from_ratio(13, 8))), Ordering::Less);
    }
}
