//! Scalar types for amplitudes and small dense eigenproblems.
//!
//! [`Dd`] is a double-double number (an unevaluated sum `hi + lo` of two
//! `f64`) with roughly 32 significant digits. The Krylov overlap matrix built
//! from Chebyshev moments is badly conditioned, so moments and the
//! canonical-orthogonalization solve are carried in this precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_complex::Complex;
use num_traits::{Num, One, Zero};

/// Real scalar usable for simulator amplitudes and eigen solves.
pub trait Real:
    Num
    + Copy
    + Send
    + Sync
    + fmt::Debug
    + PartialOrd
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    /// Unit roundoff of the type.
    const EPSILON: f64;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;

    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    /// `(cos(α/2), sin(α/2))` as an exactly normalised pair.
    fn half_angle(alpha: f64) -> (Self, Self);

    /// `(cos θ, sin θ)` as an exactly normalised pair.
    fn unit_phase(theta: f64) -> (Self, Self);

    /// Eigen-decomposition of the symmetric `n × n` row-major matrix `a`.
    /// Returns ascending eigenvalues and the matching eigenvectors as
    /// columns of a row-major `n × n` matrix.
    fn symmetric_eigen(a: &[Self], n: usize) -> (Vec<Self>, Vec<Self>) {
        jacobi_eigen(a, n)
    }
}

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON;

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn half_angle(alpha: f64) -> (f64, f64) {
        let (s, c) = (alpha / 2.0).sin_cos();
        (c, s)
    }

    fn unit_phase(theta: f64) -> (f64, f64) {
        let (s, c) = theta.sin_cos();
        (c, s)
    }

    fn symmetric_eigen(a: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
        let eig = nalgebra::DMatrix::from_row_slice(n, n, a).symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut vectors = vec![0.0; n * n];
        for (c, &i) in order.iter().enumerate() {
            for r in 0..n {
                vectors[r * n + c] = eig.eigenvectors[(r, i)];
            }
        }
        (values, vectors)
    }
}

/// Cyclic Jacobi eigen solver, accurate to the working precision of `R`.
pub fn jacobi_eigen<R: Real>(a: &[R], n: usize) -> (Vec<R>, Vec<R>) {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    let mut m = a.to_vec();
    let mut v = vec![R::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = R::one();
    }
    let scale: f64 = m
        .iter()
        .map(|x| x.to_f64() * x.to_f64())
        .sum::<f64>()
        .sqrt();
    let tol = R::EPSILON * scale;
    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| m[p * n + q].to_f64().powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.to_f64().abs() <= 0.1 * tol {
                    continue;
                }
                let two = R::from_f64(2.0);
                let theta = (m[q * n + q] - m[p * n + p]) / (two * apq);
                let t = if theta.to_f64().abs() > 1e100 {
                    R::one() / (two * theta)
                } else {
                    let r = (theta * theta + R::one()).sqrt();
                    if theta < R::zero() {
                        -R::one() / (r - theta)
                    } else {
                        R::one() / (theta + r)
                    }
                };
                let c = R::one() / (t * t + R::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (x, y) = (m[k * n + p], m[k * n + q]);
                    m[k * n + p] = c * x - s * y;
                    m[k * n + q] = s * x + c * y;
                }
                for k in 0..n {
                    let (x, y) = (m[p * n + k], m[q * n + k]);
                    m[p * n + k] = c * x - s * y;
                    m[q * n + k] = s * x + c * y;
                }
                for k in 0..n {
                    let (x, y) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * x - s * y;
                    v[k * n + q] = s * x + c * y;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[i * n + i]
            .partial_cmp(&m[j * n + j])
            .unwrap_or(Ordering::Equal)
    });
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors = vec![R::zero(); n * n];
    for (c, &i) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + c] = v[r * n + i];
        }
    }
    (values, vectors)
}

/// Double-double number `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn new(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.hi, f)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Add for Dd {
    type Output = Dd;

    fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Dd::renorm(s1, s2 + t2)
    }
}

impl Neg for Dd {
    type Output = Dd;

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;

    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;

    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        Dd::renorm(p, e + (self.hi * o.lo + self.lo * o.hi))
    }
}

impl Div for Dd {
    type Output = Dd;

    fn div(self, o: Dd) -> Dd {
        // Two Newton-style correction steps on the leading quotient.
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;

    fn rem(self, o: Dd) -> Dd {
        let q = (self / o).hi.trunc();
        self - o * Dd::new(q)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, o: Dd) {
        *self = *self + o;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, o: Dd) {
        *self = *self - o;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, o: Dd) {
        *self = *self * o;
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Dd::new(0.0)
    }

    fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd::new(1.0)
    }
}

impl Num for Dd {
    type FromStrRadixErr = std::num::ParseFloatError;

    fn from_str_radix(s: &str, _radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        s.parse::<f64>().map(Dd::new)
    }
}

impl Real for Dd {
    const EPSILON: f64 = 4.93e-32;

    fn from_f64(x: f64) -> Self {
        Dd::new(x)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::zero();
        }
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = (self - Dd { hi: p, lo: e }).hi;
        Dd::renorm(x, r / (2.0 * x))
    }

    fn half_angle(alpha: f64) -> (Dd, Dd) {
        let (s, c) = (alpha / 2.0).sin_cos();
        // Keep the smaller component and complete the larger so c² + s² = 1.
        if c.abs() < s.abs() {
            let c = Dd::new(c);
            let s_abs = (Dd::one() - c * c).sqrt();
            (c, if s < 0.0 { -s_abs } else { s_abs })
        } else {
            let s = Dd::new(s);
            let c_abs = (Dd::one() - s * s).sqrt();
            (if c < 0.0 { -c_abs } else { c_abs }, s)
        }
    }

    fn unit_phase(theta: f64) -> (Dd, Dd) {
        Dd::half_angle(2.0 * theta)
    }
}

/// Rounds a complex amplitude to `f64` components.
pub fn to_c64<R: Real>(z: Complex<R>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn from_c64<R: Real>(z: Complex<f64>) -> Complex<R> {
    Complex::new(R::from_f64(z.re), R::from_f64(z.im))
}
