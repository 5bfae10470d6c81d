//! Scalar abstractions.
//!
//! All numerics are generic over [`Real`] (implemented for `f32` and `f64`).
//! Forbidden-class arithmetic for jump exponents is additionally generic over
//! [`ModularArith`], which admits exact rationals so that user-declared
//! exponents such as `1/4` or `3/8` can be compared without a tolerance.

use std::fmt;
use std::ops::Neg;

use nalgebra::DMatrix;
use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign};

/// Floating point scalar used throughout the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + nalgebra::Scalar + Default + fmt::Display + ModularArith + Send + Sync
{
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    fn from_i64_lossy(n: i64) -> Self {
        Self::from_i64(n).expect("i64 representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Singular values of a dense complex matrix, sorted in descending order.
    fn singular_values(m: &DMatrix<Complex<Self>>) -> Vec<Self>;
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            fn singular_values(m: &DMatrix<Complex<$t>>) -> Vec<$t> {
                if m.nrows() == 0 || m.ncols() == 0 {
                    return Vec::new();
                }
                let mut sv: Vec<$t> = m.clone().svd(false, false).singular_values.iter().copied().collect();
                sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
                sv
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);

/// `2π`.
pub fn two_pi<T: Real>() -> T {
    T::TAU()
}

/// Reduces an angle to the canonical range `[0, 2π)`.
pub fn canonical_angle<T: Real>(theta: T) -> T {
    let tau = two_pi::<T>();
    let mut r = theta % tau;
    if r < T::zero() {
        r += tau;
    }
    if r >= tau {
        r = T::zero();
    }
    r
}

/// Reduces an angle difference to `(-π, π]`.
pub fn principal_angle<T: Real>(theta: T) -> T {
    let pi = T::PI();
    let r = canonical_angle(theta);
    if r > pi {
        r - two_pi::<T>()
    } else {
        r
    }
}

/// `e^{iθ}`.
pub fn unit<T: Real>(theta: T) -> Complex<T> {
    Complex::from_polar(T::one(), theta)
}

/// Arithmetic needed to decide membership in residue classes `offset + ℤ`.
///
/// Implemented for floats and for exact rationals.
pub trait ModularArith: Clone + PartialOrd + Num + Neg<Output = Self> + fmt::Debug {
    fn floor_value(&self) -> Self;

    /// Integer value of an integral element.
    fn to_integer(&self) -> i64;

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    /// Representative of `x + ℤ` in `(-1/2, 1/2]`.
    fn reduce_principal(&self) -> Self {
        // x - ceil(x - 1/2)
        self.clone() - ceil_of(&(self.clone() - Self::half()))
    }

    /// Distance from `x` to the class `offset + ℤ`.
    fn distance_to_class(&self, offset: &Self) -> Self {
        let d = self.clone() - offset.clone();
        let frac = d.clone() - d.floor_value();
        let other = Self::one() - frac.clone();
        if frac < other {
            frac
        } else {
            other
        }
    }

    /// Integer `k` (as `Self`) such that `x - k` lies in `(upper - 1, upper]`.
    fn shift_below(&self, upper: &Self) -> Self {
        ceil_of(&(self.clone() - upper.clone()))
    }
}

fn ceil_of<M: ModularArith>(x: &M) -> M {
    let f = x.floor_value();
    if f == *x {
        f
    } else {
        f + M::one()
    }
}

impl ModularArith for f64 {
    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn to_integer(&self) -> i64 {
        self.round() as i64
    }
}

impl ModularArith for f32 {
    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn to_integer(&self) -> i64 {
        self.round() as i64
    }
}

impl ModularArith for Ratio<i64> {
    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn to_integer(&self) -> i64 {
        Ratio::to_integer(self)
    }
}

/// Exact rational view of a declared real parameter.
pub type Rational = Ratio<i64>;

/// Recovers a small-denominator rational whose nearest `f64` is exactly `x`.
///
/// Inputs are user-declared parameters (`0.25`, `1.3333333333333333`), so a
/// continued-fraction convergent with denominator at most `max_den` that
/// round-trips bit-exactly is taken as the intended exact value.
pub fn exact_rational(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let mut rem = x;
    for _ in 0..64 {
        let a = rem.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 || h2.abs() > i64::MAX as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (h1 as f64) / (k1 as f64) == x {
            return Some(Ratio::new(h1 as i64, k1 as i64));
        }
        let f = rem - a;
        if f == 0.0 {
            break;
        }
        rem = 1.0 / f;
    }
    None
}

pub fn rational_to<T: Real>(r: &Rational) -> T {
    T::lit(*r.numer() as f64) / T::lit(*r.denom() as f64)
}

pub(crate) fn is_zero_complex<T: Real>(z: Complex<T>) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

pub(crate) fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

pub(crate) fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

pub(crate) fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn canonical_angle_range() {
        assert_eq!(canonical_angle(-0.5f64), std::f64::consts::TAU - 0.5);
        assert_eq!(canonical_angle(std::f64::consts::TAU), 0.0);
        assert_eq!(canonical_angle(0.0f64), 0.0);
        assert!((principal_angle(3.5f64) - (3.5 - std::f64::consts::TAU)).abs() < 1e-15);
    }

    #[test]
    fn rational_recovery() {
        assert_eq!(exact_rational(0.25, 10_000), Some(Ratio::new(1, 4)));
        assert_eq!(exact_rational(4.0 / 3.0, 10_000), Some(Ratio::new(4, 3)));
        assert_eq!(exact_rational(0.375, 10_000), Some(Ratio::new(3, 8)));
        assert_eq!(exact_rational(-0.1, 10_000), Some(Ratio::new(-1, 10)));
        assert_eq!(exact_rational(std::f64::consts::PI, 10_000), None);
    }

    #[test]
    fn modular_reduction_exact() {
        let x = Ratio::new(9i64, 10);
        assert_eq!(x.reduce_principal(), Ratio::new(-1, 10));
        assert_eq!(Ratio::new(1i64, 2).reduce_principal(), Ratio::new(1, 2));
        assert_eq!(Ratio::new(-1i64, 2).reduce_principal(), Ratio::new(1, 2));
        let d = Ratio::new(1i64, 10).distance_to_class(&Ratio::new(1, 4));
        assert_eq!(d, Ratio::new(3, 20));
        assert_eq!(Ratio::new(5i64, 4).distance_to_class(&Ratio::new(1, 4)), Ratio::zero());
    }

    #[test]
    fn modular_shift() {
        let k = 0.9f64.shift_below(&0.25);
        assert_eq!(k, 1.0);
        assert!((0.9 - k - (-0.1)).abs() < 1e-15);
        assert_eq!(Ratio::new(1i64, 4).shift_below(&Ratio::new(1, 4)), Ratio::zero());
    }

    #[test]
    fn singular_values_sorted() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex::new(1.0f64, 0.0),
            Complex::new(0.0, 3.0),
            Complex::new(2.0, 0.0),
        ]));
        assert_eq!(f64::singular_values(&m), vec![3.0, 2.0, 1.0]);
    }
}
