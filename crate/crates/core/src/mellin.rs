//! Local Mellin symbols at the points of the circle.

use std::fmt;

use nalgebra::Matrix2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fredholm::PAIR_TOLERANCE;
use crate::scalar::{canonical_angle, two_pi, Real};
use crate::symbol::PCSymbol;

pub const DEFAULT_Z_MAX: f64 = 12.0;
pub const DEFAULT_STEPS: usize = 2048;
/// Sweep minimum below which a local symbol counts as vanishing.
pub const VANISHING_THRESHOLD: f64 = 1e-6;

/// `(s, n) = (coth((z + i/p)π), 1/sinh((z + i/p)π))`.
///
/// Evaluated through `e^{−2|w|}` so that large `|z|` neither overflows nor
/// loses the exponentially small part of `n`.
pub fn s_and_n<T: Real>(z: T, p: T) -> (Complex<T>, Complex<T>) {
    let w = Complex::new(z, T::one() / p) * T::PI();
    let (w, sign) = if w.re < T::zero() { (-w, -T::one()) } else { (w, T::one()) };
    let e2 = (-w * T::lit(2.0)).exp();
    let one = Complex::new(T::one(), T::zero());
    let denom = one - e2;
    let s = (one + e2) / denom;
    let n = (-w).exp() * T::lit(2.0) / denom;
    (s * sign, n * sign)
}

/// Boundary point at which a local symbol is formed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TauTag<T> {
    PlusOne,
    MinusOne,
    /// `τ = e^{iθ}`; any `θ` off `{0, π}` is folded into the upper half circle.
    Point {
        theta: T,
    },
}

impl<T: Real> fmt::Display for TauTag<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauTag::PlusOne => f.write_str("1"),
            TauTag::MinusOne => f.write_str("-1"),
            TauTag::Point { theta } => write!(f, "angle:{theta}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LocalSymbol<T> {
    /// `τ = ±1`: `b_τ(z) = (1+s+τn)φ₊ + (1−s−τn)φ₋`.
    Scalar { tau: i8, p: T, plus: Complex<T>, minus: Complex<T> },
    /// Conjugate pair `{τ, τ̄}`, `τ = e^{iθ}` with `0 < θ < π`.
    Pair { theta: T, p: T, plus_tau: Complex<T>, minus_tau: Complex<T>, plus_bar: Complex<T>, minus_bar: Complex<T> },
}

/// Value of a local symbol at a finite `z` or at `±∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LocalValue<T: Real> {
    Scalar(Complex<T>),
    Matrix(Matrix2<Complex<T>>),
}

impl<T: Real> LocalValue<T> {
    /// `|b|` for scalars, `|det b|` for matrices.
    pub fn modulus(&self) -> T {
        self.determinant().norm()
    }

    pub fn determinant(&self) -> Complex<T> {
        match self {
            LocalValue::Scalar(v) => *v,
            LocalValue::Matrix(m) => m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
        }
    }
}

pub fn local_symbol<T: Real>(sym: &PCSymbol<T>, tau: TauTag<T>) -> LocalSymbol<T> {
    let pi = T::PI();
    let tag = match tau {
        TauTag::Point { theta } => {
            let t = canonical_angle(theta);
            if t == T::zero() {
                TauTag::PlusOne
            } else if t == pi {
                TauTag::MinusOne
            } else {
                TauTag::Point { theta: if t > pi { two_pi::<T>() - t } else { t } }
            }
        }
        other => other,
    };
    match tag {
        TauTag::PlusOne | TauTag::MinusOne => {
            let (theta, tau) = if tag == TauTag::PlusOne { (T::zero(), 1) } else { (pi, -1) };
            let (plus, minus) = sym.one_sided_limits(theta);
            LocalSymbol::Scalar { tau, p: sym.p(), plus, minus }
        }
        TauTag::Point { theta } => {
            // use the declared location of a reflected jump when it exists
            let reflected = canonical_angle(two_pi::<T>() - theta);
            let tol = T::lit(PAIR_TOLERANCE);
            let mirror =
                sym.jumps().iter().map(|j| j.theta).find(|&t| (t - reflected).abs() <= tol).unwrap_or(reflected);
            let theta = sym.jumps().iter().map(|j| j.theta).find(|&t| (t - theta).abs() <= tol).unwrap_or(theta);
            let (plus_tau, minus_tau) = sym.one_sided_limits(theta);
            let (plus_bar, minus_bar) = sym.one_sided_limits(mirror);
            LocalSymbol::Pair { theta, p: sym.p(), plus_tau, minus_tau, plus_bar, minus_bar }
        }
    }
}

impl<T: Real> LocalSymbol<T> {
    pub fn p(&self) -> T {
        match self {
            LocalSymbol::Scalar { p, .. } | LocalSymbol::Pair { p, .. } => *p,
        }
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, LocalSymbol::Pair { .. })
    }

    pub fn value(&self, z: T) -> LocalValue<T> {
        let (s, n) = s_and_n(z, self.p());
        let one = Complex::new(T::one(), T::zero());
        match *self {
            LocalSymbol::Scalar { tau, plus, minus, .. } => {
                let tn = n * T::from_i64_lossy(tau as i64);
                LocalValue::Scalar((one + s + tn) * plus + (one - s - tn) * minus)
            }
            LocalSymbol::Pair { plus_tau, minus_tau, plus_bar, minus_bar, .. } => LocalValue::Matrix(Matrix2::new(
                (one + s) * plus_tau + (one - s) * minus_bar,
                n * (plus_bar - minus_tau),
                n * (plus_tau - minus_bar),
                (one - s) * minus_tau + (one + s) * plus_bar,
            )),
        }
    }

    /// `b(+∞)`: `2φ₊(τ)`, or `2·diag(φ₊(τ), φ₊(τ̄))`.
    pub fn at_plus_infinity(&self) -> LocalValue<T> {
        let two = T::lit(2.0);
        match *self {
            LocalSymbol::Scalar { plus, .. } => LocalValue::Scalar(plus * two),
            LocalSymbol::Pair { plus_tau, plus_bar, .. } => LocalValue::Matrix(Matrix2::new(
                plus_tau * two,
                Complex::new(T::zero(), T::zero()),
                Complex::new(T::zero(), T::zero()),
                plus_bar * two,
            )),
        }
    }

    /// `b(−∞)`: `2φ₋(τ)`, or `2·diag(φ₋(τ̄), φ₋(τ))`.
    pub fn at_minus_infinity(&self) -> LocalValue<T> {
        let two = T::lit(2.0);
        match *self {
            LocalSymbol::Scalar { minus, .. } => LocalValue::Scalar(minus * two),
            LocalSymbol::Pair { minus_tau, minus_bar, .. } => LocalValue::Matrix(Matrix2::new(
                minus_bar * two,
                Complex::new(T::zero(), T::zero()),
                Complex::new(T::zero(), T::zero()),
                minus_tau * two,
            )),
        }
    }
}

/// Closed form `2(1+s)φ₊(τ)φ₊(τ̄) + 2(1−s)φ₋(τ)φ₋(τ̄)`, checked against the
/// determinant of the assembled matrix.
pub fn det_local_symbol<T: Real>(ls: &LocalSymbol<T>, z: T) -> Result<Complex<T>> {
    let LocalSymbol::Pair { p, plus_tau, minus_tau, plus_bar, minus_bar, .. } = *ls else {
        return Err(Error::InvalidArgument("determinant is defined for pair symbols only".into()));
    };
    let (s, _) = s_and_n(z, p);
    let one = Complex::new(T::one(), T::zero());
    let two = T::lit(2.0);
    let closed = (one + s) * plus_tau * plus_bar * two + (one - s) * minus_tau * minus_bar * two;
    let direct = ls.value(z).determinant();
    let scale = T::one().max(closed.norm()).max(direct.norm());
    if (closed - direct).norm() > T::lit(1e-12) * scale {
        return Err(Error::Inconsistent(format!(
            "closed-form determinant {closed} differs from direct determinant {direct} at z = {z}"
        )));
    }
    Ok(closed)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SweepPoint<T> {
    Finite(T),
    PlusInfinity,
    MinusInfinity,
}

impl<T: Real> SweepPoint<T> {
    fn order_key(&self) -> T {
        match self {
            SweepPoint::Finite(z) => *z,
            SweepPoint::PlusInfinity => T::infinity(),
            SweepPoint::MinusInfinity => T::neg_infinity(),
        }
    }
}

impl<T: Real> fmt::Display for SweepPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepPoint::Finite(z) => write!(f, "{z:?}"),
            SweepPoint::PlusInfinity => f.write_str("+inf"),
            SweepPoint::MinusInfinity => f.write_str("-inf"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SweepSample<T> {
    pub z: SweepPoint<T>,
    /// `b(z)` for scalar symbols, `det b(z)` for pairs.
    pub value: Complex<T>,
    pub modulus: T,
}

#[derive(Clone, Debug)]
pub struct SweepReport<T> {
    /// Finite samples in increasing `z` (grid plus refined minima), then `+∞`, `−∞`.
    pub samples: Vec<SweepSample<T>>,
    pub min_modulus: T,
    pub argmin: SweepPoint<T>,
    /// `min_modulus > 1e-6`.
    pub nonvanishing: bool,
}

const REFINE_ITERATIONS: usize = 80;
const MAX_REFINED: usize = 16;

fn scalar_value<T: Real>(ls: &LocalSymbol<T>, z: T) -> Result<Complex<T>> {
    if ls.is_pair() {
        det_local_symbol(ls, z)
    } else {
        Ok(ls.value(z).determinant())
    }
}

/// Samples `|b_τ|` (or `|det b_τ|`) on `steps + 1` equispaced points of
/// `[−z_max, z_max]`, refines every discrete local minimum by golden-section
/// search, and appends the analytic values at `±∞`.
pub fn sweep_nonvanishing<T: Real>(ls: &LocalSymbol<T>, z_max: T, steps: usize) -> Result<SweepReport<T>> {
    if steps < 64 {
        return Err(Error::InvalidArgument(format!("sweep needs at least 64 steps, got {steps}")));
    }
    if !(z_max > T::zero()) || !z_max.is_finite() {
        return Err(Error::InvalidArgument("z_max must be positive and finite".into()));
    }
    let h = z_max * T::lit(2.0) / T::from_usize_lossy(steps);
    let mut samples = Vec::with_capacity(steps + 3);
    for i in 0..=steps {
        let z = -z_max + h * T::from_usize_lossy(i);
        let v = scalar_value(ls, z)?;
        samples.push(SweepSample { z: SweepPoint::Finite(z), value: v, modulus: v.norm() });
    }

    let mut minima: Vec<usize> = (1..steps)
        .filter(|&i| samples[i].modulus <= samples[i - 1].modulus && samples[i].modulus <= samples[i + 1].modulus)
        .collect();
    minima.sort_by(|&a, &b| samples[a].modulus.partial_cmp(&samples[b].modulus).unwrap());
    minima.truncate(MAX_REFINED);
    let golden = T::lit(0.618_033_988_749_894_9);
    let mut refined = Vec::new();
    for i in minima {
        let (SweepPoint::Finite(mut a), SweepPoint::Finite(mut b)) = (samples[i - 1].z, samples[i + 1].z) else {
            continue;
        };
        let f = |z: T| scalar_value(ls, z).map(|v| v.norm());
        let mut x1 = b - golden * (b - a);
        let mut x2 = a + golden * (b - a);
        let (mut f1, mut f2) = (f(x1)?, f(x2)?);
        for _ in 0..REFINE_ITERATIONS {
            if f1 <= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - golden * (b - a);
                f1 = f(x1)?;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + golden * (b - a);
                f2 = f(x2)?;
            }
        }
        let z = if f1 <= f2 { x1 } else { x2 };
        let v = scalar_value(ls, z)?;
        refined.push(SweepSample { z: SweepPoint::Finite(z), value: v, modulus: v.norm() });
    }
    samples.extend(refined);
    samples.sort_by(|a, b| a.z.order_key().partial_cmp(&b.z.order_key()).unwrap());
    samples.dedup_by(|a, b| a.z == b.z);

    for (z, v) in
        [(SweepPoint::PlusInfinity, ls.at_plus_infinity()), (SweepPoint::MinusInfinity, ls.at_minus_infinity())]
    {
        let d = v.determinant();
        samples.push(SweepSample { z, value: d, modulus: d.norm() });
    }

    let best = samples
        .iter()
        .min_by(|a, b| {
            a.modulus.partial_cmp(&b.modulus).unwrap().then(a.z.order_key().partial_cmp(&b.z.order_key()).unwrap())
        })
        .copied()
        .expect("sweep has samples");
    Ok(SweepReport {
        samples,
        min_modulus: best.modulus,
        argmin: best.z,
        nonvanishing: best.modulus > T::lit(VANISHING_THRESHOLD),
    })
}

/// Local points where `sym` has to be swept: `±1` and one point per
/// conjugate pair carrying a jump.
pub fn sweep_points<T: Real>(sym: &PCSymbol<T>) -> Vec<TauTag<T>> {
    crate::fredholm::local_points(sym)
        .into_iter()
        .map(|pt| match pt.tag {
            crate::fredholm::LocationTag::PlusOne => TauTag::PlusOne,
            crate::fredholm::LocationTag::MinusOne => TauTag::MinusOne,
            crate::fredholm::LocationTag::Pair { theta } => TauTag::Point { theta },
        })
        .collect()
}

/// Whether every local symbol of `sym` stays above the vanishing threshold.
pub fn sweep_verdict<T: Real>(sym: &PCSymbol<T>, z_max: T, steps: usize) -> Result<bool> {
    for tau in sweep_points(sym) {
        if !sweep_nonvanishing(&local_symbol(sym, tau), z_max, steps)?.nonvanishing {
            return Ok(false);
        }
    }
    Ok(true)
}
