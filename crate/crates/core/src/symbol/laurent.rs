use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::scalar::{czero, unit, Real};

/// Finite Laurent polynomial `Σ_{n=n_min}^{n_max} c_n tⁿ`.
///
/// Coefficients outside the stored range are zero. The zero polynomial is
/// stored with an empty coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial<T> {
    n_min: i64,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> LaurentPolynomial<T> {
    pub fn new(n_min: i64, coeffs: Vec<Complex<T>>) -> Self {
        let mut p = Self { n_min, coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { n_min: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(n: i64, c: Complex<T>) -> Self {
        Self::new(n, vec![c])
    }

    pub fn from_map(map: &BTreeMap<i64, Complex<T>>) -> Self {
        match (map.keys().next(), map.keys().next_back()) {
            (Some(&lo), Some(&hi)) => {
                let mut coeffs = vec![czero(); (hi - lo + 1) as usize];
                for (&n, &v) in map {
                    coeffs[(n - lo) as usize] = v;
                }
                Self::new(lo, coeffs)
            }
            _ => Self::zero(),
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.re.is_zero() && c.im.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.re.is_zero() && c.im.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.n_min += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.n_min = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest stored degree (0 for the zero polynomial).
    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    /// Highest stored degree (`n_min - 1` for the zero polynomial).
    pub fn n_max(&self) -> i64 {
        self.n_min + self.coeffs.len() as i64 - 1
    }

    /// `max |n|` over nonzero coefficients.
    pub fn bandwidth(&self) -> usize {
        if self.is_zero() {
            0
        } else {
            self.n_min.abs().max(self.n_max().abs()) as usize
        }
    }

    pub fn coeff(&self, n: i64) -> Complex<T> {
        let idx = n - self.n_min;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            czero()
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex<T>)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.n_min + i as i64, *c))
    }

    /// Evaluates at an arbitrary nonzero complex point.
    pub fn eval(&self, t: Complex<T>) -> Complex<T> {
        if self.is_zero() {
            return czero();
        }
        let mut acc: Complex<T> = czero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + *c;
        }
        acc * t.powi(self.n_min as i32)
    }

    /// Evaluates at `e^{iθ}`.
    pub fn eval_angle(&self, theta: T) -> Complex<T> {
        self.eval(unit(theta))
    }

    /// `p(t⁻¹)`: degrees reflected.
    pub fn tilde(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(-self.n_max(), coeffs)
    }

    /// Coefficient-wise conjugate composed with reflection, i.e. the polynomial
    /// whose values on the circle are the complex conjugates of `self`.
    pub fn conj_on_circle(&self) -> Self {
        let mut coeffs: Vec<_> = self.coeffs.iter().map(|c| c.conj()).collect();
        coeffs.reverse();
        Self::new(-self.n_max(), coeffs)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.n_min, self.coeffs.iter().map(|c| *c * s).collect())
    }

    /// Keeps only the terms with degree in `[lo, hi]`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        let map: BTreeMap<i64, Complex<T>> = self.terms().filter(|(n, _)| *n >= lo && *n <= hi).collect();
        Self::from_map(&map)
    }

    /// `p(e^{iα} t)`.
    pub fn rotate(&self, alpha: T) -> Self {
        let coeffs = self.terms().map(|(n, c)| c * unit(alpha * T::from_i64_lossy(n))).collect();
        Self::new(self.n_min, coeffs)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let lo = self.n_min.min(other.n_min);
        let hi = self.n_max().max(other.n_max());
        (lo..=hi).fold(T::zero(), |m, n| m.max((self.coeff(n) - other.coeff(n)).norm()))
    }
}

impl<T: Real> Add for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;

    fn add(self, rhs: Self) -> LaurentPolynomial<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.n_min.min(rhs.n_min);
        let hi = self.n_max().max(rhs.n_max());
        LaurentPolynomial::new(lo, (lo..=hi).map(|n| self.coeff(n) + rhs.coeff(n)).collect())
    }
}

impl<T: Real> Sub for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;

    fn sub(self, rhs: Self) -> LaurentPolynomial<T> {
        self + &(-rhs)
    }
}

impl<T: Real> Neg for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;

    fn neg(self) -> LaurentPolynomial<T> {
        LaurentPolynomial::new(self.n_min, self.coeffs.iter().map(|c| -*c).collect())
    }
}

impl<T: Real> Mul for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;

    fn mul(self, rhs: Self) -> LaurentPolynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs = vec![czero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += *a * *b;
            }
        }
        LaurentPolynomial::new(self.n_min + rhs.n_min, coeffs)
    }
}
