use num_complex::Complex;

use super::laurent::LaurentPolynomial;
use crate::error::{Error, Result};
use crate::quadrature::{fourier_coefficients, CirclePoint, FourierOptions};
use crate::scalar::{c, canonical_angle, cone, czero, two_pi, unit, Real};

/// Continuous nonvanishing factor `tᵐ·exp(g(t))`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothPart<T> {
    pub winding: i64,
    pub log_part: LaurentPolynomial<T>,
}

impl<T: Real> SmoothPart<T> {
    pub fn one() -> Self {
        Self { winding: 0, log_part: LaurentPolynomial::zero() }
    }

    pub fn new(winding: i64, log_part: LaurentPolynomial<T>) -> Self {
        Self { winding, log_part }
    }

    pub fn power(m: i64) -> Self {
        Self { winding: m, log_part: LaurentPolynomial::zero() }
    }

    pub fn is_one(&self) -> bool {
        self.winding == 0 && self.log_part.is_zero()
    }

    pub fn eval_angle(&self, theta: T) -> Complex<T> {
        let g = self.log_part.eval_angle(theta);
        unit(T::from_i64_lossy(self.winding) * theta) * g.exp()
    }

    pub fn tilde(&self) -> Self {
        Self { winding: -self.winding, log_part: self.log_part.tilde() }
    }

    pub fn inverse(&self) -> Self {
        Self { winding: -self.winding, log_part: -&self.log_part }
    }

    pub fn conj(&self) -> Self {
        Self { winding: -self.winding, log_part: self.log_part.conj_on_circle() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { winding: self.winding + other.winding, log_part: &self.log_part + &other.log_part }
    }

    /// `b(e^{iα}t)`; the constant `e^{iαm}` is absorbed into `g₀`.
    pub fn rotate(&self, alpha: T) -> Self {
        let shift = LaurentPolynomial::constant(c(T::zero(), alpha * T::from_i64_lossy(self.winding)));
        Self { winding: self.winding, log_part: &self.log_part.rotate(alpha) + &shift }
    }
}

/// Canonical jump `t_β(e^{i(θ−θ_r)})`, where `t_β(e^{iθ}) = exp(iβ(θ−π))` on `0 < θ < 2π`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JumpFactor<T> {
    pub theta: T,
    pub beta: Complex<T>,
}

impl<T: Real> JumpFactor<T> {
    pub fn new(theta: T, beta: Complex<T>) -> Self {
        Self { theta: canonical_angle(theta), beta }
    }

    /// Value at relative angle `v ∈ (−π, π]` from the jump location. `v = 0`
    /// takes the branch `θ = 0`, i.e. the limit from above.
    pub fn eval_relative(&self, v: T) -> Complex<T> {
        let u = if v >= T::zero() { v } else { v + two_pi::<T>() };
        (Complex::<T>::i() * self.beta * (u - T::PI())).exp()
    }

    /// `(φ₊, φ₋) = (e^{−iπβ}, e^{iπβ})`.
    pub fn limits(&self) -> (Complex<T>, Complex<T>) {
        let a = Complex::<T>::i() * self.beta * T::PI();
        ((-a).exp(), a.exp())
    }

    /// `e^{2πiβ}`.
    pub fn ratio(&self) -> Complex<T> {
        (Complex::<T>::i() * self.beta * two_pi::<T>()).exp()
    }

    pub fn location(&self) -> Complex<T> {
        unit(self.theta)
    }
}

/// Piecewise continuous symbol `b · Π t_{β_r}(e^{i(θ−θ_r)})` on `H^p`.
#[derive(Clone, Debug, PartialEq)]
pub struct PCSymbol<T> {
    p: T,
    smooth: SmoothPart<T>,
    jumps: Vec<JumpFactor<T>>,
}

impl<T: Real> PCSymbol<T> {
    pub fn new(p: T, smooth: SmoothPart<T>, jumps: Vec<JumpFactor<T>>) -> Result<Self> {
        if !(p > T::one()) || !p.is_finite() {
            return Err(Error::InvalidExponent { p: p.as_f64() });
        }
        let mut jumps: Vec<_> = jumps.into_iter().map(|j| JumpFactor::new(j.theta, j.beta)).collect();
        jumps.sort_by(|a, b| a.theta.partial_cmp(&b.theta).unwrap());
        for w in jumps.windows(2) {
            if w[0].theta == w[1].theta {
                return Err(Error::DuplicateJump { theta: w[0].theta.as_f64() });
            }
        }
        if jumps.iter().any(|j| !j.theta.is_finite() || !j.beta.re.is_finite() || !j.beta.im.is_finite()) {
            return Err(Error::InvalidArgument("jump parameters must be finite".into()));
        }
        Ok(Self { p, smooth, jumps })
    }

    pub fn constant_one(p: T) -> Result<Self> {
        Self::new(p, SmoothPart::one(), Vec::new())
    }

    pub fn smooth(p: T, smooth: SmoothPart<T>) -> Result<Self> {
        Self::new(p, smooth, Vec::new())
    }

    /// Single jump `t_β` at `θ`.
    pub fn jump(p: T, theta: T, beta: Complex<T>) -> Result<Self> {
        Self::new(p, SmoothPart::one(), vec![JumpFactor::new(theta, beta)])
    }

    pub fn p(&self) -> T {
        self.p
    }

    /// Conjugate exponent `p/(p−1)`.
    pub fn q(&self) -> T {
        self.p / (self.p - T::one())
    }

    pub fn smooth_part(&self) -> &SmoothPart<T> {
        &self.smooth
    }

    pub fn jumps(&self) -> &[JumpFactor<T>] {
        &self.jumps
    }

    pub fn jump_at(&self, theta: T) -> Option<&JumpFactor<T>> {
        let t = canonical_angle(theta);
        self.jumps.iter().find(|j| j.theta == t)
    }

    pub fn with_smooth(&self, smooth: SmoothPart<T>) -> Self {
        Self { p: self.p, smooth, jumps: self.jumps.clone() }
    }

    pub fn with_jumps(&self, jumps: Vec<JumpFactor<T>>) -> Result<Self> {
        Self::new(self.p, self.smooth.clone(), jumps)
    }

    pub fn eval(&self, theta: T) -> Result<Complex<T>> {
        if let Some(j) = self.jump_at(theta) {
            return Err(Error::OnJump { theta: j.theta.as_f64() });
        }
        Ok(self.eval_at(CirclePoint::at(theta)))
    }

    /// Evaluation at a quadrature point. Offsets relative to each jump are
    /// taken exactly when the anchor sits on that jump.
    pub fn eval_at(&self, pt: CirclePoint<T>) -> Complex<T> {
        let mut v = self.smooth.eval_angle(pt.theta());
        for j in &self.jumps {
            v *= j.eval_relative(pt.relative_to(j.theta));
        }
        v
    }

    /// Jump product `Π t_{β_r}` alone.
    pub fn jump_product_at(&self, pt: CirclePoint<T>) -> Complex<T> {
        self.jumps.iter().fold(cone(), |acc, j| acc * j.eval_relative(pt.relative_to(j.theta)))
    }

    /// `(φ₊(τ), φ₋(τ))` with `τ = e^{iθ}`.
    pub fn one_sided_limits(&self, theta: T) -> (Complex<T>, Complex<T>) {
        let t = canonical_angle(theta);
        let base = self.smooth.eval_angle(t);
        let (mut plus, mut minus) = (base, base);
        for j in &self.jumps {
            if j.theta == t {
                let (a, b) = j.limits();
                plus *= a;
                minus *= b;
            } else {
                let v = j.eval_relative(CirclePoint::at(t).relative_to(j.theta));
                plus *= v;
                minus *= v;
            }
        }
        (plus, minus)
    }

    /// `φ₋(τ)/φ₊(τ)`, analytic.
    pub fn jump_ratio(&self, theta: T) -> Complex<T> {
        self.jump_at(theta).map_or_else(cone, |j| j.ratio())
    }

    /// `t ↦ φ(t⁻¹)`.
    pub fn tilde(&self) -> Self {
        let jumps = self.jumps.iter().map(|j| JumpFactor::new(two_pi::<T>() - j.theta, -j.beta)).collect();
        Self::new(self.p, self.smooth.tilde(), jumps).expect("reflection preserves validity")
    }

    /// Pointwise inverse.
    pub fn inverse(&self) -> Self {
        let jumps = self.jumps.iter().map(|j| JumpFactor { theta: j.theta, beta: -j.beta }).collect();
        Self { p: self.p, smooth: self.smooth.inverse(), jumps }
    }

    /// Pointwise complex conjugate on the circle.
    pub fn conj(&self) -> Self {
        let jumps = self.jumps.iter().map(|j| JumpFactor { theta: j.theta, beta: -j.beta.conj() }).collect();
        Self { p: self.p, smooth: self.smooth.conj(), jumps }
    }

    /// `t ↦ φ(e^{iα}t)`.
    pub fn rotate(&self, alpha: T) -> Self {
        let jumps = self.jumps.iter().map(|j| JumpFactor::new(j.theta - alpha, j.beta)).collect();
        Self::new(self.p, self.smooth.rotate(alpha), jumps).expect("rotation preserves validity")
    }

    /// Structured product. Exponents of jumps at a common location add;
    /// jumps whose exponent cancels exactly are dropped.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::MismatchedExponent { left: self.p.as_f64(), right: other.p.as_f64() });
        }
        let mut jumps = self.jumps.clone();
        for j in &other.jumps {
            match jumps.iter_mut().find(|k| k.theta == j.theta) {
                Some(k) => k.beta += j.beta,
                None => jumps.push(*j),
            }
        }
        jumps.retain(|j| !(j.beta.re.is_zero() && j.beta.im.is_zero()));
        Self::new(self.p, self.smooth.mul(&other.smooth), jumps)
    }

    /// Whether the symbol has no jumps and no exponential part, i.e. is `tᵐ`.
    pub fn is_monomial(&self) -> bool {
        self.jumps.is_empty() && self.smooth.log_part.is_zero()
    }

    pub fn breakpoints(&self) -> Vec<T> {
        self.jumps.iter().map(|j| j.theta).collect()
    }
}

/// Anything with computable Fourier coefficients.
pub trait FourierSource<T: Real>: Sync {
    fn fourier_coeffs(&self, n_min: i64, n_max: i64) -> Result<Vec<Complex<T>>>;
}

impl<T: Real> FourierSource<T> for PCSymbol<T> {
    fn fourier_coeffs(&self, n_min: i64, n_max: i64) -> Result<Vec<Complex<T>>> {
        if n_max < n_min {
            return Err(Error::InvalidArgument(format!("empty coefficient range [{n_min}, {n_max}]")));
        }
        if self.is_monomial() {
            let m = self.smooth.winding;
            return Ok((n_min..=n_max).map(|n| if n == m { cone() } else { czero() }).collect());
        }
        fourier_coefficients(|pt| self.eval_at(pt), &self.breakpoints(), n_min, n_max, &FourierOptions::default())
    }
}

impl<T: Real> FourierSource<T> for LaurentPolynomial<T> {
    fn fourier_coeffs(&self, n_min: i64, n_max: i64) -> Result<Vec<Complex<T>>> {
        Ok((n_min..=n_max).map(|n| self.coeff(n)).collect())
    }
}

/// Precomputed coefficients on a fixed window; requests outside it fail.
#[derive(Clone, Debug)]
pub struct CoefficientTable<T> {
    pub n_min: i64,
    pub values: Vec<Complex<T>>,
}

impl<T: Real> CoefficientTable<T> {
    pub fn from_source<S: FourierSource<T> + ?Sized>(src: &S, n_min: i64, n_max: i64) -> Result<Self> {
        Ok(Self { n_min, values: src.fourier_coeffs(n_min, n_max)? })
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Complex<T> {
        self.values[(n - self.n_min) as usize]
    }
}

impl<T: Real> FourierSource<T> for CoefficientTable<T> {
    fn fourier_coeffs(&self, n_min: i64, n_max: i64) -> Result<Vec<Complex<T>>> {
        if n_min < self.n_min || n_max > self.n_max() {
            return Err(Error::InvalidArgument(format!(
                "coefficients [{n_min}, {n_max}] outside table [{}, {}]",
                self.n_min,
                self.n_max()
            )));
        }
        Ok((n_min..=n_max).map(|n| self.get(n)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let s = PCSymbol::jump(2.0, 0.0, cx(0.25, 0.0)).unwrap();
        assert!((s.eval(PI).unwrap() - cx(1.0, 0.0)).norm() < 1e-15);
        assert!(matches!(s.eval(0.0), Err(Error::OnJump { .. })));
        assert!(matches!(s.eval(2.0 * PI), Err(Error::OnJump { .. })));
        let t = PCSymbol::smooth(2.0, SmoothPart::power(1)).unwrap();
        assert!((t.eval(PI / 2.0).unwrap() - cx(0.0, 1.0)).norm() < 1e-15);
        let h = PCSymbol::jump(2.0, 0.0, cx(0.5, 0.0)).unwrap();
        assert!((h.eval(PI / 2.0).unwrap() - unit(-PI / 4.0)).norm() < 1e-15);
    }

    #[test]
    fn limits_and_ratio() {
        let s = PCSymbol::jump(2.0, 0.0, cx(0.25, 0.0)).unwrap();
        let (plus, minus) = s.one_sided_limits(0.0);
        assert!((plus - unit(-PI / 4.0)).norm() < 1e-15);
        assert!((minus - unit(PI / 4.0)).norm() < 1e-15);
        assert!((s.jump_ratio(0.0) - cx(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(s.jump_ratio(1.0), cx(1.0, 0.0));
    }

    #[test]
    fn validation() {
        assert!(matches!(PCSymbol::<f64>::constant_one(1.0), Err(Error::InvalidExponent { .. })));
        assert!(matches!(PCSymbol::<f64>::constant_one(f64::INFINITY), Err(Error::InvalidExponent { .. })));
        let dup = PCSymbol::new(
            2.0,
            SmoothPart::one(),
            vec![JumpFactor::new(0.0, cx(0.1, 0.0)), JumpFactor::new(2.0 * PI, cx(0.2, 0.0))],
        );
        assert!(matches!(dup, Err(Error::DuplicateJump { .. })));
        let a = PCSymbol::constant_one(2.0).unwrap();
        let b = PCSymbol::constant_one(3.0).unwrap();
        assert!(matches!(a.multiply(&b), Err(Error::MismatchedExponent { .. })));
    }

    #[test]
    fn multiply_merges_jumps() {
        let a = PCSymbol::jump(2.0, 0.0, cx(0.2, 0.0)).unwrap();
        let b = PCSymbol::jump(2.0, 0.0, cx(0.3, 0.0)).unwrap();
        let ab = a.multiply(&b).unwrap();
        assert_eq!(ab.jumps().len(), 1);
        assert!((ab.jumps()[0].beta - cx(0.5, 0.0)).norm() < 1e-15);
        let t = PCSymbol::smooth(2.0, SmoothPart::power(1)).unwrap();
        let one = t.multiply(&t.inverse()).unwrap();
        assert!(one.is_monomial() && one.smooth_part().winding == 0);
        assert!(a.multiply(&a.inverse()).unwrap().jumps().is_empty());
    }

    #[test]
    fn half_jump_mean() {
        let h = PCSymbol::jump(2.0, 0.0, cx(0.5, 0.0)).unwrap();
        let c0 = h.fourier_coeffs(0, 0).unwrap()[0];
        assert!((c0 - cx(2.0 / PI, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn coefficient_table_bounds() {
        let t = PCSymbol::smooth(2.0, SmoothPart::power(1)).unwrap();
        let tab = CoefficientTable::from_source(&t, -3, 3).unwrap();
        assert_eq!(tab.get(1), cx(1.0, 0.0));
        assert!(tab.fourier_coeffs(-4, 0).is_err());
    }
}
