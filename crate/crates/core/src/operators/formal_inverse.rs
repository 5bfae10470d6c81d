use num_complex::Complex;

use crate::error::{Error, Result};
use crate::factorization::{one_minus_tinv, one_plus_tinv, AsymmetricFactorization, FactorBase};
use crate::quadrature::{fourier_coefficients, CirclePoint, FourierOptions};
use crate::scalar::{cone, czero, unit, Real};
use crate::symbol::LaurentPolynomial;

/// Element `f = (1 − t⁻¹) f₁` of the dense subspace `X₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct X1Element<T> {
    pub f1: LaurentPolynomial<T>,
}

impl<T: Real> X1Element<T> {
    pub fn new(f1: LaurentPolynomial<T>) -> Self {
        Self { f1 }
    }

    /// Coefficients of `f` itself.
    pub fn expand(&self) -> LaurentPolynomial<T> {
        let w = LaurentPolynomial::new(-1, vec![-cone::<T>(), cone()]);
        &w * &self.f1
    }

    /// `Pf`.
    pub fn riesz(&self) -> LaurentPolynomial<T> {
        let f = self.expand();
        f.restrict(0, f.n_max().max(0))
    }
}

/// `Bf = φ₀⁻¹ q = (1 + t⁻¹) φ₀⁻¹ r` with `q = p₁ + t⁻¹ p₁(t⁻¹)`,
/// `p₁ = P(φ₋⁻¹ f)` and `r` even.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalInverseImage<T> {
    pub p1: LaurentPolynomial<T>,
    pub q: LaurentPolynomial<T>,
    pub r: LaurentPolynomial<T>,
    /// Degree of `coeffs[0]`.
    pub n_min: i64,
    pub coeffs: Vec<Complex<T>>,
}

impl<T: Real> FormalInverseImage<T> {
    pub fn coeff(&self, n: i64) -> Complex<T> {
        let i = n - self.n_min;
        if i < 0 || i as usize >= self.coeffs.len() {
            czero()
        } else {
            self.coeffs[i as usize]
        }
    }

    /// `max |c_n − c_{−n−1}|`, zero exactly when `Bf` is `J`-invariant.
    pub fn j_defect(&self) -> T {
        (0..self.coeffs.len() as i64)
            .map(|i| self.n_min + i)
            .fold(T::zero(), |m, n| m.max((self.coeff(n) - self.coeff(-n - 1)).norm()))
    }
}

fn series_mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    let len = a.len().min(b.len());
    (0..len).map(|k| (0..=k).fold(czero(), |acc, j| acc + a[j] * b[k - j])).collect()
}

/// `(1 − a x)^α` to `len` terms.
fn binomial_series<T: Real>(a: Complex<T>, alpha: Complex<T>, len: usize) -> Vec<Complex<T>> {
    let mut out = Vec::with_capacity(len);
    let mut c = cone::<T>();
    for k in 0..len {
        out.push(c);
        let kk = T::from_usize_lossy(k);
        c = c * (Complex::new(kk, T::zero()) - alpha) / (kk + T::one()) * a;
    }
    out
}

/// `exp(Σ_{j≥1} F_j x^j)` to `len` terms.
fn exp_series<T: Real>(f: &[Complex<T>], len: usize) -> Vec<Complex<T>> {
    let mut e = vec![czero::<T>(); len];
    if len == 0 {
        return e;
    }
    e[0] = cone();
    for k in 1..len {
        let mut acc = czero::<T>();
        for j in 1..=k.min(f.len().saturating_sub(1)) {
            acc += f[j] * e[k - j] * T::from_usize_lossy(j);
        }
        e[k] = acc / T::from_usize_lossy(k);
    }
    e
}

/// Taylor coefficients in `x = t⁻¹` of `(1 − t⁻¹) φ₋⁻¹`, degrees `0..len`.
pub fn minus_inverse_series<T: Real>(fact: &AsymmetricFactorization<T>, len: usize) -> Vec<Complex<T>> {
    let mut f = vec![czero::<T>(); len.max(1)];
    for (j, slot) in f.iter_mut().enumerate().skip(1) {
        *slot = -fact.smooth_minus.coeff(-(j as i64));
    }
    let mut u = exp_series(&f, len);
    for term in &fact.minus_terms {
        debug_assert!(matches!(term.base, FactorBase::OneMinusTrTinv | FactorBase::OneMinusTinvTrinv));
        u = series_mul(&u, &binomial_series(unit(term.singular), -term.exponent, len));
    }
    let inv_gamma = cone::<T>() / fact.gamma;
    (0..len).map(|k| (u[k] - if k > 0 { u[k - 1] } else { czero() }) * inv_gamma).collect()
}

/// `B = L(φ₀⁻¹)(I + J) P L(φ₋⁻¹)` on `X₁` elements with `f₁` of degree at
/// most `max_degree`; coefficients of `φ₀⁻¹` are computed once.
#[derive(Clone, Debug)]
pub struct FormalInverse<'a, T: Real> {
    fact: &'a AsymmetricFactorization<T>,
    n_trunc: usize,
    max_degree: usize,
    series: Vec<Complex<T>>,
    /// `(1 + t⁻¹) φ₀⁻¹` on degrees `−reach..=reach`.
    zero_inv: Vec<Complex<T>>,
    reach: i64,
}

impl<'a, T: Real> FormalInverse<'a, T> {
    pub fn new(fact: &'a AsymmetricFactorization<T>, n_trunc: usize, max_degree: usize) -> Result<Self> {
        if fact.kappa != 0 {
            return Err(Error::NonzeroIndex { kappa: fact.kappa });
        }
        if n_trunc < max_degree + 1 {
            return Err(Error::TruncationInsufficient { n_trunc, needed: max_degree + 1 });
        }
        let reach = (n_trunc + max_degree + 1) as i64;
        let opts = FourierOptions { graded: true, ..FourierOptions::default() };
        let zero_inv = fourier_coefficients(
            |pt| one_plus_tinv(pt) * fact.zero_inv_at(pt),
            &fact.breakpoints(),
            -reach,
            reach,
            &opts,
        )?;
        let series = minus_inverse_series(fact, max_degree + 1);
        Ok(Self { fact, n_trunc, max_degree, series, zero_inv, reach })
    }

    pub fn factorization(&self) -> &AsymmetricFactorization<T> {
        self.fact
    }

    /// `p₁ = P(φ₋⁻¹ f)` and `q = p₁ + t⁻¹ p₁(t⁻¹)`.
    pub fn numerator(&self, f: &X1Element<T>) -> Result<(LaurentPolynomial<T>, LaurentPolynomial<T>)> {
        let b = f.f1.n_max().max(0) as usize;
        if b > self.max_degree {
            return Err(Error::TruncationInsufficient { n_trunc: self.max_degree, needed: b });
        }
        let u = &self.series;
        let p1: Vec<Complex<T>> =
            (0..=b).map(|n| (0..=b - n).fold(czero(), |acc, k| acc + u[k] * f.f1.coeff((n + k) as i64))).collect();
        let p1 = LaurentPolynomial::new(0, p1);
        let shift = LaurentPolynomial::monomial(-1, cone());
        let q = &p1 + &(&shift * &p1.tilde());
        Ok((p1, q))
    }

    pub fn apply(&self, f: &X1Element<T>) -> Result<FormalInverseImage<T>> {
        let (p1, q) = self.numerator(f)?;
        let r = divide_one_plus_tinv(&q)?;
        let n = self.n_trunc as i64;
        let coeffs = convolve(&r, &self.zero_inv, -self.reach, -n, n - 1);
        Ok(FormalInverseImage { p1, q, r, n_min: -n, coeffs })
    }
}

/// Exact quotient `q / (1 + t⁻¹)`; fails unless `q(−1) = 0`.
pub fn divide_one_plus_tinv<T: Real>(q: &LaurentPolynomial<T>) -> Result<LaurentPolynomial<T>> {
    if q.is_zero() {
        return Ok(LaurentPolynomial::zero());
    }
    // q_n = r_n + r_{n+1}, solved downwards from the top degree
    let (lo, hi) = (q.n_min(), q.n_max());
    let mut r = vec![czero::<T>(); (hi - lo) as usize];
    let mut next = czero::<T>();
    for n in (lo + 1..=hi).rev() {
        next = q.coeff(n) - next;
        r[(n - lo - 1) as usize] = next;
    }
    let rem = q.coeff(lo) - next;
    let scale = q.coeffs().iter().fold(T::one(), |m, c| m.max(c.norm()));
    if rem.norm() > T::lit(1e-9) * scale {
        return Err(Error::Inconsistent(format!("polynomial does not vanish at t = -1 (remainder {rem})")));
    }
    Ok(LaurentPolynomial::new(lo + 1, r))
}

/// Coefficients `lo..=hi` of `q·w`, where `w` is stored from degree `w_min`.
pub fn convolve<T: Real>(q: &LaurentPolynomial<T>, w: &[Complex<T>], w_min: i64, lo: i64, hi: i64) -> Vec<Complex<T>> {
    let w_max = w_min + w.len() as i64 - 1;
    (lo..=hi)
        .map(|n| {
            q.terms().fold(czero(), |acc, (m, c)| {
                let k = n - m;
                if k < w_min || k > w_max {
                    acc
                } else {
                    acc + c * w[(k - w_min) as usize]
                }
            })
        })
        .collect()
}

/// Applies the formal inverse to one element, returning the coefficients of
/// `Bf` on `[−n_trunc, n_trunc − 1]`.
pub fn apply_formal_inverse<T: Real>(
    fact: &AsymmetricFactorization<T>,
    f: &X1Element<T>,
    n_trunc: usize,
) -> Result<FormalInverseImage<T>> {
    FormalInverse::new(fact, n_trunc, f.f1.n_max().max(0) as usize)?.apply(f)
}

/// `(1 − t⁻¹)` at a point.
pub fn x1_weight<T: Real>(pt: CirclePoint<T>) -> Complex<T> {
    one_minus_tinv(pt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::factor_pc;
    use crate::symbol::{PCSymbol, SmoothPart};

    #[test]
    fn identity_symbol() {
        let fact = AsymmetricFactorization::<f64>::trivial(2.0);
        let f = X1Element::new(LaurentPolynomial::constant(Complex::new(1.0, 0.0)));
        let img = apply_formal_inverse(&fact, &f, 8).unwrap();
        assert!((img.coeff(0) - Complex::new(1.0, 0.0)).norm() < 1e-12);
        assert!((img.coeff(-1) - Complex::new(1.0, 0.0)).norm() < 1e-12);
        assert!((img.coeffs.iter().map(|c| c.norm()).sum::<f64>() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn division_by_one_plus_tinv() {
        let r =
            LaurentPolynomial::new(-2, vec![Complex::new(1.0, 0.5), Complex::new(-2.0, 0.0), Complex::new(0.0, 3.0)]);
        let w = LaurentPolynomial::new(-1, vec![Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)]);
        let back = divide_one_plus_tinv(&(&w * &r)).unwrap();
        assert!(back.max_abs_diff(&r) < 1e-14);
        assert!(divide_one_plus_tinv(&LaurentPolynomial::constant(Complex::new(1.0, 0.0))).is_err());
    }

    #[test]
    fn series_matches_pointwise() {
        let sym = PCSymbol::jump(2.0, 0.0, Complex::new(0.1, 0.05)).unwrap();
        let fact = factor_pc(&sym).unwrap();
        // (1 − t⁻¹)^{1.2+0.1i}: coefficients decay like k^{−2.2}
        let u = minus_inverse_series(&fact, 400);
        assert!(u[399].norm() < 1e-4);
        let pt = CirclePoint::at(2.0f64);
        let direct = x1_weight(pt) * fact.minus_inv_at(pt);
        let partial: Complex<f64> = u.iter().enumerate().map(|(k, c)| c * unit(-(k as f64) * 2.0)).sum();
        assert!((direct - partial).norm() < 1e-3);
    }

    #[test]
    fn rejects_nonzero_index_and_short_truncation() {
        let t = PCSymbol::smooth(2.0, SmoothPart::power(1)).unwrap();
        let fact = factor_pc(&t).unwrap();
        let f = X1Element::new(LaurentPolynomial::constant(Complex::new(1.0, 0.0)));
        assert!(matches!(apply_formal_inverse(&fact, &f, 8), Err(Error::NonzeroIndex { kappa: 1 })));
        let one = AsymmetricFactorization::<f64>::trivial(2.0);
        let f = X1Element::new(LaurentPolynomial::monomial(9, Complex::new(1.0, 0.0)));
        assert!(matches!(apply_formal_inverse(&one, &f, 8), Err(Error::TruncationInsufficient { .. })));
    }
}
