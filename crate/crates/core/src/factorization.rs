//! Asymmetric factorization `φ = φ₋ tᵏ φ₀` of piecewise continuous symbols.
//!
//! The jump part uses the closed-form product of binomial factors; the smooth
//! part `exp(g)` is split as
//! `φ₋ ∋ exp(Σ_{n≥1} (g_{−n} − g_n) t^{−n})`, `φ₀ ∋ exp(g₀ + Σ_{n≥1} g_n (tⁿ + t^{−n}))`,
//! which keeps `φ₋` one-sided and `φ₀` even.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fredholm::{analyze_with, ParameterSelection};
use crate::quadrature::{fourier_coefficients, CirclePoint, FourierOptions};
use crate::scalar::{canonical_angle, cone, is_zero_complex, unit, Real};
use crate::symbol::{LaurentPolynomial, PCSymbol};

/// Points closer than this to a breakpoint are left out of grid checks.
pub const GRID_EXCLUSION: f64 = 1e-3;
/// Truncation for the one-sided support defects.
pub const SUPPORT_TRUNCATION: i64 = 512;

/// Binomial base of a factor term, with `t_r = e^{iθ_r}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorBase {
    /// `1 − t_r t⁻¹`.
    OneMinusTrTinv,
    /// `1 − t⁻¹ t_r⁻¹`.
    OneMinusTinvTrinv,
    /// `1 − t t_r⁻¹`.
    OneMinusTTrinv,
    /// `1 − t t_r`.
    OneMinusTTr,
    /// `|1 − t t_r⁻¹|`; `|1 − t|` for `θ_r = 0`, `|1 + t|` for `θ_r = π`.
    AbsOneMinusTTrinv,
}

impl FactorBase {
    /// Whether the base is analytic outside the disk (a function of `t⁻¹`).
    pub fn is_exterior(&self) -> bool {
        matches!(self, FactorBase::OneMinusTrTinv | FactorBase::OneMinusTinvTrinv)
    }
}

/// `base^exponent` with principal branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorTerm<T> {
    pub base: FactorBase,
    pub exponent: Complex<T>,
    /// `θ_r` of the formula.
    pub theta_r: T,
    /// Where the base vanishes: `θ_r`, or the reflected point `−θ_r` as declared.
    pub singular: T,
}

/// `Log(1 − e^{iw})` for `w ∈ (−π, π] \ {0}`.
fn log_one_minus_unit<T: Real>(w: T) -> Complex<T> {
    let half = T::lit(0.5);
    let re = (T::lit(2.0) * (w * half).sin().abs()).ln();
    let im = (w - w.signum() * T::PI()) * half;
    Complex::new(re, im)
}

impl<T: Real> FactorTerm<T> {
    fn new(base: FactorBase, exponent: Complex<T>, theta_r: T, singular: T) -> Self {
        Self { base, exponent, theta_r, singular: canonical_angle(singular) }
    }

    /// Principal logarithm of the base at `pt`.
    pub fn log_base(&self, pt: CirclePoint<T>) -> Complex<T> {
        let v = pt.relative_to(self.singular);
        match self.base {
            FactorBase::OneMinusTrTinv | FactorBase::OneMinusTinvTrinv => log_one_minus_unit(-v),
            FactorBase::OneMinusTTrinv | FactorBase::OneMinusTTr => log_one_minus_unit(v),
            FactorBase::AbsOneMinusTTrinv => Complex::new(log_one_minus_unit(v).re, T::zero()),
        }
    }

    pub fn log_at(&self, pt: CirclePoint<T>) -> Complex<T> {
        self.exponent * self.log_base(pt)
    }

    pub fn eval_at(&self, pt: CirclePoint<T>) -> Complex<T> {
        self.log_at(pt).exp()
    }
}

impl<T: Real> fmt::Display for FactorTerm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.base {
            FactorBase::OneMinusTrTinv => "(1 - t_r t^-1)",
            FactorBase::OneMinusTinvTrinv => "(1 - t^-1 t_r^-1)",
            FactorBase::OneMinusTTrinv => "(1 - t t_r^-1)",
            FactorBase::OneMinusTTr => "(1 - t t_r)",
            FactorBase::AbsOneMinusTTrinv => "|1 - t t_r^-1|",
        };
        write!(f, "{base}^({}{:+}i) with t_r = e^(i*{})", self.exponent.re, self.exponent.im, self.theta_r)
    }
}

/// How `φ₀` is represented.
#[derive(Clone, Debug, PartialEq)]
pub enum ZeroSide<T> {
    /// `c₀·exp(h₀)·Π terms`.
    Structured,
    /// `t^{−κ} φ₋⁻¹ φ` evaluated from the symbol.
    Quotient(PCSymbol<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymmetricFactorization<T> {
    pub p: T,
    pub minus_terms: Vec<FactorTerm<T>>,
    /// `h₋` with `φ₋ ∋ exp(h₋)`; negative degrees only.
    pub smooth_minus: LaurentPolynomial<T>,
    /// Constant factor of `φ₋`.
    pub gamma: Complex<T>,
    pub kappa: i64,
    pub zero_terms: Vec<FactorTerm<T>>,
    /// `h₀` with `φ₀ ∋ exp(h₀)`; even.
    pub smooth_zero: LaurentPolynomial<T>,
    /// Constant factor of `φ₀`.
    pub zero_constant: Complex<T>,
    pub zero_side: ZeroSide<T>,
    /// Parameters the construction was built from, when it came from a symbol.
    pub selection: Option<ParameterSelection<T>>,
}

impl<T: Real> AsymmetricFactorization<T> {
    /// The factorization of `φ = 1`.
    pub fn trivial(p: T) -> Self {
        Self {
            p,
            minus_terms: Vec::new(),
            smooth_minus: LaurentPolynomial::zero(),
            gamma: cone(),
            kappa: 0,
            zero_terms: Vec::new(),
            smooth_zero: LaurentPolynomial::zero(),
            zero_constant: cone(),
            zero_side: ZeroSide::Structured,
            selection: None,
        }
    }

    pub fn log_minus_at(&self, pt: CirclePoint<T>) -> Complex<T> {
        self.minus_terms.iter().fold(self.smooth_minus.eval_angle(pt.theta()), |acc, t| acc + t.log_at(pt))
    }

    pub fn minus_at(&self, pt: CirclePoint<T>) -> Complex<T> {
        self.gamma * self.log_minus_at(pt).exp()
    }

    pub fn minus_inv_at(&self, pt: CirclePoint<T>) -> Complex<T> {
        (-self.log_minus_at(pt)).exp() / self.gamma
    }

    pub fn zero_at(&self, pt: CirclePoint<T>) -> Complex<T> {
        match &self.zero_side {
            ZeroSide::Structured => {
                let log =
                    self.zero_terms.iter().fold(self.smooth_zero.eval_angle(pt.theta()), |acc, t| acc + t.log_at(pt));
                self.zero_constant * log.exp()
            }
            ZeroSide::Quotient(sym) => {
                sym.eval_at(pt) * self.minus_inv_at(pt) * unit(-T::from_i64_lossy(self.kappa) * pt.theta())
            }
        }
    }

    pub fn zero_inv_at(&self, pt: CirclePoint<T>) -> Complex<T> {
        match &self.zero_side {
            ZeroSide::Structured => {
                let log =
                    self.zero_terms.iter().fold(self.smooth_zero.eval_angle(pt.theta()), |acc, t| acc + t.log_at(pt));
                (-log).exp() / self.zero_constant
            }
            ZeroSide::Quotient(_) => Complex::new(T::one(), T::zero()) / self.zero_at(pt),
        }
    }

    /// `φ₋ tᵏ φ₀`.
    pub fn product_at(&self, pt: CirclePoint<T>) -> Complex<T> {
        self.minus_at(pt) * unit(T::from_i64_lossy(self.kappa) * pt.theta()) * self.zero_at(pt)
    }

    /// Angles where some factor is singular.
    pub fn breakpoints(&self) -> Vec<T> {
        let mut b: Vec<T> = self.minus_terms.iter().chain(self.zero_terms.iter()).map(|t| t.singular).collect();
        if let ZeroSide::Quotient(sym) = &self.zero_side {
            b.extend(sym.breakpoints());
        }
        b.sort_by(|a, c| a.partial_cmp(c).unwrap());
        b.dedup();
        b
    }

    pub fn minus_breakpoints(&self) -> Vec<T> {
        self.minus_terms.iter().map(|t| t.singular).collect()
    }
}

/// Construction choices that leave the factorization admissible.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FactorOptions {
    /// Moves every pair split to `(β_r⁺ + s, β_r⁻ − s)`.
    pub pair_shift: i64,
    /// Puts the constant factor into `φ₀` instead of `φ₋`.
    pub constant_in_zero: bool,
}

pub fn factor_pc<T: Real>(sym: &PCSymbol<T>) -> Result<AsymmetricFactorization<T>> {
    factor_pc_with(sym, FactorOptions::default())
}

pub fn factor_pc_with<T: Real>(sym: &PCSymbol<T>, opts: FactorOptions) -> Result<AsymmetricFactorization<T>> {
    let report = analyze_with(sym, opts.pair_shift)?;
    if !report.is_fredholm {
        let failing: Vec<String> =
            report.conditions.iter().filter(|c| !c.passes).map(|c| c.location.to_string()).collect();
        return Err(Error::NotFredholm(format!("local condition fails at {}", failing.join(", "))));
    }
    let sel = report.selection.expect("Fredholm report carries a selection");
    let kappa = report.kappa.expect("Fredholm report carries an index");
    let pi = T::PI();
    let two = T::lit(2.0);
    let zero = T::zero();
    let nonzero = |z: &Complex<T>| !is_zero_complex(*z);

    let mut minus_terms = Vec::new();
    let mut zero_terms = Vec::new();
    if nonzero(&sel.beta_plus) {
        minus_terms.push(FactorTerm::new(FactorBase::OneMinusTrTinv, -sel.beta_plus * two, zero, zero));
        zero_terms.push(FactorTerm::new(FactorBase::AbsOneMinusTTrinv, sel.beta_plus * two, zero, zero));
    }
    if nonzero(&sel.beta_minus) {
        minus_terms.push(FactorTerm::new(FactorBase::OneMinusTrTinv, -sel.beta_minus * two, pi, pi));
        zero_terms.push(FactorTerm::new(FactorBase::AbsOneMinusTTrinv, sel.beta_minus * two, pi, pi));
    }
    for pr in &sel.pairs {
        let s = pr.beta_plus + pr.beta_minus;
        if nonzero(&s) {
            minus_terms.push(FactorTerm::new(FactorBase::OneMinusTrTinv, -s, pr.theta, pr.theta));
            minus_terms.push(FactorTerm::new(FactorBase::OneMinusTinvTrinv, -s, pr.theta, pr.mirror));
        }
        if nonzero(&pr.beta_plus) {
            zero_terms.push(FactorTerm::new(FactorBase::OneMinusTTrinv, pr.beta_plus, pr.theta, pr.theta));
            zero_terms.push(FactorTerm::new(FactorBase::OneMinusTinvTrinv, pr.beta_plus, pr.theta, pr.mirror));
        }
        if nonzero(&pr.beta_minus) {
            zero_terms.push(FactorTerm::new(FactorBase::OneMinusTTr, pr.beta_minus, pr.theta, pr.mirror));
            zero_terms.push(FactorTerm::new(FactorBase::OneMinusTrTinv, pr.beta_minus, pr.theta, pr.theta));
        }
    }

    let g = &sym.smooth_part().log_part;
    let hi = g.n_min().abs().max(g.n_max().abs()).max(0);
    let mut h_minus = std::collections::BTreeMap::new();
    let mut h_zero = std::collections::BTreeMap::new();
    h_zero.insert(0, g.coeff(0));
    for n in 1..=hi {
        h_minus.insert(-n, g.coeff(-n) - g.coeff(n));
        h_zero.insert(n, g.coeff(n));
        h_zero.insert(-n, g.coeff(n));
    }
    let gamma = sel.gamma();
    let (gamma, zero_constant) = if opts.constant_in_zero { (cone(), gamma) } else { (gamma, cone()) };
    Ok(AsymmetricFactorization {
        p: sym.p(),
        minus_terms,
        smooth_minus: LaurentPolynomial::from_map(&h_minus),
        gamma,
        kappa,
        zero_terms,
        smooth_zero: LaurentPolynomial::from_map(&h_zero),
        zero_constant,
        zero_side: ZeroSide::Structured,
        selection: Some(sel),
    })
}

/// `1 − e^{iw}` without cancellation for small `w`.
pub fn one_minus_unit<T: Real>(w: T) -> Complex<T> {
    let half = w * T::lit(0.5);
    Complex::new(T::zero(), -T::lit(2.0) * half.sin()) * unit(half)
}

/// `1 + t⁻¹` at `pt`, accurate next to `t = −1`.
pub fn one_plus_tinv<T: Real>(pt: CirclePoint<T>) -> Complex<T> {
    one_minus_unit(-pt.relative_to(T::PI()))
}

/// `1 − t⁻¹` at `pt`, accurate next to `t = 1`.
pub fn one_minus_tinv<T: Real>(pt: CirclePoint<T>) -> Complex<T> {
    one_minus_unit(-pt.relative_to(T::zero()))
}

/// Grid `2πi/n` with points near any breakpoint removed.
pub fn check_grid<T: Real>(n: usize, breakpoints: &[T]) -> Vec<CirclePoint<T>> {
    let excl = T::lit(GRID_EXCLUSION);
    (0..n)
        .map(|i| CirclePoint::at(T::TAU() * T::from_usize_lossy(i) / T::from_usize_lossy(n)))
        .filter(|p| breakpoints.iter().all(|&b| p.relative_to(b).abs() > excl))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationDefects<T> {
    /// `max |φ − φ₋ tᵏ φ₀|` on the grid.
    pub residual: T,
    /// `max |φ₀(t) − φ₀(t⁻¹)| / max(1, |φ₀(t)|)` on the grid.
    pub evenness: T,
    /// `max_{1≤n≤512} |[(1 + t⁻¹)φ₋]_n|`.
    pub support_minus: T,
    /// `max_{1≤n≤512} |[(1 − t⁻¹)φ₋⁻¹]_n|`.
    pub support_minus_inverse: T,
    pub grid_points: usize,
}

impl<T: Real> FactorizationDefects<T> {
    pub fn max_defect(&self) -> T {
        self.residual.max(self.evenness).max(self.support_minus).max(self.support_minus_inverse)
    }
}

fn positive_support_defect<T, F>(f: F, breakpoints: &[T]) -> Result<T>
where
    T: Real,
    F: Fn(CirclePoint<T>) -> Complex<T> + Sync,
{
    let opts = FourierOptions { graded: true, ..FourierOptions::default() };
    let c = fourier_coefficients(f, breakpoints, 1, SUPPORT_TRUNCATION, &opts)?;
    Ok(c.iter().fold(T::zero(), |m, v| m.max(v.norm())))
}

/// Residual, evenness and one-sided support defects. Reports only.
pub fn validate_factorization<T: Real>(
    fact: &AsymmetricFactorization<T>,
    sym: &PCSymbol<T>,
    grid: usize,
) -> Result<FactorizationDefects<T>> {
    if grid < 256 {
        return Err(Error::InvalidArgument(format!("validation grid must have at least 256 points, got {grid}")));
    }
    let mut bps = fact.breakpoints();
    bps.extend(sym.breakpoints());
    let mut reflected: Vec<T> = bps.iter().map(|&b| canonical_angle(-b)).collect();
    reflected.extend(bps.iter().copied());
    let pts = check_grid(grid, &reflected);
    let mut residual = T::zero();
    let mut evenness = T::zero();
    for &pt in &pts {
        residual = residual.max((sym.eval_at(pt) - fact.product_at(pt)).norm());
        let z = fact.zero_at(pt);
        evenness = evenness.max((z - fact.zero_at(pt.reflect())).norm() / T::one().max(z.norm()));
    }
    let mb = fact.minus_breakpoints();
    let support_minus = positive_support_defect(|pt| one_plus_tinv(pt) * fact.minus_at(pt), &mb)?;
    let support_minus_inverse = positive_support_defect(|pt| one_minus_tinv(pt) * fact.minus_inv_at(pt), &mb)?;
    Ok(FactorizationDefects { residual, evenness, support_minus, support_minus_inverse, grid_points: pts.len() })
}

/// `F = φφ̃⁻¹ = φ₋ t^{2κ} φ̃₋⁻¹`, kept as the factor `φ₋` and `κ`.
#[derive(Clone, Debug, PartialEq)]
pub struct AntisymmetricFactorization<T> {
    pub minus: AsymmetricFactorization<T>,
    pub kappa: i64,
}

impl<T: Real> AntisymmetricFactorization<T> {
    pub fn eval_at(&self, pt: CirclePoint<T>) -> Complex<T> {
        self.minus.minus_at(pt)
            * unit(T::lit(2.0) * T::from_i64_lossy(self.kappa) * pt.theta())
            * self.minus.minus_inv_at(pt.reflect())
    }
}

pub fn antisymmetric_from_asymmetric<T: Real>(fact: &AsymmetricFactorization<T>) -> AntisymmetricFactorization<T> {
    let mut minus = fact.clone();
    minus.zero_terms.clear();
    minus.smooth_zero = LaurentPolynomial::zero();
    minus.zero_constant = cone();
    minus.zero_side = ZeroSide::Structured;
    AntisymmetricFactorization { minus, kappa: fact.kappa }
}

/// Recovers an asymmetric factorization with `φ₀ := t^{−κ} φ₋⁻¹ φ`.
pub fn asymmetric_from_antisymmetric<T: Real>(
    anti: &AntisymmetricFactorization<T>,
    sym: &PCSymbol<T>,
) -> AsymmetricFactorization<T> {
    let mut fact = anti.minus.clone();
    fact.kappa = anti.kappa;
    fact.zero_terms.clear();
    fact.smooth_zero = LaurentPolynomial::zero();
    fact.zero_constant = cone();
    fact.zero_side = ZeroSide::Quotient(sym.clone());
    fact
}

#[derive(Clone, Debug, PartialEq)]
pub struct AntisymmetricDefects<T> {
    /// `max |F − φ φ̃⁻¹|`.
    pub residual: T,
    /// `max |F(t) F(t⁻¹) − 1|`.
    pub reciprocity: T,
}

pub fn validate_antisymmetric<T: Real>(
    anti: &AntisymmetricFactorization<T>,
    sym: &PCSymbol<T>,
    grid: usize,
) -> AntisymmetricDefects<T> {
    let mut bps = anti.minus.minus_breakpoints();
    bps.extend(sym.breakpoints());
    let mut all: Vec<T> = bps.iter().map(|&b| canonical_angle(-b)).collect();
    all.extend(bps);
    let one = Complex::new(T::one(), T::zero());
    let mut residual = T::zero();
    let mut reciprocity = T::zero();
    for pt in check_grid(grid, &all) {
        let f = anti.eval_at(pt);
        let target = sym.eval_at(pt) / sym.eval_at(pt.reflect());
        residual = residual.max((f - target).norm());
        reciprocity = reciprocity.max((f * anti.eval_at(pt.reflect()) - one).norm());
    }
    AntisymmetricDefects { residual, reciprocity }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniquenessReport<T> {
    pub same_kappa: bool,
    /// Median of `φ₋⁽¹⁾/φ₋⁽²⁾` over the grid.
    pub gamma: Complex<T>,
    /// Largest deviation of the ratio from `gamma`.
    pub defect: T,
}

fn median<T: Real>(mut v: Vec<T>) -> T {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) * T::lit(0.5)
    }
}

/// Compares two factorizations of the same symbol.
pub fn uniqueness_check<T: Real>(
    f1: &AsymmetricFactorization<T>,
    f2: &AsymmetricFactorization<T>,
    grid: usize,
) -> UniquenessReport<T> {
    let mut bps = f1.breakpoints();
    bps.extend(f2.breakpoints());
    let ratios: Vec<Complex<T>> =
        check_grid(grid, &bps).into_iter().map(|pt| f1.minus_at(pt) / f2.minus_at(pt)).collect();
    let gamma =
        Complex::new(median(ratios.iter().map(|r| r.re).collect()), median(ratios.iter().map(|r| r.im).collect()));
    let defect = ratios.iter().fold(T::zero(), |m, r| m.max((*r - gamma).norm()));
    UniquenessReport { same_kappa: f1.kappa == f2.kappa, gamma, defect }
}

/// One exponent inequality behind the Hardy-space memberships of `φ₋`.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipInequality<T> {
    pub description: String,
    pub lhs: T,
    pub bound: T,
    pub holds: bool,
}

/// `(1 + t⁻¹)φ₋ ∈ H̄^p` needs `−2Re β⁺ > −1/p`, `1 − 2Re β⁻ > −1/p`,
/// `−Re(β_r⁺ + β_r⁻) > −1/p`; `(1 − t⁻¹)φ₋⁻¹ ∈ H̄^q` needs
/// `1 + 2Re β⁺ > −1/q`, `2Re β⁻ > −1/q`, `Re(β_r⁺ + β_r⁻) > −1/q`.
pub fn membership_inequalities<T: Real>(sel: &ParameterSelection<T>, p: T) -> Vec<MembershipInequality<T>> {
    let q = p / (p - T::one());
    let bp = -T::one() / p;
    let bq = -T::one() / q;
    let two = T::lit(2.0);
    let mut out = Vec::new();
    let mut push = |description: String, lhs: T, bound: T| {
        out.push(MembershipInequality { description, lhs, bound, holds: lhs > bound })
    };
    push("-2 Re beta+ > -1/p".into(), -two * sel.beta_plus.re, bp);
    push("1 - 2 Re beta- > -1/p".into(), T::one() - two * sel.beta_minus.re, bp);
    push("1 + 2 Re beta+ > -1/q".into(), T::one() + two * sel.beta_plus.re, bq);
    push("2 Re beta- > -1/q".into(), two * sel.beta_minus.re, bq);
    for pr in &sel.pairs {
        let s = pr.beta_plus.re + pr.beta_minus.re;
        push(format!("-Re(beta_r+ + beta_r-) > -1/p at theta = {}", pr.theta), -s, bp);
        push(format!("Re(beta_r+ + beta_r-) > -1/q at theta = {}", pr.theta), s, bq);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::SmoothPart;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn log_branch_matches_principal_power() {
        for w in [0.3f64, -0.3, 2.9, -2.9, std::f64::consts::PI] {
            let direct = (Complex::new(1.0, 0.0) - unit(w)).ln();
            assert!((log_one_minus_unit(w) - direct).norm() < 1e-14, "w={w}");
        }
    }

    #[test]
    fn weights_keep_precision() {
        let pt = CirclePoint { anchor: std::f64::consts::PI, offset: 1e-200 };
        assert!((one_plus_tinv(pt).norm() / 1e-200 - 1.0).abs() < 1e-12);
        let w = 0.7;
        assert!((one_minus_unit(w) - (Complex::new(1.0, 0.0) - unit(w))).norm() < 1e-15);
    }

    #[test]
    fn single_jump_factors() {
        let sym = PCSymbol::jump(2.0, 0.0, cx(0.1, 0.0)).unwrap();
        let f = factor_pc(&sym).unwrap();
        assert_eq!(f.kappa, 0);
        assert_eq!(f.minus_terms.len(), 1);
        assert_eq!(f.minus_terms[0].base, FactorBase::OneMinusTrTinv);
        assert!((f.minus_terms[0].exponent - cx(-0.2, 0.0)).norm() < 1e-15);
        assert_eq!(f.zero_terms[0].base, FactorBase::AbsOneMinusTTrinv);
        for pt in check_grid(512, &[0.0]) {
            assert!((sym.eval_at(pt) - f.product_at(pt)).norm() < 1e-12);
        }
    }

    #[test]
    fn trivial_and_shift() {
        let one = PCSymbol::constant_one(2.0).unwrap();
        let f = factor_pc(&one).unwrap();
        assert!(f.minus_terms.is_empty() && f.zero_terms.is_empty() && f.kappa == 0);
        let t =
            PCSymbol::new(2.0, SmoothPart::power(1), vec![crate::symbol::JumpFactor::new(0.0, cx(0.1, 0.0))]).unwrap();
        assert_eq!(factor_pc(&t).unwrap().kappa, 1);
        let bad = PCSymbol::jump(2.0, 0.0, cx(0.25, 0.0)).unwrap();
        assert!(matches!(factor_pc(&bad), Err(Error::NotFredholm(_))));
    }
}
