//! Fredholm and invertibility decisions for `M(φ)`.
//!
//! The local conditions are residue-class statements about the real parts of
//! the jump exponents. When `p` and the relevant exponents are recoverable as
//! small rationals the comparison is exact; otherwise a `1e-9` tolerance is
//! used and anything inside it is reported as a boundary case.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quadrature::CirclePoint;
use crate::scalar::{canonical_angle, cone, exact_rational, rational_to, two_pi, unit, ModularArith, Rational, Real};
use crate::symbol::{JumpFactor, PCSymbol};

/// Denominator bound when reading declared parameters as rationals.
pub const MAX_DENOMINATOR: i64 = 10_000;
/// Distance below which a floating-point class test counts as a boundary hit.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;
/// Two declared jumps closer than this to mutual reflection form a pair.
pub const PAIR_TOLERANCE: f64 = 1e-12;
/// Half-width of the neighborhoods removed around jumps when winding.
pub const WINDING_EXCLUSION: f64 = 1e-6;
/// Largest grid the winding refinement may reach.
pub const WINDING_GRID_CAP: usize = 1 << 20;
pub const DEFAULT_WINDING_GRID: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LocationTag<T> {
    /// `τ = 1`.
    PlusOne,
    /// `τ = −1`.
    MinusOne,
    /// Conjugate pair `{τ, τ̄}` with `τ = e^{iθ}`, `0 < θ < π`.
    Pair { theta: T },
}

impl<T: Real> fmt::Display for LocationTag<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocationTag::PlusOne => f.write_str("+1"),
            LocationTag::MinusOne => f.write_str("-1"),
            LocationTag::Pair { theta } => write!(f, "pair@{theta}"),
        }
    }
}

/// The jumps seen by one local condition.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalPoint<T> {
    pub tag: LocationTag<T>,
    /// Jump at `τ` (for `±1` the only jump).
    pub upper: JumpFactor<T>,
    /// Jump at `τ̄`; unused for `±1`.
    pub lower: JumpFactor<T>,
    pub upper_declared: bool,
    pub lower_declared: bool,
}

/// Groups the jumps of `sym` into the points where conditions are checked:
/// always `±1`, plus one entry per conjugate pair that carries a jump.
pub fn local_points<T: Real>(sym: &PCSymbol<T>) -> Vec<LocalPoint<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let pi = T::PI();
    let tol = T::lit(PAIR_TOLERANCE);
    let mut pts = Vec::new();
    for (tag, theta) in [(LocationTag::PlusOne, T::zero()), (LocationTag::MinusOne, pi)] {
        let j = sym.jump_at(theta).copied();
        pts.push(LocalPoint {
            tag,
            upper: j.unwrap_or(JumpFactor::new(theta, zero)),
            lower: JumpFactor::new(theta, zero),
            upper_declared: j.is_some(),
            lower_declared: false,
        });
    }
    let uppers: Vec<_> = sym.jumps().iter().filter(|j| j.theta > T::zero() && j.theta < pi).copied().collect();
    let mut lowers: Vec<Option<JumpFactor<T>>> =
        sym.jumps().iter().filter(|j| j.theta > pi).map(|j| Some(*j)).collect();
    for u in uppers {
        let mirror = canonical_angle(two_pi::<T>() - u.theta);
        let hit = lowers.iter_mut().find(|l| l.is_some_and(|l| (l.theta - mirror).abs() <= tol));
        let (lower, declared) = match hit.and_then(|slot| slot.take()) {
            Some(l) => (l, true),
            None => (JumpFactor::new(mirror, zero), false),
        };
        pts.push(LocalPoint {
            tag: LocationTag::Pair { theta: u.theta },
            upper: u,
            lower,
            upper_declared: true,
            lower_declared: declared,
        });
    }
    for l in lowers.into_iter().flatten() {
        let theta = canonical_angle(two_pi::<T>() - l.theta);
        pts.push(LocalPoint {
            tag: LocationTag::Pair { theta },
            upper: JumpFactor::new(theta, zero),
            lower: l,
            upper_declared: false,
            lower_declared: true,
        });
    }
    pts
}

/// A real parameter carried both as a float and, when recoverable, exactly.
#[derive(Clone, Copy, Debug)]
struct Param<T> {
    float: T,
    exact: Option<Rational>,
}

impl<T: Real> Param<T> {
    fn declared(x: T) -> Self {
        Self { float: x, exact: exact_rational(x.as_f64(), MAX_DENOMINATOR) }
    }

    fn exact(r: Rational) -> Self {
        Self { float: rational_to(&r), exact: Some(r) }
    }

    fn add(self, other: Self) -> Self {
        let exact = match (self.exact, other.exact) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Self { float: self.float + other.float, exact }
    }

    fn shift_int(self, k: i64) -> Self {
        Self { float: self.float - T::from_i64_lossy(k), exact: self.exact.map(|r| r - Rational::from_integer(k)) }
    }

    /// `k` with `x − k ∈ (upper − 1, upper]`.
    fn shift_below(&self, upper: &Self) -> i64 {
        match (self.exact, upper.exact) {
            (Some(x), Some(u)) => x.shift_below(&u).to_integer(),
            _ => self.float.shift_below(&upper.float).to_integer(),
        }
    }

    fn on_class(&self, offset: &Self) -> bool {
        match (self.exact, offset.exact) {
            (Some(x), Some(o)) => x.distance_to_class(&o) == Rational::from_integer(0),
            _ => self.float.distance_to_class(&offset.float) <= T::lit(BOUNDARY_TOLERANCE),
        }
    }
}

struct Classes<T> {
    half_over_p: Param<T>,
    half_plus_half_over_p: Param<T>,
    one_over_p: Param<T>,
    half: Param<T>,
}

fn classes<T: Real>(p: T) -> Classes<T> {
    match exact_rational(p.as_f64(), MAX_DENOMINATOR) {
        Some(pr) => {
            let inv = Rational::from_integer(1) / pr;
            let h = Rational::new(1, 2);
            Classes {
                half_over_p: Param::exact(inv * h),
                half_plus_half_over_p: Param::exact(h + inv * h),
                one_over_p: Param::exact(inv),
                half: Param::exact(h),
            }
        }
        None => {
            let h = T::lit(0.5);
            let inv = T::one() / p;
            let f = |x: T| Param { float: x, exact: None };
            Classes {
                half_over_p: f(h * inv),
                half_plus_half_over_p: f(h + h * inv),
                one_over_p: f(inv),
                half: Param::exact(Rational::new(1, 2)),
            }
        }
    }
}

/// Result of one local condition.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionEvaluation<T> {
    pub location: LocationTag<T>,
    /// `φ₋/φ₊` at the point (product over `τ, τ̄` for pairs).
    pub ratio: Complex<T>,
    /// `(1/2π)·arg(ratio)` in `(−1/2, 1/2]`.
    pub normalized_arg: T,
    /// Offset `c` of the forbidden class `c + ℤ`.
    pub forbidden_class: T,
    pub distance_to_forbidden: T,
    pub passes: bool,
    /// Whether the verdict was reached in exact rational arithmetic.
    pub exact: bool,
    /// Set when the failure is a hit on the forbidden class (every failure is).
    pub boundary: bool,
}

fn evaluate<T: Real>(
    location: LocationTag<T>,
    ratio: Complex<T>,
    x: Param<T>,
    offset: &Param<T>,
) -> ConditionEvaluation<T> {
    let exact = x.exact.is_some() && offset.exact.is_some();
    let (normalized_arg, distance) = match (x.exact, offset.exact) {
        (Some(xr), Some(or)) => (rational_to(&xr.reduce_principal()), rational_to(&xr.distance_to_class(&or))),
        _ => (x.float.reduce_principal(), x.float.distance_to_class(&offset.float)),
    };
    let on = x.on_class(offset);
    ConditionEvaluation {
        location,
        ratio,
        normalized_arg,
        forbidden_class: offset.float,
        distance_to_forbidden: distance,
        passes: !on,
        exact,
        boundary: on,
    }
}

/// Evaluates the local conditions at `τ = ±1` and at every conjugate pair
/// carrying a jump.
pub fn check_conditions<T: Real>(sym: &PCSymbol<T>) -> Vec<ConditionEvaluation<T>> {
    let cls = classes(sym.p());
    local_points(sym)
        .into_iter()
        .map(|pt| match pt.tag {
            LocationTag::PlusOne => {
                evaluate(pt.tag, pt.upper.ratio(), Param::declared(pt.upper.beta.re), &cls.half_over_p)
            }
            LocationTag::MinusOne => {
                evaluate(pt.tag, pt.upper.ratio(), Param::declared(pt.upper.beta.re), &cls.half_plus_half_over_p)
            }
            LocationTag::Pair { .. } => {
                let x = Param::declared(pt.upper.beta.re).add(Param::declared(pt.lower.beta.re));
                evaluate(pt.tag, pt.upper.ratio() * pt.lower.ratio(), x, &cls.one_over_p)
            }
        })
        .collect()
}

/// Selected exponents for one conjugate pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairParameters<T> {
    /// `θ_r ∈ (0, π)`.
    pub theta: T,
    /// Location of the reflected jump, `2π − θ_r` up to declaration rounding.
    pub mirror: T,
    pub beta_plus: Complex<T>,
    pub beta_minus: Complex<T>,
}

/// Integer moved from a declared exponent into the smooth part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JumpShift<T> {
    pub theta: T,
    /// Declared exponent minus selected exponent.
    pub k: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParameterSelection<T> {
    pub beta_plus: Complex<T>,
    pub beta_minus: Complex<T>,
    pub pairs: Vec<PairParameters<T>>,
    pub shifts: Vec<JumpShift<T>>,
}

impl<T: Real> ParameterSelection<T> {
    /// The selected jump factors (exponent-zero factors omitted).
    pub fn jumps(&self) -> Vec<JumpFactor<T>> {
        let mut out = vec![JumpFactor::new(T::zero(), self.beta_plus), JumpFactor::new(T::PI(), self.beta_minus)];
        for pr in &self.pairs {
            out.push(JumpFactor::new(pr.theta, pr.beta_plus));
            out.push(JumpFactor::new(pr.mirror, pr.beta_minus));
        }
        out.retain(|j| !(j.beta.re.is_zero() && j.beta.im.is_zero()));
        out
    }

    /// `Π t_β` over the selected factors.
    pub fn jump_product_at(&self, pt: CirclePoint<T>) -> Complex<T> {
        self.jumps().iter().fold(cone(), |acc, j| acc * j.eval_relative(pt.relative_to(j.theta)))
    }

    /// `Σ k`: the power of `t` moved into the smooth part.
    pub fn total_shift(&self) -> i64 {
        self.shifts.iter().map(|s| s.k).sum()
    }

    /// Constant `Π e^{−ik(θ+π)}` produced by the shifts, since
    /// `t_{β+k}(e^{i(θ−θ_j)}) = t_β(e^{i(θ−θ_j)})·e^{−ik(θ_j+π)}·tᵏ`.
    pub fn gamma(&self) -> Complex<T> {
        self.shifts.iter().fold(cone(), |acc, s| acc * unit(-T::from_i64_lossy(s.k) * (s.theta + T::PI())))
    }
}

/// Chooses the exponents in the admissible windows:
/// `Re β⁺ ∈ (1/2p − 1, 1/2p)`, `Re β⁻ ∈ (1/2p − 1/2, 1/2p + 1/2)`,
/// `Re β_r⁺ ∈ (−1/2, 1/2]` and `Re(β_r⁺ + β_r⁻) ∈ (1/p − 1, 1/p)`.
pub fn select_parameters<T: Real>(sym: &PCSymbol<T>) -> Result<ParameterSelection<T>> {
    select_parameters_with(sym, 0)
}

/// As [`select_parameters`] with every pair split moved by `pair_shift`:
/// `(β_r⁺ + s, β_r⁻ − s)`. The sum, and hence admissibility, is unchanged.
pub fn select_parameters_with<T: Real>(sym: &PCSymbol<T>, pair_shift: i64) -> Result<ParameterSelection<T>> {
    let failed: Vec<_> = check_conditions(sym).into_iter().filter(|c| !c.passes).collect();
    if let Some(c) = failed.first() {
        return Err(Error::NotFredholm(format!(
            "condition at {} lies on the forbidden class {} + Z",
            c.location, c.forbidden_class
        )));
    }
    let cls = classes(sym.p());
    let mut sel = ParameterSelection {
        beta_plus: Complex::new(T::zero(), T::zero()),
        beta_minus: Complex::new(T::zero(), T::zero()),
        pairs: Vec::new(),
        shifts: Vec::new(),
    };
    let shifted = |beta: Complex<T>, k: i64| Complex::new(beta.re - T::from_i64_lossy(k), beta.im);
    for pt in local_points(sym) {
        match pt.tag {
            LocationTag::PlusOne | LocationTag::MinusOne => {
                let upper = if pt.tag == LocationTag::PlusOne { &cls.half_over_p } else { &cls.half_plus_half_over_p };
                let x = Param::declared(pt.upper.beta.re);
                let k = x.shift_below(upper);
                if x.shift_int(k).on_class(upper) {
                    return Err(Error::NotFredholm(format!("exponent at {} sits on a window boundary", pt.tag)));
                }
                let beta = shifted(pt.upper.beta, k);
                if pt.tag == LocationTag::PlusOne {
                    sel.beta_plus = beta;
                } else {
                    sel.beta_minus = beta;
                }
                if k != 0 {
                    sel.shifts.push(JumpShift { theta: pt.upper.theta, k });
                }
            }
            LocationTag::Pair { theta } => {
                let xu = Param::declared(pt.upper.beta.re);
                let k1 = xu.shift_below(&cls.half) - pair_shift;
                let xl = Param::declared(pt.lower.beta.re);
                let sum = xu.shift_int(k1).add(xl);
                let k2 = sum.shift_below(&cls.one_over_p);
                if sum.shift_int(k2).on_class(&cls.one_over_p) {
                    return Err(Error::NotFredholm(format!(
                        "pair exponent sum at {} sits on a window boundary",
                        pt.tag
                    )));
                }
                sel.pairs.push(PairParameters {
                    theta,
                    mirror: pt.lower.theta,
                    beta_plus: shifted(pt.upper.beta, k1),
                    beta_minus: shifted(pt.lower.beta, k2),
                });
                if k1 != 0 {
                    sel.shifts.push(JumpShift { theta: pt.upper.theta, k: k1 });
                }
                if k2 != 0 {
                    sel.shifts.push(JumpShift { theta: pt.lower.theta, k: k2 });
                }
            }
        }
    }
    Ok(sel)
}

/// Winding number of a continuous nonvanishing function by phase
/// accumulation. Neighborhoods of half-width `1e-6` around `exclusions` are
/// skipped; the grid doubles until every increment is below `π/2`.
pub fn winding_of<T, F>(f: F, exclusions: &[T], grid: usize) -> Result<i64>
where
    T: Real,
    F: Fn(CirclePoint<T>) -> Complex<T>,
{
    let delta = T::lit(WINDING_EXCLUSION);
    let tau = two_pi::<T>();
    let excl: Vec<T> = exclusions.iter().map(|&e| canonical_angle(e)).collect();
    let mut n = grid.max(16);
    loop {
        if n > WINDING_GRID_CAP {
            return Err(Error::NumericFailure(format!("winding refinement exceeded {WINDING_GRID_CAP} points")));
        }
        let mut pts: Vec<CirclePoint<T>> = (0..n)
            .map(|i| CirclePoint::at(tau * T::from_usize_lossy(i) / T::from_usize_lossy(n)))
            .filter(|p| excl.iter().all(|&e| p.relative_to(e).abs() > delta))
            .collect();
        for &e in &excl {
            pts.push(CirclePoint { anchor: e, offset: -delta });
            pts.push(CirclePoint { anchor: e, offset: delta });
        }
        pts.sort_by(|a, b| canonical_angle(a.theta()).partial_cmp(&canonical_angle(b.theta())).unwrap());
        let vals: Vec<Complex<T>> = pts.iter().map(|p| f(*p)).collect();
        if vals.iter().any(|v| !(v.norm() > T::zero()) || !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NumericFailure("function vanishes or is not finite on the winding grid".into()));
        }
        let mut total = T::zero();
        let mut worst = T::zero();
        for i in 0..vals.len() {
            let inc = (vals[(i + 1) % vals.len()] / vals[i]).arg();
            worst = worst.max(inc.abs());
            total += inc;
        }
        if worst < T::FRAC_PI_2() {
            let w = total / tau;
            let r = w.round();
            if (w - r).abs() >= T::lit(0.1) {
                return Err(Error::NumericFailure(format!("accumulated phase {w} is not near an integer")));
            }
            return r.to_i64().ok_or_else(|| Error::NumericFailure("winding overflow".into()));
        }
        n *= 2;
    }
}

/// Winding number of a jump-free symbol.
pub fn winding_number<T: Real>(sym: &PCSymbol<T>, grid: usize) -> Result<i64> {
    if !sym.jumps().is_empty() {
        return Err(Error::InvalidArgument(
            "winding number needs a continuous symbol; divide out the jumps first".into(),
        ));
    }
    winding_of(|p| sym.eval_at(p), &[], grid)
}

/// Winding of the continuous quotient `b = φ / Π t_β(selected)`.
pub fn quotient_winding<T: Real>(sym: &PCSymbol<T>, sel: &ParameterSelection<T>, grid: usize) -> Result<i64> {
    let mut excl = sym.breakpoints();
    excl.extend(sel.jumps().iter().map(|j| j.theta));
    winding_of(|p| sym.eval_at(p) / sel.jump_product_at(p), &excl, grid)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FredholmReport<T> {
    pub p: T,
    pub conditions: Vec<ConditionEvaluation<T>>,
    pub is_fredholm: bool,
    /// Some condition failed by landing on its forbidden class.
    pub boundary: bool,
    pub selection: Option<ParameterSelection<T>>,
    pub winding_b: Option<i64>,
    pub kappa: Option<i64>,
    pub index: Option<i64>,
    pub dim_ker: Option<usize>,
    pub dim_coker: Option<usize>,
    pub is_invertible: bool,
}

pub fn analyze<T: Real>(sym: &PCSymbol<T>) -> Result<FredholmReport<T>> {
    analyze_with(sym, 0)
}

/// Full analysis using the pair split moved by `pair_shift`.
///
/// The index is `κ = wind(b)` with `b` the continuous quotient. It is taken
/// from the structure (`m + Σk`) and cross-checked numerically.
pub fn analyze_with<T: Real>(sym: &PCSymbol<T>, pair_shift: i64) -> Result<FredholmReport<T>> {
    let conditions = check_conditions(sym);
    let is_fredholm = conditions.iter().all(|c| c.passes);
    let boundary = conditions.iter().any(|c| c.boundary);
    if !is_fredholm {
        return Ok(FredholmReport {
            p: sym.p(),
            conditions,
            is_fredholm,
            boundary,
            selection: None,
            winding_b: None,
            kappa: None,
            index: None,
            dim_ker: None,
            dim_coker: None,
            is_invertible: false,
        });
    }
    let sel = select_parameters_with(sym, pair_shift)?;
    let structural = sym.smooth_part().winding + sel.total_shift();
    let numeric = quotient_winding(sym, &sel, DEFAULT_WINDING_GRID)?;
    if numeric != structural {
        return Err(Error::NumericFailure(format!(
            "numeric winding {numeric} of the continuous part disagrees with structural value {structural}"
        )));
    }
    let kappa = structural;
    Ok(FredholmReport {
        p: sym.p(),
        conditions,
        is_fredholm,
        boundary,
        selection: Some(sel),
        winding_b: Some(numeric),
        kappa: Some(kappa),
        index: Some(-kappa),
        dim_ker: Some((-kappa).max(0) as usize),
        dim_coker: Some(kappa.max(0) as usize),
        is_invertible: kappa == 0,
    })
}

/// Verdict for the Toeplitz operator `T(φ)` alone.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzReport<T> {
    /// One entry per declared jump; the forbidden class is `1/p + ℤ`.
    pub conditions: Vec<ConditionEvaluation<T>>,
    pub is_fredholm: bool,
    /// Exponents moved into `(1/p − 1, 1/p)`.
    pub selected: Vec<JumpFactor<T>>,
    pub kappa: Option<i64>,
    pub is_invertible: bool,
}

/// Classical piecewise continuous Toeplitz theory on `H^p`: every jump needs
/// `Re β ∉ 1/p + ℤ`; after moving each exponent into `(1/p − 1, 1/p)` the
/// index is minus the winding of the remaining continuous factor.
pub fn analyze_toeplitz<T: Real>(sym: &PCSymbol<T>) -> Result<ToeplitzReport<T>> {
    let cls = classes(sym.p());
    let conditions: Vec<_> = sym
        .jumps()
        .iter()
        .map(|j| evaluate(LocationTag::Pair { theta: j.theta }, j.ratio(), Param::declared(j.beta.re), &cls.one_over_p))
        .collect();
    let is_fredholm = conditions.iter().all(|c| c.passes);
    if !is_fredholm {
        return Ok(ToeplitzReport { conditions, is_fredholm, selected: Vec::new(), kappa: None, is_invertible: false });
    }
    let mut selected = Vec::new();
    let mut total = 0;
    for j in sym.jumps() {
        let k = Param::declared(j.beta.re).shift_below(&cls.one_over_p);
        total += k;
        selected.push(JumpFactor::new(j.theta, Complex::new(j.beta.re - T::from_i64_lossy(k), j.beta.im)));
    }
    let kappa = sym.smooth_part().winding + total;
    Ok(ToeplitzReport { conditions, is_fredholm, selected, kappa: Some(kappa), is_invertible: kappa == 0 })
}
