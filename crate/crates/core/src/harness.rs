//! Numerical cross-checks: operator identities on random Laurent
//! polynomials, finite-section probes at `p = 2`, the formal inverse on
//! `X₁`, and the symbol libraries the checks run over.
//!
//! Finite sections only shadow the operator. "Bounded below" here means
//! `σ_min(N_last) ≥ 0.9·σ_min(N_prev)` and `σ_min(N_last) > 1e−4`; this is a
//! heuristic, not a proof of invertibility.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factorization::{factor_pc, one_plus_tinv};
use crate::fredholm::{analyze, analyze_toeplitz, ToeplitzReport};
use crate::operators::{
    build_hankel_section, build_m_rect, build_m_section, build_phi_section, build_psi_section, build_toeplitz_section,
    convolve, FormalInverse, X1Element,
};
use crate::quadrature::{fourier_coefficients, FourierOptions};
use crate::scalar::{czero, Real};
use crate::symbol::{CoefficientTable, JumpFactor, LaurentPolynomial, PCSymbol, SmoothPart};

pub const NEAR_NULL_THRESHOLD: f64 = 1e-6;
pub const BOUNDED_BELOW_RATIO: f64 = 0.9;
pub const BOUNDED_BELOW_FLOOR: f64 = 1e-4;
pub const IDENTITY_TOLERANCE: f64 = 1e-12;
pub const IDENTITY_SECTION: usize = 64;
pub const FORMAL_INVERSE_TOLERANCE: f64 = 1e-7;
pub const FORMAL_INVERSE_TRUNCATION: usize = 512;
pub const J_SYMMETRY_TOLERANCE: f64 = 1e-10;
/// Section size of the kernel probe on the span of formal-inverse images.
pub const KERNEL_PROBE_SECTION: usize = 128;

fn check_probe_exponent<T: Real>(sym: &PCSymbol<T>) -> Result<()> {
    if (sym.p() - T::lit(2.0)).abs() > T::epsilon() {
        return Err(Error::ProbeUnsupported { p: sym.p().as_f64() });
    }
    Ok(())
}

fn unit_interval<T: Real, R: Rng>(rng: &mut R) -> Complex<T> {
    Complex::new(T::lit(rng.random_range(-1.0..1.0)), T::lit(rng.random_range(-1.0..1.0)))
}

/// Random Laurent polynomial on degrees `lo..=hi` with coefficients in the unit square.
pub fn random_laurent<T: Real, R: Rng>(rng: &mut R, lo: i64, hi: i64) -> LaurentPolynomial<T> {
    LaurentPolynomial::new(lo, (lo..=hi).map(|_| unit_interval(rng)).collect())
}

fn random_even<T: Real, R: Rng>(rng: &mut R, d: i64) -> LaurentPolynomial<T> {
    let mut map = BTreeMap::new();
    for n in 0..=d {
        let c = unit_interval(rng);
        map.insert(n, c);
        map.insert(-n, c);
    }
    LaurentPolynomial::from_map(&map)
}

// ---------------------------------------------------------------- identities

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck<T> {
    pub name: &'static str,
    /// Largest interior-entry error over all trials.
    pub max_error: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport<T> {
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub section: usize,
    pub tolerance: T,
    pub checks: Vec<IdentityCheck<T>>,
    pub passed: bool,
}

pub const IDENTITY_NAMES: [&str; 5] = [
    "T(phi psi) = T(phi)T(psi) + H(phi)H(~psi)",
    "H(phi psi) = T(phi)H(psi) + H(phi)T(~psi)",
    "M(phi psi) = M(phi)M(psi) + H(phi)M(~psi - psi)",
    "M(phi psi) = M(phi)M(psi), psi even",
    "M(phi psi) = M(phi)M(psi), phi antianalytic",
];

fn interior_error<T: Real>(a: &DMatrix<Complex<T>>, b: &DMatrix<Complex<T>>, keep: usize) -> T {
    let mut m = T::zero();
    for j in 0..keep {
        for k in 0..keep {
            m = m.max((a[(j, k)] - b[(j, k)]).norm());
        }
    }
    m
}

fn identity_errors<T: Real>(
    phi: &LaurentPolynomial<T>,
    psi: &LaurentPolynomial<T>,
    even: &LaurentPolynomial<T>,
    anti: &LaurentPolynomial<T>,
    n: usize,
    keep: usize,
) -> Result<[T; 5]> {
    let t = |s: &LaurentPolynomial<T>| build_toeplitz_section(s, n).map(|x| x.entries);
    let h = |s: &LaurentPolynomial<T>| build_hankel_section(s, n).map(|x| x.entries);
    let m = |s: &LaurentPolynomial<T>| build_m_section(s, n).map(|x| x.entries);
    let prod = phi * psi;
    let psi_t = psi.tilde();
    let e_tx = interior_error(&t(&prod)?, &(t(phi)? * t(psi)? + h(phi)? * h(&psi_t)?), keep);
    let e_hx = interior_error(&h(&prod)?, &(t(phi)? * h(psi)? + h(phi)? * t(&psi_t)?), keep);
    let e_mx = interior_error(&m(&prod)?, &(m(phi)? * m(psi)? + h(phi)? * m(&(&psi_t - psi))?), keep);
    let e_even = interior_error(&m(&(phi * even))?, &(m(phi)? * m(even)?), keep);
    let e_anti = interior_error(&m(&(anti * psi))?, &(m(anti)? * m(psi)?), keep);
    Ok([e_tx, e_hx, e_mx, e_even, e_anti])
}

/// Checks the product identities for `T`, `H`, `M` and the two multiplicative
/// special cases on `trials` seeded random pairs of bandwidth `≤ d`.
/// Entries within `2d` of the truncation edge are ignored.
pub fn identity_suite<T: Real>(d: usize, trials: usize, seed: u64) -> Result<IdentityReport<T>> {
    if d == 0 || trials == 0 {
        return Err(Error::InvalidArgument("identity suite needs d ≥ 1 and trials ≥ 1".into()));
    }
    let n = IDENTITY_SECTION.max(4 * d + 1);
    let keep = n - 2 * d;
    let di = d as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<_> = (0..trials)
        .map(|_| {
            let phi = random_laurent::<T, _>(&mut rng, -di, di);
            let psi = random_laurent::<T, _>(&mut rng, -di, di);
            let even = random_even::<T, _>(&mut rng, di);
            let anti = random_laurent::<T, _>(&mut rng, -di, 0);
            (phi, psi, even, anti)
        })
        .collect();
    let errors: Vec<[T; 5]> = cases
        .par_iter()
        .map(|(phi, psi, even, anti)| identity_errors(phi, psi, even, anti, n, keep))
        .collect::<Result<_>>()?;
    let tolerance = T::lit(IDENTITY_TOLERANCE).max(T::epsilon() * T::lit(64.0));
    let checks: Vec<_> = IDENTITY_NAMES
        .iter()
        .enumerate()
        .map(|(i, name)| IdentityCheck { name, max_error: errors.iter().fold(T::zero(), |m, e| m.max(e[i])) })
        .collect();
    let passed = checks.iter().all(|c| c.max_error <= tolerance);
    Ok(IdentityReport { d, trials, seed, section: n, tolerance, checks, passed })
}

// ------------------------------------------------------------ section probes

/// What the analytic engine predicts for `M(φ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Invertible,
    /// Fredholm with the given nonzero `κ`.
    Index(i64),
    NotFredholm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeResult<T> {
    pub id: String,
    pub sizes: Vec<usize>,
    /// Smallest singular value of the square `N × N` section.
    pub sigma_min: Vec<T>,
    /// Singular values of the square section below `1e−6`.
    pub near_null_count: Vec<usize>,
    /// Near-null singular values of the `2N × N` section (kernel side).
    pub kernel_count: Vec<usize>,
    /// Near-null singular values of the `N × 2N` section (cokernel side).
    pub cokernel_count: Vec<usize>,
    pub expectation: Expectation,
    pub verdict_consistent: bool,
}

impl<T: Real> ProbeResult<T> {
    /// Whether the counts at the two largest sizes equal `max{0, −κ}` on the
    /// kernel side and `max{0, κ}` on the cokernel side.
    pub fn defects_stabilize(&self, kappa: i64) -> bool {
        let n = self.sizes.len();
        n >= 2
            && self.kernel_count[n - 2..].iter().all(|&c| c as i64 == (-kappa).max(0))
            && self.cokernel_count[n - 2..].iter().all(|&c| c as i64 == kappa.max(0))
    }

    pub fn bounded_below(&self) -> bool {
        bounded_below(&self.sigma_min)
    }
}

/// The conditioning heuristic on a sequence of `σ_min` at increasing sizes.
pub fn bounded_below<T: Real>(sigmas: &[T]) -> bool {
    match sigmas {
        [.., prev, last] => *last >= T::lit(BOUNDED_BELOW_RATIO) * *prev && *last > T::lit(BOUNDED_BELOW_FLOOR),
        [only] => *only > T::lit(BOUNDED_BELOW_FLOOR),
        [] => false,
    }
}

fn near_null<T: Real>(sv: &[T]) -> usize {
    sv.iter().filter(|&&s| s < T::lit(NEAR_NULL_THRESHOLD)).count()
}

fn expectation<T: Real>(sym: &PCSymbol<T>) -> Result<Expectation> {
    let report = analyze(sym)?;
    Ok(match (report.is_fredholm, report.kappa) {
        (true, Some(0)) => Expectation::Invertible,
        (true, Some(k)) => Expectation::Index(k),
        _ => Expectation::NotFredholm,
    })
}

/// Square, tall and wide sections of `M(φ)` at each size, `p = 2` only.
pub fn finite_section_probe<T: Real>(id: &str, sym: &PCSymbol<T>, sizes: &[usize]) -> Result<ProbeResult<T>> {
    check_probe_exponent(sym)?;
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::InvalidArgument("probe sizes must be a nonempty list of positive integers".into()));
    }
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let expectation = expectation(sym)?;
    let n_max = *sizes.last().unwrap() as i64;
    let table = CoefficientTable::from_source(sym, 1 - 2 * n_max, 3 * n_max - 1)?;
    let per_size: Vec<(T, usize, usize, usize)> = sizes
        .par_iter()
        .map(|&n| {
            let square = build_m_rect(&table, n, n)?.singular_values();
            let tall = build_m_rect(&table, 2 * n, n)?.singular_values();
            let wide = build_m_rect(&table, n, 2 * n)?.singular_values();
            Ok((*square.last().unwrap(), near_null(&square), near_null(&tall), near_null(&wide)))
        })
        .collect::<Result<_>>()?;
    let sigma_min: Vec<T> = per_size.iter().map(|x| x.0).collect();
    let near_null_count: Vec<usize> = per_size.iter().map(|x| x.1).collect();
    let kernel_count = per_size.iter().map(|x| x.2).collect();
    let cokernel_count = per_size.iter().map(|x| x.3).collect();
    let last_two = &near_null_count[near_null_count.len().saturating_sub(2)..];
    let verdict_consistent = match expectation {
        Expectation::Invertible => bounded_below(&sigma_min),
        Expectation::Index(k) => last_two.iter().all(|&c| c as i64 == k.abs()),
        Expectation::NotFredholm => true,
    };
    Ok(ProbeResult {
        id: id.to_string(),
        sizes,
        sigma_min,
        near_null_count,
        kernel_count,
        cokernel_count,
        expectation,
        verdict_consistent,
    })
}

/// `ψ(t) = φ⁻¹(−t⁻¹)`.
pub fn equivalence_partner<T: Real>(sym: &PCSymbol<T>) -> PCSymbol<T> {
    sym.inverse().tilde().rotate(T::PI())
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport<T> {
    pub sizes: [usize; 2],
    pub m_sigma: [T; 2],
    pub phi_sigma: [T; 2],
    pub psi_sigma: [T; 2],
    pub m_bounded: bool,
    pub phi_bounded: bool,
    pub psi_bounded: bool,
    pub consistent: bool,
}

/// Conditioning trends of `M(φ)`, `Φ(φ)` and `Ψ(ψ)` at `N` and `2N`.
pub fn equivalence_probe<T: Real>(sym: &PCSymbol<T>, n: usize) -> Result<EquivalenceReport<T>> {
    check_probe_exponent(sym)?;
    if n == 0 {
        return Err(Error::InvalidArgument("section size must be at least 1".into()));
    }
    let psi = equivalence_partner(sym);
    let sizes = [n, 2 * n];
    let big = 4 * n as i64;
    let phi_table = CoefficientTable::from_source(sym, -big, big)?;
    let psi_table = CoefficientTable::from_source(&psi, -big, big)?;
    let mut m_sigma = [T::zero(); 2];
    let mut phi_sigma = [T::zero(); 2];
    let mut psi_sigma = [T::zero(); 2];
    for (i, &size) in sizes.iter().enumerate() {
        m_sigma[i] = build_m_section(&phi_table, size)?.sigma_min();
        phi_sigma[i] = build_phi_section(&phi_table, size)?.sigma_min();
        psi_sigma[i] = build_psi_section(&psi_table, size)?.sigma_min();
    }
    let (m_bounded, phi_bounded, psi_bounded) =
        (bounded_below(&m_sigma), bounded_below(&phi_sigma), bounded_below(&psi_sigma));
    let consistent = m_bounded == phi_bounded && phi_bounded == psi_bounded;
    Ok(EquivalenceReport { sizes, m_sigma, phi_sigma, psi_sigma, m_bounded, phi_bounded, psi_bounded, consistent })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzProbe<T> {
    pub report: ToeplitzReport<T>,
    pub sizes: Vec<usize>,
    pub sigma_min: Vec<T>,
    pub bounded_below: bool,
    /// Engine verdict agrees with the conditioning trend.
    pub consistent: bool,
}

/// Toeplitz-only verdict against `T`-section conditioning, `p = 2` only.
pub fn toeplitz_section_probe<T: Real>(sym: &PCSymbol<T>, sizes: &[usize]) -> Result<ToeplitzProbe<T>> {
    check_probe_exponent(sym)?;
    let report = analyze_toeplitz(sym)?;
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    let n_max = *sizes.last().ok_or_else(|| Error::InvalidArgument("no probe sizes".into()))? as i64;
    let table = CoefficientTable::from_source(sym, -n_max, n_max)?;
    let sigma_min: Vec<T> =
        sizes.par_iter().map(|&n| build_toeplitz_section(&table, n).map(|s| s.sigma_min())).collect::<Result<_>>()?;
    let bounded = bounded_below(&sigma_min);
    Ok(ToeplitzProbe { consistent: bounded == report.is_invertible, report, sizes, sigma_min, bounded_below: bounded })
}

/// `−1/q < Re β < 1/p` for every jump and zero winding.
pub fn toeplitz_window_verdict<T: Real>(sym: &PCSymbol<T>) -> bool {
    let (p, q) = (sym.p(), sym.q());
    sym.smooth_part().winding == 0 && sym.jumps().iter().all(|j| -T::one() / q < j.beta.re && j.beta.re < T::one() / p)
}

// ------------------------------------------------------------ formal inverse

#[derive(Clone, Debug, PartialEq)]
pub struct FormalInverseReport<T> {
    pub trials: usize,
    /// `max |P(φ·Bf) − Pf|` over trials and degrees `0..=512`.
    pub max_defect: T,
    /// `max |(Bf)_n − (Bf)_{−n−1}|`.
    pub max_j_defect: T,
    /// Smallest singular value of the `Φ` section on the span of the images.
    pub kernel_sigma_min: T,
    pub passed: bool,
}

/// Random `f = (1 − t⁻¹) f₁`, `f₁` on degrees `−7..=7`.
pub fn random_x1<T: Real, R: Rng>(rng: &mut R) -> X1Element<T> {
    X1Element::new(random_laurent(rng, -7, 7))
}

/// Orthonormal basis (modified Gram–Schmidt) of the column span.
fn orthonormal_columns<T: Real>(m: &DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
    let mut cols: Vec<nalgebra::DVector<Complex<T>>> = Vec::new();
    for j in 0..m.ncols() {
        let mut v = m.column(j).clone_owned();
        for q in &cols {
            let proj = q.iter().zip(v.iter()).fold(czero::<T>(), |acc, (a, b)| acc + a.conj() * b);
            v -= q * proj;
        }
        let norm = v.iter().fold(T::zero(), |acc, x| acc + x.norm_sqr()).sqrt();
        if norm > T::lit(1e-8) {
            cols.push(v / Complex::new(norm, T::zero()));
        }
    }
    DMatrix::from_columns(&cols)
}

/// Checks `P(φ·Bf) = Pf` and `J`-invariance of `Bf` on seeded random `X₁`
/// elements, then probes `ker Φ(φ)` on their span.
pub fn formal_inverse_suite<T: Real>(sym: &PCSymbol<T>, trials: usize, seed: u64) -> Result<FormalInverseReport<T>> {
    if trials == 0 {
        return Err(Error::InvalidArgument("formal inverse suite needs at least one trial".into()));
    }
    let fact = factor_pc(sym)?;
    if fact.kappa != 0 {
        return Err(Error::NonzeroIndex { kappa: fact.kappa });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements: Vec<X1Element<T>> = (0..trials).map(|_| random_x1(&mut rng)).collect();
    let max_degree = elements.iter().map(|f| f.f1.n_max().max(0) as usize).max().unwrap_or(0);
    let inverse = FormalInverse::new(&fact, FORMAL_INVERSE_TRUNCATION, max_degree)?;
    // φ·φ₀⁻¹ straight from the symbol, so the check does not reuse φ₋
    let reach = max_degree as i64 + 1;
    let top = FORMAL_INVERSE_TRUNCATION as i64;
    let mut bps = fact.breakpoints();
    bps.extend(sym.breakpoints());
    let opts = FourierOptions { graded: true, ..FourierOptions::default() };
    let product = fourier_coefficients(
        |pt| one_plus_tinv(pt) * sym.eval_at(pt) * fact.zero_inv_at(pt),
        &bps,
        -reach,
        top + reach,
        &opts,
    )?;
    let results: Vec<(T, T, Vec<Complex<T>>)> = elements
        .par_iter()
        .map(|f| {
            let img = inverse.apply(f)?;
            let lhs = convolve(&img.r, &product, -reach, 0, top);
            let rhs = f.riesz();
            let defect = lhs.iter().enumerate().fold(T::zero(), |m, (n, v)| m.max((*v - rhs.coeff(n as i64)).norm()));
            let root2 = Complex::new(T::SQRT_2(), T::zero());
            let coords = (0..KERNEL_PROBE_SECTION as i64).map(|k| img.coeff(k) * root2).collect();
            Ok((defect, img.j_defect(), coords))
        })
        .collect::<Result<_>>()?;
    let max_defect = results.iter().fold(T::zero(), |m, r| m.max(r.0));
    let max_j_defect = results.iter().fold(T::zero(), |m, r| m.max(r.1));
    let n = KERNEL_PROBE_SECTION;
    let coords = DMatrix::from_fn(n, trials, |k, j| results[j].2[k]);
    let q = orthonormal_columns(&coords);
    let phi = build_phi_section(sym, n)?.entries;
    let kernel_sigma_min = T::singular_values(&(phi * q)).last().copied().unwrap_or_else(T::zero);
    let passed = max_defect <= T::lit(FORMAL_INVERSE_TOLERANCE)
        && max_j_defect <= T::lit(J_SYMMETRY_TOLERANCE)
        && kernel_sigma_min > T::lit(NEAR_NULL_THRESHOLD);
    Ok(FormalInverseReport { trials, max_defect, max_j_defect, kernel_sigma_min, passed })
}

// ----------------------------------------------------------------- libraries

#[derive(Clone, Debug, PartialEq)]
pub struct LibraryEntry<T> {
    pub id: String,
    pub symbol: PCSymbol<T>,
}

fn cx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

fn log_poly<T: Real>(terms: &[(i64, f64, f64)]) -> LaurentPolynomial<T> {
    let map: BTreeMap<i64, Complex<T>> = terms.iter().map(|&(n, re, im)| (n, cx(re, im))).collect();
    LaurentPolynomial::from_map(&map)
}

fn entry<T: Real>(id: &str, p: f64, winding: i64, g: &[(i64, f64, f64)], jumps: &[(f64, f64, f64)]) -> LibraryEntry<T> {
    let jumps = jumps.iter().map(|&(theta, re, im)| JumpFactor::new(T::lit(theta), cx(re, im))).collect();
    let symbol =
        PCSymbol::new(T::lit(p), SmoothPart::new(winding, log_poly(g)), jumps).expect("library symbol is valid");
    LibraryEntry { id: id.to_string(), symbol }
}

const G1: &[(i64, f64, f64)] = &[(-1, 0.2, 0.1), (1, 0.3, 0.0)];
const G2: &[(i64, f64, f64)] = &[(-2, 0.1, -0.05), (-1, -0.15, 0.2), (0, 0.2, 0.3), (1, 0.1, 0.1), (2, 0.0, -0.1)];
const PI: f64 = std::f64::consts::PI;

/// Hand-picked `p = 2` symbols with clear verdicts: smooth symbols with
/// winding `−2…2`, single jumps at `±1`, conjugate pairs, mixtures and a few
/// non-Fredholm boundary cases.
pub fn curated_library<T: Real>() -> Vec<LibraryEntry<T>> {
    vec![
        entry("one", 2.0, 0, &[], &[]),
        entry("t", 2.0, 1, &[], &[]),
        entry("t^-1", 2.0, -1, &[], &[]),
        entry("t^2", 2.0, 2, &[], &[]),
        entry("t^-2", 2.0, -2, &[], &[]),
        entry("exp(g1)", 2.0, 0, G1, &[]),
        entry("exp(g2)", 2.0, 0, G2, &[]),
        entry("t exp(g1)", 2.0, 1, G1, &[]),
        entry("t^-1 exp(g2)", 2.0, -1, G2, &[]),
        entry("t^2 exp(g2)", 2.0, 2, G2, &[]),
        entry("t^-2 exp(g1)", 2.0, -2, G1, &[]),
        entry("jump +1 0.1", 2.0, 0, &[], &[(0.0, 0.1, 0.0)]),
        entry("jump +1 -0.2", 2.0, 0, &[], &[(0.0, -0.2, 0.0)]),
        entry("jump +1 0.1+0.1i", 2.0, 0, &[], &[(0.0, 0.1, 0.1)]),
        entry("jump +1 -0.3-0.05i", 2.0, 0, &[], &[(0.0, -0.3, -0.05)]),
        entry("jump -1 0.3", 2.0, 0, &[], &[(PI, 0.3, 0.0)]),
        entry("jump -1 -0.1", 2.0, 0, &[], &[(PI, -0.1, 0.0)]),
        entry("jump -1 0.5+0.1i", 2.0, 0, &[], &[(PI, 0.5, 0.1)]),
        entry("pair 1.0 (0.2, 0.1)", 2.0, 0, &[], &[(1.0, 0.2, 0.0), (2.0 * PI - 1.0, 0.1, 0.0)]),
        entry("pair 2.0 (0.1, -0.15)", 2.0, 0, &[], &[(2.0, 0.1, 0.0), (2.0 * PI - 2.0, -0.15, 0.0)]),
        entry("pair 0.5 (0.2+0.1i, 0)", 2.0, 0, &[], &[(0.5, 0.2, 0.1)]),
        entry("pair 2.5 (-0.2, -0.1)", 2.0, 0, &[], &[(2.5, -0.2, 0.0), (2.0 * PI - 2.5, -0.1, 0.0)]),
        entry("lone jump 4.0 0.15", 2.0, 0, &[], &[(4.0, 0.15, 0.0)]),
        entry("mixed +1 -1", 2.0, 0, &[], &[(0.0, 0.1, 0.0), (PI, 0.2, 0.0)]),
        entry("mixed +1 pair", 2.0, 0, &[], &[(0.0, -0.1, 0.0), (1.2, 0.1, 0.0), (2.0 * PI - 1.2, 0.1, 0.0)]),
        entry(
            "mixed all",
            2.0,
            0,
            &[],
            &[(0.0, 0.05, 0.0), (PI, -0.1, 0.0), (2.0, 0.1, 0.05), (2.0 * PI - 2.0, 0.05, 0.0)],
        ),
        entry("exp(g1) jump +1", 2.0, 0, G1, &[(0.0, 0.1, 0.0)]),
        entry("exp(g2) pair", 2.0, 0, G2, &[(1.5, 0.15, 0.0), (2.0 * PI - 1.5, -0.05, 0.0)]),
        entry("exp(g2) jump -1", 2.0, 0, G2, &[(PI, 0.2, -0.1)]),
        entry("boundary +1", 2.0, 0, &[], &[(0.0, 0.25, 0.0)]),
        entry("boundary -1", 2.0, 0, &[], &[(PI, 0.75, 0.0)]),
        entry("boundary pair", 2.0, 0, &[], &[(1.0, 0.25, 0.0), (2.0 * PI - 1.0, 0.25, 0.0)]),
    ]
}

/// Minimum distance to a forbidden class for random non-boundary entries.
pub const RANDOM_MARGIN: f64 = 0.02;

fn random_jumps<R: Rng>(rng: &mut R) -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    let beta = |rng: &mut R| (rng.random_range(-0.9..0.9), rng.random_range(-0.3..0.3));
    if rng.random_bool(0.6) {
        let (re, im) = beta(rng);
        out.push((0.0, re, im));
    }
    if rng.random_bool(0.5) {
        let (re, im) = beta(rng);
        out.push((PI, re, im));
    }
    let pairs = rng.random_range(0..=2);
    let mut used: Vec<f64> = Vec::new();
    for _ in 0..pairs {
        let theta: f64 = rng.random_range(0.2..PI - 0.2);
        if used.iter().any(|u| (u - theta).abs() < 0.1) {
            continue;
        }
        used.push(theta);
        let (re, im) = beta(rng);
        out.push((theta, re, im));
        if rng.random_bool(0.7) {
            let (re, im) = beta(rng);
            out.push((2.0 * PI - theta, re, im));
        }
    }
    out
}

/// Boundary symbols: one `β` placed exactly on a forbidden class.
pub fn boundary_library<T: Real>() -> Vec<LibraryEntry<T>> {
    let mut out = Vec::new();
    for (p, label) in [(2.0, "2"), (4.0, "4"), (4.0 / 3.0, "4/3")] {
        let h = 0.5 / p;
        out.push(entry(&format!("boundary +1 p={label}"), p, 0, &[], &[(0.0, h, 0.0)]));
        out.push(entry(&format!("boundary -1 p={label}"), p, 0, &[], &[(PI, 0.5 + h, 0.0)]));
        out.push(entry(
            &format!("boundary pair p={label}"),
            p,
            0,
            &[],
            &[(1.0, 1.0 / p - 0.3, 0.0), (2.0 * PI - 1.0, 0.3, 0.0)],
        ));
    }
    out
}

/// Seeded random symbols for `p ∈ {4/3, 2, 3, 4}` followed by the boundary
/// cases, `count` entries in total. Non-boundary draws keep every condition at
/// least `0.02` away from its forbidden class.
pub fn random_library<T: Real>(seed: u64, count: usize) -> Vec<LibraryEntry<T>> {
    let boundary = boundary_library::<T>();
    let wanted = count.saturating_sub(boundary.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < wanted {
        let p = [4.0 / 3.0, 2.0, 3.0, 4.0][rng.random_range(0..4)];
        let winding = rng.random_range(-2..=2);
        let g: Vec<(i64, f64, f64)> = if rng.random_bool(0.5) {
            (-2..=2).map(|n| (n, rng.random_range(-0.2..0.2), rng.random_range(-0.2..0.2))).collect()
        } else {
            Vec::new()
        };
        let jumps = random_jumps(&mut rng);
        let candidate = entry::<T>(&format!("random {}", out.len()), p, winding, &g, &jumps);
        let margin_ok = crate::fredholm::check_conditions(&candidate.symbol)
            .iter()
            .all(|c| c.distance_to_forbidden > T::lit(RANDOM_MARGIN));
        if margin_ok {
            out.push(candidate);
        }
    }
    out.extend(boundary.into_iter().take(count - out.len()));
    out
}

/// Invertible `p = 2` symbols for the formal inverse checks.
pub fn invertible_library<T: Real>() -> Vec<LibraryEntry<T>> {
    curated_library::<T>().into_iter().filter(|e| matches!(analyze(&e.symbol), Ok(r) if r.is_invertible)).collect()
}
