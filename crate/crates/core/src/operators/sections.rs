use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{czero, Real};
use crate::symbol::FourierSource;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    T,
    H,
    M,
    Phi,
    Psi,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OperatorKind::T => "T",
            OperatorKind::H => "H",
            OperatorKind::M => "M",
            OperatorKind::Phi => "Phi",
            OperatorKind::Psi => "Psi",
        };
        f.write_str(s)
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "t" => Ok(OperatorKind::T),
            "H" | "h" => Ok(OperatorKind::H),
            "M" | "m" => Ok(OperatorKind::M),
            "Phi" | "phi" | "PHI" => Ok(OperatorKind::Phi),
            "Psi" | "psi" | "PSI" => Ok(OperatorKind::Psi),
            other => {
                Err(Error::InvalidArgument(format!("unknown operator kind {other:?} (expected T, H, M, Phi or Psi)")))
            }
        }
    }
}

/// Row and column bases of a section.
///
/// `Standard` means `e_0, …, e_{N−1}` on both sides. `JSymmetric` is the
/// orthonormal family `v_n = (e_n + e_{−n−1})/√2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisNote {
    Standard,
    /// Rows `e_j`, columns `v_k`.
    JSymmetricColumns,
    /// Rows `v_j`, columns `e_k`.
    JSymmetricRows,
}

/// Finite truncation of one of the operators, possibly rectangular.
#[derive(Clone, Debug)]
pub struct OperatorSection<T: Real> {
    pub kind: OperatorKind,
    pub entries: DMatrix<Complex<T>>,
    pub basis: BasisNote,
}

impl<T: Real> OperatorSection<T> {
    /// Number of columns (the section size for square sections).
    pub fn size(&self) -> usize {
        self.entries.ncols()
    }

    pub fn singular_values(&self) -> Vec<T> {
        T::singular_values(&self.entries)
    }

    pub fn sigma_min(&self) -> T {
        self.singular_values().last().copied().unwrap_or_else(T::zero)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("section size must be at least 1".into()));
    }
    Ok(())
}

struct Window<T> {
    lo: i64,
    vals: Vec<Complex<T>>,
}

impl<T: Real> Window<T> {
    fn fetch<S: FourierSource<T> + ?Sized>(src: &S, lo: i64, hi: i64) -> Result<Self> {
        Ok(Self { lo, vals: src.fourier_coeffs(lo, hi)? })
    }

    fn at(&self, n: i64) -> Complex<T> {
        self.vals[(n - self.lo) as usize]
    }
}

/// `c_{j−k}` for `j ∈ rows`, `k ∈ cols` (Laurent operator block).
pub fn laurent_block<T: Real, S: FourierSource<T> + ?Sized>(
    src: &S,
    rows: std::ops::Range<i64>,
    cols: std::ops::Range<i64>,
) -> Result<DMatrix<Complex<T>>> {
    let lo = rows.start - (cols.end - 1);
    let hi = (rows.end - 1) - cols.start;
    let w = Window::fetch(src, lo, hi)?;
    let (nr, nc) = ((rows.end - rows.start) as usize, (cols.end - cols.start) as usize);
    Ok(DMatrix::from_fn(nr, nc, |i, k| w.at(rows.start + i as i64 - (cols.start + k as i64))))
}

pub fn build_toeplitz_section<T: Real, S: FourierSource<T> + ?Sized>(src: &S, n: usize) -> Result<OperatorSection<T>> {
    check_size(n)?;
    let n_i = n as i64;
    Ok(OperatorSection {
        kind: OperatorKind::T,
        entries: laurent_block(src, 0..n_i, 0..n_i)?,
        basis: BasisNote::Standard,
    })
}

pub fn build_hankel_section<T: Real, S: FourierSource<T> + ?Sized>(src: &S, n: usize) -> Result<OperatorSection<T>> {
    check_size(n)?;
    let w = Window::fetch(src, 1, 2 * n as i64 - 1)?;
    let entries = DMatrix::from_fn(n, n, |j, k| w.at((j + k + 1) as i64));
    Ok(OperatorSection { kind: OperatorKind::H, entries, basis: BasisNote::Standard })
}

pub fn build_m_section<T: Real, S: FourierSource<T> + ?Sized>(src: &S, n: usize) -> Result<OperatorSection<T>> {
    build_m_rect(src, n, n)
}

/// `rows × cols` truncation of `M(φ)`: entries `c_{j−k} + c_{j+k+1}`.
pub fn build_m_rect<T: Real, S: FourierSource<T> + ?Sized>(
    src: &S,
    rows: usize,
    cols: usize,
) -> Result<OperatorSection<T>> {
    check_size(rows)?;
    check_size(cols)?;
    let w = Window::fetch(src, 1 - cols as i64, (rows + cols - 1) as i64)?;
    let entries = DMatrix::from_fn(rows, cols, |j, k| {
        let (j, k) = (j as i64, k as i64);
        w.at(j - k) + w.at(j + k + 1)
    });
    Ok(OperatorSection { kind: OperatorKind::M, entries, basis: BasisNote::Standard })
}

/// `2N × N` matrix taking coordinates in `v_0..v_{N−1}` to the window
/// `e_{−N}..e_{N−1}`.
pub fn j_basis_matrix<T: Real>(n: usize) -> DMatrix<Complex<T>> {
    let r = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let mut v = DMatrix::from_element(2 * n, n, czero());
    for k in 0..n {
        v[(n + k, k)] = r;
        v[(n - 1 - k, k)] = r;
    }
    v
}

/// Section of `Φ(φ) = P L(φ) P_J`: rows `e_0..e_{N−1}`, columns `v_0..v_{N−1}`.
pub fn build_phi_section<T: Real, S: FourierSource<T> + ?Sized>(src: &S, n: usize) -> Result<OperatorSection<T>> {
    check_size(n)?;
    let n_i = n as i64;
    // the full window [−2N, 2N] is requested so the table can be reused by callers
    let table = crate::symbol::CoefficientTable::from_source(src, -2 * n_i, 2 * n_i)?;
    let l = laurent_block(&table, 0..n_i, -n_i..n_i)?;
    Ok(OperatorSection {
        kind: OperatorKind::Phi,
        entries: l * j_basis_matrix::<T>(n),
        basis: BasisNote::JSymmetricColumns,
    })
}

/// Section of `Ψ(φ) = P_J L(φ) P`: rows `v_0..v_{N−1}`, columns `e_0..e_{N−1}`.
pub fn build_psi_section<T: Real, S: FourierSource<T> + ?Sized>(src: &S, n: usize) -> Result<OperatorSection<T>> {
    check_size(n)?;
    let n_i = n as i64;
    let table = crate::symbol::CoefficientTable::from_source(src, -2 * n_i, 2 * n_i)?;
    let l = laurent_block(&table, -n_i..n_i, 0..n_i)?;
    Ok(OperatorSection {
        kind: OperatorKind::Psi,
        entries: j_basis_matrix::<T>(n).transpose() * l,
        basis: BasisNote::JSymmetricRows,
    })
}

pub fn build_section<T: Real, S: FourierSource<T> + ?Sized>(
    src: &S,
    kind: OperatorKind,
    n: usize,
) -> Result<OperatorSection<T>> {
    match kind {
        OperatorKind::T => build_toeplitz_section(src, n),
        OperatorKind::H => build_hankel_section(src, n),
        OperatorKind::M => build_m_section(src, n),
        OperatorKind::Phi => build_phi_section(src, n),
        OperatorKind::Psi => build_psi_section(src, n),
    }
}

/// Flip `J e_n = e_{−n−1}` on the window `e_{−N}..e_{N−1}`.
pub fn j_section<T: Real>(n: usize) -> DMatrix<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let mut j = DMatrix::from_element(2 * n, 2 * n, czero());
    for i in 0..2 * n {
        j[(2 * n - 1 - i, i)] = one;
    }
    j
}

/// Riesz projection `P` on the window `e_{−N}..e_{N−1}`.
pub fn p_section<T: Real>(n: usize) -> DMatrix<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    DMatrix::from_fn(2 * n, 2 * n, |i, k| if i == k && i >= n { one } else { czero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{LaurentPolynomial, PCSymbol, SmoothPart};

    fn cx(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn t_sym() -> PCSymbol<f64> {
        PCSymbol::smooth(2.0, SmoothPart::power(1)).unwrap()
    }

    #[test]
    fn toeplitz_of_t_is_shift() {
        let s = build_toeplitz_section(&t_sym(), 4).unwrap().entries;
        for j in 0..4 {
            for k in 0..4 {
                assert_eq!(s[(j, k)], cx(if j == k + 1 { 1.0 } else { 0.0 }));
            }
        }
    }

    #[test]
    fn hankel_examples() {
        let h = build_hankel_section(&t_sym(), 3).unwrap().entries;
        assert_eq!(h[(0, 0)], cx(1.0));
        assert_eq!(h.iter().filter(|v| v.norm() > 0.0).count(), 1);
        let hinv = build_hankel_section(&t_sym().inverse(), 3).unwrap().entries;
        assert!(hinv.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn m_of_inverse_shift_is_superdiagonal() {
        let m = build_m_section(&t_sym().inverse(), 3).unwrap().entries;
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(m[(j, k)], cx(if k == j + 1 { 1.0 } else { 0.0 }));
            }
        }
    }

    #[test]
    fn phi_is_scaled_m() {
        let p = LaurentPolynomial::new(-2, vec![cx(0.3), cx(-1.0), cx(2.0), Complex::new(0.0, 0.5), cx(0.1)]);
        let phi = build_phi_section(&p, 6).unwrap().entries;
        let m = build_m_section(&p, 6).unwrap().entries;
        assert!((phi - m * cx(std::f64::consts::FRAC_1_SQRT_2)).norm() < 1e-14);
    }

    #[test]
    fn flip_and_projection() {
        let j = j_section::<f64>(3);
        let p = p_section::<f64>(3);
        let id = DMatrix::<Complex<f64>>::identity(6, 6);
        assert_eq!(&j * &j, id);
        assert_eq!(&j * &p * &j, &id - &p);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("Phi".parse::<OperatorKind>().unwrap(), OperatorKind::Phi);
        assert!("X".parse::<OperatorKind>().is_err());
    }
}
