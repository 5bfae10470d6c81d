mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use tph_core::operators::{
    build_hankel_section, build_m_section, build_phi_section, build_psi_section, build_toeplitz_section, j_basis_matrix,
};
use tph_core::{FourierSource, Laurent, C64};

/// `P(a·t^k)` and `P(a·t^{−k−1})` expanded monomial by monomial.
fn expanded(a: &Laurent, n: usize) -> (DMatrix<C64>, DMatrix<C64>) {
    let mut t = DMatrix::zeros(n, n);
    let mut h = DMatrix::zeros(n, n);
    for k in 0..n as i64 {
        let shifted = a * &Laurent::monomial(k, cx(1.0, 0.0));
        let flipped = a * &Laurent::monomial(-k - 1, cx(1.0, 0.0));
        for j in 0..n as i64 {
            t[(j as usize, k as usize)] = shifted.coeff(j);
            h[(j as usize, k as usize)] = flipped.coeff(j);
        }
    }
    (t, h)
}

fn max_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    (a - b).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

#[test]
fn shift_examples() {
    let t = t_power(1);
    let m = build_m_section(&t, 3).unwrap().entries;
    let mut want = DMatrix::<C64>::zeros(3, 3);
    want[(1, 0)] = cx(1.0, 0.0);
    want[(2, 1)] = cx(1.0, 0.0);
    want[(0, 0)] = cx(1.0, 0.0);
    assert_eq!(m, want);
    let minv = build_m_section(&t_power(-1), 3).unwrap().entries;
    assert_eq!(minv, build_toeplitz_section(&t_power(-1), 3).unwrap().entries);
    assert!(build_hankel_section(&t_power(0), 4).unwrap().entries.iter().all(|v| v.norm() == 0.0));
    assert_eq!(build_m_section(&t_power(0), 5).unwrap().entries, DMatrix::identity(5, 5));
}

#[test]
fn half_jump_section_entry() {
    let s = jump(0.0, 0.5, 0.0);
    let t = build_toeplitz_section(&s, 2).unwrap().entries;
    assert!((t[(0, 0)] - cx(2.0 / PI, 0.0)).norm() < 1e-12);
}

#[test]
fn phi_and_psi_on_small_symbols() {
    let one = build_phi_section(&t_power(0), 4).unwrap().entries;
    assert!(max_diff(&one, &(DMatrix::identity(4, 4) * cx(FRAC_1_SQRT_2, 0.0))) < 1e-15);
    let psi_one = build_psi_section(&t_power(0), 4).unwrap().entries;
    assert!(max_diff(&psi_one, &(DMatrix::identity(4, 4) * cx(FRAC_1_SQRT_2, 0.0))) < 1e-15);
    // Φ(t) v_0 = P((e_0 + e_{−1})·t)/√2 = (e_1 + e_0)/√2.
    let phi_t = build_phi_section(&t_power(1), 2).unwrap().entries;
    assert!((phi_t[(0, 0)] - cx(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    assert!((phi_t[(1, 0)] - cx(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    let psi_tinv = build_psi_section(&t_power(-1), 4).unwrap().entries;
    assert!(max_diff(&psi_tinv, &build_phi_section(&t_power(1), 4).unwrap().entries.transpose()) < 1e-15);
}

#[test]
fn multiplicative_when_right_factor_is_even() {
    let phi = Laurent::new(-2, vec![cx(0.3, 0.1), cx(-1.0, 0.0), cx(2.0, 0.0), cx(0.0, 0.5), cx(0.1, -0.2)]);
    let psi = Laurent::new(-1, vec![cx(0.7, 0.0), cx(1.0, 0.0), cx(0.7, 0.0)]);
    let n = 24;
    let lhs = build_m_section(&(&phi * &psi), n).unwrap().entries;
    let rhs = build_m_section(&phi, n).unwrap().entries * build_m_section(&psi, n).unwrap().entries;
    let inner = n - 4;
    assert!(max_diff(&lhs.view((0, 0), (inner, inner)).into(), &rhs.view((0, 0), (inner, inner)).into()) < 1e-13);
}

#[test]
fn sections_of_jump_symbols_follow_the_coefficients() {
    let s = jump(1.0, 0.3, 0.2).multiply(&t_power(1)).unwrap();
    let c = s.fourier_coeffs(-12, 12).unwrap();
    let m = build_m_section(&s, 6).unwrap().entries;
    for j in 0..6i64 {
        for k in 0..6i64 {
            let want = c[(j - k + 12) as usize] + c[(j + k + 1 + 12) as usize];
            assert!((m[(j as usize, k as usize)] - want).norm() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sections_match_monomial_expansion(a in laurent_strategy(-4, 4, 1.0), n in 1usize..10) {
        let (t, h) = expanded(&a, n);
        let ts = build_toeplitz_section(&a, n).unwrap().entries;
        let hs = build_hankel_section(&a, n).unwrap().entries;
        let ms = build_m_section(&a, n).unwrap().entries;
        prop_assert!(max_diff(&ts, &t) < 1e-14);
        prop_assert!(max_diff(&hs, &h) < 1e-14);
        prop_assert!(max_diff(&ms, &(t + h)) < 1e-14);
    }

    #[test]
    fn psi_is_adjoint_of_phi_of_conjugate(a in laurent_strategy(-3, 3, 1.0), n in 1usize..8) {
        let psi = build_psi_section(&a, n).unwrap().entries;
        let phi = build_phi_section(&a.conj_on_circle(), n).unwrap().entries;
        prop_assert!(max_diff(&psi, &phi.adjoint()) < 1e-14);
    }

    #[test]
    fn phi_is_m_in_the_symmetric_basis(a in laurent_strategy(-3, 3, 1.0)) {
        // columns v_k with k ≥ d do not reach past the window edge
        let n = 12;
        let phi = build_phi_section(&a, n).unwrap().entries;
        let m = build_m_section(&a, n).unwrap().entries * cx(FRAC_1_SQRT_2, 0.0);
        let rows = n - 3;
        prop_assert!(max_diff(&phi.view((0, 0), (rows, n)).into(), &m.view((0, 0), (rows, n)).into()) < 1e-14);
        let v = j_basis_matrix::<f64>(n);
        prop_assert!(max_diff(&(v.adjoint() * &v), &DMatrix::identity(n, n)) < 1e-15);
    }
}
