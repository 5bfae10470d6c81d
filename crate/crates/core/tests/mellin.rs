mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use tph_core::mellin::{
    det_local_symbol, local_symbol, s_and_n, sweep_nonvanishing, sweep_verdict, LocalSymbol, SweepPoint, TauTag,
};
use tph_core::{SmoothPart, Symbol, C64};

/// `coth` and `1/sinh` straight from the complex hyperbolic functions.
fn naive_s_n(z: f64, p: f64) -> (C64, C64) {
    let w = cx(z, 1.0 / p) * PI;
    (w.cosh() / w.sinh(), w.sinh().inv())
}

#[test]
fn s_and_n_examples() {
    let (s, n) = s_and_n(0.0, 2.0);
    assert!(s.norm() < 1e-15);
    assert!((n - cx(0.0, -1.0)).norm() < 1e-15);
    let (s, n) = s_and_n(10.0, 2.0);
    assert!((s - cx(1.0, 0.0)).norm() < 1e-12 && n.norm() < 1e-12);
    let (s, n) = s_and_n(-10.0, 2.0);
    assert!((s + cx(1.0, 0.0)).norm() < 1e-12 && n.norm() < 1e-12);
}

#[test]
fn continuous_symbols_give_constant_local_symbols() {
    let g = tph_core::Laurent::monomial(2, cx(0.2, 0.1));
    let sym = Symbol::smooth(2.0, SmoothPart::new(1, g)).unwrap();
    for tau in [TauTag::PlusOne, TauTag::MinusOne] {
        let ls = local_symbol(&sym, tau);
        let LocalSymbol::Scalar { plus, .. } = ls else { panic!("scalar expected") };
        for z in [-4.0, -0.3, 0.0, 1.7, 9.0] {
            assert!((ls.value(z).determinant() - plus * 2.0).norm() < 1e-13);
        }
        let r = sweep_nonvanishing(&ls, 12.0, 512).unwrap();
        assert!((r.min_modulus - 2.0 * plus.norm()).abs() < 1e-12);
    }
}

#[test]
fn quarter_jump_is_a_boundary_case() {
    let ls = local_symbol(&jump(0.0, 0.25, 0.0), TauTag::PlusOne);
    assert!(ls.value(0.0).modulus() < 1e-14);
    let r = sweep_nonvanishing(&ls, 12.0, 2048).unwrap();
    assert!(r.min_modulus < 1e-6 && !r.nonvanishing);
    let SweepPoint::Finite(z) = r.argmin else { panic!("finite minimum expected") };
    assert!(z.abs() < 1e-6);
    let r = sweep_nonvanishing(&local_symbol(&jump(0.0, 0.1, 0.0), TauTag::PlusOne), 12.0, 2048).unwrap();
    assert!(r.nonvanishing && r.min_modulus > 0.1);
}

#[test]
fn pair_with_unit_limits_has_determinant_four() {
    let ones = LocalSymbol::Pair {
        theta: 1.0,
        p: 2.0,
        plus_tau: cx(1.0, 0.0),
        minus_tau: cx(1.0, 0.0),
        plus_bar: cx(1.0, 0.0),
        minus_bar: cx(1.0, 0.0),
    };
    for z in [-8.0, -1.0, 0.0, 0.5, 20.0] {
        assert!((det_local_symbol(&ones, z).unwrap() - cx(4.0, 0.0)).norm() < 1e-13);
    }
    let i = cx(0.0, 1.0);
    let half = LocalSymbol::Pair {
        theta: 1.0,
        p: 2.0,
        plus_tau: cx(1.0, 0.0),
        minus_tau: i,
        plus_bar: cx(1.0, 0.0),
        minus_bar: i,
    };
    assert!(sweep_nonvanishing(&half, 12.0, 2048).unwrap().min_modulus < 1e-6);
}

#[test]
fn limits_at_infinity() {
    let sym = jump(1.0, 0.3, 0.1).multiply(&jump(2.0 * PI - 1.0, -0.2, 0.05)).unwrap();
    let ls = local_symbol(&sym, TauTag::Point { theta: 1.0 });
    let LocalSymbol::Pair { plus_tau, plus_bar, minus_tau, minus_bar, .. } = ls else { panic!("pair expected") };
    let hi = det_local_symbol(&ls, 20.0).unwrap();
    assert!((hi - plus_tau * plus_bar * 4.0).norm() < 1e-10);
    let lo = det_local_symbol(&ls, -20.0).unwrap();
    assert!((lo - minus_tau * minus_bar * 4.0).norm() < 1e-10);
    assert!((ls.at_plus_infinity().determinant() - plus_tau * plus_bar * 4.0).norm() < 1e-14);
}

#[test]
fn sweep_verdict_examples() {
    assert!(sweep_verdict(&t_power(1), 12.0, 512).unwrap());
    assert!(!sweep_verdict(&jump(0.0, 0.25, 0.0), 12.0, 2048).unwrap());
    assert!(!sweep_verdict(&jump(PI, 0.75, 0.0), 12.0, 2048).unwrap());
    let pair = jump(PI / 3.0, 0.3, 0.0).multiply(&jump(5.0 * PI / 3.0, 0.3, 0.0)).unwrap();
    assert!(sweep_verdict(&pair, 12.0, 2048).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn s_squared_minus_n_squared_is_one(z in -60.0f64..60.0, p in 1.05f64..20.0) {
        let (s, n) = s_and_n(z, p);
        prop_assert!((s * s - n * n - cx(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn s_and_n_match_hyperbolic_functions(z in -8.0f64..8.0, p in 1.05f64..20.0) {
        let (s, n) = s_and_n(z, p);
        let (s0, n0) = naive_s_n(z, p);
        prop_assert!((s - s0).norm() < 1e-12 * s0.norm().max(1.0));
        prop_assert!((n - n0).norm() < 1e-12 * n0.norm().max(1.0));
    }

    /// `b_{+1}` vanishes at `z = −2 Im β` exactly when `Re β = 1/(2p)`.
    #[test]
    fn scalar_root_at_plus_one(y in -1.0f64..1.0, p in prop::sample::select(vec![1.5, 2.0, 3.0, 4.0])) {
        let sym = Symbol::jump(p, 0.0, cx(0.5 / p, y)).unwrap();
        let ls = local_symbol(&sym, TauTag::PlusOne);
        let scale = ls.at_plus_infinity().modulus().max(ls.at_minus_infinity().modulus());
        prop_assert!(ls.value(-2.0 * y).modulus() < 1e-12 * scale);
    }

    /// `b_{−1}` vanishes at `z = −2 Im β` exactly when `Re β = 1/(2p) + 1/2`.
    #[test]
    fn scalar_root_at_minus_one(y in -1.0f64..1.0, p in prop::sample::select(vec![1.5, 2.0, 3.0, 4.0])) {
        let sym = Symbol::jump(p, PI, cx(0.5 / p + 0.5, y)).unwrap();
        let ls = local_symbol(&sym, TauTag::MinusOne);
        let scale = ls.at_plus_infinity().modulus().max(ls.at_minus_infinity().modulus());
        prop_assert!(ls.value(-2.0 * y).modulus() < 1e-12 * scale);
    }

    /// The pair determinant vanishes at `z = −Im(β₁ + β₂)` when `Re(β₁ + β₂) = 1/p`.
    #[test]
    fn pair_root(theta in 0.3f64..2.8, x in -0.5f64..0.5, y1 in -0.5f64..0.5, y2 in -0.5f64..0.5) {
        let p = 2.0;
        let sym = Symbol::jump(p, theta, cx(x, y1)).unwrap()
            .multiply(&Symbol::jump(p, 2.0 * PI - theta, cx(1.0 / p - x, y2)).unwrap()).unwrap();
        let ls = local_symbol(&sym, TauTag::Point { theta });
        let scale = ls.at_plus_infinity().modulus().max(ls.at_minus_infinity().modulus());
        prop_assert!(det_local_symbol(&ls, -(y1 + y2)).unwrap().norm() < 1e-11 * scale);
    }

    #[test]
    fn determinant_closed_form_holds(s in symbol_strategy(), z in -6.0f64..6.0, theta in 0.2f64..2.9) {
        let ls = local_symbol(&s, TauTag::Point { theta });
        prop_assert!(det_local_symbol(&ls, z).is_ok());
    }
}
