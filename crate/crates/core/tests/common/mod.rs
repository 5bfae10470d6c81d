#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::*;
use tph_core::{JumpFactor, Laurent, SmoothPart, Symbol, C64};

pub fn cx(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn t_power(m: i64) -> Symbol {
    Symbol::smooth(2.0, SmoothPart::power(m)).unwrap()
}

pub fn jump(theta: f64, re: f64, im: f64) -> Symbol {
    Symbol::jump(2.0, theta, cx(re, im)).unwrap()
}

/// Angles kept well apart so that random jumps never collide.
const SLOTS: [f64; 6] = [0.0, PI / 3.0, 0.9, PI, 4.0, 5.0 * PI / 3.0];

pub fn laurent_strategy(lo: i64, hi: i64, scale: f64) -> impl Strategy<Value = Laurent> {
    let len = (hi - lo + 1) as usize;
    prop::collection::vec((-scale..scale, -scale..scale), len)
        .prop_map(move |v| Laurent::new(lo, v.into_iter().map(|(a, b)| cx(a, b)).collect()))
}

/// Random symbol: winding, a small smooth log part and up to three jumps.
pub fn symbol_strategy() -> impl Strategy<Value = Symbol> {
    (
        prop::sample::select(vec![1.5, 2.0, 3.0, 4.0]),
        -2i64..=2,
        laurent_strategy(-2, 2, 0.2),
        prop::sample::subsequence(SLOTS.to_vec(), 0..=3),
        prop::collection::vec((-1.5f64..1.5, -0.5f64..0.5), 3),
    )
        .prop_map(|(p, m, g, thetas, betas)| {
            let jumps = thetas.iter().zip(&betas).map(|(&t, &(re, im))| JumpFactor::new(t, cx(re, im))).collect();
            Symbol::new(p, SmoothPart::new(m, g), jumps).unwrap()
        })
}

/// Sample angles that miss every slot.
pub fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| (k as f64 + 0.37) * 2.0 * PI / n as f64).collect()
}
