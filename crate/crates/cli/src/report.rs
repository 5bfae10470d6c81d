//! JSON report documents. Every report carries `schema_version`.

use serde::Serialize;
use tph_core::factorization::{AsymmetricFactorization, FactorBase, FactorTerm, FactorizationDefects};
use tph_core::fredholm::{ConditionEvaluation, FredholmReport, LocationTag, ParameterSelection};
use tph_core::{Laurent, C64};

pub const SCHEMA_VERSION: u32 = 1;

pub fn complex(c: C64) -> [f64; 2] {
    [c.re, c.im]
}

fn location(tag: &LocationTag<f64>) -> String {
    tag.to_string()
}

#[derive(Debug, Serialize)]
pub struct ConditionOut {
    pub location: String,
    pub ratio: [f64; 2],
    pub normalized_arg: f64,
    pub forbidden_class: f64,
    pub distance_to_forbidden: f64,
    pub passes: bool,
    pub exact: bool,
    pub boundary: bool,
}

impl From<&ConditionEvaluation<f64>> for ConditionOut {
    fn from(c: &ConditionEvaluation<f64>) -> Self {
        Self {
            location: location(&c.location),
            ratio: complex(c.ratio),
            normalized_arg: c.normalized_arg,
            forbidden_class: c.forbidden_class,
            distance_to_forbidden: c.distance_to_forbidden,
            passes: c.passes,
            exact: c.exact,
            boundary: c.boundary,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PairOut {
    pub theta: f64,
    pub mirror: f64,
    pub beta_plus: [f64; 2],
    pub beta_minus: [f64; 2],
}

#[derive(Debug, Serialize)]
pub struct ShiftOut {
    pub theta: f64,
    pub k: i64,
}

#[derive(Debug, Serialize)]
pub struct ParametersOut {
    pub beta_plus: [f64; 2],
    pub beta_minus: [f64; 2],
    pub pairs: Vec<PairOut>,
    pub shifts: Vec<ShiftOut>,
}

impl From<&ParameterSelection<f64>> for ParametersOut {
    fn from(s: &ParameterSelection<f64>) -> Self {
        Self {
            beta_plus: complex(s.beta_plus),
            beta_minus: complex(s.beta_minus),
            pairs: s
                .pairs
                .iter()
                .map(|p| PairOut {
                    theta: p.theta,
                    mirror: p.mirror,
                    beta_plus: complex(p.beta_plus),
                    beta_minus: complex(p.beta_minus),
                })
                .collect(),
            shifts: s.shifts.iter().map(|s| ShiftOut { theta: s.theta, k: s.k }).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub p: f64,
    pub conditions: Vec<ConditionOut>,
    pub is_fredholm: bool,
    pub boundary: bool,
    pub parameters: Option<ParametersOut>,
    pub winding_b: Option<i64>,
    pub kappa: Option<i64>,
    pub index: Option<i64>,
    pub dim_ker: Option<usize>,
    pub dim_coker: Option<usize>,
    pub is_invertible: bool,
}

impl From<&FredholmReport<f64>> for AnalyzeReport {
    fn from(r: &FredholmReport<f64>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: "analyze",
            p: r.p,
            conditions: r.conditions.iter().map(ConditionOut::from).collect(),
            is_fredholm: r.is_fredholm,
            boundary: r.boundary,
            parameters: r.selection.as_ref().map(ParametersOut::from),
            winding_b: r.winding_b,
            kappa: r.kappa,
            index: r.index,
            dim_ker: r.dim_ker,
            dim_coker: r.dim_coker,
            is_invertible: r.is_invertible,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TermOut {
    pub base: &'static str,
    pub exponent: [f64; 2],
    pub theta_r: f64,
    pub text: String,
}

fn base_name(b: FactorBase) -> &'static str {
    match b {
        FactorBase::OneMinusTrTinv => "1 - t_r t^-1",
        FactorBase::OneMinusTinvTrinv => "1 - t^-1 t_r^-1",
        FactorBase::OneMinusTTrinv => "1 - t t_r^-1",
        FactorBase::OneMinusTTr => "1 - t t_r",
        FactorBase::AbsOneMinusTTrinv => "|1 - t t_r^-1|",
    }
}

impl From<&FactorTerm<f64>> for TermOut {
    fn from(t: &FactorTerm<f64>) -> Self {
        Self { base: base_name(t.base), exponent: complex(t.exponent), theta_r: t.theta_r, text: t.to_string() }
    }
}

/// Nonzero coefficients keyed by degree.
pub fn laurent_out(l: &Laurent) -> Vec<(i64, [f64; 2])> {
    l.terms().filter(|(_, c)| c.norm() > 0.0).map(|(n, c)| (n, complex(c))).collect()
}

#[derive(Debug, Serialize)]
pub struct DefectsOut {
    pub residual: f64,
    pub evenness: f64,
    pub support_minus: f64,
    pub support_minus_inverse: f64,
    pub grid_points: usize,
    pub max_defect: f64,
}

impl From<&FactorizationDefects<f64>> for DefectsOut {
    fn from(d: &FactorizationDefects<f64>) -> Self {
        Self {
            residual: d.residual,
            evenness: d.evenness,
            support_minus: d.support_minus,
            support_minus_inverse: d.support_minus_inverse,
            grid_points: d.grid_points,
            max_defect: d.max_defect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FactorizeReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub p: f64,
    /// Power of `t` between the factors; equals `κ`.
    pub t_power: i64,
    pub kappa: i64,
    pub minus_terms: Vec<TermOut>,
    pub minus_smooth: Vec<(i64, [f64; 2])>,
    pub minus_constant: [f64; 2],
    pub zero_terms: Vec<TermOut>,
    pub zero_smooth: Vec<(i64, [f64; 2])>,
    pub zero_constant: [f64; 2],
    pub defects: DefectsOut,
}

impl FactorizeReport {
    pub fn new(f: &AsymmetricFactorization<f64>, d: &FactorizationDefects<f64>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: "factorize",
            p: f.p,
            t_power: f.kappa,
            kappa: f.kappa,
            minus_terms: f.minus_terms.iter().map(TermOut::from).collect(),
            minus_smooth: laurent_out(&f.smooth_minus),
            minus_constant: complex(f.gamma),
            zero_terms: f.zero_terms.iter().map(TermOut::from).collect(),
            zero_smooth: laurent_out(&f.smooth_zero),
            zero_constant: complex(f.zero_constant),
            defects: DefectsOut::from(d),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckOut {
    pub name: String,
    /// `None` when the check does not apply to the input.
    pub passed: Option<bool>,
    pub detail: serde_json::Value,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub target: String,
    pub checks: Vec<CheckOut>,
    pub passed: bool,
}
