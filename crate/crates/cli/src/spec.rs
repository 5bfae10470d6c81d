//! Symbol specification files.
//!
//! ```json
//! {"p": 2, "smooth": {"winding": 1, "log_coeffs": {"-1": [0.3, 0], "1": [0.3, 0]}},
//!  "jumps": [{"theta": 0, "beta": [0.1, 0]}]}
//! ```
//!
//! Angles are radians. `smooth` and `jumps` may be omitted.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::path::Path;

use serde::{Deserialize, Serialize};
use tph_core::{JumpFactor, Laurent, SmoothPart, Symbol, C64};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothSpec {
    #[serde(default)]
    pub winding: i64,
    /// Coefficients of `g` in `exp(g)`, keyed by degree.
    #[serde(default)]
    pub log_coeffs: BTreeMap<i64, [f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JumpSpec {
    pub theta: f64,
    pub beta: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolSpec {
    pub p: f64,
    #[serde(default)]
    pub smooth: SmoothSpec,
    #[serde(default)]
    pub jumps: Vec<JumpSpec>,
}

impl SymbolSpec {
    /// Parses a spec, reporting the field path and position of the first error.
    pub fn parse(text: &str) -> CliResult<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let spec: SymbolSpec = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let at = if path == "." { String::new() } else { format!("field `{path}`: ") };
            CliError::Input(format!("invalid spec: {at}{inner}"))
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read spec {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }

    fn validate(&self) -> CliResult<()> {
        if !self.p.is_finite() || self.p <= 1.0 {
            return Err(CliError::Input(format!("invalid spec: field `p`: need 1 < p < inf, got {}", self.p)));
        }
        for (i, j) in self.jumps.iter().enumerate() {
            if !j.theta.is_finite() {
                return Err(CliError::Input(format!("invalid spec: field `jumps[{i}].theta` is not finite")));
            }
            if j.theta.abs() > TAU {
                return Err(CliError::Input(format!(
                    "invalid spec: field `jumps[{i}].theta` = {} lies outside [-2pi, 2pi]; angles are radians, degrees are not accepted",
                    j.theta
                )));
            }
            if !j.beta.iter().all(|x| x.is_finite()) {
                return Err(CliError::Input(format!("invalid spec: field `jumps[{i}].beta` is not finite")));
            }
        }
        for (n, c) in &self.smooth.log_coeffs {
            if !c.iter().all(|x| x.is_finite()) {
                return Err(CliError::Input(format!("invalid spec: field `smooth.log_coeffs.{n}` is not finite")));
            }
        }
        Ok(())
    }

    pub fn to_symbol(&self) -> CliResult<Symbol> {
        self.validate()?;
        let coeffs: BTreeMap<i64, C64> =
            self.smooth.log_coeffs.iter().map(|(&n, c)| (n, C64::new(c[0], c[1]))).collect();
        let smooth = SmoothPart::new(self.smooth.winding, Laurent::from_map(&coeffs));
        let jumps = self.jumps.iter().map(|j| JumpFactor::new(j.theta, C64::new(j.beta[0], j.beta[1]))).collect();
        Symbol::new(self.p, smooth, jumps).map_err(|e| CliError::Input(format!("invalid spec: {e}")))
    }
}
