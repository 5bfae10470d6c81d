use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use tph_core::factorization::{factor_pc, validate_factorization};
use tph_core::fredholm::analyze;
use tph_core::harness::{
    curated_library, equivalence_probe, finite_section_probe, formal_inverse_suite, identity_suite, invertible_library,
};
use tph_core::mellin::{local_symbol, sweep_nonvanishing, TauTag, DEFAULT_STEPS, DEFAULT_Z_MAX};
use tph_core::operators::{build_section, OperatorKind};
use tph_core::Symbol;

use crate::error::{CliError, CliResult};
use crate::report::{AnalyzeReport, CheckOut, FactorizeReport, VerifyReport, SCHEMA_VERSION};
use crate::spec::SymbolSpec;

#[derive(Debug, Parser)]
#[command(
    name = "tph",
    version,
    about = "Fredholm analysis of Toeplitz-plus-Hankel operators with piecewise continuous symbols"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fredholm conditions, selected parameters, index and defect numbers.
    Analyze {
        spec: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Asymmetric factorization with its defect table.
    Factorize {
        spec: PathBuf,
        /// Points of the residual and evenness grid.
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Dense finite section of T, H, M, Phi or Psi.
    Matrix {
        spec: PathBuf,
        #[arg(long, value_parser = parse_kind)]
        operator: OperatorKind,
        /// Section size N.
        #[arg(long, short = 'n')]
        size: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Local symbol along the real line as CSV.
    MellinSweep {
        spec: PathBuf,
        /// `1`, `-1`, `i`, `-i` or `angle:<radians>`.
        #[arg(long, value_parser = parse_tau, allow_hyphen_values = true)]
        tau: TauTag<f64>,
        #[arg(long, default_value_t = DEFAULT_Z_MAX)]
        z_max: f64,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Numerical checks on one spec file or on a named suite
    /// (`identities`, `probe`, `equivalence`, `formal-inverse`).
    Verify {
        target: String,
        #[arg(long, value_delimiter = ',', default_values_t = [32usize, 64, 128])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_kind(s: &str) -> Result<OperatorKind, String> {
    OperatorKind::from_str(s).map_err(|e| e.to_string())
}

pub fn parse_tau(s: &str) -> Result<TauTag<f64>, String> {
    use std::f64::consts::FRAC_PI_2;
    match s {
        "1" | "+1" => Ok(TauTag::PlusOne),
        "-1" => Ok(TauTag::MinusOne),
        "i" | "+i" => Ok(TauTag::Point { theta: FRAC_PI_2 }),
        "-i" => Ok(TauTag::Point { theta: -FRAC_PI_2 }),
        _ => {
            let theta = s
                .strip_prefix("angle:")
                .and_then(|a| a.parse::<f64>().ok())
                .filter(|t| t.is_finite())
                .ok_or_else(|| format!("invalid tau {s:?}: expected 1, -1, i, -i or angle:<radians>"))?;
            Ok(TauTag::Point { theta })
        }
    }
}

fn emit(output: &Output, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn load(path: &Path) -> CliResult<Symbol> {
    SymbolSpec::read(path)?.to_symbol()
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze { spec, output } => {
            let report = analyze(&load(&spec)?)?;
            emit(&output, &to_json(&AnalyzeReport::from(&report)))
        }
        Command::Factorize { spec, grid, output } => {
            let sym = load(&spec)?;
            let fact = factor_pc(&sym)?;
            let defects = validate_factorization(&fact, &sym, grid)?;
            emit(&output, &to_json(&FactorizeReport::new(&fact, &defects)))
        }
        Command::Matrix { spec, operator, size, output } => {
            let section = build_section(&load(&spec)?, operator, size)?;
            emit(&output, &matrix_text(&section))
        }
        Command::MellinSweep { spec, tau, z_max, steps, output } => {
            let sym = load(&spec)?;
            let sweep = sweep_nonvanishing(&local_symbol(&sym, tau), z_max, steps)?;
            let mut csv = String::from("z,re,im,modulus\n");
            for s in &sweep.samples {
                writeln!(csv, "{},{:?},{:?},{:?}", s.z, s.value.re, s.value.im, s.modulus).unwrap();
            }
            emit(&output, &csv)
        }
        Command::Verify { target, sizes, seed, trials, grid, output } => {
            let report = verify(&target, &sizes, seed, trials, grid)?;
            emit(&output, &to_json(&report))?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
    }
}

/// `N` on the first line, then rows of comma separated `re:im` entries.
pub fn matrix_text(section: &tph_core::Section) -> String {
    let m = &section.entries;
    let mut s = format!("{}\n", m.ncols());
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(|c| format!("{:?}:{:?}", c.re, c.im)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn check(name: &str, passed: Option<bool>, detail: serde_json::Value) -> CheckOut {
    CheckOut { name: name.to_string(), passed, detail }
}

fn verify(target: &str, sizes: &[usize], seed: u64, trials: usize, grid: usize) -> CliResult<VerifyReport> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(CliError::Input("--sizes needs positive integers".into()));
    }
    let checks = match target {
        "identities" => (1..=3)
            .map(|d| {
                let r = identity_suite::<f64>(d, trials, seed)?;
                let errors: Vec<_> =
                    r.checks.iter().map(|c| json!({"identity": c.name, "max_error": c.max_error})).collect();
                Ok(check(
                    &format!("identities d={d}"),
                    Some(r.passed),
                    json!({"section": r.section, "tolerance": r.tolerance, "errors": errors}),
                ))
            })
            .collect::<CliResult<Vec<_>>>()?,
        "probe" => curated_library::<f64>()
            .iter()
            .map(|e| probe_check(&e.id, &e.symbol, sizes))
            .collect::<CliResult<Vec<_>>>()?,
        "equivalence" => curated_library::<f64>()
            .iter()
            .map(|e| equivalence_check(&e.id, &e.symbol, sizes[0]))
            .collect::<CliResult<Vec<_>>>()?,
        "formal-inverse" => invertible_library::<f64>()
            .iter()
            .map(|e| formal_inverse_check(&e.id, &e.symbol, trials, seed))
            .collect::<CliResult<Vec<_>>>()?,
        path => verify_spec(Path::new(path), sizes, seed, trials, grid)?,
    };
    let passed = checks.iter().all(|c| c.passed != Some(false));
    Ok(VerifyReport { schema_version: SCHEMA_VERSION, command: "verify", target: target.to_string(), checks, passed })
}

fn probe_check(id: &str, sym: &Symbol, sizes: &[usize]) -> CliResult<CheckOut> {
    let r = finite_section_probe(id, sym, sizes)?;
    Ok(check(
        &format!("probe {id}"),
        Some(r.verdict_consistent),
        json!({
            "expectation": format!("{:?}", r.expectation),
            "sizes": r.sizes,
            "sigma_min": r.sigma_min,
            "near_null_count": r.near_null_count,
            "kernel_count": r.kernel_count,
            "cokernel_count": r.cokernel_count,
        }),
    ))
}

fn equivalence_check(id: &str, sym: &Symbol, n: usize) -> CliResult<CheckOut> {
    let r = equivalence_probe(sym, n)?;
    Ok(check(
        &format!("equivalence {id}"),
        Some(r.consistent),
        json!({
            "sizes": r.sizes,
            "m_sigma": r.m_sigma,
            "phi_sigma": r.phi_sigma,
            "psi_sigma": r.psi_sigma,
            "bounded": [r.m_bounded, r.phi_bounded, r.psi_bounded],
        }),
    ))
}

fn formal_inverse_check(id: &str, sym: &Symbol, trials: usize, seed: u64) -> CliResult<CheckOut> {
    let r = formal_inverse_suite(sym, trials, seed)?;
    Ok(check(
        &format!("formal inverse {id}"),
        Some(r.passed),
        json!({
            "trials": r.trials,
            "max_defect": r.max_defect,
            "max_j_defect": r.max_j_defect,
            "kernel_sigma_min": r.kernel_sigma_min,
        }),
    ))
}

fn skipped(name: &str, reason: &str) -> CheckOut {
    check(name, None, json!({ "skipped": reason }))
}

fn verify_spec(path: &Path, sizes: &[usize], seed: u64, trials: usize, grid: usize) -> CliResult<Vec<CheckOut>> {
    let sym = load(path)?;
    let report = analyze(&sym)?;
    let mut checks = vec![check(
        "analysis",
        Some(true),
        json!({ "is_fredholm": report.is_fredholm, "kappa": report.kappa, "is_invertible": report.is_invertible }),
    )];
    if report.is_fredholm {
        let fact = factor_pc(&sym)?;
        let d = validate_factorization(&fact, &sym, grid)?;
        checks.push(check(
            "factorization",
            Some(d.max_defect() < 1e-8),
            json!({
                "residual": d.residual,
                "evenness": d.evenness,
                "support_minus": d.support_minus,
                "support_minus_inverse": d.support_minus_inverse,
            }),
        ));
    } else {
        checks.push(skipped("factorization", "symbol is not Fredholm"));
    }
    if sym.p() == 2.0 {
        checks.push(probe_check("spec", &sym, sizes)?);
        checks.push(equivalence_check("spec", &sym, sizes[0])?);
    } else {
        checks.push(skipped("probe", "finite-section probes need p = 2"));
        checks.push(skipped("equivalence", "finite-section probes need p = 2"));
    }
    if report.is_invertible {
        checks.push(formal_inverse_check("spec", &sym, trials, seed)?);
    } else {
        checks.push(skipped("formal inverse", "needs a Fredholm symbol with zero index"));
    }
    Ok(checks)
}
