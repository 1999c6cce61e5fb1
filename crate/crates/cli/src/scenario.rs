//! The sweeps behind each subcommand.

use std::path::PathBuf;

use mixmeter_core::dynamics::{damped_timeseries, jcm_timeseries, uniform_grid, DampedConfig, JcmConfig};
use mixmeter_core::mixedness::report;
use mixmeter_core::qmatrix::{validate_density, DEFAULT_DENSITY_TOL};
use mixmeter_core::states::{
    cat2_closed_form, cat3_closed_form, coherent_vector, default_truncation, mixture_density, thermal_closed_form,
    two_level_closed_form, Cat3Mode, FockConfig, PureStateMixture, COHERENT_RESIDUAL_LIMIT,
    THERMAL_TAIL_TOL,
};
use mixmeter_core::{Complex64, Error};

use crate::density_file::read_density_file;
use crate::error::{CliError, Result};
use crate::table::{Cell, Table};

use std::f64::consts::{FRAC_PI_2, LN_2};

/// Smallest Fock truncation used for the Jaynes–Cummings field.
pub const JCM_MIN_TRUNCATION: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    /// `cos²φ |0⟩⟨0| + sin²φ |1⟩⟨1|` for `φ ∈ [0, π/2]`.
    TwoLevel { steps: usize },
    /// Equal mixture of `|α⟩` and `|−α⟩`, closed form next to a Fock-space oracle.
    Cat2 {
        alpha_max: f64,
        steps: usize,
        truncation: Option<usize>,
    },
    /// Equal mixture of `|α⟩`, `|−α⟩` and `|2α⟩`.
    Cat3 {
        alpha_max: f64,
        steps: usize,
        mode: Cat3Mode,
    },
    Thermal { nbar_max: f64, steps: usize },
    /// Resonant Jaynes–Cummings model, atom initially excited, coupling `λ = 1`.
    Jcm {
        alpha: f64,
        tmax: f64,
        dt: f64,
        truncation: Option<usize>,
    },
    /// Cat state `N(|α⟩ + |β⟩)` in a cavity with amplitude damping rate `γ`.
    Damped {
        alpha: f64,
        beta: f64,
        gamma: f64,
        tmax: f64,
        dt: f64,
    },
    Analyze {
        path: PathBuf,
        reference_dim: Option<usize>,
    },
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::TwoLevel { .. } => "two-level",
            Scenario::Cat2 { .. } => "cat2",
            Scenario::Cat3 { .. } => "cat3",
            Scenario::Thermal { .. } => "thermal",
            Scenario::Jcm { .. } => "jcm",
            Scenario::Damped { .. } => "damped",
            Scenario::Analyze { .. } => "analyze",
        }
    }
}

fn check_steps(steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    Ok(())
}

fn check_nonneg(name: &str, x: f64) -> Result<()> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(CliError::Usage(format!("{name} must be a finite value ≥ 0, got {x}")));
    }
    Ok(())
}

/// `steps + 1` evenly spaced points on `[0, max]`, endpoints exact.
fn sweep(max: f64, steps: usize) -> impl Iterator<Item = f64> {
    (0..=steps).map(move |i| max * i as f64 / steps as f64)
}

pub fn run_scenario(scenario: &Scenario) -> Result<Table> {
    match scenario {
        &Scenario::TwoLevel { steps } => {
            check_steps(steps)?;
            let mut t = Table::new(&["phi", "S", "S_over_ln2", "dS", "q_s"]);
            for phi in sweep(FRAC_PI_2, steps) {
                let cf = two_level_closed_form(phi);
                t.push(vec![
                    Cell::Num(phi),
                    Cell::Num(cf.entropy),
                    Cell::Num(cf.entropy / LN_2),
                    Cell::Num(cf.delta_s),
                    Cell::Num(cf.q_s),
                ]);
            }
            Ok(t)
        }
        &Scenario::Cat2 {
            alpha_max,
            steps,
            truncation,
        } => {
            check_steps(steps)?;
            check_nonneg("--alpha", alpha_max)?;
            let fock = FockConfig::new(truncation.unwrap_or_else(|| default_truncation(alpha_max)))?;
            let residual = coherent_vector(Complex64::new(alpha_max, 0.0), &fock)?.truncation_residual();
            if residual > COHERENT_RESIDUAL_LIMIT {
                return Err(Error::TruncationTooSevere {
                    residual,
                    limit: COHERENT_RESIDUAL_LIMIT,
                }
                .into());
            }
            let mut t = Table::new(&["alpha_abs", "S", "S_over_ln2", "dS", "q_s", "oracle_S", "oracle_q_s"]);
            for a in sweep(alpha_max, steps) {
                let cf = cat2_closed_form(a);
                let alphas = [Complex64::new(a, 0.0), Complex64::new(-a, 0.0)];
                let oracle = report(&mixture_density(&PureStateMixture::coherent(&alphas, &fock)?)?, None)?;
                t.push(vec![
                    Cell::Num(a),
                    Cell::Num(cf.entropy),
                    Cell::Num(cf.entropy / LN_2),
                    Cell::Num(cf.delta_s),
                    Cell::Num(cf.q_s),
                    Cell::Num(oracle.entropy),
                    Cell::Num(oracle.q_s),
                ]);
            }
            Ok(t)
        }
        &Scenario::Cat3 { alpha_max, steps, mode } => {
            check_steps(steps)?;
            check_nonneg("--alpha", alpha_max)?;
            let ln3 = 3f64.ln();
            let mut t = Table::new(&["alpha_abs", "S", "S_over_ln3", "dS", "q_s", "mode"]);
            for a in sweep(alpha_max, steps) {
                let cf = cat3_closed_form(a, mode)?;
                t.push(vec![
                    Cell::Num(a),
                    Cell::Num(cf.entropy),
                    Cell::Num(cf.entropy / ln3),
                    Cell::Num(cf.delta_s),
                    Cell::Num(cf.q_s),
                    Cell::Text(mode.as_str()),
                ]);
            }
            Ok(t)
        }
        &Scenario::Thermal { nbar_max, steps } => {
            check_steps(steps)?;
            check_nonneg("--nbar-max", nbar_max)?;
            let mut t = Table::new(&["nbar", "S", "dS", "q_s"]);
            for nbar in sweep(nbar_max, steps) {
                let cf = thermal_closed_form(nbar, THERMAL_TAIL_TOL);
                t.push(vec![Cell::Num(nbar), Cell::Num(cf.entropy), Cell::Num(cf.delta_s), Cell::Num(cf.q_s)]);
            }
            Ok(t)
        }
        &Scenario::Jcm {
            alpha,
            tmax,
            dt,
            truncation,
        } => {
            check_nonneg("--alpha", alpha.abs())?;
            let n = truncation.unwrap_or_else(|| default_truncation(alpha.abs()).max(JCM_MIN_TRUNCATION));
            let cfg = JcmConfig::new(Complex64::new(alpha, 0.0), uniform_grid(tmax, dt)?, FockConfig::new(n)?)?;
            let mut t = Table::new(&["lambda_t", "S_atom", "S_over_ln2", "dS", "q_s", "S_field", "norm_check"]);
            for snap in jcm_timeseries(&cfg)? {
                t.push(vec![
                    Cell::Num(snap.lambda_t),
                    Cell::Num(snap.s_atom),
                    Cell::Num(snap.s_atom / LN_2),
                    Cell::Num(snap.ds_atom),
                    Cell::Num(snap.q_s_atom),
                    Cell::Num(snap.s_field),
                    Cell::Num(snap.branch_norm_sum),
                ]);
            }
            Ok(t)
        }
        &Scenario::Damped {
            alpha,
            beta,
            gamma,
            tmax,
            dt,
        } => {
            check_nonneg("--gamma", gamma)?;
            let grid = uniform_grid(tmax, dt)?.into_iter().map(|t| gamma * t).collect();
            let cfg = DampedConfig::new(alpha, beta, gamma, grid)?;
            let mut t = Table::new(&["gamma_t", "lambda_plus", "S", "S_over_ln2", "dS", "q_s", "trace_check"]);
            for snap in damped_timeseries(&cfg)? {
                t.push(vec![
                    Cell::Num(snap.gamma_t),
                    Cell::Num(snap.lambda_plus),
                    Cell::Num(snap.s),
                    Cell::Num(snap.s / LN_2),
                    Cell::Num(snap.ds),
                    Cell::Num(snap.q_s),
                    Cell::Num(snap.trace_check),
                ]);
            }
            Ok(t)
        }
        Scenario::Analyze { path, reference_dim } => {
            let rho = validate_density(&read_density_file(path)?, DEFAULT_DENSITY_TOL)?;
            let r = report(&rho, *reference_dim)?;
            let mut row = vec![
                Cell::Int(rho.dim()),
                Cell::Num(r.entropy),
                Cell::Num(r.linear_entropy),
                Cell::Num(r.entropy_variance),
                Cell::Num(r.q_s),
            ];
            let mut t = match (r.normalized_entropy, r.normalized_linear_entropy) {
                (Some(s), Some(xi)) => {
                    row.extend([Cell::Num(s), Cell::Num(xi)]);
                    Table::new(&["dim", "S", "xi", "dS2", "q_s", "S_norm", "xi_norm"])
                }
                _ => Table::new(&["dim", "S", "xi", "dS2", "q_s"]),
            };
            t.push(row);
            Ok(t)
        }
    }
}

/// Gnuplot script drawing `S` and `q_s` from `csv_name` against the first column.
pub fn gnuplot_script(table: &Table, csv_name: &str, kind: &str) -> String {
    let x = table.header[0];
    let s = if table.column("S_atom").is_some() { "S_atom" } else { "S" };
    format!(
        "# {kind}\n\
         set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel '{x}'\n\
         plot '{csv_name}' using '{x}':'{s}' with lines, \\\n     '{csv_name}' using '{x}':'q_s' with lines\n"
    )
}
