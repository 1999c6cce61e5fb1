//! Time-resolved mixedness for the resonant Jaynes–Cummings model and for a
//! damped superposition of two coherent states.

use num_complex::Complex64;

use crate::mixedness::{entropy_variance, q_s_from, von_neumann_entropy, Spectrum};
use crate::qmatrix::{hermitian_eigenvalues, validate_density, ComplexMatrix, DensityMatrix, DEFAULT_EIGEN_TOL};
use crate::states::{branch_gram, coherent_overlap, coherent_vector, FockConfig, StateVector};
use crate::{Error, Result};

/// Allowed deviation of `⟨ψ₁|ψ₁⟩ + ⟨ψ₂|ψ₂⟩` from one under truncation.
pub const BRANCH_NORM_TOL: f64 = 1e-8;

/// `[0, tmax]` sampled every `dt`, endpoints included.
pub fn uniform_grid(tmax: f64, dt: f64) -> Result<Vec<f64>> {
    if !(dt > 0.0 && tmax >= 0.0 && tmax.is_finite()) {
        return Err(Error::InvalidConfig(format!("bad grid: tmax = {tmax}, dt = {dt}")));
    }
    let steps = (tmax / dt).round() as usize;
    Ok((0..=steps).map(|i| i as f64 * dt).collect())
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig("time grid is empty".into()));
    }
    if !(grid[0] >= 0.0) || grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidConfig("time grid must be finite and start at t ≥ 0".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidConfig("time grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Spectrum of a density matrix whose trace may differ from one by truncation.
fn trace_normalized_spectrum(rho: &DensityMatrix) -> Result<Spectrum> {
    let trace: f64 = rho.eigenvalues().iter().sum();
    Spectrum::new(rho.eigenvalues().iter().map(|l| l / trace).collect())
}

/// Resonant JCM run: atom initially excited, field in `|α⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct JcmConfig {
    pub alpha: Complex64,
    pub coupling_lambda: f64,
    /// Dimensionless interaction times `λt`.
    pub time_grid: Vec<f64>,
    pub fock: FockConfig,
}

impl JcmConfig {
    pub fn new(alpha: Complex64, lambda_t_grid: Vec<f64>, fock: FockConfig) -> Result<Self> {
        check_grid(&lambda_t_grid)?;
        Ok(Self {
            alpha,
            coupling_lambda: 1.0,
            time_grid: lambda_t_grid,
            fock,
        })
    }

    /// Converts absolute times to `λt` with the given coupling.
    pub fn from_absolute_times(alpha: Complex64, coupling_lambda: f64, times: &[f64], fock: FockConfig) -> Result<Self> {
        if !(coupling_lambda > 0.0 && coupling_lambda.is_finite()) {
            return Err(Error::InvalidConfig(format!("coupling {coupling_lambda} must be > 0")));
        }
        let grid = times.iter().map(|t| t * coupling_lambda).collect();
        let mut cfg = Self::new(alpha, grid, fock)?;
        cfg.coupling_lambda = coupling_lambda;
        Ok(cfg)
    }
}

fn branches_from_coherent(c: &StateVector, lambda_t: f64) -> (StateVector, StateVector) {
    let amps = c.amps();
    let n = amps.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut psi1 = vec![zero; n];
    let mut psi2 = vec![zero; n];
    for (k, &ck) in amps.iter().enumerate() {
        let arg = lambda_t * ((k + 1) as f64).sqrt();
        psi1[k] = ck * arg.cos();
        if k + 1 < n {
            psi2[k + 1] = ck * Complex64::new(0.0, -arg.sin());
        }
    }
    (StateVector::new(psi1), StateVector::new(psi2))
}

fn jcm_coherent(cfg: &JcmConfig) -> Result<StateVector> {
    let c = coherent_vector(cfg.alpha, &cfg.fock)?;
    if c.truncation_residual() > BRANCH_NORM_TOL {
        return Err(Error::TruncationTooSevere {
            residual: c.truncation_residual(),
            limit: BRANCH_NORM_TOL,
        });
    }
    Ok(c)
}

/// Field branches `|ψ₁⟩ = cos(λt√(n̂+1))|α⟩` and `|ψ₂⟩ = −i V̂† sin(λt√(ââ†))|α⟩`
/// of `|ψ⟩ = |ψ₁⟩|e⟩ + |ψ₂⟩|g⟩`.
///
/// `V̂†` raises the Fock index by one, so `ψ₂[n+1] = −i sin(λt√(n+1)) c_n` and
/// `ψ₂[0] = 0`; the component pushed past the basis edge is dropped.
pub fn jcm_branches(cfg: &JcmConfig, lambda_t: f64) -> Result<(StateVector, StateVector)> {
    Ok(branches_from_coherent(&jcm_coherent(cfg)?, lambda_t))
}

/// Reduced atomic state `[[⟨ψ₁|ψ₁⟩, ⟨ψ₁|ψ₂⟩*], [⟨ψ₁|ψ₂⟩, ⟨ψ₂|ψ₂⟩]]`.
pub fn atomic_density(psi1: &StateVector, psi2: &StateVector) -> Result<DensityMatrix> {
    let cross = psi1.inner(psi2)?;
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 0)] = Complex64::new(psi1.norm_sq(), 0.0);
    m[(0, 1)] = cross.conj();
    m[(1, 0)] = cross;
    m[(1, 1)] = Complex64::new(psi2.norm_sq(), 0.0);
    validate_density(&m, BRANCH_NORM_TOL)
}

/// Reduced field state `|ψ₁⟩⟨ψ₁| + |ψ₂⟩⟨ψ₂|`.
pub fn field_density(psi1: &StateVector, psi2: &StateVector) -> Result<DensityMatrix> {
    if psi1.dim() != psi2.dim() {
        return Err(Error::DimensionMismatch {
            expected: psi1.dim(),
            found: psi2.dim(),
        });
    }
    let mut rho = psi1.projector();
    rho.add_scaled(&psi2.projector(), 1.0)?;
    validate_density(&rho, BRANCH_NORM_TOL)
}

#[derive(Debug, Clone)]
pub struct JcmSnapshot {
    pub lambda_t: f64,
    pub atomic_rho: DensityMatrix,
    pub s_atom: f64,
    pub ds_atom: f64,
    pub q_s_atom: f64,
    /// Entropy of the full field density matrix, computed independently of the atom.
    pub s_field: f64,
    /// `⟨ψ₁|ψ₁⟩ + ⟨ψ₂|ψ₂⟩`.
    pub branch_norm_sum: f64,
}

fn jcm_snapshot(c: &StateVector, lambda_t: f64) -> Result<JcmSnapshot> {
    let (psi1, psi2) = branches_from_coherent(c, lambda_t);
    let branch_norm_sum = psi1.norm_sq() + psi2.norm_sq();
    let atomic_rho = atomic_density(&psi1, &psi2)?;
    let atom = trace_normalized_spectrum(&atomic_rho)?;
    let field = trace_normalized_spectrum(&field_density(&psi1, &psi2)?)?;
    let s_atom = von_neumann_entropy(&atom);
    let var = entropy_variance(&atom);
    Ok(JcmSnapshot {
        lambda_t,
        atomic_rho,
        s_atom,
        ds_atom: var.sqrt(),
        q_s_atom: q_s_from(s_atom, var),
        s_field: von_neumann_entropy(&field),
        branch_norm_sum,
    })
}

/// One snapshot per grid point.
pub fn jcm_timeseries(cfg: &JcmConfig) -> Result<Vec<JcmSnapshot>> {
    check_grid(&cfg.time_grid)?;
    let c = jcm_coherent(cfg)?;
    cfg.time_grid.iter().map(|&lt| jcm_snapshot(&c, lt)).collect()
}

/// Decaying field started in `N(|α⟩ + |β⟩)` with real, non-negative amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct DampedConfig {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Dimensionless decay times `γt`.
    pub time_grid: Vec<f64>,
    /// Basis for the Fock-space cross-check.
    pub fock: FockConfig,
}

impl DampedConfig {
    pub fn new(alpha: f64, beta: f64, gamma: f64, gamma_t_grid: Vec<f64>) -> Result<Self> {
        if !(alpha >= 0.0 && beta >= 0.0 && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "amplitudes must be real and non-negative (α = {alpha}, β = {beta})"
            )));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidConfig(format!("decay rate {gamma} must be > 0")));
        }
        check_grid(&gamma_t_grid)?;
        Ok(Self {
            alpha,
            beta,
            gamma,
            time_grid: gamma_t_grid,
            fock: FockConfig::for_amplitude(alpha.max(beta)),
        })
    }

    /// Accepts complex amplitudes but only if they are real and non-negative.
    pub fn from_complex(alpha: Complex64, beta: Complex64, gamma: f64, gamma_t_grid: Vec<f64>) -> Result<Self> {
        if alpha.im != 0.0 || beta.im != 0.0 || alpha.re < 0.0 || beta.re < 0.0 {
            return Err(Error::ComplexAmplitudeUnsupported);
        }
        Self::new(alpha.re, beta.re, gamma, gamma_t_grid)
    }

    pub fn with_fock(self, fock: FockConfig) -> Self {
        Self { fock, ..self }
    }

    /// `⟨α|β⟩ = exp(−(α−β)²/2)`, real and positive.
    pub fn overlap(&self) -> f64 {
        (-(self.alpha - self.beta).powi(2) / 2.0).exp()
    }

    /// `N = 1/(2 + 2 Re⟨α|β⟩)`.
    pub fn normalization(&self) -> f64 {
        1.0 / (2.0 + 2.0 * self.overlap())
    }
}

/// Gram entries of the two decay branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedGram {
    pub p11: f64,
    pub p12: f64,
    pub p22: f64,
}

/// `P₁₁ = N(1 + 2⟨α|β⟩ + ⟨α|β⟩^{2(1−e^{−γt})})`,
/// `P₁₂ = N(⟨α|β⟩^{e^{−γt}} + ⟨β|α⟩^{1−e^{−γt}}) √(1 − ⟨α|β⟩^{2(1−e^{−γt})})`,
/// `P₂₂ = N(1 − ⟨α|β⟩^{2(1−e^{−γt})})`.
pub fn damped_gram(cfg: &DampedConfig, gamma_t: f64) -> DampedGram {
    let ln_ov = -(cfg.alpha - cfg.beta).powi(2) / 2.0;
    let ov = ln_ov.exp();
    let norm = cfg.normalization();
    let decayed = (-gamma_t).exp();
    let elapsed = -(-gamma_t).exp_m1();
    let x2 = (2.0 * elapsed * ln_ov).exp();
    let one_minus_x2 = -(2.0 * elapsed * ln_ov).exp_m1();
    DampedGram {
        p11: norm * (1.0 + 2.0 * ov + x2),
        p12: norm * ((decayed * ln_ov).exp() + (elapsed * ln_ov).exp()) * one_minus_x2.sqrt(),
        p22: norm * one_minus_x2,
    }
}

/// `λ± = ½ ± ½ √((P₁₁ − P₂₂)² + 4|P₁₂|²)`.
pub fn damped_eigenvalues(cfg: &DampedConfig, gamma_t: f64) -> (f64, f64) {
    let g = damped_gram(cfg, gamma_t);
    let root = ((g.p11 - g.p22).powi(2) + 4.0 * g.p12 * g.p12).sqrt().min(1.0);
    (0.5 + 0.5 * root, 0.5 - 0.5 * root)
}

/// Fock-space branches `|ψ₁⟩ = √N(|αe^{−γt/2}⟩ + ⟨α|β⟩^{1−e^{−γt}} |βe^{−γt/2}⟩)` and
/// `|ψ₂⟩ = √(N(1 − ⟨α|β⟩^{2(1−e^{−γt})})) |βe^{−γt/2}⟩`.
pub fn damped_branches(cfg: &DampedConfig, gamma_t: f64) -> Result<(StateVector, StateVector)> {
    let shrink = (-gamma_t / 2.0).exp();
    let a = coherent_vector(Complex64::new(cfg.alpha * shrink, 0.0), &cfg.fock)?;
    let b = coherent_vector(Complex64::new(cfg.beta * shrink, 0.0), &cfg.fock)?;
    let norm = cfg.normalization();
    let elapsed = -(-gamma_t).exp_m1();
    let x = cfg.overlap().powf(elapsed);
    let psi1: Vec<Complex64> = a
        .amps()
        .iter()
        .zip(b.amps())
        .map(|(za, zb)| (za + zb * x) * norm.sqrt())
        .collect();
    let psi2 = b.scaled(Complex64::new((norm * (1.0 - x * x)).sqrt(), 0.0));
    Ok((StateVector::new(psi1), psi2))
}

/// `(λ₊, λ₋)` from the Fock-space branch Gram matrix.
pub fn damped_oracle_eigenvalues(cfg: &DampedConfig, gamma_t: f64) -> Result<(f64, f64)> {
    let (psi1, psi2) = damped_branches(cfg, gamma_t)?;
    let ev = hermitian_eigenvalues(&branch_gram(&[psi1, psi2])?, DEFAULT_EIGEN_TOL)?.eigenvalues;
    Ok((ev[0], ev[1]))
}

/// `ΔS = √(λ₊λ₋) |ln(λ₊/λ₋)|` for a two-outcome spectrum.
pub fn two_outcome_delta_s(lambda_plus: f64, lambda_minus: f64) -> f64 {
    if lambda_plus <= 0.0 || lambda_minus <= 0.0 {
        return 0.0;
    }
    (lambda_plus * lambda_minus).sqrt() * (lambda_plus / lambda_minus).ln().abs()
}

fn two_outcome_entropy(lambda_plus: f64, lambda_minus: f64) -> f64 {
    [lambda_plus, lambda_minus]
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum::<f64>()
        .max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedSnapshot {
    pub gamma_t: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub s: f64,
    pub ds: f64,
    pub q_s: f64,
    /// `P₁₁ + P₂₂`.
    pub trace_check: f64,
}

pub fn damped_snapshot(cfg: &DampedConfig, gamma_t: f64) -> DampedSnapshot {
    let g = damped_gram(cfg, gamma_t);
    let (lambda_plus, lambda_minus) = damped_eigenvalues(cfg, gamma_t);
    let s = two_outcome_entropy(lambda_plus, lambda_minus);
    let ds = two_outcome_delta_s(lambda_plus, lambda_minus);
    DampedSnapshot {
        gamma_t,
        lambda_plus,
        lambda_minus,
        s,
        ds,
        q_s: q_s_from(s, ds * ds),
        trace_check: g.p11 + g.p22,
    }
}

pub fn damped_timeseries(cfg: &DampedConfig) -> Result<Vec<DampedSnapshot>> {
    check_grid(&cfg.time_grid)?;
    Ok(cfg.time_grid.iter().map(|&gt| damped_snapshot(cfg, gt)).collect())
}

/// Analytic overlap used to cross-check the branch construction.
pub fn damped_branch_overlap(cfg: &DampedConfig, gamma_t: f64) -> f64 {
    let shrink = (-gamma_t / 2.0).exp();
    coherent_overlap(
        Complex64::new(cfg.alpha * shrink, 0.0),
        Complex64::new(cfg.beta * shrink, 0.0),
    )
    .re
}
