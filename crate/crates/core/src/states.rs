//! Truncated Fock-space states, coherent overlaps, Gram-matrix purification and
//! closed-form entropies of the static examples.
//!
//! A mixture `ρ = Σ w_i |ψ_i⟩⟨ψ_i|` is the reduced state of the purification
//! `Σ_i |i⟩ ⊗ √w_i |ψ_i⟩`, so its non-zero eigenvalues are those of the small
//! Gram matrix `G_ij = √(w_i w_j) ⟨ψ_i|ψ_j⟩`. The closed forms below use that
//! route with analytic overlaps; the Fock-space constructors give an independent
//! numerical path through the full density matrix.

use num_complex::Complex64;

use crate::mixedness::{q_s_from, Spectrum, SPECTRUM_SUM_TOL};
use crate::qmatrix::{
    hermitian_eigenvalues, outer_product, validate_density, ComplexMatrix, DensityMatrix,
    DEFAULT_DENSITY_TOL, DEFAULT_EIGEN_TOL,
};
use crate::{Error, Result};

/// Largest truncation residual tolerated for an unrenormalized coherent vector.
pub const COHERENT_RESIDUAL_LIMIT: f64 = 1e-6;
/// Largest probability mass a thermal state may lose to truncation.
pub const THERMAL_RESIDUAL_LIMIT: f64 = 1e-9;
/// Default tail tolerance of [`thermal_closed_form`].
pub const THERMAL_TAIL_TOL: f64 = 1e-12;
/// Upper bound on automatically raised thermal truncations.
pub const MAX_AUTO_TRUNCATION: usize = 4096;

/// Fock basis size and whether truncated vectors are rescaled to unit norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockConfig {
    pub truncation_n: usize,
    pub renormalize: bool,
}

impl FockConfig {
    pub fn new(truncation_n: usize) -> Result<Self> {
        if truncation_n == 0 {
            return Err(Error::InvalidConfig("truncation_n must be at least 1".into()));
        }
        Ok(Self {
            truncation_n,
            renormalize: true,
        })
    }

    /// Basis large enough for coherent amplitudes up to `max_abs`.
    pub fn for_amplitude(max_abs: f64) -> Self {
        Self {
            truncation_n: default_truncation(max_abs),
            renormalize: true,
        }
    }

    pub fn with_renormalize(self, renormalize: bool) -> Self {
        Self { renormalize, ..self }
    }
}

/// `⌈|α|² + 6|α| + 10⌉`: keeps the Poisson tail beyond `⟨n⟩ + 6√⟨n⟩` out of the basis.
pub fn default_truncation(max_abs: f64) -> usize {
    let a = max_abs.abs();
    (a * a + 6.0 * a + 10.0).ceil() as usize
}

/// Amplitudes over Fock indices `0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    norm_sq: f64,
    truncation_residual: f64,
}

impl StateVector {
    pub fn new(amps: Vec<Complex64>) -> Self {
        Self::with_residual(amps, 0.0)
    }

    pub fn with_residual(amps: Vec<Complex64>, truncation_residual: f64) -> Self {
        let norm_sq = amps.iter().map(|z| z.norm_sqr()).sum();
        Self {
            amps,
            norm_sq,
            truncation_residual,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// Fock state `|n⟩` in a basis of size `dim`.
    pub fn fock(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: n + 1,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[n] = Complex64::new(1.0, 0.0);
        Ok(Self::new(amps))
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    /// Probability mass that the truncated basis could not represent.
    pub fn truncation_residual(&self) -> f64 {
        self.truncation_residual
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let amps = self.amps.iter().map(|z| z * factor).collect();
        Self::with_residual(amps, self.truncation_residual * factor.norm_sqr())
    }

    /// Mean photon number `Σ n |c_n|² / Σ |c_n|²`.
    pub fn mean_photon_number(&self) -> f64 {
        if self.norm_sq == 0.0 {
            return 0.0;
        }
        let weighted: f64 = self
            .amps
            .iter()
            .enumerate()
            .map(|(n, z)| n as f64 * z.norm_sqr())
            .sum();
        weighted / self.norm_sq
    }

    pub fn projector(&self) -> ComplexMatrix {
        outer_product(&self.amps, &self.amps)
    }
}

/// Coherent state `|α⟩` truncated to `cfg.truncation_n` Fock levels.
///
/// Amplitudes follow `c_{n+1} = c_n α/√(n+1)` from `c_0 = e^{−|α|²/2}`. The
/// residual is the Poisson tail beyond the basis, summed directly so it stays
/// meaningful far below machine epsilon.
pub fn coherent_vector(alpha: Complex64, cfg: &FockConfig) -> Result<StateVector> {
    let n_max = cfg.truncation_n;
    if n_max == 0 {
        return Err(Error::InvalidConfig("truncation_n must be at least 1".into()));
    }
    let mut amps = Vec::with_capacity(n_max);
    let mut c = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..n_max {
        amps.push(c);
        c = c * alpha / ((n + 1) as f64).sqrt();
    }

    // Tail Σ_{n ≥ N} |c_n|², continuing the recurrence on probabilities.
    let mean = alpha.norm_sqr();
    let mut term = c.norm_sqr();
    let mut residual = 0.0;
    let mut n = n_max;
    while term > 0.0 {
        residual += term;
        if n as f64 > mean && term <= residual * 1e-17 {
            break;
        }
        n += 1;
        term *= mean / n as f64;
    }

    if cfg.renormalize {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for z in &mut amps {
                *z /= norm;
            }
        }
    } else if residual > COHERENT_RESIDUAL_LIMIT {
        return Err(Error::TruncationTooSevere {
            residual,
            limit: COHERENT_RESIDUAL_LIMIT,
        });
    }
    Ok(StateVector::with_residual(amps, residual))
}

/// `⟨α|β⟩ = exp(−|α|²/2 − |β|²/2 + conj(α) β)`.
pub fn coherent_overlap(alpha: Complex64, beta: Complex64) -> Complex64 {
    (alpha.conj() * beta - 0.5 * alpha.norm_sqr() - 0.5 * beta.norm_sqr()).exp()
}

/// Weighted list of unit-norm pure states.
#[derive(Debug, Clone)]
pub struct PureStateMixture {
    components: Vec<(f64, StateVector)>,
}

impl PureStateMixture {
    pub fn new(components: Vec<(f64, StateVector)>) -> Result<Self> {
        let Some((_, first)) = components.first() else {
            return Err(Error::InvalidConfig("mixture needs at least one component".into()));
        };
        let dim = first.dim();
        for (w, psi) in &components {
            if !(*w > 0.0 && *w <= 1.0) {
                return Err(Error::InvalidConfig(format!("weight {w} outside (0, 1]")));
            }
            if psi.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: psi.dim(),
                });
            }
            if (psi.norm_sq() - 1.0).abs() > SPECTRUM_SUM_TOL {
                return Err(Error::InvalidConfig(format!(
                    "component norm² {} is not 1",
                    psi.norm_sq()
                )));
            }
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > SPECTRUM_SUM_TOL {
            return Err(Error::InvalidConfig(format!("weights sum to {total}")));
        }
        Ok(Self { components })
    }

    /// Equal-weight mixture of coherent states `|α_i⟩`.
    pub fn coherent(alphas: &[Complex64], cfg: &FockConfig) -> Result<Self> {
        let w = 1.0 / alphas.len().max(1) as f64;
        let components = alphas
            .iter()
            .map(|&a| Ok((w, coherent_vector(a, cfg)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    pub fn components(&self) -> &[(f64, StateVector)] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components[0].1.dim()
    }
}

/// `Σ w_i |ψ_i⟩⟨ψ_i|` in the Fock basis, validated.
pub fn mixture_density(mix: &PureStateMixture) -> Result<DensityMatrix> {
    let dim = mix.dim();
    let mut rho = ComplexMatrix::zeros(dim, dim);
    for (w, psi) in mix.components() {
        rho.add_scaled(&psi.projector(), *w)?;
    }
    validate_density(&rho, DEFAULT_DENSITY_TOL)
}

/// Gram matrix of the weighted branches, entry `(i, j) = √(w_i w_j) ⟨ψ_i|ψ_j⟩`.
pub fn gram_matrix(mix: &PureStateMixture) -> Result<ComplexMatrix> {
    let branches: Vec<StateVector> = mix
        .components()
        .iter()
        .map(|(w, psi)| psi.scaled(Complex64::new(w.sqrt(), 0.0)))
        .collect();
    branch_gram(&branches)
}

/// Gram matrix `(i, j) = ⟨ψ_i|ψ_j⟩` of unnormalized branch vectors.
pub fn branch_gram(branches: &[StateVector]) -> Result<ComplexMatrix> {
    let k = branches.len();
    let mut g = ComplexMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = branches[i].inner(&branches[j])?;
            g[(i, j)] = v;
            g[(j, i)] = v.conj();
        }
    }
    Ok(g)
}

/// Gram matrix of a coherent-state mixture from analytic overlaps (no truncation).
pub fn coherent_mixture_gram(components: &[(f64, Complex64)]) -> ComplexMatrix {
    let k = components.len();
    let mut g = ComplexMatrix::zeros(k, k);
    for (i, &(wi, ai)) in components.iter().enumerate() {
        for (j, &(wj, aj)) in components.iter().enumerate() {
            g[(i, j)] = coherent_overlap(ai, aj) * (wi * wj).sqrt();
        }
    }
    g
}

/// Spectrum of a small Gram matrix, returned as probabilities.
pub fn gram_spectrum(gram: &ComplexMatrix) -> Result<Spectrum> {
    Spectrum::new(hermitian_eigenvalues(gram, DEFAULT_EIGEN_TOL)?.eigenvalues)
}

/// A density matrix that stands in for an infinite-dimensional state.
#[derive(Debug, Clone)]
pub struct TruncatedDensity {
    pub density: DensityMatrix,
    /// Probability mass beyond the kept levels, before renormalization.
    pub truncation_residual: f64,
}

/// Thermal probabilities `P_n = n̄ⁿ/(1+n̄)ⁿ⁺¹` for `n < len`.
pub fn thermal_probabilities(nbar: f64, len: usize) -> Vec<f64> {
    if nbar == 0.0 {
        let mut p = vec![0.0; len];
        if len > 0 {
            p[0] = 1.0;
        }
        return p;
    }
    let ratio = nbar / (1.0 + nbar);
    let ln_ratio = ratio.ln();
    let ln_norm = (1.0 + nbar).ln();
    (0..len)
        .map(|n| (n as f64 * ln_ratio - ln_norm).exp())
        .collect()
}

/// Diagonal thermal state over `cfg.truncation_n` levels, renormalized over the kept terms.
///
/// The discarded mass `(n̄/(1+n̄))^N` must stay below [`THERMAL_RESIDUAL_LIMIT`];
/// with `auto_raise` the basis is enlarged until it does.
pub fn thermal_density(nbar: f64, cfg: &FockConfig, auto_raise: bool) -> Result<TruncatedDensity> {
    if !(nbar >= 0.0 && nbar.is_finite()) {
        return Err(Error::InvalidConfig(format!("mean photon number {nbar} must be ≥ 0")));
    }
    let ratio = nbar / (1.0 + nbar);
    let residual_at = |n: usize| if nbar == 0.0 { 0.0 } else { (n as f64 * ratio.ln()).exp() };
    let mut n = cfg.truncation_n.max(1);
    if residual_at(n) >= THERMAL_RESIDUAL_LIMIT {
        if !auto_raise {
            return Err(Error::TruncationTooSevere {
                residual: residual_at(n),
                limit: THERMAL_RESIDUAL_LIMIT,
            });
        }
        n = (THERMAL_RESIDUAL_LIMIT.ln() / ratio.ln()).ceil() as usize + 1;
        if n > MAX_AUTO_TRUNCATION {
            return Err(Error::TruncationTooSevere {
                residual: residual_at(MAX_AUTO_TRUNCATION),
                limit: THERMAL_RESIDUAL_LIMIT,
            });
        }
    }
    let mut probs = thermal_probabilities(nbar, n);
    let kept: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= kept;
    }
    let density = validate_density(&ComplexMatrix::from_real_diagonal(&probs), DEFAULT_DENSITY_TOL)?;
    Ok(TruncatedDensity {
        density,
        truncation_residual: residual_at(n),
    })
}

/// `(S, ΔS, Q_S)` of one state from a closed-form evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub entropy: f64,
    pub delta_s: f64,
    pub q_s: f64,
}

impl ClosedForm {
    fn new(entropy: f64, delta_s: f64) -> Self {
        Self {
            entropy,
            delta_s,
            q_s: q_s_from(entropy, delta_s * delta_s),
        }
    }
}

fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `ρ = cos²φ |e⟩⟨e| + sin²φ |g⟩⟨g|`:
/// `S = −cos²φ ln cos²φ − sin²φ ln sin²φ`, `ΔS = ½ |sin 2φ · ln cot²φ|`.
pub fn two_level_closed_form(phi: f64) -> ClosedForm {
    let c2 = phi.cos().powi(2);
    let s2 = phi.sin().powi(2);
    let entropy = -xlnx(c2) - xlnx(s2);
    let delta_s = if c2 == 0.0 || s2 == 0.0 {
        0.0
    } else {
        0.5 * ((2.0 * phi).sin() * (c2 / s2).ln()).abs()
    };
    ClosedForm::new(entropy.max(0.0), delta_s)
}

/// Equal mixture of `|α⟩` and `|−α⟩`, eigenvalues `(1 ± e^{−2|α|²})/2`:
/// `ΔS = ½ √(1 − e^{−4|α|²}) · ln[(1 + e^{−2|α|²}) / (1 − e^{−2|α|²})]`.
pub fn cat2_closed_form(alpha_abs: f64) -> ClosedForm {
    let a2 = alpha_abs * alpha_abs;
    let overlap = (-2.0 * a2).exp();
    let one_minus = -(-2.0 * a2).exp_m1();
    let plus = (1.0 + overlap) / 2.0;
    let minus = one_minus / 2.0;
    let entropy = -xlnx(plus) - xlnx(minus);
    let delta_s = if one_minus == 0.0 {
        0.0
    } else {
        0.5 * (-(-4.0 * a2).exp_m1()).sqrt() * ((1.0 + overlap) / one_minus).ln()
    };
    ClosedForm::new(entropy.max(0.0), delta_s)
}

/// Which `(2, 3)` entry to use in the three-coherent-state Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Cat3Mode {
    /// `e^{−3|α|²}/3`, an alternative tabulation kept for comparison.
    Paper,
    /// `⟨−α|2α⟩/3 = e^{−9|α|²/2}/3`, the actual coherent overlap.
    #[default]
    Recomputed,
}

impl Cat3Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Cat3Mode::Paper => "paper",
            Cat3Mode::Recomputed => "recomputed",
        }
    }
}

impl std::str::FromStr for Cat3Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Cat3Mode::Paper),
            "recomputed" => Ok(Cat3Mode::Recomputed),
            other => Err(Error::InvalidConfig(format!("unknown cat3 mode `{other}`"))),
        }
    }
}

/// Gram matrix of `(|α⟩⟨α| + |−α⟩⟨−α| + |2α⟩⟨2α|)/3` for real `α = alpha_abs`.
pub fn cat3_gram(alpha_abs: f64, mode: Cat3Mode) -> ComplexMatrix {
    let a2 = alpha_abs * alpha_abs;
    let third = 1.0 / 3.0;
    let g12 = (-2.0 * a2).exp() * third;
    let g13 = (-0.5 * a2).exp() * third;
    let g23 = match mode {
        Cat3Mode::Paper => (-3.0 * a2).exp() * third,
        Cat3Mode::Recomputed => (-4.5 * a2).exp() * third,
    };
    let rows: [&[f64]; 3] = [&[third, g12, g13], &[g12, third, g23], &[g13, g23, third]];
    ComplexMatrix::from_real_rows(&rows).expect("3x3 rows are well formed")
}

pub fn cat3_spectrum(alpha_abs: f64, mode: Cat3Mode) -> Result<Spectrum> {
    gram_spectrum(&cat3_gram(alpha_abs, mode))
}

/// `S = −Σ λ ln λ`, `ΔS = √(Σ λ ln²λ − S²)` over the three Gram eigenvalues.
pub fn cat3_closed_form(alpha_abs: f64, mode: Cat3Mode) -> Result<ClosedForm> {
    let s = cat3_spectrum(alpha_abs, mode)?;
    let entropy = s.probs().iter().map(|&l| -xlnx(l)).sum::<f64>().max(0.0);
    let second: f64 = s
        .probs()
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l * l.ln().powi(2))
        .sum();
    Ok(ClosedForm::new(entropy, (second - entropy * entropy).max(0.0).sqrt()))
}

/// Thermal entropy and fluctuations summed over the geometric distribution.
///
/// With `q = n̄/(1+n̄)`, `−ln P_n = ln(1+n̄) + n ln(1/q)` is linear in `n`, so the
/// tails of `Σ P_n`, `Σ P_n(−ln P_n)` and `Σ P_n ln²P_n` beyond `N` have exact
/// geometric bounds. Summation stops once all three are below `tail_tol`.
pub fn thermal_closed_form(nbar: f64, tail_tol: f64) -> ClosedForm {
    if nbar <= 0.0 {
        return ClosedForm::new(0.0, 0.0);
    }
    let q = nbar / (1.0 + nbar);
    let a = (1.0 + nbar).ln();
    let b = -q.ln();
    let tail = |n: f64| {
        let mass = (n * q.ln()).exp();
        let h = a + b * n;
        let first = mass * (h + b * nbar);
        let second = mass * (h * h + 2.0 * h * b * nbar + b * b * (2.0 * nbar * nbar + nbar));
        mass.max(first).max(second)
    };
    let mut len = 0usize;
    while tail(len as f64) >= tail_tol {
        len += 1;
    }
    let terms: Vec<(f64, f64)> = (0..len)
        .map(|n| {
            let h = a + b * n as f64;
            ((-h).exp(), h)
        })
        .collect();
    let entropy: f64 = terms.iter().map(|(p, h)| p * h).sum();
    let second: f64 = terms.iter().map(|(p, h)| p * h * h).sum();
    ClosedForm::new(entropy, (second - entropy * entropy).max(0.0).sqrt())
}

/// `1/d · I`.
pub fn maximally_mixed(d: usize) -> Result<DensityMatrix> {
    if d == 0 {
        return Err(Error::InvalidConfig("dimension must be at least 1".into()));
    }
    validate_density(&ComplexMatrix::from_real_diagonal(&vec![1.0 / d as f64; d]), DEFAULT_DENSITY_TOL)
}
