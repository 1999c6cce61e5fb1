//! Spectral entropy functionals.
//!
//! Every functional acts on a validated [`Spectrum`]; logarithms are natural
//! and `0·ln 0 = 0·ln²0 = 0`.

use crate::qmatrix::DensityMatrix;
use crate::{Error, Result};

/// Tolerance on the total probability of a spectrum.
pub const SPECTRUM_SUM_TOL: f64 = 1e-9;
/// Negative entries down to this value are clamped to zero.
pub const NEGATIVE_CLAMP_TOL: f64 = 1e-10;
/// Below this entropy the state is treated as pure and `Q_S = 0`.
pub const PURE_ENTROPY_EPS: f64 = 1e-12;
/// Below this mean photon number Mandel-Q is reported as 0.
pub const VACUUM_MEAN_EPS: f64 = 1e-12;

/// A probability vector: entries in `[0, 1]` summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    probs: Vec<f64>,
}

impl Spectrum {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        let mut probs = probs;
        if probs.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        for p in &mut probs {
            if !p.is_finite() {
                return Err(Error::InvalidSpectrum(format!("non-finite entry {p}")));
            }
            if *p < -NEGATIVE_CLAMP_TOL || *p > 1.0 + SPECTRUM_SUM_TOL {
                return Err(Error::InvalidSpectrum(format!("entry {p} outside [0, 1]")));
            }
            *p = p.clamp(0.0, 1.0);
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SPECTRUM_SUM_TOL {
            return Err(Error::InvalidSpectrum(format!("entries sum to {sum}")));
        }
        Ok(Self { probs })
    }

    /// Spectrum of a validated density matrix.
    pub fn of_density(rho: &DensityMatrix) -> Result<Self> {
        Self::new(rho.eigenvalues().to_vec())
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Number of strictly positive entries.
    pub fn support(&self) -> usize {
        self.probs.iter().filter(|&&p| p > 0.0).count()
    }

    /// The same spectrum with `extra` zero-probability entries appended.
    pub fn zero_padded(&self, extra: usize) -> Self {
        let mut probs = self.probs.clone();
        probs.extend(std::iter::repeat_n(0.0, extra));
        Self { probs }
    }

    pub fn entropy(&self) -> f64 {
        von_neumann_entropy(self)
    }

    pub fn report(&self, reference_dim: Option<usize>) -> Result<MixednessReport> {
        MixednessReport::from_spectrum(self, reference_dim)
    }
}

fn surprisal_terms(s: &Spectrum) -> impl Iterator<Item = (f64, f64)> + '_ {
    s.probs.iter().filter(|&&p| p > 0.0).map(|&p| (p, -p.ln()))
}

/// `S = −Σ p ln p`.
pub fn von_neumann_entropy(s: &Spectrum) -> f64 {
    surprisal_terms(s).map(|(p, h)| p * h).sum::<f64>().max(0.0)
}

/// `ξ = 1 − Σ p²`.
pub fn linear_entropy(s: &Spectrum) -> f64 {
    (1.0 - s.probs.iter().map(|p| p * p).sum::<f64>()).max(0.0)
}

/// `d/(d−1) · (1 − Σ p²)`, which is 1 for the maximally mixed state of dimension `d`.
pub fn normalized_linear_entropy(s: &Spectrum, d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let support = s.support();
    if support > d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: support,
        });
    }
    let d = d as f64;
    Ok(d / (d - 1.0) * linear_entropy(s))
}

/// Entropy fluctuations `(ΔS)² = Σ p ln²p − S²`.
///
/// Evaluated in the centred form `Σ p (−ln p − S)²`, which equals the above
/// identically but does not cancel catastrophically for near-uniform spectra.
pub fn entropy_variance(s: &Spectrum) -> f64 {
    let entropy = von_neumann_entropy(s);
    let var: f64 = surprisal_terms(s).map(|(p, h)| p * (h - entropy).powi(2)).sum();
    if var < 0.0 {
        0.0
    } else {
        var
    }
}

/// Mixedness parameter `Q_S = exp(−(ΔS)²/S)`; 0 for pure states.
pub fn mixedness_parameter(s: &Spectrum) -> f64 {
    q_s_from(von_neumann_entropy(s), entropy_variance(s))
}

/// `Q_S` from a precomputed entropy and entropy variance.
pub fn q_s_from(entropy: f64, variance: f64) -> f64 {
    if entropy < PURE_ENTROPY_EPS {
        0.0
    } else {
        (-variance.max(0.0) / entropy).exp().clamp(0.0, 1.0)
    }
}

/// Photon-number probabilities `P_n`, `n = 0, 1, …`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    probs: Vec<f64>,
}

impl PhotonDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty distribution".into()));
        }
        if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(Error::InvalidDistribution(format!("entry {p} is not a probability")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SPECTRUM_SUM_TOL {
            return Err(Error::InvalidDistribution(format!("entries sum to {sum}")));
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }

    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.probs
            .iter()
            .enumerate()
            .map(|(n, p)| p * (n as f64 - mean).powi(2))
            .sum()
    }
}

/// Mandel parameter in the convention `Q_M = 1 − Var(n)/⟨n⟩`.
///
/// Note the sign: this is one minus the Fano factor, so Poissonian light gives
/// 0, number states give 1 and super-Poissonian (e.g. thermal) light is
/// negative. The more common convention `Var(n)/⟨n⟩ − 1` is its negative.
pub fn mandel_q(p: &PhotonDistribution) -> f64 {
    let mean = p.mean();
    if mean < VACUUM_MEAN_EPS {
        return 0.0;
    }
    1.0 - p.variance() / mean
}

/// Araki–Lieb: `|S_A − S_B| ≤ S_AB ≤ S_A + S_B`, each side within `tol`.
pub fn araki_lieb_holds(s_a: f64, s_b: f64, s_total: f64, tol: f64) -> bool {
    (s_a - s_b).abs() <= s_total + tol && s_total <= s_a + s_b + tol
}

/// Entropic summary of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixednessReport {
    /// Von Neumann entropy, nats.
    pub entropy: f64,
    pub linear_entropy: f64,
    /// `(ΔS)²`, nats².
    pub entropy_variance: f64,
    pub q_s: f64,
    /// `S / ln d` when a reference dimension `d` was supplied.
    pub normalized_entropy: Option<f64>,
    /// `d/(d−1) · ξ` when a reference dimension `d` was supplied.
    pub normalized_linear_entropy: Option<f64>,
}

impl MixednessReport {
    pub fn from_spectrum(s: &Spectrum, reference_dim: Option<usize>) -> Result<Self> {
        let entropy = von_neumann_entropy(s);
        let entropy_variance = entropy_variance(s);
        let (normalized_entropy, normalized_linear) = match reference_dim {
            Some(d) => (
                Some(entropy / (d.max(2) as f64).ln()),
                Some(normalized_linear_entropy(s, d)?),
            ),
            None => (None, None),
        };
        Ok(Self {
            entropy,
            linear_entropy: linear_entropy(s),
            entropy_variance,
            q_s: q_s_from(entropy, entropy_variance),
            normalized_entropy,
            normalized_linear_entropy: normalized_linear,
        })
    }

    pub fn entropy_std(&self) -> f64 {
        self.entropy_variance.sqrt()
    }
}

/// Report for a validated density matrix, using its clamped spectrum.
pub fn report(rho: &DensityMatrix, reference_dim: Option<usize>) -> Result<MixednessReport> {
    MixednessReport::from_spectrum(&Spectrum::of_density(rho)?, reference_dim)
}
