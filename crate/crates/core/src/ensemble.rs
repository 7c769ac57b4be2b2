//! Two-state qubit ensembles {λᵢ, ρᵢ}, the Holevo quantity, and the entropy of
//! the classical-quantum state Σᵢ λᵢ|i⟩⟨i| ⊗ ρᵢ.
//!
//! The classical-quantum state is block diagonal, so its spectrum is just
//! {λᵢ(1 ± ‖vᵢ‖)/2}; it is never built as a 4×4 matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{check_probability, h, neg_xlog2x, BlochVector, PureStatePair, NORM_SLACK};

/// Weights {λ₀, λ₁} and Bloch vectors {a⃗, b⃗} of the states ρ₀, ρ₁.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitEnsemble {
    lambda0: f64,
    lambda1: f64,
    a: BlochVector,
    b: BlochVector,
}

impl QubitEnsemble {
    pub fn new(lambda0: f64, lambda1: f64, a: BlochVector, b: BlochVector) -> Result<Self> {
        let lambda0 = check_probability(lambda0)?;
        let lambda1 = check_probability(lambda1)?;
        let sum = lambda0 + lambda1;
        if (sum - 1.0).abs() > NORM_SLACK {
            return Err(Error::WeightSum(sum));
        }
        Ok(Self {
            lambda0,
            lambda1,
            a: a.checked_state()?,
            b: b.checked_state()?,
        })
    }

    /// Ensemble with λ₁ = 1 − λ₀.
    pub fn with_prior(lambda0: f64, a: BlochVector, b: BlochVector) -> Result<Self> {
        let lambda0 = check_probability(lambda0)?;
        Self::new(lambda0, 1.0 - lambda0, a, b)
    }

    pub fn from_pure_pair(pair: &PureStatePair) -> Result<Self> {
        let (a, b) = pair.bloch();
        Self::with_prior(pair.lambda0, a, b)
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn a(&self) -> BlochVector {
        self.a
    }

    pub fn b(&self) -> BlochVector {
        self.b
    }

    /// True when every quantumness measure vanishes identically: a zero
    /// weight or identical states.
    pub fn is_degenerate(&self) -> bool {
        self.lambda0 == 0.0 || self.lambda1 == 0.0 || (self.a - self.b).norm() <= 1e-15
    }

    /// The same ensemble with every Bloch vector rotated by `angle` about `axis`.
    pub fn rotated(&self, axis: BlochVector, angle: f64) -> Self {
        Self {
            a: self.a.rotate(axis, angle),
            b: self.b.rotate(axis, angle),
            ..*self
        }
    }

    /// The ensemble with (λ₀, a⃗) and (λ₁, b⃗) exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            lambda0: self.lambda1,
            lambda1: self.lambda0,
            a: self.b,
            b: self.a,
        }
    }

    /// Spectrum of the classical-quantum state.
    pub fn spectrum(&self) -> EnsembleSpectrum {
        let (ra, rb) = (self.a.norm().min(1.0), self.b.norm().min(1.0));
        EnsembleSpectrum {
            eigenvalues: [
                self.lambda0 * 0.5 * (1.0 + ra),
                self.lambda0 * 0.5 * (1.0 - ra),
                self.lambda1 * 0.5 * (1.0 + rb),
                self.lambda1 * 0.5 * (1.0 - rb),
            ],
        }
    }
}

/// The four eigenvalues {λᵢ(1 ± ‖vᵢ‖)/2} of the classical-quantum state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpectrum {
    pub eigenvalues: [f64; 4],
}

impl EnsembleSpectrum {
    pub fn entropy(&self) -> f64 {
        self.eigenvalues.iter().map(|&p| neg_xlog2x(p)).sum()
    }
}

/// Bloch vector of ρ̄ = λ₀ρ₀ + λ₁ρ₁.
pub fn average_state(e: &QubitEnsemble) -> BlochVector {
    e.a * e.lambda0 + e.b * e.lambda1
}

#[inline]
fn state_entropy(v: BlochVector) -> f64 {
    h(0.5 * (1.0 + v.norm().min(1.0)))
}

/// χ = S(ρ̄) − λ₀S(ρ₀) − λ₁S(ρ₁).
pub fn holevo_chi(e: &QubitEnsemble) -> f64 {
    let chi = state_entropy(average_state(e))
        - e.lambda0 * state_entropy(e.a)
        - e.lambda1 * state_entropy(e.b);
    chi.max(0.0)
}

/// S(ϱ_ℰ), from the block-diagonal spectrum.
pub fn cq_state_entropy(e: &QubitEnsemble) -> f64 {
    e.spectrum().entropy()
}

/// I[ϱ_ℰ] = S(ρᵃ) + S(ρᵇ) − S(ϱ_ℰ), with S(ρᵃ) = h(λ₀) and S(ρᵇ) = S(ρ̄).
pub fn quantum_mutual_information(e: &QubitEnsemble) -> f64 {
    h(e.lambda0) + state_entropy(average_state(e)) - cq_state_entropy(e)
}
