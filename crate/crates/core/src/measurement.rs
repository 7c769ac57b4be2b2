//! Two-outcome projective measurements Π± = ½(1 ± n⃗·σ⃗) on the quantum side of
//! an ensemble, and the objective functions built from their statistics.
//!
//! Conditional label states after the measurement are diagonal in the label
//! basis, so they are carried as plain two-element distributions.

use crate::ensemble::{average_state, QubitEnsemble};
use crate::error::{Error, Result};
use crate::qstate::{h, neg_xlog2x, BlochVector};

/// Accepted deviation of an input axis from unit norm; the axis is then
/// renormalized exactly.
pub const AXIS_TOL: f64 = 1e-9;

/// Measurement {Π₊, Π₋} along a unit Bloch axis. `n⃗` and `−n⃗` describe the
/// same measurement with outcomes relabeled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveMeasurement {
    n: BlochVector,
}

impl ProjectiveMeasurement {
    pub fn new(n: BlochVector) -> Result<Self> {
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        let norm = n.norm();
        if (norm - 1.0).abs() > AXIS_TOL {
            return Err(Error::NotUnit(norm));
        }
        Ok(Self {
            n: n * (1.0 / norm),
        })
    }

    /// Measurement along the direction of any nonzero vector.
    pub fn along(v: BlochVector) -> Option<Self> {
        v.normalized().map(|n| Self { n })
    }

    pub fn axis(&self) -> BlochVector {
        self.n
    }
}

/// Outcome probabilities p± and conditional label distributions q(i|±).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementOutcomeStats {
    pub p_plus: f64,
    pub p_minus: f64,
    /// `None` when the outcome has zero probability.
    pub q_plus: Option<[f64; 2]>,
    pub q_minus: Option<[f64; 2]>,
}

/// Joint weights λᵢ(1 ± vᵢ·n⃗)/2 of (label i, outcome ±).
#[inline]
fn joint_weights(e: &QubitEnsemble, n: BlochVector) -> ([f64; 2], [f64; 2]) {
    let an = e.a().dot(n).clamp(-1.0, 1.0);
    let bn = e.b().dot(n).clamp(-1.0, 1.0);
    let (l0, l1) = (e.lambda0(), e.lambda1());
    (
        [0.5 * l0 * (1.0 + an), 0.5 * l1 * (1.0 + bn)],
        [0.5 * l0 * (1.0 - an), 0.5 * l1 * (1.0 - bn)],
    )
}

fn conditional(w: [f64; 2]) -> Option<[f64; 2]> {
    let p = w[0] + w[1];
    (p > 0.0).then(|| [(w[0] / p).clamp(0.0, 1.0), (w[1] / p).clamp(0.0, 1.0)])
}

pub fn outcome_stats(e: &QubitEnsemble, m: &ProjectiveMeasurement) -> MeasurementOutcomeStats {
    let cn = average_state(e).dot(m.n).clamp(-1.0, 1.0);
    let (plus, minus) = joint_weights(e, m.n);
    MeasurementOutcomeStats {
        p_plus: 0.5 * (1.0 + cn),
        p_minus: 0.5 * (1.0 - cn),
        q_plus: conditional(plus),
        q_minus: conditional(minus),
    }
}

/// p·H(q) written as Σ −wᵢ log wᵢ + p log p, which needs no division.
#[inline]
fn weighted_entropy(w: [f64; 2]) -> f64 {
    let p = w[0] + w[1];
    neg_xlog2x(w[0]) + neg_xlog2x(w[1]) - neg_xlog2x(p)
}

/// Conditional entropy along an arbitrary unit vector, unvalidated. Used in
/// optimizer inner loops.
#[inline]
pub(crate) fn conditional_entropy_at(e: &QubitEnsemble, n: BlochVector) -> f64 {
    let (plus, minus) = joint_weights(e, n);
    (weighted_entropy(plus) + weighted_entropy(minus)).max(0.0)
}

#[inline]
pub(crate) fn classical_mutual_information_at(e: &QubitEnsemble, n: BlochVector) -> f64 {
    (h(e.lambda0()) - conditional_entropy_at(e, n)).max(0.0)
}

#[inline]
pub(crate) fn post_measurement_purity_at(e: &QubitEnsemble, n: BlochVector) -> f64 {
    let an = e.a().dot(n);
    let bn = e.b().dot(n);
    let (l0, l1) = (e.lambda0(), e.lambda1());
    0.5 * l0 * l0 * (1.0 + an * an) + 0.5 * l1 * l1 * (1.0 + bn * bn)
}

/// 𝒮(n⃗) = p₊H(q(·|+)) + p₋H(q(·|−)). Zero-probability outcomes contribute 0.
pub fn conditional_entropy(e: &QubitEnsemble, m: &ProjectiveMeasurement) -> f64 {
    conditional_entropy_at(e, m.n)
}

/// Shannon mutual information H(A:B) = H(λ₀) − 𝒮(n⃗) between the label and
/// the outcome.
pub fn classical_mutual_information(e: &QubitEnsemble, m: &ProjectiveMeasurement) -> f64 {
    classical_mutual_information_at(e, m.n)
}

/// tr[(Π(ϱ_ℰ))²] = ½λ₀²[1 + (a⃗·n⃗)²] + ½λ₁²[1 + (b⃗·n⃗)²].
pub fn post_measurement_purity(e: &QubitEnsemble, m: &ProjectiveMeasurement) -> f64 {
    post_measurement_purity_at(e, m.n)
}
