//! Bloch-vector representation of qubit states and the scalar entropy and
//! purity functions built on it.
//!
//! A qubit density matrix ρ = ½(1 + r⃗·σ⃗) has eigenvalues (1 ± ‖r⃗‖)/2, so every
//! spectral quantity here is a function of the Bloch norm alone. No matrix is
//! ever diagonalized.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack accepted on probabilities and Bloch norms before rejecting an input.
pub const NORM_SLACK: f64 = 1e-12;

/// Below this, `x log x` is taken as 0.
const XLOGX_CUTOFF: f64 = 1e-300;

/// Tolerance on ‖r⃗‖ = 1 for an input to count as a pure state.
pub const PURE_TOL: f64 = 1e-9;

/// Real 3-vector: a qubit state (‖r⃗‖ ≤ 1) or a measurement axis (‖n⃗‖ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ZERO: BlochVector = BlochVector::new(0.0, 0.0, 0.0);
    pub const X: BlochVector = BlochVector::new(1.0, 0.0, 0.0);
    pub const Y: BlochVector = BlochVector::new(0.0, 1.0, 0.0);
    pub const Z: BlochVector = BlochVector::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Unit vector along `self`, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self * (1.0 / n))
        } else {
            None
        }
    }

    /// Component perpendicular to the unit axis `n`: v⃗ − (v⃗·n⃗)n⃗.
    #[inline]
    pub fn perp(self, n: Self) -> Self {
        self - n * self.dot(n)
    }

    /// Rotation by `angle` about the unit axis `axis` (Rodrigues).
    pub fn rotate(self, axis: Self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        self * c + axis.cross(self) * s + axis * (axis.dot(self) * (1.0 - c))
    }

    /// Some unit vector perpendicular to `self` (which must be nonzero).
    pub fn any_perpendicular(self) -> Self {
        let ax = self.x.abs();
        let ay = self.y.abs();
        let az = self.z.abs();
        let helper = if ax <= ay && ax <= az {
            Self::X
        } else if ay <= az {
            Self::Y
        } else {
            Self::Z
        };
        self.cross(helper)
            .normalized()
            .expect("cross product with least-aligned axis is nonzero")
    }

    /// Representative of {n⃗, −n⃗} with n_z ≥ 0, then n_x ≥ 0, then n_y ≥ 0.
    /// Components within 1e-6 of zero, the resolution of the axis optimizers,
    /// count as zero when choosing the sign. Negative zeros are cleared.
    pub fn antipode_normalized(self) -> Self {
        const EPS: f64 = 1e-6;
        let flip = if self.z.abs() > EPS {
            self.z < 0.0
        } else if self.x.abs() > EPS {
            self.x < 0.0
        } else {
            self.y < 0.0
        };
        let v = if flip { -self } else { self };
        Self::new(v.x + 0.0, v.y + 0.0, v.z + 0.0)
    }

    /// Validates `self` as a physical state, clamping norms in (1, 1 + 1e-12]
    /// back onto the sphere.
    pub fn checked_state(self) -> Result<Self> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = self.norm();
        if n <= 1.0 {
            Ok(self)
        } else if n <= 1.0 + NORM_SLACK {
            Ok(self * (1.0 / n))
        } else {
            Err(Error::NotAState(n))
        }
    }
}

impl Add for BlochVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for BlochVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for BlochVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for BlochVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// The symmetric pure pair |φ₀,₁⟩ = cos(θ/2)|0⟩ ± sin(θ/2)|1⟩ with prior λ₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureStatePair {
    pub theta: f64,
    pub lambda0: f64,
}

impl PureStatePair {
    pub fn new(theta: f64, lambda0: f64) -> Result<Self> {
        check_angle(theta)?;
        check_probability(lambda0)?;
        Ok(Self { theta, lambda0 })
    }

    pub fn bloch(&self) -> (BlochVector, BlochVector) {
        pair_vectors(self.theta)
    }
}

/// −x log₂ x with 0 log 0 = 0. `x` is assumed to lie in [0, 1].
#[inline]
pub(crate) fn neg_xlog2x(x: f64) -> f64 {
    if x < XLOGX_CUTOFF {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Binary entropy with no range check; `p` is clamped into [0, 1].
#[inline]
pub(crate) fn h(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    neg_xlog2x(p) + neg_xlog2x(1.0 - p)
}

pub(crate) fn check_probability(p: f64) -> Result<f64> {
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    if !(-NORM_SLACK..=1.0 + NORM_SLACK).contains(&p) {
        return Err(Error::Probability(p));
    }
    Ok(p.clamp(0.0, 1.0))
}

pub(crate) fn check_angle(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::NonFinite);
    }
    if !(-NORM_SLACK..=std::f64::consts::PI + NORM_SLACK).contains(&theta) {
        return Err(Error::Angle(theta));
    }
    Ok(theta)
}

/// h(p) = −p log₂ p − (1−p) log₂(1−p), in bits.
pub fn binary_entropy(p: f64) -> Result<f64> {
    check_probability(p).map(h)
}

/// Von Neumann entropy of ρ = ½(1 + r⃗·σ⃗), in bits.
pub fn von_neumann_entropy(r: BlochVector) -> Result<f64> {
    let r = r.checked_state()?;
    Ok(h(0.5 * (1.0 + r.norm())))
}

/// tr ρ² = (1 + ‖r⃗‖²)/2.
pub fn purity(r: BlochVector) -> Result<f64> {
    let r = r.checked_state()?;
    Ok(0.5 * (1.0 + r.norm_sq()))
}

/// |⟨φ₀|φ₁⟩| = √((1 + a⃗·b⃗)/2) for two pure states.
pub fn pure_overlap(a: BlochVector, b: BlochVector) -> Result<f64> {
    let a = require_pure(a)?;
    let b = require_pure(b)?;
    Ok((0.5 * (1.0 + a.dot(b))).clamp(0.0, 1.0).sqrt())
}

pub(crate) fn require_pure(v: BlochVector) -> Result<BlochVector> {
    if !v.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = v.norm();
    if (n - 1.0).abs() > PURE_TOL {
        return Err(Error::NotPure(n));
    }
    Ok(v * (1.0 / n))
}

/// Bloch vectors (sin θ, 0, cos θ) and (−sin θ, 0, cos θ).
pub fn example_pair_bloch(theta: f64) -> Result<(BlochVector, BlochVector)> {
    check_angle(theta)?;
    Ok(pair_vectors(theta))
}

fn pair_vectors(theta: f64) -> (BlochVector, BlochVector) {
    let (s, c) = theta.sin_cos();
    (BlochVector::new(s, 0.0, c), BlochVector::new(-s, 0.0, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    // Reference value of h(0.75) evaluated with 50-digit arithmetic.
    const H_075: f64 = 0.811_278_124_459_132_9;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!(close(binary_entropy(0.75).unwrap(), H_075, 1e-15));
    }

    #[test]
    fn binary_entropy_domain() {
        assert!(binary_entropy(1.0 + 1e-13).is_ok());
        assert!(binary_entropy(-1e-13).is_ok());
        assert_eq!(binary_entropy(1.1), Err(Error::Probability(1.1)));
        assert_eq!(binary_entropy(-0.2), Err(Error::Probability(-0.2)));
        assert_eq!(binary_entropy(f64::NAN), Err(Error::NonFinite));
    }

    #[test]
    fn von_neumann_values() {
        assert_eq!(von_neumann_entropy(BlochVector::ZERO).unwrap(), 1.0);
        assert_eq!(von_neumann_entropy(BlochVector::X).unwrap(), 0.0);
        let s = von_neumann_entropy(BlochVector::new(0.0, 0.0, 0.5)).unwrap();
        assert!(close(s, H_075, 1e-15));
    }

    #[test]
    fn norm_slack_clamps_then_rejects() {
        let barely = BlochVector::new(0.0, 0.0, 1.0 + 5e-13);
        assert_eq!(von_neumann_entropy(barely).unwrap(), 0.0);
        assert_eq!(purity(barely).unwrap(), 1.0);
        let over = BlochVector::new(0.0, 0.0, 1.0 + 1e-9);
        assert!(matches!(
            von_neumann_entropy(over),
            Err(Error::NotAState(_))
        ));
        assert!(matches!(purity(over), Err(Error::NotAState(_))));
    }

    #[test]
    fn purity_values() {
        assert_eq!(purity(BlochVector::Z).unwrap(), 1.0);
        assert_eq!(purity(BlochVector::ZERO).unwrap(), 0.5);
        assert!(close(
            purity(BlochVector::new(0.6, 0.0, 0.0)).unwrap(),
            0.68,
            1e-15
        ));
    }

    #[test]
    fn overlap_values() {
        let a = BlochVector::new(0.6, 0.0, 0.8);
        assert!(close(pure_overlap(a, a).unwrap(), 1.0, 1e-15));
        assert_eq!(pure_overlap(a, -a).unwrap(), 0.0);
        for theta in [0.1f64, 0.7, FRAC_PI_4, 1.3, 2.5] {
            let (a, b) = example_pair_bloch(theta).unwrap();
            assert!(close(pure_overlap(a, b).unwrap(), theta.cos().abs(), 1e-12));
        }
        assert!(matches!(
            pure_overlap(BlochVector::new(0.5, 0.0, 0.0), a),
            Err(Error::NotPure(_))
        ));
    }

    #[test]
    fn example_pair_values() {
        let (a, b) = example_pair_bloch(0.0).unwrap();
        assert_eq!((a, b), (BlochVector::Z, BlochVector::Z));
        let (a, b) = example_pair_bloch(FRAC_PI_2).unwrap();
        assert!((a - BlochVector::X).norm() < 1e-15);
        assert!((b + BlochVector::X).norm() < 1e-15);
        let (a, b) = example_pair_bloch(FRAC_PI_4).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((a - BlochVector::new(r, 0.0, r)).norm() < 1e-15);
        assert!((b - BlochVector::new(-r, 0.0, r)).norm() < 1e-15);
        assert!(matches!(example_pair_bloch(PI + 0.1), Err(Error::Angle(_))));
        assert!(matches!(example_pair_bloch(-0.1), Err(Error::Angle(_))));
    }

    #[test]
    fn antipode_normalization() {
        let v = BlochVector::new(0.6, 0.0, -0.8);
        assert_eq!(v.antipode_normalized(), BlochVector::new(-0.6, 0.0, 0.8));
        assert_eq!((-BlochVector::X).antipode_normalized(), BlochVector::X);
        assert_eq!((-BlochVector::Y).antipode_normalized(), BlochVector::Y);
    }

    #[test]
    fn rotation_preserves_norm() {
        let v = BlochVector::new(0.3, -0.2, 0.9);
        let axis = BlochVector::new(1.0, 1.0, 0.0).normalized().unwrap();
        let w = v.rotate(axis, 0.77);
        assert!(close(v.norm(), w.norm(), 1e-15));
        assert!(close(v.dot(axis), w.dot(axis), 1e-15));
    }
}
