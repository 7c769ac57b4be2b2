//! Geometric discord of the classical-quantum state as a minimum purity
//! deficit, D_G = tr ϱ² − max over Π± of tr[(Π(ϱ))²].
//!
//! The post-measurement purity is ½(λ₀² + λ₁²) + ½ n⃗ᵀMn⃗ with
//! M = λ₀²a⃗a⃗ᵀ + λ₁²b⃗b⃗ᵀ, so the maximization over the sphere is the top
//! eigenpair of M and needs no search.

use serde::Serialize;

use crate::eigen::{symmetric_eigen, Matrix3};
use crate::ensemble::QubitEnsemble;
use crate::error::{Error, Result};
use crate::optimize::{OptimizationMethod, OptimizationResult};
use crate::qstate::{check_angle, BlochVector};

/// Eigenvalues closer than this to the top one belong to its eigenspace.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Tolerance for stationarity and for the branch conditions.
pub const BRANCH_TOL: f64 = 1e-8;

/// tr ϱ_ℰ² = ½[λ₀²(1 + a²) + λ₁²(1 + b²)].
pub fn ensemble_purity(e: &QubitEnsemble) -> f64 {
    let (l0, l1) = (e.lambda0(), e.lambda1());
    0.5 * (l0 * l0 * (1.0 + e.a().norm_sq()) + l1 * l1 * (1.0 + e.b().norm_sq()))
}

/// M = λ₀²a⃗a⃗ᵀ + λ₁²b⃗b⃗ᵀ with its top eigenpair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoQuadraticForm {
    pub m: Matrix3,
    pub top_eigenvalue: f64,
    pub top_eigenvector: BlochVector,
    /// The top eigenvalue is repeated and the vector came from the tie-break.
    pub degenerate: bool,
}

impl GeoQuadraticForm {
    pub fn new(e: &QubitEnsemble) -> Self {
        let (a, b) = (e.a().to_array(), e.b().to_array());
        let (w0, w1) = (e.lambda0().powi(2), e.lambda1().powi(2));
        let m: Matrix3 =
            std::array::from_fn(|i| std::array::from_fn(|j| w0 * a[i] * a[j] + w1 * b[i] * b[j]));
        let eig = symmetric_eigen(&m);
        let top = eig.values[0];
        let space: Vec<BlochVector> = eig
            .values
            .iter()
            .zip(eig.vectors)
            .filter(|(&mu, _)| mu >= top - DEGENERACY_TOL)
            .map(|(_, v)| v)
            .collect();
        let (vector, degenerate) = match space.as_slice() {
            [v] => (v.antipode_normalized(), false),
            [u, v] => (lex_max_on_circle(*u, *v), true),
            _ => (BlochVector::X, true),
        };
        Self {
            m,
            top_eigenvalue: top.max(0.0),
            top_eigenvector: vector,
            degenerate,
        }
    }

    /// n⃗ᵀMn⃗ = λ₀²(a⃗·n⃗)² + λ₁²(b⃗·n⃗)².
    pub fn value_at(&self, n: BlochVector) -> f64 {
        let v = n.to_array();
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| v[i] * self.m[i][j] * v[j])
            .sum()
    }
}

/// Lexicographically largest point of the great circle spanned by the
/// orthonormal pair (u, v), antipode-normalized.
fn lex_max_on_circle(u: BlochVector, v: BlochVector) -> BlochVector {
    [BlochVector::X, BlochVector::Y, BlochVector::Z]
        .into_iter()
        .find_map(|e| {
            let p = u * u.dot(e) + v * v.dot(e);
            (p.norm() > 1e-9).then(|| p.normalized()).flatten()
        })
        .unwrap_or(u)
        .antipode_normalized()
}

/// D_G = tr ϱ² − ½(λ₀² + λ₁²) − ½·μ_max(M), attained at the top eigenvector.
pub fn geometric_discord(e: &QubitEnsemble) -> OptimizationResult {
    let form = GeoQuadraticForm::new(e);
    let (l0, l1) = (e.lambda0(), e.lambda1());
    let value = ensemble_purity(e) - 0.5 * (l0 * l0 + l1 * l1) - 0.5 * form.top_eigenvalue;
    let n = form.top_eigenvector;
    OptimizationResult {
        n_opt: n,
        value: value.max(0.0),
        stationarity_residual: geo_stationarity_residual(e, n),
        residual_singular: false,
        evaluations: 1,
        method: OptimizationMethod::EigenSolve,
        degenerate: form.degenerate,
    }
}

/// ⅛(1 − |cos 2θ|), the geometric discord of the symmetric pure pair with
/// equal priors.
pub fn example_geo_closed_form(theta: f64) -> Result<f64> {
    let theta = check_angle(theta)?;
    Ok(0.125 * (1.0 - (2.0 * theta).cos().abs()))
}

/// Geometric discord of the symmetric pure pair at any prior, from the 2×2
/// block of M in the plane of the pair:
/// D_G = ¼[σ − √(σ²cos²2θ + δ²sin²2θ)] with σ = λ₀² + λ₁², δ = λ₀² − λ₁².
pub fn pure_pair_geo_closed_form(theta: f64, lambda0: f64) -> Result<f64> {
    let theta = check_angle(theta)?;
    let l0 = crate::qstate::check_probability(lambda0)?;
    let l1 = 1.0 - l0;
    let (sigma, delta) = (l0 * l0 + l1 * l1, l0 * l0 - l1 * l1);
    let (s2, c2) = (2.0 * theta).sin_cos();
    let root = (sigma * sigma * c2 * c2 + delta * delta * s2 * s2).sqrt();
    Ok((0.25 * (sigma - root)).max(0.0))
}

/// ‖λ₀²(a⃗·n⃗)a⃗⊥ + λ₁²(b⃗·n⃗)b⃗⊥‖ for a unit axis n⃗.
pub fn geo_stationarity_residual(e: &QubitEnsemble, n: BlochVector) -> f64 {
    let (a, b) = (e.a(), e.b());
    let (w0, w1) = (e.lambda0().powi(2), e.lambda1().powi(2));
    (a.perp(n) * (w0 * a.dot(n)) + b.perp(n) * (w1 * b.dot(n))).norm()
}

/// Which sufficient condition makes an axis stationary for D_G.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeoBranch {
    /// a⃗·n⃗ = b⃗·n⃗ and λ₀²a⃗⊥ + λ₁²b⃗⊥ = 0⃗.
    Plus,
    /// a⃗·n⃗ = −b⃗·n⃗ and λ₀²a⃗⊥ − λ₁²b⃗⊥ = 0⃗.
    Minus,
    /// Stationary through some other cancellation.
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeoBranchReport {
    pub branch: GeoBranch,
    pub stationarity_residual: f64,
    /// max(|a⃗·n⃗ − b⃗·n⃗|, ‖λ₀²a⃗⊥ + λ₁²b⃗⊥‖).
    pub plus_residual: f64,
    /// max(|a⃗·n⃗ + b⃗·n⃗|, ‖λ₀²a⃗⊥ − λ₁²b⃗⊥‖).
    pub minus_residual: f64,
}

/// Classifies a stationary axis by the branch it satisfies. Axes that are
/// not stationary within [`BRANCH_TOL`] are rejected.
pub fn geo_choice_classifier(e: &QubitEnsemble, n: BlochVector) -> Result<GeoBranchReport> {
    let residual = geo_stationarity_residual(e, n);
    if residual > BRANCH_TOL {
        return Err(Error::NotStationary(residual));
    }
    let (a, b) = (e.a(), e.b());
    let (w0, w1) = (e.lambda0().powi(2), e.lambda1().powi(2));
    let (an, bn) = (a.dot(n), b.dot(n));
    let (ap, bp) = (a.perp(n) * w0, b.perp(n) * w1);
    let plus = (an - bn).abs().max((ap + bp).norm());
    let minus = (an + bn).abs().max((ap - bp).norm());
    let branch = if plus <= BRANCH_TOL {
        GeoBranch::Plus
    } else if minus <= BRANCH_TOL {
        GeoBranch::Minus
    } else {
        GeoBranch::Neither
    };
    Ok(GeoBranchReport {
        branch,
        stationarity_residual: residual,
        plus_residual: plus,
        minus_residual: minus,
    })
}
