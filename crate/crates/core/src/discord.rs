//! Accessible information, quantum discord as the gap χ − I_acc, the
//! Koashi–Winter closed form for pure-state ensembles, and the stationarity
//! conditions satisfied by an optimal measurement axis.
//!
//! The conditional entropy depends on n⃗ only through (a⃗·n⃗, b⃗·n⃗), so an
//! optimal axis can always be found in span{a⃗, b⃗}. The optimizer scans that
//! great circle at [`SCAN_POINTS`] angles over [0, π), then refines every
//! local minimum of the scan by golden-section search. The full-sphere
//! brute force in [`crate::oracle`] exists to check this reduction.

use std::f64::consts::PI;

use serde::Serialize;

use crate::ensemble::{average_state, holevo_chi, QubitEnsemble};
use crate::error::Result;
use crate::measurement::conditional_entropy_at;
use crate::optimize::{
    distinct_axes, periodic_minima, tie_break, OptimizationMethod, OptimizationResult,
};
use crate::qstate::{check_angle, check_probability, h, pure_overlap, BlochVector};

/// Angular samples over [0, π) used to bracket local minima.
pub const SCAN_POINTS: usize = 720;

/// Golden-section termination width, in radians.
pub const ANGLE_TOL: f64 = 1e-10;

/// Local optima whose values differ by less than this are treated as ties.
pub const TIE_TOL: f64 = 1e-12;

/// Factors (1 ± v⃗·n⃗) are clamped below at this value inside logarithms.
pub const THETA_FLOOR: f64 = 1e-15;

/// Tolerance for the two sufficient analytic conditions.
pub const CONDITION_TOL: f64 = 1e-8;

/// Negative discord down to this magnitude is rounding noise and becomes 0.
pub const NEGATIVE_SLACK: f64 = 1e-10;

/// Pieces of the Koashi–Winter evaluation of the discord of a pure-state
/// ensemble, all entropies in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KoashiWinterBreakdown {
    pub concurrence: f64,
    /// Entanglement of formation between label and purifying system.
    pub eof: f64,
    /// Entropy of the average state, h(λ₊).
    pub s_b: f64,
    /// Entropy of the classical-quantum state, h(λ₀).
    pub s_ab: f64,
    pub discord: f64,
}

/// 𝒞 = 2√(λ₀λ₁)·|⟨φ₀|φ₁⟩|.
pub fn concurrence_pure_ensemble(lambda0: f64, overlap: f64) -> Result<f64> {
    let l0 = check_probability(lambda0)?;
    let o = check_probability(overlap)?;
    Ok((2.0 * (l0 * (1.0 - l0)).sqrt() * o).min(1.0))
}

/// E = h((1 + √(1 − 𝒞²))/2).
pub fn eof_from_concurrence(concurrence: f64) -> Result<f64> {
    let c = check_probability(concurrence)?;
    Ok(h(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt())))
}

/// Eigenvalues λ± = ½(1 ± √(1 − 4λ₀λ₁(1 − o²))) of the average state of a
/// pure pair with overlap magnitude `o`.
pub fn average_state_eigen_split(lambda0: f64, overlap: f64) -> Result<(f64, f64)> {
    let l0 = check_probability(lambda0)?;
    let o = check_probability(overlap)?;
    let root = (1.0 - 4.0 * l0 * (1.0 - l0) * (1.0 - o * o))
        .max(0.0)
        .sqrt();
    Ok((0.5 * (1.0 + root), 0.5 * (1.0 - root)))
}

/// Discord of a two-pure-state ensemble without any optimization:
/// D = E(𝒞) + h(λ₊) − h(λ₀).
pub fn discord_pure_koashi_winter(lambda0: f64, overlap: f64) -> Result<KoashiWinterBreakdown> {
    let concurrence = concurrence_pure_ensemble(lambda0, overlap)?;
    let eof = eof_from_concurrence(concurrence)?;
    let (lambda_plus, _) = average_state_eigen_split(lambda0, overlap)?;
    let s_b = h(lambda_plus);
    let s_ab = h(lambda0);
    Ok(KoashiWinterBreakdown {
        concurrence,
        eof,
        s_b,
        s_ab,
        discord: eof + s_b - s_ab,
    })
}

/// Koashi–Winter breakdown for an ensemble whose states are both pure.
pub fn koashi_winter(e: &QubitEnsemble) -> Result<KoashiWinterBreakdown> {
    let overlap = pure_overlap(e.a(), e.b())?;
    discord_pure_koashi_winter(e.lambda0(), overlap)
}

/// h((1 + sin θ)/2) + h((1 + cos θ)/2) − 1, the discord of the symmetric pure
/// pair with equal priors.
pub fn example_discord_closed_form(theta: f64) -> Result<f64> {
    let theta = check_angle(theta)?;
    let (s, c) = theta.sin_cos();
    Ok(h(0.5 * (1.0 + s)) + h(0.5 * (1.0 + c.abs())) - 1.0)
}

/// Orthonormal basis of a plane containing a⃗ and b⃗.
fn plane_basis(e: &QubitEnsemble) -> (BlochVector, BlochVector) {
    let (a, b) = (e.a(), e.b());
    let (long, short) = if a.norm() >= b.norm() { (a, b) } else { (b, a) };
    let e1 = long.normalized().unwrap_or(BlochVector::Z);
    let rest = short.perp(e1);
    let e2 = if rest.norm() > 1e-9 * short.norm() {
        rest.perp(e1)
            .normalized()
            .unwrap_or_else(|| e1.any_perpendicular())
    } else {
        e1.any_perpendicular()
    };
    (e1, e2)
}

fn finish(
    e: &QubitEnsemble,
    n_opt: BlochVector,
    value: f64,
    evaluations: usize,
    degenerate: bool,
) -> OptimizationResult {
    let st = stationarity_residual(e, n_opt);
    OptimizationResult {
        n_opt,
        value,
        stationarity_residual: st.residual,
        residual_singular: st.singular,
        evaluations,
        method: OptimizationMethod::InPlaneGoldenSection,
        degenerate,
    }
}

/// I_acc = max over projective measurements of H(A:B), with the maximizing
/// axis. Degenerate ensembles (zero weight or identical states) give 0 with
/// the canonical axis (1, 0, 0).
pub fn accessible_information(e: &QubitEnsemble) -> OptimizationResult {
    if e.is_degenerate() {
        return finish(e, BlochVector::X, 0.0, 0, true);
    }
    let (e1, e2) = plane_basis(e);
    let axis = |phi: f64| {
        let (s, c) = phi.sin_cos();
        e1 * c + e2 * s
    };
    let minima = periodic_minima(
        |phi| conditional_entropy_at(e, axis(phi)),
        PI,
        SCAN_POINTS,
        ANGLE_TOL,
    );
    let evaluations = SCAN_POINTS + minima.iter().map(|m| m.evaluations).sum::<usize>();
    let best = minima.iter().map(|m| m.value).fold(f64::INFINITY, f64::min);
    let tied: Vec<BlochVector> = minima
        .iter()
        .filter(|m| m.value <= best + TIE_TOL)
        .map(|m| axis(m.x))
        .collect();
    let candidates = distinct_axes(&tied);
    let n_opt = tie_break(&candidates);
    let value = (h(e.lambda0()) - best).max(0.0);
    finish(e, n_opt, value, evaluations, candidates.len() > 1)
}

/// D = χ − I_acc reported at the axis of an already computed accessible
/// information result.
pub fn discord_from_accessible(e: &QubitEnsemble, acc: &OptimizationResult) -> OptimizationResult {
    let mut d = holevo_chi(e) - acc.value;
    if (-NEGATIVE_SLACK..0.0).contains(&d) {
        d = 0.0;
    }
    OptimizationResult { value: d, ..*acc }
}

/// Quantum discord of the classical-quantum state of `e`, which equals the
/// gap between the Holevo quantity and the accessible information. Shares
/// its optimal axis with [`accessible_information`].
pub fn quantum_discord(e: &QubitEnsemble) -> OptimizationResult {
    discord_from_accessible(e, &accessible_information(e))
}

/// Norm of the variational condition at an axis, and whether any logarithm
/// argument had to be clamped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stationarity {
    pub residual: f64,
    pub singular: bool,
}

/// log₂ϑ for ϑ = (1 + v·n)(1 − c·n) / ((1 − v·n)(1 + c·n)).
fn log2_theta(vn: f64, cn: f64) -> (f64, bool) {
    let factors = [1.0 + vn, 1.0 - cn, 1.0 - vn, 1.0 + cn];
    let singular = factors.iter().any(|&f| f < THETA_FLOOR);
    let [p0, p1, q0, q1] = factors.map(|f| f.max(THETA_FLOOR).log2());
    (p0 + p1 - q0 - q1, singular)
}

fn log2_thetas(e: &QubitEnsemble, n: BlochVector) -> ([f64; 2], bool) {
    let cn = average_state(e).dot(n);
    let (t0, s0) = log2_theta(e.a().dot(n), cn);
    let (t1, s1) = log2_theta(e.b().dot(n), cn);
    ([t0, t1], s0 || s1)
}

/// ‖(λ₀ log₂ϑ₀)a⃗⊥ + (λ₁ log₂ϑ₁)b⃗⊥‖, which vanishes at every interior
/// stationary point of the conditional entropy over unit axes.
pub fn stationarity_residual(e: &QubitEnsemble, n: BlochVector) -> Stationarity {
    let ([t0, t1], singular) = log2_thetas(e, n);
    let v = e.a().perp(n) * (e.lambda0() * t0) + e.b().perp(n) * (e.lambda1() * t1);
    Stationarity {
        residual: v.norm(),
        singular,
    }
}

/// The two sufficient conditions ϑ₀ = ϑ₁⁻¹ and λ₀a⃗⊥ + λ₁b⃗⊥ = 0⃗, each
/// judged within [`CONDITION_TOL`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticConditions {
    pub reciprocal_thetas: bool,
    /// |log₂ϑ₀ + log₂ϑ₁|.
    pub reciprocal_thetas_residual: f64,
    pub balanced_perp: bool,
    /// ‖λ₀a⃗⊥ + λ₁b⃗⊥‖.
    pub balanced_perp_residual: f64,
    pub stationarity: Stationarity,
}

pub fn check_analytic_conditions(e: &QubitEnsemble, n: BlochVector) -> AnalyticConditions {
    let ([t0, t1], _) = log2_thetas(e, n);
    let reciprocal = (t0 + t1).abs();
    let balance = (e.a().perp(n) * e.lambda0() + e.b().perp(n) * e.lambda1()).norm();
    AnalyticConditions {
        reciprocal_thetas: reciprocal <= CONDITION_TOL,
        reciprocal_thetas_residual: reciprocal,
        balanced_perp: balance <= CONDITION_TOL,
        balanced_perp_residual: balance,
        stationarity: stationarity_residual(e, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::qstate::PureStatePair;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    // 50-digit references.
    const EOF_HALF: f64 = 0.354_578_902_665_269_9;
    const D_PI3: f64 = 0.165_857_027_124_402_75;
    const D_PI4: f64 = 0.201_752_073_385_712_2;
    const IACC_PI4: f64 = 0.399_123_963_307_143_9;

    fn pair(theta: f64) -> QubitEnsemble {
        QubitEnsemble::from_pure_pair(&PureStatePair::new(theta, 0.5).unwrap()).unwrap()
    }

    #[test]
    fn concurrence_values() {
        for theta in [0.3f64, 1.0, 1.4] {
            let c = concurrence_pure_ensemble(0.5, theta.cos()).unwrap();
            assert!((c - theta.cos()).abs() < 1e-15);
        }
        assert_eq!(concurrence_pure_ensemble(0.3, 0.0).unwrap(), 0.0);
        assert!((concurrence_pure_ensemble(0.9, 0.5).unwrap() - 0.3).abs() < 1e-15);
        assert!(matches!(
            concurrence_pure_ensemble(1.5, 0.5),
            Err(Error::Probability(_))
        ));
        assert!(matches!(
            concurrence_pure_ensemble(0.5, -0.5),
            Err(Error::Probability(_))
        ));
    }

    #[test]
    fn eof_values() {
        assert_eq!(eof_from_concurrence(0.0).unwrap(), 0.0);
        assert_eq!(eof_from_concurrence(1.0).unwrap(), 1.0);
        assert!((eof_from_concurrence(0.5).unwrap() - EOF_HALF).abs() < 1e-15);
        assert!(eof_from_concurrence(1.2).is_err());
    }

    #[test]
    fn eigen_split_values() {
        assert_eq!(average_state_eigen_split(0.5, 0.0).unwrap(), (0.5, 0.5));
        assert_eq!(average_state_eigen_split(0.5, 1.0).unwrap(), (1.0, 0.0));
        let (p, m) = average_state_eigen_split(0.5, 0.5).unwrap();
        assert!((p - 0.75).abs() < 1e-15 && (m - 0.25).abs() < 1e-15);
    }

    #[test]
    fn koashi_winter_values() {
        let kw = discord_pure_koashi_winter(0.5, 0.0).unwrap();
        assert!(kw.discord.abs() < 1e-15);
        let kw = discord_pure_koashi_winter(0.5, 0.5).unwrap();
        assert!((kw.discord - D_PI3).abs() < 1e-14);
        assert!((kw.discord - (kw.eof + kw.s_b - kw.s_ab)).abs() < 1e-15);
        let kw = discord_pure_koashi_winter(0.5, FRAC_PI_4.cos()).unwrap();
        assert!((kw.discord - D_PI4).abs() < 1e-14);
    }

    #[test]
    fn koashi_winter_requires_pure_states() {
        let e = QubitEnsemble::with_prior(0.5, BlochVector::Z * 0.5, BlochVector::X).unwrap();
        assert!(matches!(koashi_winter(&e), Err(Error::NotPure(_))));
    }

    #[test]
    fn example_closed_form_values() {
        assert!(example_discord_closed_form(0.0).unwrap().abs() < 1e-15);
        assert!(example_discord_closed_form(FRAC_PI_2).unwrap().abs() < 1e-15);
        assert!((example_discord_closed_form(FRAC_PI_3).unwrap() - D_PI3).abs() < 1e-14);
    }

    #[test]
    fn accessible_information_values() {
        let acc = accessible_information(&pair(FRAC_PI_2));
        assert!((acc.value - 1.0).abs() < 1e-12);
        assert!(acc.n_opt.x.abs() > 1.0 - 1e-9);

        let e = QubitEnsemble::with_prior(0.3, BlochVector::Y * 0.4, BlochVector::Y * 0.4).unwrap();
        let acc = accessible_information(&e);
        assert_eq!(acc.value, 0.0);
        assert_eq!(acc.n_opt, BlochVector::X);
        assert!(acc.degenerate);

        let acc = accessible_information(&pair(FRAC_PI_4));
        assert!((acc.value - IACC_PI4).abs() < 1e-10);
        assert!(acc.n_opt.x.abs() > 1.0 - 1e-9);
    }

    #[test]
    fn discord_values() {
        assert!(quantum_discord(&pair(FRAC_PI_2)).value.abs() < 1e-12);
        assert!((quantum_discord(&pair(FRAC_PI_4)).value - D_PI4).abs() < 1e-10);
        let e =
            QubitEnsemble::with_prior(0.5, BlochVector::Z * 0.5, BlochVector::Z * -0.5).unwrap();
        let d = quantum_discord(&e);
        assert!(d.value.abs() < 1e-12);
        assert!((d.n_opt - BlochVector::Z).norm() < 1e-6);
    }

    #[test]
    fn stationarity_values() {
        for theta in [0.2f64, 0.9, FRAC_PI_3, 1.5] {
            let st = stationarity_residual(&pair(theta), BlochVector::X);
            assert!(st.residual < 1e-14, "theta {theta}: {}", st.residual);
            assert!(!st.singular);
        }
        let e = QubitEnsemble::with_prior(
            0.4,
            BlochVector::new(0.2, 0.5, 0.1),
            BlochVector::new(0.2, 0.5, 0.1),
        )
        .unwrap();
        let n = BlochVector::new(0.3, -0.4, 0.5).normalized().unwrap();
        assert!(stationarity_residual(&e, n).residual < 1e-15);

        // z is stationary too (a⃗·n⃗ = b⃗·n⃗ = c⃗·n⃗ makes both ϑ equal 1) but it
        // is the least informative axis, not the optimum.
        assert!(stationarity_residual(&pair(FRAC_PI_3), BlochVector::Z).residual < 1e-15);
        let n = BlochVector::new(0.5, 0.0, 3f64.sqrt() / 2.0);
        let st = stationarity_residual(&pair(FRAC_PI_3), n);
        assert!(st.residual > 1e-3);
    }

    #[test]
    fn singular_axis_is_flagged() {
        let st = stationarity_residual(&pair(FRAC_PI_2), BlochVector::X);
        assert!(st.singular);
        assert!(st.residual.is_finite());
    }

    #[test]
    fn analytic_conditions_example_pair() {
        let r = check_analytic_conditions(&pair(FRAC_PI_3), BlochVector::X);
        assert!(r.reciprocal_thetas);
        assert!(!r.balanced_perp);
        assert!(r.stationarity.residual < 1e-14);
    }

    #[test]
    fn analytic_conditions_mirror_mixed_pair() {
        let (s, c) = 0.7f64.sin_cos();
        let e = QubitEnsemble::with_prior(
            0.5,
            BlochVector::new(0.6 * s, 0.0, 0.6 * c),
            BlochVector::new(-0.6 * s, 0.0, 0.6 * c),
        )
        .unwrap();
        assert!(check_analytic_conditions(&e, BlochVector::X).reciprocal_thetas);
    }

    #[test]
    fn analytic_conditions_identical_states() {
        let a = BlochVector::new(0.0, 0.6, 0.0);
        let e = QubitEnsemble::with_prior(0.3, a, a).unwrap();
        let r = check_analytic_conditions(&e, BlochVector::Y);
        assert!(r.reciprocal_thetas && r.balanced_perp);
        let r = check_analytic_conditions(&e, BlochVector::X);
        assert!(r.reciprocal_thetas && !r.balanced_perp);
    }
}
