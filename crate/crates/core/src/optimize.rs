//! One-dimensional minimization used by the axis optimizers: golden-section
//! search on a bracket, and a dense periodic scan that brackets every local
//! minimum before refining it.

use serde::Serialize;

use crate::qstate::BlochVector;

/// 1/φ.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Result of a one-dimensional minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`, stopping once
/// the bracket is narrower than `tol`. Returns the best point evaluated.
pub fn golden_section<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evaluations = 2;
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };

    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
            if f1 < best.1 {
                best = (x1, f1);
            }
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
            if f2 < best.1 {
                best = (x2, f2);
            }
        }
        evaluations += 1;
    }
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    evaluations += 1;
    if fm <= best.1 {
        best = (mid, fm);
    }
    Minimum {
        x: best.0,
        value: best.1,
        evaluations,
    }
}

/// Samples `f` at `points` equally spaced abscissae over one period starting
/// at 0, then golden-section refines every local minimum of the sampled
/// sequence (neighbors taken cyclically) on the bracket formed by its two
/// neighbors. Minima are returned in scan order; their evaluation counts
/// exclude the `points` scan samples.
pub fn periodic_minima<F>(f: F, period: f64, points: usize, tol: f64) -> Vec<Minimum>
where
    F: Fn(f64) -> f64,
{
    assert!(points >= 3, "periodic scan needs at least three points");
    let step = period / points as f64;
    let samples: Vec<f64> = (0..points).map(|i| f(i as f64 * step)).collect();

    let mut starts: Vec<usize> = (0..points)
        .filter(|&i| {
            let prev = samples[(i + points - 1) % points];
            let next = samples[(i + 1) % points];
            samples[i] <= prev && samples[i] < next
        })
        .collect();
    // A completely flat scan has no strict minimum; fall back to the argmin.
    let argmin = samples
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v < samples[best] { i } else { best });
    if !starts.contains(&argmin) {
        starts.push(argmin);
        starts.sort_unstable();
    }

    starts
        .into_iter()
        .map(|i| {
            let centre = i as f64 * step;
            let mut m = golden_section(&f, centre - step, centre + step, tol);
            if samples[i] < m.value {
                m.x = centre;
                m.value = samples[i];
            }
            m
        })
        .collect()
}

/// How an [`OptimizationResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimizationMethod {
    /// Angular scan plus golden-section refinement inside span{a⃗, b⃗}.
    InPlaneGoldenSection,
    /// Dense full-sphere grid followed by local great-circle refinement.
    SphereGridRefine,
    /// Top eigenpair of a symmetric 3×3 quadratic form.
    EigenSolve,
}

/// Optimal measurement axis together with the optimized quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub n_opt: BlochVector,
    pub value: f64,
    pub stationarity_residual: f64,
    /// The residual was computed with clamped (singular) logarithm arguments.
    pub residual_singular: bool,
    pub evaluations: usize,
    pub method: OptimizationMethod,
    /// More than one distinct axis attains the optimum; `n_opt` was chosen
    /// by the lexicographic tie-break.
    pub degenerate: bool,
}

/// Lexicographic comparison of (x, y, z) with a small tolerance per component.
fn lex_greater(u: BlochVector, v: BlochVector) -> bool {
    const EPS: f64 = 1e-9;
    for (p, q) in [(u.x, v.x), (u.y, v.y), (u.z, v.z)] {
        if (p - q).abs() > EPS {
            return p > q;
        }
    }
    false
}

/// Deterministic choice among equally optimal axes: antipode-normalize each
/// candidate, then take the lexicographically largest (x, y, z).
pub fn tie_break(candidates: &[BlochVector]) -> BlochVector {
    candidates
        .iter()
        .map(|c| c.antipode_normalized())
        .reduce(|best, c| if lex_greater(c, best) { c } else { best })
        .unwrap_or(BlochVector::X)
}

/// Drops axes that coincide with an earlier one up to sign.
pub fn distinct_axes(axes: &[BlochVector]) -> Vec<BlochVector> {
    let mut out: Vec<BlochVector> = Vec::new();
    for &n in axes {
        if out.iter().all(|m| m.dot(n).abs() < 1.0 - 1e-9) {
            out.push(n);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn golden_section_quadratic() {
        let m = golden_section(|x| (x - 0.2).powi(2), -1.0, 1.0, 1e-10);
        assert!((m.x - 0.2).abs() < 1e-8);
        assert!(m.value < 1e-16);
        assert!(m.evaluations < 60);
    }

    #[test]
    fn golden_section_cusp() {
        let m = golden_section(|x: f64| (x - 0.3).abs().sqrt(), 0.0, 1.0, 1e-12);
        assert!((m.x - 0.3).abs() < 1e-11);
    }

    #[test]
    fn golden_section_reversed_bracket() {
        let m = golden_section(|x| (x + 0.5).powi(2), 1.0, -1.0, 1e-10);
        assert!((m.x + 0.5).abs() < 1e-8);
    }

    #[test]
    fn periodic_scan_finds_all_minima() {
        // Two minima per period at 0.4 and 0.4 + π/2, the first slightly deeper.
        let f = |x: f64| -(4.0 * (x - 0.4)).cos() - 0.01 * (x - 0.4).cos().powi(2);
        let mins = periodic_minima(f, PI, 720, 1e-10);
        let best = mins
            .iter()
            .min_by(|a, b| a.value.total_cmp(&b.value))
            .unwrap();
        assert!((best.x.rem_euclid(PI) - 0.4).abs() < 1e-7);
        assert_eq!(mins.len(), 2);
    }

    #[test]
    fn periodic_scan_wraps_around_zero() {
        let f = |x: f64| -(x - 0.0005).cos().powi(2);
        let mins = periodic_minima(f, PI, 720, 1e-12);
        assert_eq!(mins.len(), 1);
        assert!((mins[0].x - 0.0005).abs() < 1e-7);
    }

    #[test]
    fn flat_scan_returns_one_candidate() {
        let mins = periodic_minima(|_| 1.0, PI, 36, 1e-10);
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].value, 1.0);
    }

    #[test]
    fn tie_break_prefers_x() {
        let pick = tie_break(&[BlochVector::Z, -BlochVector::X]);
        assert_eq!(pick, BlochVector::X);
        let pick = tie_break(&[
            BlochVector::new(0.6, 0.0, -0.8),
            BlochVector::new(0.0, 0.6, 0.8),
        ]);
        assert_eq!(pick, BlochVector::new(0.0, 0.6, 0.8));
    }

    #[test]
    fn distinct_axes_merges_antipodes() {
        let axes = distinct_axes(&[BlochVector::Z, -BlochVector::Z, BlochVector::X]);
        assert_eq!(axes, vec![BlochVector::Z, BlochVector::X]);
    }
}
