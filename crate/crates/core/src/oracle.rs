//! Brute-force optimization over a dense Fibonacci lattice on the full unit
//! sphere, followed by a local great-circle polish. Nothing here assumes the
//! optimal axis lies in span{a⃗, b⃗}; this is the independent check on the
//! in-plane optimizer and the eigen-solve.

use rayon::prelude::*;

use crate::discord::stationarity_residual;
use crate::ensemble::QubitEnsemble;
use crate::error::{Error, Result};
use crate::geodiscord::{ensemble_purity, geo_stationarity_residual};
use crate::measurement::{classical_mutual_information_at, post_measurement_purity_at};
use crate::optimize::{golden_section, OptimizationMethod, OptimizationResult};
use crate::qstate::BlochVector;

/// Golden angle π(3 − √5).
const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

/// Maximum number of alternating great-circle passes in the polish.
const MAX_POLISH_SWEEPS: usize = 64;

/// Quasi-uniform points on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    points: Vec<BlochVector>,
}

impl SphereGrid {
    pub fn points(&self) -> &[BlochVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Mean angular spacing √(4π/N).
    pub fn spacing(&self) -> f64 {
        (4.0 * std::f64::consts::PI / self.len() as f64).sqrt()
    }
}

/// Fibonacci lattice with heights zᵢ = 1 − 2i/(N − 1), poles included, and
/// longitudes advancing by the golden angle.
pub fn fibonacci_sphere(n: usize) -> Result<SphereGrid> {
    if n < 2 {
        return Err(Error::GridTooSmall(n));
    }
    let points = (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * i as f64 / (n - 1) as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let (s, c) = (i as f64 * GOLDEN_ANGLE).sin_cos();
            BlochVector::new(r * c, r * s, z)
        })
        .collect();
    Ok(SphereGrid { points })
}

/// Documented gap δ(N) allowed between the oracle and an exact optimum.
pub fn resolution_bound(n: usize) -> f64 {
    0.1 / n as f64
}

/// Index and value of the grid maximum; ties go to the lowest index so the
/// parallel reduction order cannot change the answer.
fn grid_argmax<F>(grid: &SphereGrid, f: F) -> (usize, f64)
where
    F: Fn(BlochVector) -> f64 + Sync,
{
    grid.points
        .par_iter()
        .enumerate()
        .map(|(i, &p)| (i, f(p)))
        .reduce(
            || (usize::MAX, f64::NEG_INFINITY),
            |x, y| {
                if y.1 > x.1 || (y.1 == x.1 && y.0 < x.0) {
                    y
                } else {
                    x
                }
            },
        )
}

/// Alternating golden-section maximization along two orthogonal great
/// circles through the current point, each searched within ±`radius`.
fn polish<F>(f: F, start: BlochVector, start_value: f64, radius: f64) -> (BlochVector, f64, usize)
where
    F: Fn(BlochVector) -> f64,
{
    let (mut p, mut best) = (start, start_value);
    let mut evaluations = 0;
    for _ in 0..MAX_POLISH_SWEEPS {
        let before = best;
        let u = p.any_perpendicular();
        let w = p.cross(u);
        for dir in [u, w] {
            let along = |alpha: f64| {
                let (s, c) = alpha.sin_cos();
                (p * c + dir * s).normalized().unwrap_or(p)
            };
            let m = golden_section(|alpha| -f(along(alpha)), -radius, radius, 1e-10);
            evaluations += m.evaluations;
            if -m.value > best {
                best = -m.value;
                p = along(m.x);
            }
        }
        if best - before <= 1e-15 {
            break;
        }
    }
    (p, best, evaluations)
}

fn search<F>(grid_n: usize, f: F) -> Result<(BlochVector, f64, usize)>
where
    F: Fn(BlochVector) -> f64 + Sync,
{
    let grid = fibonacci_sphere(grid_n)?;
    let (i, v) = grid_argmax(&grid, &f);
    let (p, value, evals) = polish(&f, grid.points[i], v, 2.0 * grid.spacing());
    Ok((p.antipode_normalized(), value, grid.len() + evals))
}

/// Accessible information by full-sphere search.
pub fn brute_force_accessible(e: &QubitEnsemble, grid_n: usize) -> Result<OptimizationResult> {
    let (n, value, evaluations) = search(grid_n, |n| classical_mutual_information_at(e, n))?;
    let st = stationarity_residual(e, n);
    Ok(OptimizationResult {
        n_opt: n,
        value,
        stationarity_residual: st.residual,
        residual_singular: st.singular,
        evaluations,
        method: OptimizationMethod::SphereGridRefine,
        degenerate: false,
    })
}

/// Geometric discord by full-sphere search of the post-measurement purity.
pub fn brute_force_geo(e: &QubitEnsemble, grid_n: usize) -> Result<OptimizationResult> {
    let (n, best, evaluations) = search(grid_n, |n| post_measurement_purity_at(e, n))?;
    Ok(OptimizationResult {
        n_opt: n,
        value: (ensemble_purity(e) - best).max(0.0),
        stationarity_residual: geo_stationarity_residual(e, n),
        residual_singular: false,
        evaluations,
        method: OptimizationMethod::SphereGridRefine,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_are_antipodal() {
        let g = fibonacci_sphere(2).unwrap();
        assert_eq!(g.points()[0], BlochVector::Z);
        assert!((g.points()[1] + BlochVector::Z).norm() < 1e-15);
    }

    #[test]
    fn rejects_tiny_grids() {
        assert_eq!(fibonacci_sphere(1), Err(Error::GridTooSmall(1)));
        assert_eq!(fibonacci_sphere(0), Err(Error::GridTooSmall(0)));
    }

    #[test]
    fn points_are_unit_and_deterministic() {
        for n in [3, 17, 1000] {
            let g = fibonacci_sphere(n).unwrap();
            assert_eq!(g.len(), n);
            assert!(g.points().iter().all(|p| (p.norm() - 1.0).abs() < 1e-12));
            assert_eq!(g, fibonacci_sphere(n).unwrap());
        }
    }

    #[test]
    fn argmax_ties_take_lowest_index() {
        let g = fibonacci_sphere(500).unwrap();
        let (i, v) = grid_argmax(&g, |p| p.z.abs().round());
        assert_eq!((i, v), (0, 1.0));
        let (i, _) = grid_argmax(&g, |_| 0.0);
        assert_eq!(i, 0);
    }
}
