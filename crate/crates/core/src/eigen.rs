//! Eigen-decomposition of real symmetric 3×3 matrices.
//!
//! Eigenvalues come from the trigonometric solution of the characteristic
//! cubic and eigenvectors from cross products of rows of M − μI. When the
//! cubic's discriminant falls below [`DISCRIMINANT_FLOOR`] the roots are too
//! close for the cross-product vectors to be trusted, and cyclic Jacobi
//! rotations are used instead. The trigonometric roots lose about √ε of
//! accuracy next to a double root, so two computed roots closer than
//! [`RELATIVE_GAP_FLOOR`] times the spread also send the matrix to Jacobi.

use crate::qstate::BlochVector;

pub type Matrix3 = [[f64; 3]; 3];

/// Below this discriminant Π(μᵢ − μⱼ)² the Jacobi path is taken.
pub const DISCRIMINANT_FLOOR: f64 = 1e-24;

/// Minimum root separation, relative to the largest root magnitude, for the
/// closed-form path.
pub const RELATIVE_GAP_FLOOR: f64 = 1e-6;

/// Eigenvalues in descending order with matching unit eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEigen3 {
    pub values: [f64; 3],
    pub vectors: [BlochVector; 3],
    /// The Jacobi fallback produced this decomposition.
    pub jacobi: bool,
}

pub fn symmetric_eigen(m: &Matrix3) -> SymmetricEigen3 {
    match closed_form_values(m) {
        Some(values) if well_separated(values) => {
            let vectors = values.map(|mu| null_vector(m, mu).unwrap_or(BlochVector::X));
            SymmetricEigen3 {
                values,
                vectors,
                jacobi: false,
            }
        }
        _ => jacobi(m),
    }
}

fn discriminant(v: [f64; 3]) -> f64 {
    ((v[0] - v[1]) * (v[0] - v[2]) * (v[1] - v[2])).powi(2)
}

fn well_separated(v: [f64; 3]) -> bool {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let gap = (v[0] - v[1]).min(v[1] - v[2]);
    discriminant(v) >= DISCRIMINANT_FLOOR && gap >= RELATIVE_GAP_FLOOR * scale
}

/// Roots of det(M − μI) = 0 in descending order, or `None` for a multiple of
/// the identity.
fn closed_form_values(m: &Matrix3) -> Option<[f64; 3]> {
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let off = m[0][1].powi(2) + m[0][2].powi(2) + m[1][2].powi(2);
    let spread = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * off;
    let p = (spread / 6.0).sqrt();
    if p == 0.0 {
        return None;
    }
    let mut b = *m;
    for (i, row) in b.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = (*x - if i == j { q } else { 0.0 }) / p;
        }
    }
    let r = (det(&b) / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let top = q + 2.0 * p * phi.cos();
    let bottom = q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3).cos();
    let middle = 3.0 * q - top - bottom;
    Some([top, middle, bottom])
}

fn det(m: &Matrix3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Unit vector spanning the null space of M − μI for a simple eigenvalue μ:
/// the longest cross product of two of its rows.
fn null_vector(m: &Matrix3, mu: f64) -> Option<BlochVector> {
    let row = |i: usize| {
        BlochVector::new(
            m[i][0] - if i == 0 { mu } else { 0.0 },
            m[i][1] - if i == 1 { mu } else { 0.0 },
            m[i][2] - if i == 2 { mu } else { 0.0 },
        )
    };
    let (r0, r1, r2) = (row(0), row(1), row(2));
    [r0.cross(r1), r0.cross(r2), r1.cross(r2)]
        .into_iter()
        .max_by(|u, v| u.norm_sq().total_cmp(&v.norm_sq()))
        .and_then(BlochVector::normalized)
}

/// Cyclic Jacobi rotations until the off-diagonal part is negligible.
pub fn jacobi(m: &Matrix3) -> SymmetricEigen3 {
    let mut a = *m;
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let scale: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();

    for _ in 0..64 {
        let off = (a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2)).sqrt();
        if off <= 1e-18 * scale || off == 0.0 {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if a[p][q] == 0.0 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            for row in a.iter_mut() {
                let (akp, akq) = (row[p], row[q]);
                row[p] = c * akp - s * akq;
                row[q] = s * akp + c * akq;
            }
            let (rp, rq) = (a[p], a[q]);
            a[p] = std::array::from_fn(|k| c * rp[k] - s * rq[k]);
            a[q] = std::array::from_fn(|k| s * rp[k] + c * rq[k]);
            for row in v.iter_mut() {
                let (vkp, vkq) = (row[p], row[q]);
                row[p] = c * vkp - s * vkq;
                row[q] = s * vkp + c * vkq;
            }
        }
    }

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let column = |j: usize| BlochVector::new(v[0][j], v[1][j], v[2][j]);
    SymmetricEigen3 {
        values: order.map(|i| a[i][i]),
        vectors: order.map(column),
        jacobi: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(m: &Matrix3, v: BlochVector) -> BlochVector {
        let r = |i: usize| m[i][0] * v.x + m[i][1] * v.y + m[i][2] * v.z;
        BlochVector::new(r(0), r(1), r(2))
    }

    fn check(m: &Matrix3, e: &SymmetricEigen3, tol: f64) {
        assert!(e.values[0] >= e.values[1] && e.values[1] >= e.values[2]);
        for (mu, v) in e.values.iter().zip(e.vectors) {
            assert!((v.norm() - 1.0).abs() < 1e-12);
            assert!((apply(m, v) - v * *mu).norm() < tol, "{mu} {v:?}");
        }
    }

    #[test]
    fn distinct_eigenvalues_use_closed_form() {
        let m = [[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]];
        let e = symmetric_eigen(&m);
        assert!(!e.jacobi);
        let r2 = 2f64.sqrt();
        let want = [2.0 + r2, 2.0, 2.0 - r2];
        for (got, want) in e.values.iter().zip(want) {
            assert!((got - want).abs() < 1e-14);
        }
        check(&m, &e, 1e-13);
    }

    #[test]
    fn repeated_eigenvalue_falls_back_to_jacobi() {
        let m = [[1.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 0.0, 3.0]];
        let e = symmetric_eigen(&m);
        assert!(e.jacobi);
        assert_eq!(e.values, [3.0, 3.0, 1.0]);
        check(&m, &e, 1e-14);
    }

    #[test]
    fn identity_multiple() {
        let m = [[0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.5]];
        let e = symmetric_eigen(&m);
        assert_eq!(e.values, [0.5; 3]);
        check(&m, &e, 1e-15);
    }

    #[test]
    fn rank_one_projector() {
        let u = BlochVector::new(1.0, 2.0, -2.0) * (1.0 / 3.0);
        let a = u.to_array();
        let m: Matrix3 = std::array::from_fn(|i| std::array::from_fn(|j| 0.7 * a[i] * a[j]));
        let e = symmetric_eigen(&m);
        assert!((e.values[0] - 0.7).abs() < 1e-14);
        assert!(e.vectors[0].dot(u).abs() > 1.0 - 1e-13);
        check(&m, &e, 1e-13);
    }

    #[test]
    fn jacobi_matches_closed_form() {
        let m = [[0.3, 0.1, -0.05], [0.1, 0.2, 0.07], [-0.05, 0.07, 0.6]];
        let a = symmetric_eigen(&m);
        let b = jacobi(&m);
        for (x, y) in a.values.iter().zip(b.values) {
            assert!((x - y).abs() < 1e-14);
        }
        check(&m, &b, 1e-14);
    }
}
