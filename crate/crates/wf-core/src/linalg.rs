//! Symmetric eigendecomposition via cyclic Jacobi rotations.
//!
//! Sized for the small Gram matrices of dual PCA (N up to a few hundred),
//! where Jacobi is accurate and deterministic.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

/// Eigenvalues (descending) and matching eigenvectors (rows) of a symmetric
/// matrix given in row-major order. Ordering ties keep the lower original
/// index first, so results are deterministic.
pub fn eigh_symmetric(matrix: &[f64], n: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut a = matrix.to_vec();
    // v holds the accumulated rotations, column j = eigenvector j.
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let off_norm = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += a[i * n + j] * a[i * n + j];
            }
        }
        s
    };
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let tol = 1e-30 * frob * frob;

    for _sweep in 0..100 {
        if off_norm(&a) <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                // smaller-angle root keeps the rotation stable
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[j * n + j]
            .partial_cmp(&a[i * n + i])
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&j| (0..n).map(|k| v[k * n + j]).collect())
        .collect();
    (eigenvalues, eigenvectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn diagonal_matrix() {
        let m = [3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0];
        let (vals, vecs) = eigh_symmetric(&m, 3);
        assert_eq!(vals, vec![3.0, 2.0, 1.0]);
        assert_abs_diff_eq!(vecs[0][0].abs(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vecs[1][2].abs(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vecs[2][1].abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn known_2x2() {
        // eigenvalues of [[2,1],[1,2]] are 3 and 1
        let m = [2.0, 1.0, 1.0, 2.0];
        let (vals, vecs) = eigh_symmetric(&m, 2);
        assert_abs_diff_eq!(vals[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[1], 1.0, epsilon = 1e-12);
        let inv_sqrt2 = core::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(vecs[0][0].abs(), inv_sqrt2, epsilon = 1e-12);
        assert_abs_diff_eq!(vecs[0][1].abs(), inv_sqrt2, epsilon = 1e-12);
    }

    #[test]
    fn reconstructs_random_symmetric() {
        let mut rng = crate::rng::SeedRng::new(42);
        let n = 12;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let x = rng.uniform(-1.0, 1.0);
                m[i * n + j] = x;
                m[j * n + i] = x;
            }
        }
        let (vals, vecs) = eigh_symmetric(&m, n);
        // eigenvalues descending
        for w in vals.windows(2) {
            assert!(w[0] >= w[1] - 1e-12);
        }
        // A v = λ v and orthonormality
        for (k, v) in vecs.iter().enumerate() {
            let mut av = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    av[i] += m[i * n + j] * v[j];
                }
            }
            for i in 0..n {
                assert_abs_diff_eq!(av[i], vals[k] * v[i], epsilon = 1e-9);
            }
            for (l, u) in vecs.iter().enumerate() {
                let dot: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
                let expect = if k == l { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(dot, expect, epsilon = 1e-10);
            }
        }
    }
}
