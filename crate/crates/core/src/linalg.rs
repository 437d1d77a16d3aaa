//! Small dense real-symmetric eigensolver (cyclic Jacobi).
//!
//! Matrices here never exceed 8x8, so the O(n^3)-per-sweep cost is
//! irrelevant and Jacobi's accuracy on tiny eigenvalues is what matters for
//! positivity checks.

use crate::scalar::Real;

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<T> {
    /// Eigenvalues in ascending order.
    pub values: Vec<T>,
    /// `vectors[i]` is the unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<T>>,
}

/// Diagonalises the symmetric matrix `a` (only the upper triangle is read).
pub fn symmetric_eigen<T: Real>(a: &[Vec<T>]) -> SymmetricEigen<T> {
    let n = a.len();
    let mut m: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if j >= i { a[i][j] } else { a[j][i] })
                .collect()
        })
        .collect();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();

    let scale = m
        .iter()
        .flatten()
        .fold(T::zero(), |acc, x| acc + *x * *x)
        .sqrt()
        .max(T::min_positive_value());
    let threshold = T::epsilon() * scale;

    for _sweep in 0..100 {
        let off: T = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + m[i][j] * m[i][j]);
        if off.sqrt() <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() <= T::min_positive_value() {
                    continue;
                }
                let two = T::lit(2.0);
                let theta = (m[q][q] - m[p][p]) / (two * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for row in m.iter_mut() {
                    let (kp, kq) = (row[p], row[q]);
                    row[p] = c * kp - s * kq;
                    row[q] = s * kp + c * kq;
                }
                for k in 0..n {
                    let (pk, qk) = (m[p][k], m[q][k]);
                    m[p][k] = c * pk - s * qk;
                    m[q][k] = s * pk + c * qk;
                }
                for row in v.iter_mut() {
                    let (kp, kq) = (row[p], row[q]);
                    row[p] = c * kp - s * kq;
                    row[q] = s * kp + c * kq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[i][i]
            .partial_cmp(&m[j][j])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    SymmetricEigen {
        values: order.iter().map(|&i| m[i][i]).collect(),
        vectors: order
            .iter()
            .map(|&i| (0..n).map(|k| v[k][i]).collect())
            .collect(),
    }
}

/// Lower-triangular Cholesky factor `L` with `a = L Lᵀ`; `None` unless `a`
/// is numerically positive definite.
pub fn cholesky<T: Real>(a: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let mut l = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let sum = (0..j).fold(a[i][j], |acc, k| acc - l[i][k] * l[j][k]);
            if i == j {
                if sum <= T::zero() {
                    return None;
                }
                l[i][i] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Some(l)
}
