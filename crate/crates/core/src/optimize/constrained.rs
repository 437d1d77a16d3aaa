use crate::error::{Error, Result};
use crate::linalg::{cholesky, symmetric_eigen};
use crate::scalar::Real;

/// Maximiser of a quadratic on the ellipsoid `xᵀ Q x = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstrainedMax<T> {
    /// Maximising point, first non-zero component positive.
    pub point: Vec<T>,
    /// Maximum of the objective.
    pub value: T,
    /// Smallest (generalised) eigenvalue; the Lagrange condition reads
    /// `∇obj = value · ∇(xᵀQx)`.
    pub eigenvalue: T,
}

fn check_square<T>(q: &[Vec<T>]) -> Result<()> {
    if q.is_empty() || q.iter().any(|r| r.len() != q.len()) {
        return Err(Error::Dimension("constraint matrix must be square".into()));
    }
    Ok(())
}

fn orient<T: Real>(mut v: Vec<T>) -> Vec<T> {
    let tiny = T::lit(1e-14);
    if let Some(first) = v.iter().find(|x| x.abs() > tiny) {
        if *first < T::zero() {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    v
}

/// Maximises `xᵀx` subject to `xᵀ Q x = 1` for symmetric positive-definite
/// `Q`. The maximum is `1/λ_min(Q)`, attained along the matching
/// eigenvector.
pub fn constrained_quadratic_max<T: Real>(q: &[Vec<T>]) -> Result<ConstrainedMax<T>> {
    check_square(q)?;
    if cholesky(q).is_none() {
        return Err(Error::NotPositiveDefinite);
    }
    let eig = symmetric_eigen(q);
    let lambda = eig.values[0];
    let scale = T::one() / lambda.sqrt();
    let point = orient(eig.vectors[0].iter().map(|x| *x * scale).collect());
    Ok(ConstrainedMax {
        point,
        value: T::one() / lambda,
        eigenvalue: lambda,
    })
}

/// Maximises `xᵀ P x` subject to `xᵀ Q x = 1`, with `P` positive definite,
/// by whitening `P = L Lᵀ` and reducing to [`constrained_quadratic_max`].
pub fn generalized_quadratic_max<T: Real>(p: &[Vec<T>], q: &[Vec<T>]) -> Result<ConstrainedMax<T>> {
    check_square(p)?;
    check_square(q)?;
    if p.len() != q.len() {
        return Err(Error::Dimension(
            "objective and constraint sizes differ".into(),
        ));
    }
    let n = p.len();
    let l = cholesky(p).ok_or(Error::NotPositiveDefinite)?;

    // M = L⁻¹ Q L⁻ᵀ, column by column.
    let forward = |b: &[T]| -> Vec<T> {
        let mut y = vec![T::zero(); n];
        for i in 0..n {
            let s = (0..i).fold(b[i], |acc, k| acc - l[i][k] * y[k]);
            y[i] = s / l[i][i];
        }
        y
    };
    let backward = |b: &[T]| -> Vec<T> {
        let mut y = vec![T::zero(); n];
        for i in (0..n).rev() {
            let s = (i + 1..n).fold(b[i], |acc, k| acc - l[k][i] * y[k]);
            y[i] = s / l[i][i];
        }
        y
    };
    let linv_q: Vec<Vec<T>> = {
        let cols: Vec<Vec<T>> = (0..n)
            .map(|j| forward(&(0..n).map(|i| q[i][j]).collect::<Vec<_>>()))
            .collect();
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i]).collect())
            .collect()
    };
    // (L⁻¹ Q) L⁻ᵀ = (L⁻¹ (L⁻¹ Q)ᵀ)ᵀ, and L⁻¹ Q L⁻ᵀ is symmetric.
    let m: Vec<Vec<T>> = (0..n).map(|i| forward(&linv_q[i])).collect();
    let sym: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| (m[i][j] + m[j][i]) / T::lit(2.0)).collect())
        .collect();

    let whitened = constrained_quadratic_max(&sym)?;
    let point = orient(backward(&whitened.point));
    Ok(ConstrainedMax {
        point,
        value: whitened.value,
        eigenvalue: whitened.eigenvalue,
    })
}
