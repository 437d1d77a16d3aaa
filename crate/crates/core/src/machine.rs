//! Two-qubit output states built from machine-state inner products.
//!
//! A cloning map sends the input to `Σ_r |r⟩_ab ⊗ |M_r⟩_x`, where each
//! machine vector `|M_r⟩` is a combination of `D` named machine states.
//! Tracing out the machine leaves `ρ[r][s] = ⟨M_s|M_r⟩`, which only needs
//! the Gram matrix of the named states.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::linalg::symmetric_eigen;
use crate::qmat::Matrix4;
use crate::scalar::Real;

/// `ρ[r][s] = Σ_{m,n} coef[r][m] · conj(coef[s][n]) · gram[n][m]`, with `r`
/// running over `|00⟩, |01⟩, |10⟩, |11⟩`.
pub fn joint_from_gram<T: Real, const D: usize>(
    coef: &[[Complex<T>; D]; 4],
    gram: &[[T; D]; D],
) -> Matrix4<T> {
    let mut rho = Matrix4::zero();
    for r in 0..4 {
        for s in 0..4 {
            let mut acc = Complex::new(T::zero(), T::zero());
            for m in 0..D {
                for n in 0..D {
                    acc = acc + coef[r][m] * coef[s][n].conj() * gram[n][m];
                }
            }
            rho.0[r][s] = acc;
        }
    }
    rho
}

/// Smallest eigenvalue of a real symmetric Gram matrix.
pub fn gram_min_eigenvalue<T: Real, const D: usize>(gram: &[[T; D]; D]) -> T {
    let rows: Vec<Vec<T>> = gram.iter().map(|r| r.to_vec()).collect();
    symmetric_eigen(&rows).values[0]
}

/// Outcome of the Cauchy-Schwarz checks on a set of overlaps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CsiVerdict {
    /// Every pairwise bound holds and the Gram matrix is positive semidefinite.
    Feasible,
    /// Each overlap is within its own bound, but not jointly realisable.
    MarginalOnly,
    /// A single-overlap bound already fails.
    Infeasible,
}

impl CsiVerdict {
    pub fn from_checks(marginal: bool, joint: bool) -> Self {
        match (marginal, joint) {
            (true, true) => CsiVerdict::Feasible,
            (true, false) => CsiVerdict::MarginalOnly,
            (false, _) => CsiVerdict::Infeasible,
        }
    }

    pub fn is_feasible(self) -> bool {
        self == CsiVerdict::Feasible
    }
}

impl fmt::Display for CsiVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CsiVerdict::Feasible => "feasible",
            CsiVerdict::MarginalOnly => "marginal-only",
            CsiVerdict::Infeasible => "infeasible",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn orthonormal_machine_gives_product_of_branches() {
        // |0⟩ → |00⟩|m0⟩, |1⟩ → |11⟩|m1⟩ with orthonormal m: a classical mixture.
        let z = c(0.0);
        let (a, b) = (0.6, 0.8);
        let coef = [[c(a), z], [z, z], [z, z], [z, c(b)]];
        let rho = joint_from_gram(&coef, &[[1.0, 0.0], [0.0, 1.0]]);
        assert!((rho.0[0][0].re - 0.36).abs() < 1e-15);
        assert!((rho.0[3][3].re - 0.64).abs() < 1e-15);
        assert_eq!(rho.0[0][3], z);
        // Identical machine states restore coherence.
        let rho = joint_from_gram(&coef, &[[1.0, 1.0], [1.0, 1.0]]);
        assert!((rho.0[0][3].re - 0.48).abs() < 1e-15);
    }

    #[test]
    fn gram_eigenvalue() {
        assert!((gram_min_eigenvalue(&[[1.0f64, 2.0], [2.0, 1.0]]) + 1.0).abs() < 1e-14);
    }
}
