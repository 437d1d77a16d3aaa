//! Universal 1→2 cloner with two pairs of machine states `(Q₀, Y₀)`,
//! `(Q₁, Y₁)`:
//!
//! ```text
//! |0⟩|Q⟩ → |00⟩|Q₀⟩ + (|01⟩ + |10⟩)|Y₀⟩
//! |1⟩|Q⟩ → |11⟩|Q₁⟩ + (|01⟩ + |10⟩)|Y₁⟩
//! ```
//!
//! with `⟨Y_i|Y_i⟩ = A`, `⟨Q_i|Q_i⟩ = 1 − 2A`, `⟨Y₁|Q₀⟩ = ⟨Y₀|Q₁⟩ = C` and
//! every other cross overlap zero.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machine::{joint_from_gram, CsiVerdict};
use crate::qmat::{hs_distance, DensityMatrix, DensityMatrix2, DensityMatrix4, Matrix, PureQubit};
use crate::quadrature::{average_over_alpha_try, QuadratureSpec};
use crate::scalar::{check_alpha, checked_sqrt, in_range, Real};

/// Machine overlaps `(A, C)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BhOverlaps<T> {
    a: T,
    c: T,
}

fn max_c<T: Real>() -> T {
    T::one() / (T::lit(2.0) * T::SQRT_2())
}

impl<T: Real> BhOverlaps<T> {
    /// Enforces the single-overlap bounds `0 ≤ A ≤ 1/2` and
    /// `0 ≤ C ≤ 1/(2√2)`. The joint condition is left to
    /// [`joint_csi_feasible`].
    pub fn new(a: T, c: T) -> Result<Self> {
        if !in_range(a, T::zero(), T::lit(0.5)) {
            return Err(Error::ParameterDomain {
                name: "A",
                value: a.to_f64().unwrap_or(f64::NAN),
                reason: "must lie in [0, 1/2]",
            });
        }
        if !in_range(c, T::zero(), max_c()) {
            return Err(Error::ParameterDomain {
                name: "C",
                value: c.to_f64().unwrap_or(f64::NAN),
                reason: "must lie in [0, 1/(2*sqrt(2))]",
            });
        }
        Ok(BhOverlaps { a, c })
    }

    /// No bound checks; for probing values outside the admissible box.
    pub fn unchecked(a: T, c: T) -> Self {
        BhOverlaps { a, c }
    }

    /// `A = 1/6`, `C = 1/3`.
    pub fn buzek_hillery() -> Self {
        BhOverlaps {
            a: T::one() / T::lit(6.0),
            c: T::one() / T::lit(3.0),
        }
    }

    /// `A = 1/2 − C`, the family on which `D_a` and `F` lose their
    /// dependence on the input.
    pub fn input_independent(c: T) -> Result<Self> {
        Self::new(T::lit(0.5) - c, c)
    }

    /// `C = 1/(2√2)`, `A = (1 − 1/√2)/2`.
    pub fn improved() -> Self {
        let c = max_c();
        BhOverlaps {
            a: T::lit(0.5) - c,
            c,
        }
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn c(&self) -> T {
        self.c
    }

    /// `⟨Q_i|Q_i⟩ = 1 − 2A`.
    pub fn q(&self) -> T {
        T::one() - T::lit(2.0) * self.a
    }

    /// Gram matrix in the order `Q₀, Y₀, Q₁, Y₁`.
    pub fn gram(&self) -> [[T; 4]; 4] {
        let (q, a, c, z) = (self.q(), self.a, self.c, T::zero());
        [[q, z, z, c], [z, a, c, z], [z, c, q, z], [c, z, z, a]]
    }
}

/// Reduced state of either copy, for complex amplitudes:
/// `ρ₀₀ = |α|²(1−2A) + A`, `ρ₀₁ = 2αβ̄C`, `ρ₁₁ = |β|²(1−2A) + A`.
pub fn output_density_a<T: Real>(psi: &PureQubit<T>, ov: &BhOverlaps<T>) -> DensityMatrix2<T> {
    let (alpha, beta) = (psi.alpha(), psi.beta());
    let q = ov.q();
    let two_c = T::lit(2.0) * ov.c;
    let off = alpha * beta.conj() * two_c;
    let d0 = alpha.norm_sqr() * q + ov.a;
    let d1 = beta.norm_sqr() * q + ov.a;
    let zero = T::zero();
    DensityMatrix::assume_valid(Matrix([
        [Complex::new(d0, zero), off],
        [off.conj(), Complex::new(d1, zero)],
    ]))
}

/// Two-copy output state obtained by tracing the machine out of the full
/// transformation.
pub fn joint_output_density<T: Real>(psi: &PureQubit<T>, ov: &BhOverlaps<T>) -> DensityMatrix4<T> {
    let (alpha, beta, z) = (psi.alpha(), psi.beta(), Complex::new(T::zero(), T::zero()));
    let coef = [
        [alpha, z, z, z],
        [z, alpha, z, beta],
        [z, alpha, z, beta],
        [z, z, beta, z],
    ];
    DensityMatrix::assume_valid(joint_from_gram(&coef, &ov.gram()))
}

/// `D_a = 2A²(4α⁴ − 4α² + 1) + 2α²(1 − α²)(1 − 2C)²` for real amplitudes.
pub fn hs_norm_a<T: Real>(alpha: T, ov: &BhOverlaps<T>) -> Result<T> {
    check_alpha(alpha)?;
    let two = T::lit(2.0);
    let a2 = alpha * alpha;
    let skew = T::one() - two * a2;
    let gap = T::one() - two * ov.c;
    Ok(two * ov.a * ov.a * skew * skew + two * a2 * (T::one() - a2) * gap * gap)
}

/// `F = √(1 − A + |α|²|β|²(4C − 2 + 4A))`.
pub fn fidelity_closed<T: Real>(psi: &PureQubit<T>, ov: &BhOverlaps<T>) -> Result<T> {
    let four = T::lit(4.0);
    let radicand =
        T::one() - ov.a + psi.weight_product() * (four * ov.c - T::lit(2.0) + four * ov.a);
    checked_sqrt(radicand, "bh fidelity")
}

/// `Tr[ρ_ab^(id) − ρ_ab^(out)]²` against the ideal `|ψψ⟩⟨ψψ|`.
pub fn joint_hs_distance<T: Real>(psi: &PureQubit<T>, ov: &BhOverlaps<T>) -> T {
    let ideal = DensityMatrix4::from_pure(&psi.doubled());
    hs_distance(&ideal, &joint_output_density(psi, ov))
}

/// `∫₀¹ D_ab(α) dα` through the joint-state matrices.
pub fn avg_hs_norm_ab<T: Real>(ov: &BhOverlaps<T>, quad: QuadratureSpec) -> Result<T> {
    average_over_alpha_try(
        |alpha| Ok(joint_hs_distance(&PureQubit::real(alpha)?, ov)),
        quad,
    )
}

/// The closed-form two-copy distance as it is usually quoted:
/// `1 + 8α⁴β⁴ − 4α²β²(1+2A) + (1−2A)² − 2(1−2A)(1−α²β²) + 4A²`.
///
/// It is not a squared Hermitian distance (it goes negative, e.g. at
/// `A = 1/6`, `α² = 1/2`) and is kept only for comparison.
pub fn hs_norm_ab_as_printed<T: Real>(alpha: T, ov: &BhOverlaps<T>) -> Result<T> {
    check_alpha(alpha)?;
    let (two, four, eight) = (T::lit(2.0), T::lit(4.0), T::lit(8.0));
    let w = alpha * alpha * (T::one() - alpha * alpha);
    let q = ov.q();
    Ok(
        T::one() + eight * w * w - four * w * (T::one() + two * ov.a) + q * q
            - two * q * (T::one() - w)
            + four * ov.a * ov.a,
    )
}

/// Single-overlap bounds plus Gram positivity `C² ≤ A(1 − 2A)`.
pub fn joint_csi_feasible<T: Real>(ov: &BhOverlaps<T>) -> CsiVerdict {
    let marginal = in_range(ov.a, T::zero(), T::lit(0.5)) && in_range(ov.c, T::zero(), max_c());
    let joint = ov.c * ov.c <= ov.a * ov.q() + T::validation_tol();
    CsiVerdict::from_checks(marginal, joint)
}

/// Machine states written in a two-dimensional basis `{↑, ↓}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MachineRealization<T> {
    pub q0: [T; 2],
    pub y0: [T; 2],
    pub q1: [T; 2],
    pub y1: [T; 2],
}

impl<T: Real> MachineRealization<T> {
    fn states(&self) -> [[T; 2]; 4] {
        [self.q0, self.y0, self.q1, self.y1]
    }

    /// Inner products in the order `Q₀, Y₀, Q₁, Y₁`.
    pub fn gram(&self) -> [[T; 4]; 4] {
        let s = self.states();
        let mut g = [[T::zero(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                g[i][j] = s[i][0] * s[j][0] + s[i][1] * s[j][1];
            }
        }
        g
    }

    /// Largest entrywise deviation from the Gram matrix of `ov`.
    pub fn gram_residual(&self, ov: &BhOverlaps<T>) -> T {
        let (mine, target) = (self.gram(), ov.gram());
        (0..16).fold(T::zero(), |acc, k| {
            acc.max((mine[k / 4][k % 4] - target[k / 4][k % 4]).abs())
        })
    }

    /// Images of `|0⟩` and `|1⟩` as vectors in `ab ⊗ x` (index `2r + k`).
    pub fn images(&self) -> [[T; 8]; 2] {
        let mut out = [[T::zero(); 8]; 2];
        for k in 0..2 {
            out[0][k] = self.q0[k];
            out[0][2 + k] = self.y0[k];
            out[0][4 + k] = self.y0[k];
            out[1][6 + k] = self.q1[k];
            out[1][2 + k] = self.y1[k];
            out[1][4 + k] = self.y1[k];
        }
        out
    }

    /// `max(|‖e₀‖² − 1|, |‖e₁‖² − 1|, |⟨e₀|e₁⟩|)` for the two images.
    pub fn isometry_residual(&self) -> T {
        let [e0, e1] = self.images();
        let dot = |u: &[T; 8], v: &[T; 8]| (0..8).fold(T::zero(), |acc, i| acc + u[i] * v[i]);
        (dot(&e0, &e0) - T::one())
            .abs()
            .max((dot(&e1, &e1) - T::one()).abs())
            .max(dot(&e0, &e1).abs())
    }
}

/// Result of trying to place the machine states in two dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Realization<T> {
    Realized(MachineRealization<T>),
    /// The overlaps admit no Hilbert-space realisation at all.
    Infeasible {
        verdict: CsiVerdict,
    },
    /// Realisable, but `C² < A(1 − 2A)` needs a larger machine space.
    NotTwoDimensional,
}

/// `Q₀ = √(1−2A) ↑`, `Y₀ = √A ↓`, `Q₁ = √(1−2A) ↓`, `Y₁ = √A ↑`, available
/// exactly when `C = √(A(1 − 2A))`.
pub fn realize_machine_vectors<T: Real>(ov: &BhOverlaps<T>) -> Realization<T> {
    let verdict = joint_csi_feasible(ov);
    if !verdict.is_feasible() {
        return Realization::Infeasible { verdict };
    }
    let (sq, sa) = (ov.q().max(T::zero()).sqrt(), ov.a.max(T::zero()).sqrt());
    if (ov.c - sq * sa).abs() > T::validation_tol() {
        return Realization::NotTwoDimensional;
    }
    let z = T::zero();
    Realization::Realized(MachineRealization {
        q0: [sq, z],
        y0: [z, sa],
        q1: [z, sq],
        y1: [sa, z],
    })
}

/// One column of the comparison table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Column<T> {
    pub label: String,
    pub overlaps: BhOverlaps<T>,
    pub hs_norm_a: T,
    pub fidelity: T,
    pub avg_hs_norm_ab: T,
}

impl<T: Real> Table1Column<T> {
    /// Recomputes every entry for `ov`; `D_a` and `F` are taken at
    /// `α² = 1/2`, where they equal their input-independent values.
    pub fn compute(label: &str, ov: BhOverlaps<T>, quad: QuadratureSpec) -> Result<Self> {
        let alpha = T::FRAC_1_SQRT_2();
        Ok(Table1Column {
            label: label.to_string(),
            overlaps: ov,
            hs_norm_a: hs_norm_a(alpha, &ov)?,
            fidelity: fidelity_closed(&PureQubit::real(alpha)?, &ov)?,
            avg_hs_norm_ab: avg_hs_norm_ab(&ov, quad)?,
        })
    }
}

/// Original and improved columns.
pub fn table1<T: Real>(quad: QuadratureSpec) -> Result<[Table1Column<T>; 2]> {
    Ok([
        Table1Column::compute("buzek-hillery", BhOverlaps::buzek_hillery(), quad)?,
        Table1Column::compute("improved", BhOverlaps::improved(), quad)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{fidelity, partial_trace, Subsystem};
    use approx::assert_abs_diff_eq;

    fn grid() -> impl Iterator<Item = f64> {
        (0..=100).map(|i| i as f64 / 100.0)
    }

    #[test]
    fn reduced_state_examples() {
        let rho = output_density_a(&PureQubit::real(1.0).unwrap(), &BhOverlaps::buzek_hillery());
        assert_abs_diff_eq!(rho.entry(0, 0).re, 5.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.entry(1, 1).re, 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.entry(0, 1).norm(), 0.0);

        let psi = PureQubit::real(0.5f64.sqrt()).unwrap();
        let rho = output_density_a(&psi, &BhOverlaps::improved());
        assert_abs_diff_eq!(rho.entry(0, 0).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.entry(0, 1).re, 1.0 / 8f64.sqrt(), epsilon = 1e-15);

        let zero = BhOverlaps::new(0.0, 0.0).unwrap();
        let rho = output_density_a(&PureQubit::real(1.0).unwrap(), &zero);
        assert_eq!(rho.entry(0, 0).re, 1.0);
        assert_eq!(rho.entry(1, 1).re, 0.0);
    }

    #[test]
    fn joint_state_entries() {
        let (alpha, beta) = (0.6, 0.8);
        let ov = BhOverlaps::new(0.2, 0.3).unwrap();
        let rho = joint_output_density(&PureQubit::from_real(alpha, beta).unwrap(), &ov);
        let e = |i: usize, j: usize| rho.entry(i, j).re;
        let q = 1.0 - 2.0 * 0.2;
        assert_abs_diff_eq!(e(0, 0), alpha * alpha * q, epsilon = 1e-15);
        assert_abs_diff_eq!(e(0, 1), alpha * beta * 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(e(0, 2), alpha * beta * 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(e(0, 3), 0.0);
        assert_abs_diff_eq!(e(1, 1), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(e(1, 2), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(e(1, 3), alpha * beta * 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(e(3, 3), beta * beta * q, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.trace(), 1.0, epsilon = 1e-15);

        let rho = joint_output_density(
            &PureQubit::real(1.0).unwrap(),
            &BhOverlaps::new(0.0, 0.0).unwrap(),
        );
        assert_eq!(rho.entry(0, 0).re, 1.0);
        assert_abs_diff_eq!(rho.matrix().frobenius_sq(), 1.0);
    }

    #[test]
    fn partial_traces_match_reduced_state() {
        let psi = PureQubit::normalized(Complex::new(0.3, 0.4), Complex::new(-0.2, 0.7)).unwrap();
        let ov = BhOverlaps::new(0.15, 0.2).unwrap();
        let joint = joint_output_density(&psi, &ov);
        let closed = output_density_a(&psi, &ov);
        for side in [Subsystem::A, Subsystem::B] {
            assert!(
                partial_trace(&joint, side)
                    .matrix()
                    .max_abs_diff(closed.matrix())
                    < 1e-15
            );
        }
    }

    #[test]
    fn hs_norm_values() {
        for alpha in grid() {
            assert_abs_diff_eq!(
                hs_norm_a(alpha, &BhOverlaps::buzek_hillery()).unwrap(),
                1.0 / 18.0,
                epsilon = 1e-15
            );
            assert_abs_diff_eq!(
                hs_norm_a(alpha, &BhOverlaps::improved()).unwrap(),
                (3.0 - 2.0 * 2f64.sqrt()) / 4.0,
                epsilon = 1e-15
            );
            assert_eq!(
                hs_norm_a(alpha, &BhOverlaps::unchecked(0.0, 0.5)).unwrap(),
                0.0
            );
        }
        assert!(hs_norm_a(1.5, &BhOverlaps::<f64>::improved()).is_err());
    }

    #[test]
    fn hs_norm_agrees_with_matrix_route() {
        let ov = BhOverlaps::new(0.1, 0.25).unwrap();
        for alpha in grid() {
            let psi = PureQubit::real(alpha).unwrap();
            let direct = hs_distance(&psi.projector(), &output_density_a(&psi, &ov));
            assert_abs_diff_eq!(hs_norm_a(alpha, &ov).unwrap(), direct, epsilon = 1e-14);
        }
    }

    #[test]
    fn fidelity_values() {
        let improved = BhOverlaps::improved();
        let target = (0.5 + 1.0 / 8f64.sqrt()).sqrt();
        for alpha in grid() {
            let psi = PureQubit::real(alpha).unwrap();
            assert_abs_diff_eq!(
                fidelity_closed(&psi, &improved).unwrap(),
                target,
                epsilon = 1e-15
            );
            assert_abs_diff_eq!(
                fidelity_closed(&psi, &BhOverlaps::buzek_hillery()).unwrap(),
                (5.0f64 / 6.0).sqrt(),
                epsilon = 1e-15
            );
        }
        let psi = PureQubit::real(1.0).unwrap();
        assert_eq!(
            fidelity_closed(&psi, &BhOverlaps::new(0.0, 0.0).unwrap()).unwrap(),
            1.0
        );
    }

    #[test]
    fn fidelity_matches_density_route_when_feasible() {
        let ov = BhOverlaps::new(0.25, 1.0 / 8f64.sqrt()).unwrap();
        for alpha in grid() {
            let psi = PureQubit::real(alpha).unwrap();
            let matrix = fidelity(&psi.projector(), &output_density_a(&psi, &ov)).unwrap();
            assert_abs_diff_eq!(fidelity_closed(&psi, &ov).unwrap(), matrix, epsilon = 1e-14);
        }
    }

    #[test]
    fn joint_distance_constant_for_original_values() {
        let ov = BhOverlaps::<f64>::buzek_hillery();
        for alpha in grid() {
            let d = joint_hs_distance(&PureQubit::real(alpha).unwrap(), &ov);
            assert_abs_diff_eq!(d, 2.0 / 9.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn averaged_joint_distance() {
        let improved =
            avg_hs_norm_ab(&BhOverlaps::<f64>::improved(), QuadratureSpec::Gauss(64)).unwrap();
        assert_abs_diff_eq!(
            improved,
            37.0 / 15.0 - 8.0 * 2f64.sqrt() / 5.0,
            epsilon = 1e-12
        );
        let original = avg_hs_norm_ab(
            &BhOverlaps::<f64>::buzek_hillery(),
            QuadratureSpec::Gauss(8),
        )
        .unwrap();
        assert_abs_diff_eq!(original, 2.0 / 9.0, epsilon = 1e-14);
        // A = C = 0: D_ab = 1 + α⁴ + β⁴ − 2(α⁶ + β⁶), whose average is 8/15.
        let zero = BhOverlaps::new(0.0, 0.0).unwrap();
        let fine = avg_hs_norm_ab(&zero, QuadratureSpec::Gauss(64)).unwrap();
        assert_abs_diff_eq!(fine, 8.0 / 15.0, epsilon = 1e-13);
        let simpson = avg_hs_norm_ab(&zero, QuadratureSpec::Simpson(201)).unwrap();
        assert_abs_diff_eq!(simpson, fine, epsilon = 1e-9);
        assert!(avg_hs_norm_ab(&zero, QuadratureSpec::Gauss(1)).is_err());
    }

    #[test]
    fn printed_two_copy_polynomial_goes_negative() {
        let v = hs_norm_ab_as_printed(0.5f64.sqrt(), &BhOverlaps::buzek_hillery()).unwrap();
        assert_abs_diff_eq!(v, -5.0 / 18.0, epsilon = 1e-14);
    }

    #[test]
    fn csi_verdicts() {
        assert_eq!(
            joint_csi_feasible(&BhOverlaps::<f64>::buzek_hillery()),
            CsiVerdict::Feasible
        );
        assert_eq!(
            joint_csi_feasible(&BhOverlaps::<f64>::improved()),
            CsiVerdict::MarginalOnly
        );
        let edge = BhOverlaps::new(0.25, 1.0 / 8f64.sqrt()).unwrap();
        assert_eq!(joint_csi_feasible(&edge), CsiVerdict::Feasible);
        assert_eq!(
            joint_csi_feasible(&BhOverlaps::unchecked(0.0, 0.5)),
            CsiVerdict::Infeasible
        );
        assert!(BhOverlaps::new(0.0, 0.5).is_err());
        assert!(BhOverlaps::new(0.6, 0.0).is_err());
    }

    #[test]
    fn machine_realization() {
        let ov = BhOverlaps::<f64>::buzek_hillery();
        let Realization::Realized(m) = realize_machine_vectors(&ov) else {
            panic!("expected a realization");
        };
        assert_abs_diff_eq!(m.q0[0], (2.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(m.y0[1], (1.0f64 / 6.0).sqrt(), epsilon = 1e-15);
        assert!(m.isometry_residual() < 1e-12);
        assert!(m.gram_residual(&ov) < 1e-12);

        assert_eq!(
            realize_machine_vectors(&BhOverlaps::<f64>::improved()),
            Realization::Infeasible {
                verdict: CsiVerdict::MarginalOnly
            }
        );
        assert_eq!(
            realize_machine_vectors(&BhOverlaps::new(0.2, 0.1).unwrap()),
            Realization::NotTwoDimensional
        );

        let Realization::Realized(m) = realize_machine_vectors(&BhOverlaps::new(0.0, 0.0).unwrap())
        else {
            panic!("expected a realization");
        };
        assert_eq!(m.y0, [0.0, 0.0]);
        assert_eq!(m.y1, [0.0, 0.0]);
        assert!(m.isometry_residual() < 1e-15);
    }

    #[test]
    fn comparison_table() {
        let [bh, improved] = table1::<f64>(QuadratureSpec::default()).unwrap();
        assert_abs_diff_eq!(bh.hs_norm_a, 1.0 / 18.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bh.fidelity, (5.0f64 / 6.0).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(bh.avg_hs_norm_ab, 2.0 / 9.0, epsilon = 1e-13);
        assert_abs_diff_eq!(improved.hs_norm_a, 0.0429, epsilon = 5e-5);
        assert_abs_diff_eq!(improved.fidelity, 0.9239, epsilon = 5e-5);
        assert_abs_diff_eq!(improved.avg_hs_norm_ab, 0.2039, epsilon = 5e-5);
    }
}
