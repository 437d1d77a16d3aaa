//! State-dependent 1→2 cloner with four machine states, every output
//! branch present:
//!
//! ```text
//! |0⟩|Q⟩ → |00⟩|Q₀⟩ + (|01⟩ + |10⟩ + |11⟩)|Y₀⟩
//! |1⟩|Q⟩ → |11⟩|Q₁⟩ + (|01⟩ + |10⟩ + |00⟩)|Y₁⟩
//! ```
//!
//! with `⟨Y₀|Y₀⟩ = A`, `⟨Y₁|Y₁⟩ = B`, `⟨Q₀|Q₀⟩ = 1 − 3A`, `⟨Q₁|Q₁⟩ = 1 − 3B`,
//! `⟨Y₁|Q₀⟩ = C = −⟨Y₀|Q₁⟩` and all remaining overlaps zero. Inputs are
//! real: `α|0⟩ + β|1⟩` with `α² + β² = 1`.

mod averaged;
mod feasibility;

pub use averaged::{
    averaged_fidelity_sq, averaged_hs_objective, avg_entropy, avg_fidelity, avg_fidelity_exact,
    avg_fidelity_literal, avg_hs_norm, avg_hs_norm_exact, difference_forms, exact_optimum,
    fidelity_sq_form, hs_norm_objective, SdcOptimum,
};
pub use feasibility::{
    csi_feasible, curve_sample, curve_values, feasibility_curves, feasibility_intervals,
    sample_alphas, CurveFeasibility, CurveSample, FeasibilityReport, SdcCsiReport,
};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machine::joint_from_gram;
use crate::qmat::{
    von_neumann_entropy, DensityMatrix, DensityMatrix2, DensityMatrix4, LogBase, Matrix, PureQubit,
};
use crate::scalar::{check_alpha, checked_sqrt, Real};

/// Machine overlaps `(A, B, C)`.
///
/// Any finite values are accepted; admissibility is reported by
/// [`csi_feasible`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdcOverlaps<T> {
    a: T,
    b: T,
    c: T,
}

impl<T: Real> SdcOverlaps<T> {
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        for (name, v) in [("A", a), ("B", b), ("C", c)] {
            if !v.is_finite() {
                return Err(Error::ParameterDomain {
                    name,
                    value: v.to_f64().unwrap_or(f64::NAN),
                    reason: "must be finite",
                });
            }
        }
        Ok(SdcOverlaps { a, b, c })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.a, self.b, self.c]
    }

    /// Gram matrix in the order `Q₀, Y₀, Q₁, Y₁`.
    pub fn gram(&self) -> [[T; 4]; 4] {
        let three = T::lit(3.0);
        let (a, b, c, z) = (self.a, self.b, self.c, T::zero());
        [
            [T::one() - three * a, z, z, c],
            [z, a, -c, z],
            [z, -c, T::one() - three * b, z],
            [c, z, z, b],
        ]
    }

    /// Checks the defining relation of `subcase` up to the validation
    /// tolerance.
    pub fn check_subcase(&self, subcase: SdcSubcase) -> Result<()> {
        let tol = T::validation_tol();
        let ok = match subcase {
            SdcSubcase::General => true,
            SdcSubcase::EqualAB => (self.a - self.b).abs() <= tol,
            SdcSubcase::ZeroC => self.c.abs() <= tol,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::SubcaseMismatch {
                subcase: subcase.name(),
            })
        }
    }
}

/// Restrictions of the overlap space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SdcSubcase {
    #[serde(rename = "general")]
    General,
    /// `B = A`, free `C`.
    #[serde(rename = "equalAB")]
    EqualAB,
    /// `C = 0`, free `A` and `B`.
    #[serde(rename = "zeroC")]
    ZeroC,
}

impl SdcSubcase {
    pub const ALL: [SdcSubcase; 3] = [SdcSubcase::General, SdcSubcase::EqualAB, SdcSubcase::ZeroC];

    pub fn name(self) -> &'static str {
        match self {
            SdcSubcase::General => "general",
            SdcSubcase::EqualAB => "equalAB",
            SdcSubcase::ZeroC => "zeroC",
        }
    }

    /// Names of the free variables.
    pub fn variables(self) -> &'static [&'static str] {
        match self {
            SdcSubcase::General => &["A", "B", "C"],
            SdcSubcase::EqualAB => &["A", "C"],
            SdcSubcase::ZeroC => &["A", "B"],
        }
    }

    /// Matrix `S` with `(A, B, C) = S · free`.
    pub fn embedding(self) -> Vec<Vec<i64>> {
        match self {
            SdcSubcase::General => vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            SdcSubcase::EqualAB => vec![vec![1, 0], vec![1, 0], vec![0, 1]],
            SdcSubcase::ZeroC => vec![vec![1, 0], vec![0, 1], vec![0, 0]],
        }
    }
}

impl fmt::Display for SdcSubcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SdcSubcase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s
            .trim()
            .to_ascii_lowercase()
            .replace(['-', '_'], "")
            .as_str()
        {
            "general" => Ok(SdcSubcase::General),
            "equalab" => Ok(SdcSubcase::EqualAB),
            "zeroc" => Ok(SdcSubcase::ZeroC),
            _ => Err(Error::UnknownLabel {
                name: "subcase",
                value: s.to_string(),
                expected: "general, equalAB or zeroC",
            }),
        }
    }
}

fn real_input<T: Real>(psi: &PureQubit<T>) -> Result<(T, T)> {
    psi.real_amplitudes()
}

/// Two-copy output state with the machine traced out.
pub fn joint_output_density<T: Real>(
    psi: &PureQubit<T>,
    ov: &SdcOverlaps<T>,
) -> Result<DensityMatrix4<T>> {
    let (alpha, beta) = real_input(psi)?;
    let c = |x: T| Complex::new(x, T::zero());
    let (al, be, z) = (c(alpha), c(beta), c(T::zero()));
    let coef = [
        [al, z, z, be],
        [z, al, z, be],
        [z, al, z, be],
        [z, al, be, z],
    ];
    Ok(DensityMatrix::assume_valid(joint_from_gram(
        &coef,
        &ov.gram(),
    )))
}

/// Reduced state of either copy:
/// `ρ₀₀ = α²(1−2A) + 2αβC + 2β²B`, `ρ₀₁ = α²A + β²B`,
/// `ρ₁₁ = β² + 2α²A − 2αβC − 2β²B`.
pub fn output_density_a<T: Real>(
    psi: &PureQubit<T>,
    ov: &SdcOverlaps<T>,
) -> Result<DensityMatrix2<T>> {
    let (alpha, beta) = real_input(psi)?;
    let two = T::lit(2.0);
    let (a2, b2, ab) = (alpha * alpha, beta * beta, alpha * beta);
    let r00 = a2 * (T::one() - two * ov.a) + two * ab * ov.c + two * b2 * ov.b;
    let r01 = a2 * ov.a + b2 * ov.b;
    let r11 = b2 + two * a2 * ov.a - two * ab * ov.c - two * b2 * ov.b;
    let z = T::zero();
    Ok(DensityMatrix::assume_valid(Matrix([
        [Complex::new(r00, z), Complex::new(r01, z)],
        [Complex::new(r01, z), Complex::new(r11, z)],
    ])))
}

/// `D_a = 2[5α⁴A² + 5β⁴B² + α²β²(1 + 4C² − 6AB) − 2α³βA(1 + 4C) − 2αβ³B(1 − 4C)]`.
pub fn hs_norm_a<T: Real>(alpha: T, ov: &SdcOverlaps<T>) -> Result<T> {
    check_alpha(alpha)?;
    let beta = (T::one() - alpha * alpha).max(T::zero()).sqrt();
    let (a, b, c) = (ov.a, ov.b, ov.c);
    let (one, two, four, five, six) =
        (T::one(), T::lit(2.0), T::lit(4.0), T::lit(5.0), T::lit(6.0));
    let (a2, b2) = (alpha * alpha, beta * beta);
    Ok(two
        * (five * a2 * a2 * a * a
            + five * b2 * b2 * b * b
            + a2 * b2 * (one + four * c * c - six * a * b)
            - two * a2 * alpha * beta * a * (one + four * c)
            - two * alpha * beta * b2 * b * (one - four * c)))
}

/// Second derivatives of `D_a` in `(A, B, C)`.
pub fn hessian_da<T: Real>(alpha: T) -> Result<[[T; 3]; 3]> {
    check_alpha(alpha)?;
    let beta = (T::one() - alpha * alpha).max(T::zero()).sqrt();
    let (a2, b2, ab) = (alpha * alpha, beta * beta, alpha * beta);
    let (twelve, sixteen, twenty) = (T::lit(12.0), T::lit(16.0), T::lit(20.0));
    let h_ab = -twelve * a2 * b2;
    let h_ac = -sixteen * a2 * ab;
    let h_bc = sixteen * ab * b2;
    Ok([
        [twenty * a2 * a2, h_ab, h_ac],
        [h_ab, twenty * b2 * b2, h_bc],
        [h_ac, h_bc, sixteen * a2 * b2],
    ])
}

/// `F = [(1−2A)α⁴ + 2(A+C)α³β + 2(A+B)α²β² + 2(B−C)αβ³ + (1−2B)β⁴]^{1/2}`.
pub fn fidelity<T: Real>(psi: &PureQubit<T>, ov: &SdcOverlaps<T>) -> Result<T> {
    let (alpha, beta) = real_input(psi)?;
    let (one, two) = (T::one(), T::lit(2.0));
    let (a, b, c) = (ov.a, ov.b, ov.c);
    let (a2, b2) = (alpha * alpha, beta * beta);
    let f_sq = (one - two * a) * a2 * a2
        + two * (a + c) * a2 * alpha * beta
        + two * (a + b) * a2 * b2
        + two * (b - c) * alpha * beta * b2
        + (one - two * b) * b2 * b2;
    checked_sqrt(f_sq, "sdc fidelity")
}

fn k_radicand<T: Real>(alpha: T, beta: T, ov: &SdcOverlaps<T>, as_printed: bool) -> T {
    let (a, b, c) = (ov.a, ov.b, ov.c);
    let lit = T::lit;
    let one = T::one();
    let (a2, b2, ab) = (alpha * alpha, beta * beta, alpha * beta);
    let a_sq_term = if as_printed {
        -lit(20.0) * a2 * a * a
    } else {
        lit(20.0) * a2 * a2 * a * a
    };
    one + lit(8.0) * ab * c
        + (lit(8.0) * b - lit(4.0) + lit(16.0) * c * c) * b2
        + lit(16.0) * (lit(2.0) * b - one) * c * ab * b2
        + lit(4.0) * (one - lit(4.0) * b + lit(5.0) * b * b - lit(4.0) * c * c) * b2 * b2
        + a_sq_term
        - lit(8.0) * a2 * a * (one + lit(4.0) * c * ab + (lit(3.0) * b - lit(2.0)) * b2)
}

/// Eigenvalue gap `K` of the reduced state, `λ± = (1 ± K)/2`:
///
/// `K² = 1 + 8αβC + (8B − 4 + 16C²)β² + 16(2B − 1)Cαβ³
///       + 4(1 − 4B + 5B² − 4C²)β⁴ + 20α⁴A² − 8α²A(1 + 4Cαβ + (3B − 2)β²)`.
pub fn entropy_k<T: Real>(psi: &PureQubit<T>, ov: &SdcOverlaps<T>) -> Result<T> {
    let (alpha, beta) = real_input(psi)?;
    checked_sqrt(k_radicand(alpha, beta, ov, false), "entropy gap K")
}

/// `K` with the `A²` term written as `−20α²A²`. It disagrees with the
/// spectral gap by `20A²α²(1 + α²)` under the root and is kept only for
/// comparison.
pub fn entropy_k_as_printed<T: Real>(psi: &PureQubit<T>, ov: &SdcOverlaps<T>) -> Result<T> {
    let (alpha, beta) = real_input(psi)?;
    checked_sqrt(k_radicand(alpha, beta, ov, true), "printed entropy gap K")
}

/// `−Σ λ log λ` with `λ± = (1 ± K)/2`.
pub fn entropy_from_gap<T: Real>(k: T, base: LogBase) -> Result<T> {
    let half = T::lit(0.5);
    let rho = DensityMatrix::assume_valid(Matrix::from_real([
        [half * (T::one() + k), T::zero()],
        [T::zero(), half * (T::one() - k)],
    ]));
    von_neumann_entropy(&rho, base)
}

/// Entropy of the reduced state computed from its eigenvalues.
pub fn entropy<T: Real>(psi: &PureQubit<T>, ov: &SdcOverlaps<T>, base: LogBase) -> Result<T> {
    von_neumann_entropy(&output_density_a(psi, ov)?, base)
}
