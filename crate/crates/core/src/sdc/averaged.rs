use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_with::serde_as;

use super::{entropy, fidelity, SdcOverlaps, SdcSubcase};
use crate::error::Result;
use crate::optimize::{
    classify_hessian, stationary_point, AffineForm, AlphaPoly, HessianClass, QuadraticObjective,
};
use crate::qmat::{LogBase, PureQubit};
use crate::quadrature::{average_over_alpha_try, QuadratureSpec};
use crate::scalar::{checked_sqrt, ratio, rational_to_real, Rational, RationalString, Real};

fn p(num: i64, m: u32, k: u32) -> AlphaPoly {
    AlphaPoly::term(num, 1, m, k)
}

/// `(ρ_id − ρ_a)₀₀` and `(ρ_id − ρ_a)₀₁` as affine forms in `(A, B, C)`
/// with coefficients polynomial in `α, β`:
/// `Δ₀₀ = 2α²A − 2β²B − 2αβC`, `Δ₀₁ = αβ − α²A − β²B`. `Δ₁₁ = −Δ₀₀`.
pub fn difference_forms() -> (AffineForm<AlphaPoly>, AffineForm<AlphaPoly>) {
    let d00 = AffineForm::new(
        vec![p(2, 2, 0), p(-2, 0, 2), p(-2, 1, 1)],
        AlphaPoly::zero(),
    );
    let d01 = AffineForm::new(
        vec![p(-1, 2, 0), p(-1, 0, 2), AlphaPoly::zero()],
        p(1, 1, 1),
    );
    (d00, d01)
}

/// `D_a = 2Δ₀₀² + 2Δ₀₁²` as a quadratic in `(A, B, C)`.
pub fn hs_norm_objective() -> QuadraticObjective<AlphaPoly> {
    let (d00, d01) = difference_forms();
    let two = AlphaPoly::constant(ratio(2, 1));
    d00.square().scale(&two) + d01.square().scale(&two)
}

/// `F² = ⟨ψ|ρ_a|ψ⟩ = α²ρ₀₀ + 2αβρ₀₁ + β²ρ₁₁`, affine in `(A, B, C)`.
pub fn fidelity_sq_form() -> AffineForm<AlphaPoly> {
    let rho00 = AffineForm::new(vec![p(-2, 2, 0), p(2, 0, 2), p(2, 1, 1)], p(1, 2, 0));
    let rho01 = AffineForm::new(
        vec![p(1, 2, 0), p(1, 0, 2), AlphaPoly::zero()],
        AlphaPoly::zero(),
    );
    let rho11 = AffineForm::new(vec![p(2, 2, 0), p(-2, 0, 2), p(-2, 1, 1)], p(1, 0, 2));
    rho00.scale(&p(1, 2, 0)) + rho01.scale(&p(2, 1, 1)) + rho11.scale(&p(1, 0, 2))
}

fn general_objective() -> &'static QuadraticObjective<Rational> {
    static CELL: OnceLock<QuadraticObjective<Rational>> = OnceLock::new();
    CELL.get_or_init(|| {
        hs_norm_objective()
            .try_map(AlphaPoly::average_rational)
            .expect("every D_a monomial has a rational average")
    })
}

fn general_fidelity_sq() -> &'static AffineForm<Rational> {
    static CELL: OnceLock<AffineForm<Rational>> = OnceLock::new();
    CELL.get_or_init(|| {
        fidelity_sq_form()
            .try_map(AlphaPoly::average_rational)
            .expect("every F² monomial has a rational average")
    })
}

fn embedding(subcase: SdcSubcase) -> Vec<Vec<Rational>> {
    subcase
        .embedding()
        .into_iter()
        .map(|row| row.into_iter().map(|x| ratio(x, 1)).collect())
        .collect()
}

fn origin() -> Vec<Rational> {
    vec![Rational::zero(); 3]
}

/// `D̄_a = ∫₀¹ D_a dα` in the free variables of `subcase`, with exact
/// rational coefficients.
pub fn averaged_hs_objective(subcase: SdcSubcase) -> QuadraticObjective<Rational> {
    general_objective().restrict(&embedding(subcase), &origin())
}

/// `∫₀¹ F² dα` in the free variables of `subcase`.
pub fn averaged_fidelity_sq(subcase: SdcSubcase) -> AffineForm<Rational> {
    general_fidelity_sq().restrict(&embedding(subcase), &origin())
}

/// Exact minimiser of `D̄_a` within a subcase. Rationals serialize as
/// `"num/den"` strings.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdcOptimum {
    pub subcase: SdcSubcase,
    /// Values of the free variables, in [`SdcSubcase::variables`] order.
    #[serde_as(as = "Vec<RationalString>")]
    pub point: Vec<Rational>,
    /// Full `(A, B, C)`.
    #[serde_as(as = "[RationalString; 3]")]
    pub overlaps: [Rational; 3],
    #[serde_as(as = "RationalString")]
    pub avg_hs_norm: Rational,
    /// `∫₀¹ F² dα` at the optimum.
    #[serde_as(as = "RationalString")]
    pub avg_fidelity_sq: Rational,
    pub hessian: HessianClass,
}

impl SdcOptimum {
    pub fn overlaps_real<T: Real>(&self) -> SdcOverlaps<T> {
        let [a, b, c] = &self.overlaps;
        SdcOverlaps::new(
            rational_to_real(a),
            rational_to_real(b),
            rational_to_real(c),
        )
        .expect("finite rationals")
    }
}

/// Solves `∇D̄_a = 0` by exact elimination.
pub fn exact_optimum(subcase: SdcSubcase) -> Result<SdcOptimum> {
    let objective = averaged_hs_objective(subcase);
    let point = stationary_point(&objective)?;
    let hessian = classify_hessian(&objective.hessian());
    let s = embedding(subcase);
    let overlaps: Vec<Rational> = s
        .iter()
        .map(|row| {
            row.iter()
                .zip(&point)
                .fold(Rational::zero(), |acc, (r, x)| acc + r * x)
        })
        .collect();
    let overlaps: [Rational; 3] = [
        overlaps[0].clone(),
        overlaps[1].clone(),
        overlaps[2].clone(),
    ];
    Ok(SdcOptimum {
        subcase,
        avg_hs_norm: objective.evaluate(&point),
        avg_fidelity_sq: general_fidelity_sq().evaluate(&overlaps),
        point,
        overlaps,
        hessian,
    })
}

/// Closed-form `D̄_a` at `ov`, which must satisfy the subcase relation.
pub fn avg_hs_norm<T: Real>(ov: &SdcOverlaps<T>, subcase: SdcSubcase) -> Result<T> {
    ov.check_subcase(subcase)?;
    Ok(general_objective()
        .map(rational_to_real::<T>)
        .evaluate(&ov.as_array()))
}

/// Exact `D̄_a` at rational overlaps.
pub fn avg_hs_norm_exact(overlaps: &[Rational; 3]) -> Rational {
    general_objective().evaluate(overlaps)
}

/// `F̄ = √(∫₀¹ F² dα) = [11/15 + 2A/15 − 2B/5 − 2C/15]^{1/2}`.
pub fn avg_fidelity<T: Real>(ov: &SdcOverlaps<T>) -> Result<T> {
    let f_sq = general_fidelity_sq()
        .map(rational_to_real::<T>)
        .evaluate(&ov.as_array());
    checked_sqrt(f_sq, "averaged fidelity")
}

/// Exact `∫₀¹ F² dα` at rational overlaps.
pub fn avg_fidelity_exact(overlaps: &[Rational; 3]) -> Rational {
    general_fidelity_sq().evaluate(overlaps)
}

/// `∫₀¹ F dα` by quadrature. Smaller than [`avg_fidelity`] by Jensen's
/// inequality.
pub fn avg_fidelity_literal<T: Real>(ov: &SdcOverlaps<T>, quad: QuadratureSpec) -> Result<T> {
    average_over_alpha_try(|alpha| fidelity(&PureQubit::real(alpha)?, ov), quad)
}

/// `S̄ = ∫₀¹ S(ρ_a(α)) dα` by quadrature.
pub fn avg_entropy<T: Real>(ov: &SdcOverlaps<T>, base: LogBase, quad: QuadratureSpec) -> Result<T> {
    average_over_alpha_try(|alpha| entropy(&PureQubit::real(alpha)?, ov, base), quad)
}
