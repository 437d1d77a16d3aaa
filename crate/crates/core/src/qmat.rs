//! Dense complex 2x2 / 4x4 operator arithmetic and the scalar figures of
//! merit used to compare an ideal state against a cloner's output:
//! fidelity, Hilbert-Schmidt distance and von Neumann entropy.
//!
//! Two-qubit operators use the basis order `|00⟩, |01⟩, |10⟩, |11⟩`, with the
//! first factor being subsystem `a` (the original) and the second `b` (the
//! copy).

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::symmetric_eigen;
use crate::scalar::Real;

/// Square complex matrix of fixed size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<T, const N: usize>(pub [[Complex<T>; N]; N]);

pub type Matrix2<T> = Matrix<T, 2>;
pub type Matrix4<T> = Matrix<T, 4>;

impl<T: Real, const N: usize> Matrix<T, N> {
    pub fn zero() -> Self {
        Matrix([[Complex::new(T::zero(), T::zero()); N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_real(rows: [[T; N]; N]) -> Self {
        let mut m = Self::zero();
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m.0[i][j] = Complex::new(*x, T::zero());
            }
        }
        m
    }

    pub fn diagonal(diag: [T; N]) -> Self {
        let mut m = Self::zero();
        for (i, x) in diag.iter().enumerate() {
            m.0[i][i] = Complex::new(*x, T::zero());
        }
        m
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &[Complex<T>; N]) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex<T> {
        (0..N).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
            acc + self.0[i][i]
        })
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn scale(&self, k: T) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x = x.scale(k));
        m
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_residual(&self) -> T {
        let mut worst = T::zero();
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).norm()))
    }

    /// `Σ |m_ij|²`, i.e. `Tr(M† M)`.
    pub fn frobenius_sq(&self) -> T {
        self.0
            .iter()
            .flatten()
            .fold(T::zero(), |acc, x| acc + x.norm_sqr())
    }

    /// Eigenvalues (ascending) of a Hermitian matrix, via the real 2N x 2N
    /// embedding `[[Re, -Im], [Im, Re]]` whose spectrum is the original one
    /// with every eigenvalue doubled.
    pub fn hermitian_eigenvalues(&self) -> Vec<T> {
        let n2 = 2 * N;
        let mut emb = vec![vec![T::zero(); n2]; n2];
        for i in 0..N {
            for j in 0..N {
                let z = self.0[i][j];
                emb[i][j] = z.re;
                emb[i + N][j + N] = z.re;
                emb[i][j + N] = -z.im;
                emb[i + N][j] = z.im;
            }
        }
        let eig = symmetric_eigen(&emb);
        eig.values
            .chunks(2)
            .map(|pair| (pair[0] + pair[1]) / T::lit(2.0))
            .collect()
    }
}

impl<T, const N: usize> Index<(usize, usize)> for Matrix<T, N> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.0[i][j]
    }
}

impl<T, const N: usize> IndexMut<(usize, usize)> for Matrix<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.0[i][j]
    }
}

impl<T: Real, const N: usize> Add for Matrix<T, N> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = m.0[i][j] + rhs.0[i][j];
            }
        }
        m
    }
}

impl<T: Real, const N: usize> Sub for Matrix<T, N> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = m.0[i][j] - rhs.0[i][j];
            }
        }
        m
    }
}

impl<T: Real, const N: usize> Mul for Matrix<T, N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = (0..N).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                    acc + self.0[i][k] * rhs.0[k][j]
                });
            }
        }
        m
    }
}

/// Tensor product of two single-qubit operators.
pub fn kron<T: Real>(a: &Matrix2<T>, b: &Matrix2<T>) -> Matrix4<T> {
    let mut m = Matrix4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}

/// Normalised single-qubit pure state `α|0⟩ + β|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureQubit<T> {
    alpha: Complex<T>,
    beta: Complex<T>,
}

impl<T: Real> PureQubit<T> {
    /// Rejects amplitudes whose squared norms do not sum to one.
    pub fn new(alpha: Complex<T>, beta: Complex<T>) -> Result<Self> {
        let parts = [alpha.re, alpha.im, beta.re, beta.im];
        if parts.iter().any(|x| !x.is_finite()) {
            return Err(Error::ParameterDomain {
                name: "amplitude",
                value: f64::NAN,
                reason: "non-finite component",
            });
        }
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - T::one()).abs() > T::validation_tol() {
            return Err(Error::NotNormalized {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(PureQubit { alpha, beta })
    }

    /// Rescales the amplitudes to unit norm.
    pub fn normalized(alpha: Complex<T>, beta: Complex<T>) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::NotNormalized {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Self::new(alpha / norm, beta / norm)
    }

    /// Real state with `β = +√(1 − α²)`.
    pub fn real(alpha: T) -> Result<Self> {
        if !(alpha.abs() <= T::one()) {
            return Err(Error::ParameterDomain {
                name: "alpha",
                value: alpha.to_f64().unwrap_or(f64::NAN),
                reason: "|alpha| must not exceed 1",
            });
        }
        let beta = (T::one() - alpha * alpha).max(T::zero()).sqrt();
        Self::new(
            Complex::new(alpha, T::zero()),
            Complex::new(beta, T::zero()),
        )
    }

    pub fn from_real(alpha: T, beta: T) -> Result<Self> {
        Self::new(
            Complex::new(alpha, T::zero()),
            Complex::new(beta, T::zero()),
        )
    }

    pub fn alpha(&self) -> Complex<T> {
        self.alpha
    }

    pub fn beta(&self) -> Complex<T> {
        self.beta
    }

    /// `(α, β)` when both amplitudes are real.
    pub fn real_amplitudes(&self) -> Result<(T, T)> {
        if self.alpha.im.abs() > T::validation_tol() || self.beta.im.abs() > T::validation_tol() {
            return Err(Error::ComplexAmplitude);
        }
        Ok((self.alpha.re, self.beta.re))
    }

    pub fn ket(&self) -> [Complex<T>; 2] {
        [self.alpha, self.beta]
    }

    /// `|ψ⟩ ⊗ |ψ⟩`, the ideal two-copy state.
    pub fn doubled(&self) -> [Complex<T>; 4] {
        let k = self.ket();
        [k[0] * k[0], k[0] * k[1], k[1] * k[0], k[1] * k[1]]
    }

    /// `|α|² |β|²`.
    pub fn weight_product(&self) -> T {
        self.alpha.norm_sqr() * self.beta.norm_sqr()
    }

    pub fn projector(&self) -> DensityMatrix2<T> {
        DensityMatrix::from_pure(&self.ket())
    }
}

/// Hermitian, unit-trace operator.
///
/// Positivity is *not* enforced at construction: machine overlaps that
/// violate the Gram condition produce operators with negative eigenvalues,
/// and those still need to be compared entrywise. Use
/// [`DensityMatrix::ensure_positive`] where a physical state is required.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix<T, const N: usize> {
    m: Matrix<T, N>,
}

pub type DensityMatrix2<T> = DensityMatrix<T, 2>;
pub type DensityMatrix4<T> = DensityMatrix<T, 4>;

impl<T: Real, const N: usize> DensityMatrix<T, N> {
    pub fn new(m: Matrix<T, N>) -> Result<Self> {
        let residual = m.hermiticity_residual();
        if !(residual <= T::validation_tol()) {
            return Err(Error::NotHermitian {
                residual: residual.to_f64().unwrap_or(f64::NAN),
            });
        }
        let trace = m.trace();
        if !((trace.re - T::one()).abs() <= T::validation_tol()) {
            return Err(Error::TraceNotOne {
                trace: trace.re.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(DensityMatrix { m })
    }

    /// Wraps a matrix that is Hermitian with unit trace by construction.
    pub(crate) fn assume_valid(m: Matrix<T, N>) -> Self {
        debug_assert!(m.hermiticity_residual() <= T::lit(1e-6));
        DensityMatrix { m }
    }

    /// `|v⟩⟨v|` for a normalised vector.
    pub fn from_pure(v: &[Complex<T>; N]) -> Self {
        DensityMatrix {
            m: Matrix::outer(v),
        }
    }

    /// Maximally mixed state `I / N`.
    pub fn maximally_mixed() -> Self {
        DensityMatrix {
            m: Matrix::identity().scale(T::one() / T::from_usize(N).unwrap()),
        }
    }

    pub fn matrix(&self) -> &Matrix<T, N> {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.m.0[i][j]
    }

    pub fn trace(&self) -> T {
        self.m.trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        if N == 2 {
            let (lo, hi) = eigenvalues_2x2(&self.m.0[0][0].re, &self.m.0[1][1].re, &self.m.0[0][1]);
            vec![lo, hi]
        } else {
            self.m.hermitian_eigenvalues()
        }
    }

    pub fn min_eigenvalue(&self) -> T {
        self.eigenvalues()[0]
    }

    pub fn is_positive(&self) -> bool {
        self.min_eigenvalue() >= T::eigen_floor()
    }

    pub fn ensure_positive(&self) -> Result<()> {
        let min = self.min_eigenvalue();
        if min < T::eigen_floor() {
            Err(Error::NegativeEigenvalue {
                eigenvalue: min.to_f64().unwrap_or(f64::NAN),
            })
        } else {
            Ok(())
        }
    }
}

/// Eigenvalues `(low, high)` of the Hermitian 2x2 matrix `[[a, b], [b*, d]]`.
fn eigenvalues_2x2<T: Real>(a: &T, d: &T, b: &Complex<T>) -> (T, T) {
    let two = T::lit(2.0);
    let mean = (*a + *d) / two;
    let half_gap = (((*a - *d) / two).powi(2) + b.norm_sqr()).sqrt();
    (mean - half_gap, mean + half_gap)
}

impl<T: Real> DensityMatrix2<T> {
    /// Spectral gap `λ₊ − λ₋ = √((ρ₀₀ − ρ₁₁)² + 4|ρ₀₁|²)`.
    pub fn spectral_gap(&self) -> T {
        let (lo, hi) = eigenvalues_2x2(&self.m.0[0][0].re, &self.m.0[1][1].re, &self.m.0[0][1]);
        hi - lo
    }
}

/// Which factor of a two-qubit operator to trace out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// Reduced state after tracing out `traced`.
pub fn partial_trace<T: Real>(rho: &DensityMatrix4<T>, traced: Subsystem) -> DensityMatrix2<T> {
    let mut out = Matrix2::zero();
    for i in 0..2 {
        for j in 0..2 {
            out.0[i][j] = (0..2).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                acc + match traced {
                    Subsystem::B => rho.m.0[2 * i + k][2 * j + k],
                    Subsystem::A => rho.m.0[2 * k + i][2 * k + j],
                }
            });
        }
    }
    DensityMatrix { m: out }
}

/// Positive square root of a positive-semidefinite Hermitian 2x2 matrix.
///
/// Uses `√M = (M + sI) / t` with `s = √det M` and `t = √(Tr M + 2s)`,
/// falling back to an eigendecomposition when `t` vanishes.
pub fn sqrt_2x2<T: Real>(m: &Matrix2<T>) -> Result<Matrix2<T>> {
    let (a, d, b) = (m.0[0][0].re, m.0[1][1].re, m.0[0][1]);
    let (lo, _) = eigenvalues_2x2(&a, &d, &b);
    if lo < T::eigen_floor() {
        return Err(Error::NegativeEigenvalue {
            eigenvalue: lo.to_f64().unwrap_or(f64::NAN),
        });
    }
    let s = hermitian_det_2x2(&a, &d, &b).sqrt();
    let t_sq = a + d + T::lit(2.0) * s;
    if t_sq > T::epsilon() {
        let t = t_sq.sqrt();
        return Ok((*m + Matrix2::identity().scale(s)).scale(T::one() / t));
    }
    Ok(sqrt_2x2_spectral(&a, &d, &b))
}

fn sqrt_2x2_spectral<T: Real>(a: &T, d: &T, b: &Complex<T>) -> Matrix2<T> {
    let (lo, hi) = eigenvalues_2x2(a, d, b);
    let zero = Complex::new(T::zero(), T::zero());
    // Eigenvector of `hi`: (b, hi - a) or, if b vanishes, the larger diagonal axis.
    let v_hi = if b.norm() > T::epsilon() {
        let v = [*b, Complex::new(hi - *a, T::zero())];
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / n, v[1] / n]
    } else if *a >= *d {
        [Complex::new(T::one(), T::zero()), zero]
    } else {
        [zero, Complex::new(T::one(), T::zero())]
    };
    let v_lo = [-v_hi[1].conj(), v_hi[0].conj()];
    Matrix2::outer(&v_hi).scale(hi.max(T::zero()).sqrt())
        + Matrix2::outer(&v_lo).scale(lo.max(T::zero()).sqrt())
}

/// Determinant of a Hermitian 2×2 matrix, with values inside the rounding
/// noise of `ad − |b|²` flushed to zero.
fn hermitian_det_2x2<T: Real>(a: &T, d: &T, b: &Complex<T>) -> T {
    let (ad, bb) = (*a * *d, b.norm_sqr());
    let det = ad - bb;
    let noise = T::lit(4.0) * T::epsilon() * (ad.abs() + bb);
    if det <= noise {
        T::zero()
    } else {
        det
    }
}

/// Root fidelity `Tr √(√ρ σ √ρ)`.
///
/// Evaluated through the qubit identity `F² = Tr ρσ + 2√(det ρ · det σ)`.
pub fn fidelity<T: Real>(rho_id: &DensityMatrix2<T>, rho_out: &DensityMatrix2<T>) -> Result<T> {
    rho_id.ensure_positive()?;
    rho_out.ensure_positive()?;
    let (p, q) = (&rho_id.m.0, &rho_out.m.0);
    let overlap = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .fold(T::zero(), |acc, (i, j)| acc + (p[i][j] * q[j][i]).re);
    let dp = hermitian_det_2x2(&p[0][0].re, &p[1][1].re, &p[0][1]);
    let dq = hermitian_det_2x2(&q[0][0].re, &q[1][1].re, &q[0][1]);
    let f_sq = overlap + T::lit(2.0) * (dp * dq).sqrt();
    Ok(f_sq.max(T::zero()).sqrt().min(T::one()))
}

/// Squared Hilbert-Schmidt distance `Tr (ρ₁ − ρ₂)²`.
pub fn hs_distance<T: Real, const N: usize>(
    rho1: &DensityMatrix<T, N>,
    rho2: &DensityMatrix<T, N>,
) -> T {
    (rho1.m - rho2.m).frobenius_sq()
}

/// Logarithm base for entropies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    /// Bits.
    #[default]
    Two,
    /// Nats.
    E,
}

impl LogBase {
    fn ln_base<T: Real>(self) -> T {
        match self {
            LogBase::Two => T::LN_2(),
            LogBase::E => T::one(),
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "2" => Ok(LogBase::Two),
            "e" => Ok(LogBase::E),
            other => Err(format!("unknown entropy base `{other}` (expected 2 or e)")),
        }
    }
}

impl std::fmt::Display for LogBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LogBase::Two => "2",
            LogBase::E => "e",
        })
    }
}

/// `−Σ λ log λ` with `0 log 0 = 0`. Eigenvalues in `[floor, 0)` are clipped.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix2<T>, base: LogBase) -> Result<T> {
    rho.ensure_positive()?;
    let clipped: Vec<T> = rho
        .eigenvalues()
        .into_iter()
        .map(|l| l.max(T::zero()))
        .collect();
    let total = clipped.iter().fold(T::zero(), |acc, l| acc + *l);
    let s = clipped
        .into_iter()
        .map(|l| l / total)
        .filter(|l| *l > T::zero())
        .fold(T::zero(), |acc, l| acc - l * l.ln());
    Ok(s / base.ln_base::<T>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn ket0() -> DensityMatrix2<f64> {
        PureQubit::from_real(1.0, 0.0).unwrap().projector()
    }

    fn ket1() -> DensityMatrix2<f64> {
        PureQubit::from_real(0.0, 1.0).unwrap().projector()
    }

    #[test]
    fn bell_state_reduces_to_maximally_mixed() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = DensityMatrix4::from_pure(&[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]);
        for side in [Subsystem::A, Subsystem::B] {
            let r = partial_trace(&bell, side);
            assert!(
                r.matrix()
                    .max_abs_diff(DensityMatrix2::maximally_mixed().matrix())
                    < 1e-15
            );
        }
    }

    #[test]
    fn product_state_partial_trace_recovers_factors() {
        let rho = PureQubit::new(c(0.6, 0.0), c(0.0, 0.8))
            .unwrap()
            .projector();
        let sigma = DensityMatrix2::new(Matrix2::from_real([[0.7, 0.1], [0.1, 0.3]])).unwrap();
        let joint = DensityMatrix4::new(kron(rho.matrix(), sigma.matrix())).unwrap();
        assert!(
            partial_trace(&joint, Subsystem::B)
                .matrix()
                .max_abs_diff(rho.matrix())
                < 1e-15
        );
        assert!(
            partial_trace(&joint, Subsystem::A)
                .matrix()
                .max_abs_diff(sigma.matrix())
                < 1e-15
        );
    }

    #[test]
    fn sqrt_examples() {
        let id = Matrix2::<f64>::identity();
        assert!(sqrt_2x2(&id).unwrap().max_abs_diff(&id) < 1e-15);

        let d = sqrt_2x2(&Matrix2::diagonal([4.0, 9.0])).unwrap();
        assert!(d.max_abs_diff(&Matrix2::diagonal([2.0, 3.0])) < 1e-15);

        // Eigen-decomposition oracle: eigenvalues 1 and 3 along (1,-1)/√2, (1,1)/√2.
        let r3 = 3f64.sqrt();
        let expected = Matrix2::from_real([
            [(r3 + 1.0) / 2.0, (r3 - 1.0) / 2.0],
            [(r3 - 1.0) / 2.0, (r3 + 1.0) / 2.0],
        ]);
        let got = sqrt_2x2(&Matrix2::from_real([[2.0, 1.0], [1.0, 2.0]])).unwrap();
        assert!(got.max_abs_diff(&expected) < 1e-14);
        assert_abs_diff_eq!(got[(0, 0)].re, 1.3660254037844386, epsilon = 1e-12);
    }

    #[test]
    fn sqrt_degenerate_and_rank_one() {
        let zero = Matrix2::<f64>::zero();
        assert!(sqrt_2x2(&zero).unwrap().max_abs_diff(&zero) < 1e-15);
        let p = PureQubit::new(c(0.6, 0.0), c(0.0, 0.8))
            .unwrap()
            .projector();
        let r = sqrt_2x2(p.matrix()).unwrap();
        assert!((r * r).max_abs_diff(p.matrix()) < 1e-14);
    }

    #[test]
    fn sqrt_rejects_negative_input() {
        let m = Matrix2::from_real([[1.0, 0.0], [0.0, -0.5]]);
        assert!(matches!(
            sqrt_2x2(&m),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn fidelity_examples() {
        let mixed = DensityMatrix2::maximally_mixed();
        assert_abs_diff_eq!(fidelity(&mixed, &mixed).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(fidelity(&ket0(), &ket0()).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(fidelity(&ket0(), &ket1()).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            fidelity(&ket0(), &mixed).unwrap(),
            0.5f64.sqrt(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn fidelity_rejects_invalid_state() {
        let bad = DensityMatrix2::new(Matrix2::from_real([[1.2, 0.0], [0.0, -0.2]])).unwrap();
        assert!(matches!(
            fidelity(&ket0(), &bad),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn hs_distance_examples() {
        let mixed = DensityMatrix2::maximally_mixed();
        assert_eq!(hs_distance(&ket0(), &ket0()), 0.0);
        assert_abs_diff_eq!(hs_distance(&ket0(), &ket1()), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(hs_distance(&ket0(), &mixed), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(von_neumann_entropy(&ket0(), LogBase::Two).unwrap(), 0.0);
        let mixed = DensityMatrix2::<f64>::maximally_mixed();
        assert_abs_diff_eq!(
            von_neumann_entropy(&mixed, LogBase::Two).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            von_neumann_entropy(&mixed, LogBase::E).unwrap(),
            std::f64::consts::LN_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn entropy_of_known_mixed_output() {
        // [[33, 13], [13, 26]] / 59: eigenvalues (1 ± √725/59) / 2.
        let rho =
            DensityMatrix2::new(Matrix2::from_real([[33.0, 13.0], [13.0, 26.0]]).scale(1.0 / 59.0))
                .unwrap();
        let gap = 725f64.sqrt() / 59.0;
        let (l1, l2) = ((1.0 + gap) / 2.0, (1.0 - gap) / 2.0);
        assert_abs_diff_eq!(l1, 0.72818, epsilon = 1e-5);
        assert_abs_diff_eq!(l2, 0.27182, epsilon = 1e-5);
        let oracle = -(l1 * l1.log2() + l2 * l2.log2());
        let s = von_neumann_entropy(&rho, LogBase::Two).unwrap();
        assert_abs_diff_eq!(s, oracle, epsilon = 1e-14);
        assert_abs_diff_eq!(s, 0.84404, epsilon = 1e-4);
        assert_abs_diff_eq!(rho.spectral_gap(), gap, epsilon = 1e-15);
    }

    #[test]
    fn entropy_clips_tiny_negative_eigenvalue() {
        let rho =
            DensityMatrix2::new(Matrix2::from_real([[1.0 + 1e-12, 0.0], [0.0, -1e-12]])).unwrap();
        assert_eq!(von_neumann_entropy(&rho, LogBase::Two).unwrap(), 0.0);
        let bad = DensityMatrix2::new(Matrix2::from_real([[1.001, 0.0], [0.0, -0.001]])).unwrap();
        assert!(von_neumann_entropy(&bad, LogBase::Two).is_err());
    }

    #[test]
    fn constructors_validate() {
        assert!(matches!(
            PureQubit::new(c(1.0, 0.0), c(0.1, 0.0)),
            Err(Error::NotNormalized { .. })
        ));
        let q = PureQubit::normalized(c(3.0, 0.0), c(0.0, 4.0)).unwrap();
        assert_abs_diff_eq!(q.beta().im, 0.8, epsilon = 1e-15);
        assert!(PureQubit::real(1.5).is_err());
        assert!(matches!(
            DensityMatrix2::new(Matrix2::from_real([[0.5, 0.1], [0.2, 0.5]])),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            DensityMatrix2::new(Matrix2::from_real([[0.5, 0.0], [0.0, 0.6]])),
            Err(Error::TraceNotOne { .. })
        ));
    }

    #[test]
    fn four_by_four_eigenvalues_match_product_spectrum() {
        let a = Matrix2::from_real([[0.7, 0.2], [0.2, 0.3]]);
        let b = Matrix2::diagonal([0.9, 0.1]);
        let rho = DensityMatrix4::new(kron(&a, &b)).unwrap();
        let ea = DensityMatrix2::new(a).unwrap().eigenvalues();
        let mut expected: Vec<f64> = ea.iter().flat_map(|x| [x * 0.9, x * 0.1]).collect();
        expected.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (g, e) in rho.eigenvalues().iter().zip(&expected) {
            assert_abs_diff_eq!(g, e, epsilon = 1e-13);
        }
    }

    #[test]
    fn works_in_single_precision() {
        let rho = DensityMatrix2::<f32>::maximally_mixed();
        let pure = PureQubit::<f32>::real(1.0).unwrap().projector();
        assert!((fidelity(&pure, &rho).unwrap() - 0.5f32.sqrt()).abs() < 1e-6);
        assert!((von_neumann_entropy(&rho, LogBase::Two).unwrap() - 1.0).abs() < 1e-6);
    }

    fn psd_2x2() -> impl Strategy<Value = Matrix2<f64>> {
        (
            -1.0..1.0f64,
            -1.0..1.0f64,
            -1.0..1.0f64,
            -1.0..1.0f64,
            -1.0..1.0f64,
            -1.0..1.0f64,
            -1.0..1.0f64,
            -1.0..1.0f64,
        )
            .prop_map(|(a, b, c_, d, e, f, g, h)| {
                let x = Matrix([[c(a, b), c(c_, d)], [c(e, f), c(g, h)]]);
                x.adjoint() * x
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn sqrt_squares_back(m in psd_2x2()) {
            let r = sqrt_2x2(&m).unwrap();
            prop_assert!((r * r).max_abs_diff(&m) < 1e-10);
            prop_assert!(r.hermitian_eigenvalues()[0] > -1e-10);
        }

        #[test]
        fn pure_fidelity_matches_overlap(
            theta in 0.0..std::f64::consts::PI,
            phi in 0.0..std::f64::consts::TAU,
            m in psd_2x2(),
        ) {
            let tr = m.trace().re;
            prop_assume!(tr > 1e-3);
            let sigma = DensityMatrix2::new(m.scale(1.0 / tr)).unwrap();
            let psi = PureQubit::new(
                c((theta / 2.0).cos(), 0.0),
                Complex::from_polar((theta / 2.0).sin(), phi),
            ).unwrap();
            let k = psi.ket();
            let overlap = (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .fold(c(0.0, 0.0), |acc, (i, j)| acc + k[i].conj() * sigma.entry(i, j) * k[j]);
            let f = fidelity(&psi.projector(), &sigma).unwrap();
            prop_assert!((f - overlap.re.sqrt()).abs() < 1e-12);
        }

        #[test]
        fn entropy_bits_within_unit_interval(m in psd_2x2()) {
            let tr = m.trace().re;
            prop_assume!(tr > 1e-6);
            let rho = DensityMatrix2::new(m.scale(1.0 / tr)).unwrap();
            let s = von_neumann_entropy(&rho, LogBase::Two).unwrap();
            prop_assert!((0.0..=1.0 + 1e-12).contains(&s));
        }

        #[test]
        fn partial_traces_stay_physical(
            re in proptest::array::uniform4(-1.0..1.0f64),
            im in proptest::array::uniform4(-1.0..1.0f64),
            re2 in proptest::array::uniform4(-1.0..1.0f64),
            w in 0.0..1.0f64,
        ) {
            let mk = |r: [f64; 4], i: [f64; 4]| {
                let v: Vec<Complex<f64>> = r.iter().zip(&i).map(|(a, b)| c(*a, *b)).collect();
                let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                [v[0] / n, v[1] / n, v[2] / n, v[3] / n]
            };
            prop_assume!(re.iter().chain(&im).map(|x| x * x).sum::<f64>() > 1e-3);
            prop_assume!(re2.iter().map(|x| x * x).sum::<f64>() > 1e-3);
            let m = Matrix4::outer(&mk(re, im)).scale(w)
                + Matrix4::outer(&mk(re2, [0.0; 4])).scale(1.0 - w);
            let rho = DensityMatrix4::new(m).unwrap();
            for side in [Subsystem::A, Subsystem::B] {
                let r = partial_trace(&rho, side);
                prop_assert!((r.trace() - 1.0).abs() < 1e-12);
                prop_assert!(r.matrix().hermiticity_residual() < 1e-12);
                prop_assert!(r.min_eigenvalue() > -1e-10);
            }
        }
    }
}
