//! Phase-covariant 1→2 cloner with a single machine qubit:
//!
//! ```text
//! |0⟩ → a|00⟩|0⟩ + b(|01⟩ + |10⟩)|1⟩ + c|11⟩|0⟩
//! |1⟩ → a|11⟩|1⟩ + b(|01⟩ + |10⟩)|0⟩ + c|00⟩|1⟩
//! ```
//!
//! with real `a, b, c` and `a² + 2b² + c² = 1`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machine::joint_from_gram;
use crate::optimize::{constrained_quadratic_max, generalized_quadratic_max};
use crate::qmat::{DensityMatrix, DensityMatrix2, DensityMatrix4, Matrix, PureQubit};
use crate::scalar::{checked_sqrt, Real};

const UNITARITY_TOL: f64 = 1e-10;

/// Transformation coefficients `(a, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcCoeffs<T> {
    a: T,
    b: T,
    c: T,
}

impl<T: Real> PcCoeffs<T> {
    /// Rejects coefficients with `|a² + 2b² + c² − 1| ≥ 1e−10`.
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        let k = PcCoeffs { a, b, c };
        let residual = k.unitarity_residual();
        if !(residual < T::lit(UNITARITY_TOL)) {
            return Err(Error::ParameterDomain {
                name: "a^2 + 2b^2 + c^2",
                value: (residual + T::one()).to_f64().unwrap_or(f64::NAN),
                reason: "must equal 1",
            });
        }
        Ok(k)
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

    pub fn unitarity_residual(&self) -> T {
        (self.a * self.a + T::lit(2.0) * self.b * self.b + self.c * self.c - T::one()).abs()
    }

    /// `2ab + 2bc − a² + c²`, the coefficient of `(α₁β₁ + α₂β₂)²` in `F²`.
    pub fn real_bracket(&self) -> T {
        let (a, b, c) = (self.a, self.b, self.c);
        T::lit(2.0) * (a * b + b * c) - a * a + c * c
    }

    /// `2ab − 2bc − a² + c²`, the coefficient of `(α₁β₂ − α₂β₁)²` in `F²`.
    pub fn imaginary_bracket(&self) -> T {
        let (a, b, c) = (self.a, self.b, self.c);
        T::lit(2.0) * (a * b - b * c) - a * a + c * c
    }
}

/// Input families for which the fidelity is made state independent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PcCase {
    /// Real `α, β`; requires `2b = a − c`.
    Case1,
    /// Real `α`, imaginary `β`; requires `2b = a + c`.
    Case2,
    /// Arbitrary complex `α, β`; requires `c = 0`, `a = 2b`.
    Case3,
}

impl PcCase {
    pub const ALL: [PcCase; 3] = [PcCase::Case1, PcCase::Case2, PcCase::Case3];

    pub fn family(self) -> InputFamily {
        match self {
            PcCase::Case1 => InputFamily::RealPairs,
            PcCase::Case2 => InputFamily::RealImaginary,
            PcCase::Case3 => InputFamily::FullyComplex,
        }
    }

    /// Deviation from the case's linear relation among `a, b, c`.
    pub fn relation_residual<T: Real>(self, k: &PcCoeffs<T>) -> T {
        let two_b = T::lit(2.0) * k.b;
        match self {
            PcCase::Case1 => (two_b - k.a + k.c).abs(),
            PcCase::Case2 => (two_b - k.a - k.c).abs(),
            PcCase::Case3 => k.c.abs().max((k.a - two_b).abs()),
        }
    }
}

impl fmt::Display for PcCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            PcCase::Case1 => 1,
            PcCase::Case2 => 2,
            PcCase::Case3 => 3,
        };
        write!(f, "{n}")
    }
}

impl FromStr for PcCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().trim_start_matches("case") {
            "1" => Ok(PcCase::Case1),
            "2" => Ok(PcCase::Case2),
            "3" => Ok(PcCase::Case3),
            _ => Err(Error::UnknownLabel {
                name: "case",
                value: s.to_string(),
                expected: "1, 2 or 3",
            }),
        }
    }
}

/// Families of input states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputFamily {
    /// `(cos θ, sin θ)`.
    RealPairs,
    /// `(cos θ, i sin θ)`.
    RealImaginary,
    /// `(cos(θ/2), e^{iφ} sin(θ/2))`.
    FullyComplex,
}

impl InputFamily {
    /// State at the family coordinates `u, v ∈ [0, 1]`; `v` is ignored by
    /// the one-parameter families.
    pub fn state<T: Real>(self, u: T, v: T) -> PureQubit<T> {
        let z = T::zero();
        let (alpha, beta) = match self {
            InputFamily::RealPairs => {
                let t = u * T::PI();
                (Complex::new(t.cos(), z), Complex::new(t.sin(), z))
            }
            InputFamily::RealImaginary => {
                let t = u * T::PI();
                (Complex::new(t.cos(), z), Complex::new(z, t.sin()))
            }
            InputFamily::FullyComplex => {
                let half = u * T::FRAC_PI_2();
                let phi = v * T::TAU();
                (
                    Complex::new(half.cos(), z),
                    Complex::from_polar(half.sin(), phi),
                )
            }
        };
        PureQubit::normalized(alpha, beta).expect("unit amplitudes")
    }

    /// `n` deterministic samples: `u` on a uniform grid, `v` from the
    /// golden-ratio sequence.
    pub fn grid<T: Real>(self, n: usize) -> Vec<PureQubit<T>> {
        let golden = T::lit(0.618_033_988_749_894_8);
        let last = T::from_usize(n.max(2) - 1).unwrap();
        (0..n)
            .map(|i| {
                let fi = T::from_usize(i).unwrap();
                let v = (fi * golden).fract();
                self.state(fi / last, v)
            })
            .collect()
    }
}

/// Reduced state of either copy:
/// `ρ₀₀ = |α|²a² + |β|²c² + b²`, `ρ₁₁ = |β|²a² + |α|²c² + b²`,
/// `ρ₀₁ = 2ab·αβ̄ + 2bc·ᾱβ`.
pub fn output_density_a<T: Real>(psi: &PureQubit<T>, k: &PcCoeffs<T>) -> DensityMatrix2<T> {
    let (alpha, beta) = (psi.alpha(), psi.beta());
    let (wa, wb) = (alpha.norm_sqr(), beta.norm_sqr());
    let (a2, b2, c2) = (k.a * k.a, k.b * k.b, k.c * k.c);
    let two = T::lit(2.0);
    let off = alpha * beta.conj() * (two * k.a * k.b) + alpha.conj() * beta * (two * k.b * k.c);
    let z = T::zero();
    DensityMatrix::assume_valid(Matrix([
        [Complex::new(wa * a2 + wb * c2 + b2, z), off],
        [off.conj(), Complex::new(wb * a2 + wa * c2 + b2, z)],
    ]))
}

/// Two-copy output state with the machine qubit traced out.
pub fn joint_output_density<T: Real>(psi: &PureQubit<T>, k: &PcCoeffs<T>) -> DensityMatrix4<T> {
    let (alpha, beta) = (psi.alpha(), psi.beta());
    let (a, b, c) = (k.a, k.b, k.c);
    let sym = [beta * b, alpha * b];
    let coef = [[alpha * a, beta * c], sym, sym, [alpha * c, beta * a]];
    let one = T::one();
    DensityMatrix::assume_valid(joint_from_gram(
        &coef,
        &[[one, T::zero()], [T::zero(), one]],
    ))
}

/// `F² = a² + b² + 2p²(2ab + 2bc − a² + c²) + 2q²(2ab − 2bc − a² + c²)`
/// with `p = α₁β₁ + α₂β₂`, `q = α₁β₂ − α₂β₁`.
pub fn fidelity<T: Real>(psi: &PureQubit<T>, k: &PcCoeffs<T>) -> Result<T> {
    let (alpha, beta) = (psi.alpha(), psi.beta());
    let p = alpha.re * beta.re + alpha.im * beta.im;
    let q = alpha.re * beta.im - alpha.im * beta.re;
    let two = T::lit(2.0);
    let f_sq = k.a * k.a
        + k.b * k.b
        + two * p * p * k.real_bracket()
        + two * q * q * k.imaginary_bracket();
    checked_sqrt(f_sq, "phase-covariant fidelity")
}

/// The same fidelity in moduli-and-phase form:
/// `F² = a²(|α|⁴ + |β|⁴) + b² + 2c²|α|²|β|² + 4ab|α|²|β|² + 4bc·Re((ᾱβ)²)`.
pub fn fidelity_moduli_form<T: Real>(psi: &PureQubit<T>, k: &PcCoeffs<T>) -> Result<T> {
    let (alpha, beta) = (psi.alpha(), psi.beta());
    let (wa, wb) = (alpha.norm_sqr(), beta.norm_sqr());
    let w = wa * wb;
    let cross = alpha.conj() * beta;
    let (two, four) = (T::lit(2.0), T::lit(4.0));
    let f_sq = k.a * k.a * (wa * wa + wb * wb)
        + k.b * k.b
        + two * k.c * k.c * w
        + four * k.a * k.b * w
        + four * k.b * k.c * (cross * cross).re;
    checked_sqrt(f_sq, "phase-covariant fidelity")
}

/// Best coefficients for one case.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcOptimum<T> {
    pub case: PcCase,
    pub coeffs: PcCoeffs<T>,
    pub fidelity: T,
}

/// Maximises `F² = a² + b²` under the case relation and unitarity.
///
/// Cases 1 and 2 reduce to `max (a² + b²)` on `2a² − 4ab + 6b² = 1`; case 3
/// to `max 5b²` on `6b² = 1`.
pub fn maximize_fidelity<T: Real>(case: PcCase) -> Result<PcOptimum<T>> {
    let lit = T::lit;
    let coeffs = match case {
        PcCase::Case1 | PcCase::Case2 => {
            let q = vec![vec![lit(2.0), lit(-2.0)], vec![lit(-2.0), lit(6.0)]];
            let m = constrained_quadratic_max(&q)?;
            let (a, b) = (m.point[0], m.point[1]);
            let c = if case == PcCase::Case1 {
                a - lit(2.0) * b
            } else {
                lit(2.0) * b - a
            };
            PcCoeffs { a, b, c }
        }
        PcCase::Case3 => {
            let m = generalized_quadratic_max(&[vec![lit(5.0)]], &[vec![lit(6.0)]])?;
            let b = m.point[0];
            PcCoeffs {
                a: lit(2.0) * b,
                b,
                c: T::zero(),
            }
        }
    };
    let coeffs = PcCoeffs::new(coeffs.a, coeffs.b, coeffs.c)?;
    let fidelity = (coeffs.a * coeffs.a + coeffs.b * coeffs.b).sqrt();
    Ok(PcOptimum {
        case,
        coeffs,
        fidelity,
    })
}

/// `max − min` of the fidelity over `samples`.
pub fn input_independence_residual<T: Real>(
    samples: &[PureQubit<T>],
    k: &PcCoeffs<T>,
) -> Result<T> {
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for psi in samples {
        let f = fidelity(psi, k)?;
        lo = lo.min(f);
        hi = hi.max(f);
    }
    Ok(if samples.is_empty() {
        T::zero()
    } else {
        hi - lo
    })
}

/// Residual over the 101-point grid of the case's own family.
pub fn case_residual<T: Real>(case: PcCase, k: &PcCoeffs<T>) -> Result<T> {
    input_independence_residual(&case.family().grid(101), k)
}
