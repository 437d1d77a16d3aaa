use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Ring operations needed to build objectives symbolically. Implemented for
/// every type with the usual operators, including [`super::AlphaPoly`].
pub trait Coefficient:
    Clone + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Coefficient for T where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// `c + Σ coeffs[i] x_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineForm<T> {
    pub coeffs: Vec<T>,
    pub constant: T,
}

impl<T: Coefficient> AffineForm<T> {
    pub fn new(coeffs: Vec<T>, constant: T) -> Self {
        AffineForm { coeffs, constant }
    }

    pub fn constant(n: usize, c: T) -> Self {
        AffineForm {
            coeffs: vec![T::zero(); n],
            constant: c,
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scale(&self, k: &T) -> Self {
        AffineForm {
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
            constant: self.constant.clone() * k.clone(),
        }
    }

    pub fn evaluate(&self, x: &[T]) -> T {
        self.coeffs
            .iter()
            .zip(x)
            .fold(self.constant.clone(), |acc, (c, xi)| {
                acc + c.clone() * xi.clone()
            })
    }

    /// The quadratic `(self)²`.
    pub fn square(&self) -> QuadraticObjective<T> {
        let n = self.dim();
        let quadratic = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.coeffs[i].clone() * self.coeffs[j].clone())
                    .collect()
            })
            .collect();
        let two_c = self.constant.clone() + self.constant.clone();
        QuadraticObjective {
            quadratic,
            linear: self
                .coeffs
                .iter()
                .map(|c| c.clone() * two_c.clone())
                .collect(),
            constant: self.constant.clone() * self.constant.clone(),
        }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> AffineForm<U> {
        AffineForm {
            coeffs: self.coeffs.iter().map(&f).collect(),
            constant: f(&self.constant),
        }
    }

    pub fn try_map<U, F: Fn(&T) -> Result<U>>(&self, f: F) -> Result<AffineForm<U>> {
        Ok(AffineForm {
            coeffs: self.coeffs.iter().map(&f).collect::<Result<_>>()?,
            constant: f(&self.constant)?,
        })
    }

    /// Substitutes `x = S y + offset`.
    pub fn restrict(&self, substitution: &[Vec<T>], offset: &[T]) -> AffineForm<T> {
        let m = substitution.first().map_or(0, Vec::len);
        AffineForm {
            coeffs: (0..m)
                .map(|j| {
                    self.coeffs
                        .iter()
                        .zip(substitution)
                        .fold(T::zero(), |acc, (c, row)| acc + c.clone() * row[j].clone())
                })
                .collect(),
            constant: self.evaluate(offset),
        }
    }
}

impl<T: Coefficient> Add for AffineForm<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        AffineForm {
            coeffs: self
                .coeffs
                .into_iter()
                .zip(rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            constant: self.constant + rhs.constant,
        }
    }
}

impl<T: Coefficient> Sub for AffineForm<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        AffineForm {
            coeffs: self
                .coeffs
                .into_iter()
                .zip(rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            constant: self.constant - rhs.constant,
        }
    }
}

/// `f(x) = xᵀ Q x + lᵀ x + c` with symmetric `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticObjective<T> {
    pub quadratic: Vec<Vec<T>>,
    pub linear: Vec<T>,
    pub constant: T,
}

impl<T: Coefficient + PartialEq> QuadraticObjective<T> {
    /// Rejects ragged or non-symmetric quadratic parts.
    pub fn new(quadratic: Vec<Vec<T>>, linear: Vec<T>, constant: T) -> Result<Self> {
        let n = linear.len();
        if quadratic.len() != n || quadratic.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "quadratic part must be {n}x{n} to match the linear part"
            )));
        }
        for i in 0..n {
            for j in 0..i {
                if quadratic[i][j] != quadratic[j][i] {
                    return Err(Error::Dimension(format!(
                        "quadratic part not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(QuadraticObjective {
            quadratic,
            linear,
            constant,
        })
    }
}

impl<T: Coefficient> QuadraticObjective<T> {
    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn zero(n: usize) -> Self {
        QuadraticObjective {
            quadratic: vec![vec![T::zero(); n]; n],
            linear: vec![T::zero(); n],
            constant: T::zero(),
        }
    }

    pub fn evaluate(&self, x: &[T]) -> T {
        let n = self.dim();
        let mut acc = self.constant.clone();
        for i in 0..n {
            acc = acc + self.linear[i].clone() * x[i].clone();
            for j in 0..n {
                acc = acc + self.quadratic[i][j].clone() * x[i].clone() * x[j].clone();
            }
        }
        acc
    }

    /// `2Q x + l`.
    pub fn gradient(&self, x: &[T]) -> Vec<T> {
        (0..self.dim())
            .map(|i| {
                let qx = (0..self.dim()).fold(T::zero(), |acc, j| {
                    acc + self.quadratic[i][j].clone() * x[j].clone()
                });
                qx.clone() + qx + self.linear[i].clone()
            })
            .collect()
    }

    /// Matrix of second derivatives, `2Q`.
    pub fn hessian(&self) -> Vec<Vec<T>> {
        self.quadratic
            .iter()
            .map(|row| row.iter().map(|q| q.clone() + q.clone()).collect())
            .collect()
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|c| c.clone() * k.clone())
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> QuadraticObjective<U> {
        QuadraticObjective {
            quadratic: self
                .quadratic
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
            linear: self.linear.iter().map(&f).collect(),
            constant: f(&self.constant),
        }
    }

    pub fn try_map<U, F: Fn(&T) -> Result<U>>(&self, f: F) -> Result<QuadraticObjective<U>> {
        Ok(QuadraticObjective {
            quadratic: self
                .quadratic
                .iter()
                .map(|row| row.iter().map(&f).collect::<Result<_>>())
                .collect::<Result<_>>()?,
            linear: self.linear.iter().map(&f).collect::<Result<_>>()?,
            constant: f(&self.constant)?,
        })
    }

    /// Substitutes `x = S y + offset`, giving an objective in `y`.
    pub fn restrict(&self, substitution: &[Vec<T>], offset: &[T]) -> Self {
        let n = self.dim();
        let m = substitution.first().map_or(0, Vec::len);
        let mut quadratic = vec![vec![T::zero(); m]; m];
        for (a, row) in quadratic.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                for i in 0..n {
                    for j in 0..n {
                        *cell = cell.clone()
                            + substitution[i][a].clone()
                                * self.quadratic[i][j].clone()
                                * substitution[j][b].clone();
                    }
                }
            }
        }
        // ∇ at the offset, pulled back through S.
        let grad = self.gradient(offset);
        let linear = (0..m)
            .map(|a| {
                (0..n).fold(T::zero(), |acc, i| {
                    acc + grad[i].clone() * substitution[i][a].clone()
                })
            })
            .collect();
        QuadraticObjective {
            quadratic,
            linear,
            constant: self.evaluate(offset),
        }
    }
}

impl<T: Coefficient> Add for QuadraticObjective<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        QuadraticObjective {
            quadratic: self
                .quadratic
                .into_iter()
                .zip(rhs.quadratic)
                .map(|(a, b)| a.into_iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
            linear: self
                .linear
                .into_iter()
                .zip(rhs.linear)
                .map(|(x, y)| x + y)
                .collect(),
            constant: self.constant + rhs.constant,
        }
    }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
/// Fails with [`Error::Indeterminate`] when `A` is singular.
pub fn solve_linear<T: Field>(a: &[Vec<T>], b: &[T]) -> Result<Vec<T>> {
    let n = b.len();
    let scale = max_abs(a);
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            row.iter()
                .cloned()
                .chain(std::iter::once(bi.clone()))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                m[i][col]
                    .abs()
                    .partial_cmp(&m[j][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty range");
        if m[pivot][col].is_negligible(&scale) {
            return Err(Error::Indeterminate);
        }
        m.swap(col, pivot);
        for row in col + 1..n {
            let factor = m[row][col].clone() / m[col][col].clone();
            for k in col..=n {
                let delta = factor.clone() * m[col][k].clone();
                m[row][k] = m[row][k].clone() - delta;
            }
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let tail = (row + 1..n).fold(T::zero(), |acc, k| acc + m[row][k].clone() * x[k].clone());
        x[row] = (m[row][n].clone() - tail) / m[row][row].clone();
    }
    Ok(x)
}

/// Determinant by fraction-preserving elimination.
pub fn determinant<T: Field>(a: &[Vec<T>]) -> T {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = T::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return T::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det = det * m[col][col].clone();
        for row in col + 1..n {
            let factor = m[row][col].clone() / m[col][col].clone();
            for k in col..n {
                let delta = factor.clone() * m[col][k].clone();
                m[row][k] = m[row][k].clone() - delta;
            }
        }
    }
    det
}

fn max_abs<T: Field>(a: &[Vec<T>]) -> T {
    a.iter().flatten().fold(T::zero(), |acc, x| {
        let ax = x.abs();
        if ax > acc {
            ax
        } else {
            acc
        }
    })
}

/// Point where the gradient vanishes, solved exactly for rational input.
pub fn stationary_point<T: Field>(q: &QuadraticObjective<T>) -> Result<Vec<T>> {
    let rhs: Vec<T> = q.linear.iter().map(|l| -l.clone()).collect();
    solve_linear(&q.hessian(), &rhs)
}

/// Definiteness of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HessianClass {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    Singular,
}

impl std::fmt::Display for HessianClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HessianClass::PositiveDefinite => "positive-definite",
            HessianClass::NegativeDefinite => "negative-definite",
            HessianClass::Indefinite => "indefinite",
            HessianClass::Singular => "singular",
        })
    }
}

/// Classifies by the signs of the leading principal minors (Sylvester).
/// Exact for rationals; floats treat minors below `1e-12 · scaleᵏ` as zero.
pub fn classify_hessian<T: Field>(h: &[Vec<T>]) -> HessianClass {
    let n = h.len();
    let scale = max_abs(h);
    let minors: Vec<T> = (1..=n)
        .map(|k| {
            let sub: Vec<Vec<T>> = h[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect();
    let scale_pow = |k: usize| {
        (0..k).fold(T::one(), |acc, _| {
            let s = if scale > T::one() {
                scale.clone()
            } else {
                T::one()
            };
            acc * s
        })
    };
    let negligible = |k: usize| minors[k - 1].is_negligible(&scale_pow(k));
    if n == 0 || negligible(n) {
        return HessianClass::Singular;
    }
    if (1..=n).all(|k| !negligible(k) && minors[k - 1] > T::zero()) {
        return HessianClass::PositiveDefinite;
    }
    let alternating = (1..=n).all(|k| {
        !negligible(k)
            && if k % 2 == 1 {
                minors[k - 1] < T::zero()
            } else {
                minors[k - 1] > T::zero()
            }
    });
    if alternating {
        HessianClass::NegativeDefinite
    } else {
        HessianClass::Indefinite
    }
}
