//! Averages over the real input amplitude `α ∈ [0, 1]`.
//!
//! Integrands built from `β = √(1 − α²)` have square-root endpoint
//! behaviour at `α = 1`, which caps Gauss-Legendre convergence at an
//! algebraic rate when applied in `α` directly. Every rule here is applied
//! after the substitution `α = sin θ`, `dα = cos θ dθ`, where those
//! integrands become analytic on `θ ∈ [0, π/2]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Quadrature rule and node count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadratureSpec {
    /// Gauss-Legendre with `n` nodes.
    Gauss(usize),
    /// Composite Simpson on `n` equally spaced nodes (endpoints included).
    Simpson(usize),
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec::Gauss(128)
    }
}

impl QuadratureSpec {
    pub fn nodes(&self) -> usize {
        match *self {
            QuadratureSpec::Gauss(n) | QuadratureSpec::Simpson(n) => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes() < 2 {
            return Err(Error::QuadratureNodes {
                nodes: self.nodes(),
                min: 2,
            });
        }
        Ok(())
    }

    /// Nodes and weights on `[lo, hi]`.
    pub fn rule(&self, lo: f64, hi: f64) -> Result<Vec<(f64, f64)>> {
        self.validate()?;
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        Ok(match *self {
            QuadratureSpec::Gauss(n) => gauss_legendre(n)
                .into_iter()
                .map(|(x, w)| (mid + half * x, half * w))
                .collect(),
            QuadratureSpec::Simpson(n) => simpson_weights(n)
                .into_iter()
                .enumerate()
                .map(|(i, w)| (lo + (hi - lo) * i as f64 / (n - 1) as f64, w * (hi - lo)))
                .collect(),
        })
    }
}

impl FromStr for QuadratureSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::QuadratureSpec(s.to_string());
        let (kind, n) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let spec = match kind.trim() {
            "gauss" => QuadratureSpec::Gauss(n),
            "simpson" => QuadratureSpec::Simpson(n),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for QuadratureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadratureSpec::Gauss(n) => write!(f, "gauss:{n}"),
            QuadratureSpec::Simpson(n) => write!(f, "simpson:{n}"),
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the three-term recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    let nf = n as f64;
    for i in 1..=n {
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn_1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pn_1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.reverse();
    out
}

/// Composite Simpson weights on `n` nodes over a unit-length interval.
/// An odd number of sub-intervals closes with Simpson's 3/8 rule; two
/// nodes degrade to the trapezoid rule.
fn simpson_weights(n: usize) -> Vec<f64> {
    let intervals = n - 1;
    let h = 1.0 / intervals as f64;
    let mut w = vec![0.0; n];
    if intervals == 1 {
        w[0] = 0.5 * h;
        w[1] = 0.5 * h;
        return w;
    }
    let simpson_intervals = if intervals.is_multiple_of(2) {
        intervals
    } else {
        intervals - 3
    };
    for start in (0..simpson_intervals).step_by(2) {
        w[start] += h / 3.0;
        w[start + 1] += 4.0 * h / 3.0;
        w[start + 2] += h / 3.0;
    }
    if simpson_intervals != intervals {
        let s = simpson_intervals;
        for (k, c) in [1.0, 3.0, 3.0, 1.0].into_iter().enumerate() {
            w[s + k] += 3.0 * h / 8.0 * c;
        }
    }
    w
}

/// `∫₀¹ f(α) dα`.
pub fn average_over_alpha<T: Real, F: Fn(T) -> T>(f: F, quad: QuadratureSpec) -> Result<T> {
    average_over_alpha_try(|a| Ok(f(a)), quad)
}

/// Fallible variant of [`average_over_alpha`]; the first integrand error
/// aborts the sum.
pub fn average_over_alpha_try<T: Real, F: Fn(T) -> Result<T>>(
    f: F,
    quad: QuadratureSpec,
) -> Result<T> {
    let rule = quad.rule(0.0, std::f64::consts::FRAC_PI_2)?;
    rule.into_iter().try_fold(T::zero(), |acc, (theta, w)| {
        let alpha = T::lit(theta.sin().min(1.0));
        Ok(acc + T::lit(w * theta.cos()) * f(alpha)?)
    })
}
