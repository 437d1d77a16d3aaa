use serde::{Deserialize, Serialize};

use super::{SdcOverlaps, SdcSubcase};
use crate::error::{Error, Result};
use crate::machine::{gram_min_eigenvalue, CsiVerdict};
use crate::scalar::{in_range, Real};

/// Cauchy-Schwarz checks on `(A, B, C)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdcCsiReport {
    /// `0 ≤ A ≤ 1/3`.
    pub a_in_range: bool,
    /// `0 ≤ B ≤ 1/3`.
    pub b_in_range: bool,
    /// `|C| ≤ 1/√3`.
    pub c_in_range: bool,
    /// `C² ≤ B(1 − 3A)`, from the pair `(Y₁, Q₀)`.
    pub joint: bool,
    /// `C² ≤ A(1 − 3B)`, from the pair `(Y₀, Q₁)`.
    pub mirror: bool,
    pub gram_min_eigenvalue: f64,
    /// Feasible exactly when every check above holds, which is equivalent
    /// to a positive-semidefinite Gram matrix.
    pub verdict: CsiVerdict,
}

impl SdcCsiReport {
    pub fn marginal(&self) -> bool {
        self.a_in_range && self.b_in_range && self.c_in_range
    }
}

pub fn csi_feasible<T: Real>(ov: &SdcOverlaps<T>) -> SdcCsiReport {
    let third = T::one() / T::lit(3.0);
    let three = T::lit(3.0);
    let tol = T::validation_tol();
    let (a, b, c) = (ov.a(), ov.b(), ov.c());
    let c_sq = c * c;
    let a_in_range = in_range(a, T::zero(), third);
    let b_in_range = in_range(b, T::zero(), third);
    let c_in_range = c_sq <= third + tol;
    let joint = c_sq <= b * (T::one() - three * a) + tol;
    let mirror = c_sq <= a * (T::one() - three * b) + tol;
    let all = a_in_range && b_in_range && c_in_range && joint && mirror;
    SdcCsiReport {
        a_in_range,
        b_in_range,
        c_in_range,
        joint,
        mirror,
        gram_min_eigenvalue: gram_min_eigenvalue(&ov.gram()).to_f64().unwrap_or(f64::NAN),
        verdict: if all {
            CsiVerdict::Feasible
        } else {
            CsiVerdict::Infeasible
        },
    }
}

/// Values of the two perfect-cloning overlaps at `α`:
/// `equalAB → (α√(1−α²), 2α² − 1)`, `zeroC → (α/2β, β/2α)`.
///
/// The `zeroC` curves diverge at the ends of `[0, 1]` and evaluate to `+∞`
/// there.
pub fn curve_values(subcase: SdcSubcase, alpha: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::ParameterDomain {
            name: "alpha",
            value: alpha,
            reason: "must lie in [0, 1]",
        });
    }
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
    match subcase {
        SdcSubcase::General => Err(no_curves()),
        SdcSubcase::EqualAB => Ok((alpha * beta, 2.0 * alpha * alpha - 1.0)),
        SdcSubcase::ZeroC => Ok((alpha / (2.0 * beta), beta / (2.0 * alpha))),
    }
}

fn no_curves() -> Error {
    Error::UnknownLabel {
        name: "curve subcase",
        value: SdcSubcase::General.to_string(),
        expected: "equalAB or zeroC",
    }
}

struct CurvePair {
    names: [&'static str; 2],
    bounds: [f64; 2],
    reference: &'static [f64],
}

fn curve_pair(subcase: SdcSubcase) -> Result<CurvePair> {
    match subcase {
        SdcSubcase::General => Err(no_curves()),
        SdcSubcase::EqualAB => Ok(CurvePair {
            names: ["A", "C"],
            bounds: [1.0 / 3.0, 1.0 / 3f64.sqrt()],
            reference: &[0.3568, 0.9342, 0.4597, 0.8881],
        }),
        SdcSubcase::ZeroC => Ok(CurvePair {
            names: ["A", "B"],
            bounds: [1.0 / 3.0, 1.0 / 3.0],
            reference: &[0.6546, 0.8944],
        }),
    }
}

/// Feasible set of one curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveFeasibility {
    pub name: String,
    /// The curve is feasible where `|value| ≤ bound`.
    pub bound: f64,
    pub intervals: Vec<[f64; 2]>,
}

/// One row of plotting data.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub alpha: f64,
    pub first: f64,
    pub first_feasible: bool,
    pub second: f64,
    pub second_feasible: bool,
}

/// Feasible α-sets for both perfect-cloning curves of a subcase.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub subcase: SdcSubcase,
    pub curves: [CurveFeasibility; 2],
    pub intersection: Vec<[f64; 2]>,
    pub disjoint: bool,
    /// Interior interval endpoints, ascending.
    pub endpoints: Vec<f64>,
    /// Reference endpoints compared against `endpoints`.
    pub reference_endpoints: Vec<f64>,
    /// Whether `endpoints` and `reference_endpoints` differ by more than
    /// `1e−3` anywhere.
    pub reference_discrepancy: bool,
    pub samples: Vec<CurveSample>,
}

const SCAN_CELLS: usize = 2048;
const REFERENCE_TOL: f64 = 1e-3;

fn feasible(value: f64, bound: f64) -> bool {
    value.abs() <= bound
}

/// Boundary between a feasible and an infeasible point, by bisection.
fn bisect(status: impl Fn(f64) -> bool, mut lo: f64, mut hi: f64) -> f64 {
    let at_lo = status(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if status(mid) == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn intervals_of(status: impl Fn(f64) -> bool) -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    let mut start = status(0.0).then_some(0.0);
    let mut prev = status(0.0);
    for i in 1..=SCAN_CELLS {
        let (x0, x1) = (
            (i - 1) as f64 / SCAN_CELLS as f64,
            i as f64 / SCAN_CELLS as f64,
        );
        let now = status(x1);
        if now != prev {
            let root = bisect(&status, x0, x1);
            match start.take() {
                Some(s) => out.push([s, root]),
                None => start = Some(root),
            }
        }
        prev = now;
    }
    if let Some(s) = start {
        out.push([s, 1.0]);
    }
    out
}

fn intersect(a: &[[f64; 2]], b: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let (lo, hi) = (x[0].max(y[0]), x[1].min(y[1]));
            if lo <= hi {
                out.push([lo, hi]);
            }
        }
    }
    out
}

pub fn curve_sample(subcase: SdcSubcase, alpha: f64) -> Result<CurveSample> {
    let s = curve_pair(subcase)?;
    let (first, second) = curve_values(subcase, alpha)?;
    Ok(CurveSample {
        alpha,
        first,
        first_feasible: feasible(first, s.bounds[0]),
        second,
        second_feasible: feasible(second, s.bounds[1]),
    })
}

/// Sample points `α_i = i/(n − 1)`.
pub fn sample_alphas(samples: usize) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(Error::ParameterDomain {
            name: "samples",
            value: samples as f64,
            reason: "need at least 2 samples",
        });
    }
    Ok((0..samples)
        .map(|i| i as f64 / (samples - 1) as f64)
        .collect())
}

/// Intervals, intersection and endpoint comparison, without samples.
pub fn feasibility_intervals(subcase: SdcSubcase) -> Result<FeasibilityReport> {
    let s = curve_pair(subcase)?;
    let curve = |k: usize| {
        let bound = s.bounds[k];
        let intervals = intervals_of(|alpha| {
            let (v1, v2) = curve_values(subcase, alpha).expect("alpha in [0, 1]");
            feasible(if k == 0 { v1 } else { v2 }, bound)
        });
        CurveFeasibility {
            name: s.names[k].to_string(),
            bound,
            intervals,
        }
    };
    let curves = [curve(0), curve(1)];
    let intersection = intersect(&curves[0].intervals, &curves[1].intervals);
    let mut endpoints: Vec<f64> = curves
        .iter()
        .flat_map(|c| c.intervals.iter().flat_map(|iv| iv.iter().copied()))
        .filter(|&x| x > 0.0 && x < 1.0)
        .collect();
    endpoints.sort_by(f64::total_cmp);
    let mut reference = s.reference.to_vec();
    reference.sort_by(f64::total_cmp);
    let reference_discrepancy = endpoints.len() != reference.len()
        || endpoints
            .iter()
            .zip(&reference)
            .any(|(x, r)| (x - r).abs() > REFERENCE_TOL);
    Ok(FeasibilityReport {
        subcase,
        disjoint: intersection.is_empty(),
        curves,
        intersection,
        endpoints,
        reference_endpoints: reference,
        reference_discrepancy,
        samples: Vec::new(),
    })
}

/// [`feasibility_intervals`] plus `samples` evenly spaced curve values.
pub fn feasibility_curves(subcase: SdcSubcase, samples: usize) -> Result<FeasibilityReport> {
    let alphas = sample_alphas(samples)?;
    let mut report = feasibility_intervals(subcase)?;
    report.samples = alphas
        .into_iter()
        .map(|alpha| curve_sample(subcase, alpha))
        .collect::<Result<_>>()?;
    Ok(report)
}
