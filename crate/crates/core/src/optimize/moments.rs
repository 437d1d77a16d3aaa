//! Exact α-averages of polynomials in `α` and `β = √(1 − α²)`.
//!
//! `M(m, k) = ∫₀¹ αᵐ (1 − α²)^{k/2} dα = ½ B((m+1)/2, k/2 + 1)`. Every entry
//! is a rational number, except when `m` is even and `k` odd, where it is a
//! rational multiple of `π`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{ratio, Rational, Real};

/// Highest tabulated power of `α`.
pub const MAX_ALPHA_POWER: u32 = 8;
/// Highest tabulated power of `β`.
pub const MAX_BETA_POWER: u32 = 4;

/// `rational + pi_multiple · π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentValue {
    pub rational: Rational,
    pub pi_multiple: Rational,
}

impl MomentValue {
    pub fn rational(q: Rational) -> Self {
        MomentValue {
            rational: q,
            pi_multiple: Rational::zero(),
        }
    }

    pub fn pi(q: Rational) -> Self {
        MomentValue {
            rational: Rational::zero(),
            pi_multiple: q,
        }
    }

    /// The value when it has no `π` component.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.pi_multiple.is_zero().then_some(&self.rational)
    }

    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64().unwrap_or(f64::NAN)
            + self.pi_multiple.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI
    }
}

impl Add for MomentValue {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        MomentValue {
            rational: self.rational + rhs.rational,
            pi_multiple: self.pi_multiple + rhs.pi_multiple,
        }
    }
}

impl fmt::Display for MomentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.pi_multiple.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}π", self.pi_multiple),
            (false, false) => write!(f, "{} + {}π", self.rational, self.pi_multiple),
        }
    }
}

/// Exact moment, computed by the Beta-function recurrences
/// `M(m,k) = M(m,k−2)·k/(m+k+1)` and `M(m,1) = M(m−2,1)·(m−1)/(m+2)`.
pub fn exact_moment(m: u32, k: u32) -> MomentValue {
    if k.is_multiple_of(2) {
        let mut v = ratio(1, m as i64 + 1);
        let mut kk = 2;
        while kk <= k {
            v *= ratio(kk as i64, (m + kk + 1) as i64);
            kk += 2;
        }
        return MomentValue::rational(v);
    }
    // k odd: start from M(m mod 2, 1) and climb.
    let (mut v, is_pi) = if m.is_multiple_of(2) {
        (ratio(1, 4), true)
    } else {
        (ratio(1, 3), false)
    };
    let mut mm = m % 2 + 2;
    while mm <= m {
        v *= ratio(mm as i64 - 1, mm as i64 + 2);
        mm += 2;
    }
    let mut kk = 3;
    while kk <= k {
        v *= ratio(kk as i64, (m + kk + 1) as i64);
        kk += 2;
    }
    if is_pi {
        MomentValue::pi(v)
    } else {
        MomentValue::rational(v)
    }
}

/// Tabulated `M(m, k)` for `m ≤ 8`, `k ≤ 4`. Built once, then read-only.
pub struct MomentTable {
    entries: Vec<Vec<MomentValue>>,
}

impl MomentTable {
    fn build() -> Self {
        MomentTable {
            entries: (0..=MAX_ALPHA_POWER)
                .map(|m| (0..=MAX_BETA_POWER).map(|k| exact_moment(m, k)).collect())
                .collect(),
        }
    }

    pub fn global() -> &'static MomentTable {
        static TABLE: OnceLock<MomentTable> = OnceLock::new();
        TABLE.get_or_init(MomentTable::build)
    }

    pub fn get(&self, m: u32, k: u32) -> Result<&MomentValue> {
        self.entries
            .get(m as usize)
            .and_then(|row| row.get(k as usize))
            .ok_or(Error::MomentOutOfRange { m, k })
    }
}

/// `M(m, k)` from the shared table.
pub fn moment(m: u32, k: u32) -> Result<MomentValue> {
    MomentTable::global().get(m, k).cloned()
}

/// Polynomial `Σ c_{m,k} αᵐ βᵏ` with rational coefficients. `β²` is kept
/// symbolic rather than rewritten as `1 − α²`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlphaPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl AlphaPoly {
    pub fn monomial(coeff: Rational, alpha_pow: u32, beta_pow: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((alpha_pow, beta_pow), coeff);
        }
        AlphaPoly { terms }
    }

    /// `num/den · αᵐ βᵏ`.
    pub fn term(num: i64, den: i64, alpha_pow: u32, beta_pow: u32) -> Self {
        Self::monomial(ratio(num, den), alpha_pow, beta_pow)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn evaluate<T: Real>(&self, alpha: T, beta: T) -> T {
        self.terms.iter().fold(T::zero(), |acc, ((m, k), c)| {
            acc + T::lit(c.to_f64().unwrap_or(f64::NAN))
                * alpha.powi(*m as i32)
                * beta.powi(*k as i32)
        })
    }

    /// `∫₀¹ p(α) dα` through the moment table.
    pub fn average(&self) -> Result<MomentValue> {
        let table = MomentTable::global();
        self.terms.iter().try_fold(
            MomentValue::rational(Rational::zero()),
            |acc, ((m, k), c)| {
                let mv = table.get(*m, *k)?;
                Ok(acc
                    + MomentValue {
                        rational: mv.rational.clone() * c,
                        pi_multiple: mv.pi_multiple.clone() * c,
                    })
            },
        )
    }

    /// Average that must come out rational.
    pub fn average_rational(&self) -> Result<Rational> {
        let v = self.average()?;
        match v.as_rational() {
            Some(q) => Ok(q.clone()),
            None => Err(Error::NotRational(v.to_string())),
        }
    }

    fn prune(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }
}

impl Zero for AlphaPoly {
    fn zero() -> Self {
        AlphaPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for AlphaPoly {
    fn one() -> Self {
        AlphaPoly::constant(Rational::one())
    }
}

impl Add for AlphaPoly {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (key, c) in rhs.terms {
            let slot = self.terms.entry(key).or_insert_with(Rational::zero);
            *slot = &*slot + c;
        }
        self.prune()
    }
}

impl Neg for AlphaPoly {
    type Output = Self;

    fn neg(self) -> Self {
        AlphaPoly {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for AlphaPoly {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for AlphaPoly {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = AlphaPoly::zero();
        for ((m1, k1), c1) in &self.terms {
            for ((m2, k2), c2) in &rhs.terms {
                out = out + AlphaPoly::monomial(c1 * c2, m1 + m2, k1 + k2);
            }
        }
        out
    }
}

impl fmt::Display for AlphaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, k), c)| format!("({c})·α^{m}·β^{k}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
