use std::fmt::Write as _;

use indexmap::IndexMap;
use qclone::scalar::format_rational;
use qclone::Rational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// How a scalar was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    ClosedForm,
    MatrixOracle,
    Quadrature,
    Exact,
    Optimizer,
    /// Quoted value kept for comparison.
    Reference,
}

impl Route {
    fn label(self) -> &'static str {
        match self {
            Route::ClosedForm => "closed-form",
            Route::MatrixOracle => "matrix-oracle",
            Route::Quadrature => "quadrature",
            Route::Exact => "exact",
            Route::Optimizer => "optimizer",
            Route::Reference => "reference",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scalar {
    /// A JSON number, or a `"num/den"` string for exact values.
    pub value: Value,
    pub route: Route,
    pub tolerance: Option<f64>,
}

/// Agreement between two routes to the same quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteCheck {
    pub first: String,
    pub second: String,
    pub difference: f64,
    pub tolerance: f64,
    pub agree: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    /// Subcommand path, e.g. `["sdc", "optimize"]`.
    pub command: Vec<String>,
    /// Flag name to value; switches map to `"true"`.
    pub params: IndexMap<String, String>,
    pub results: IndexMap<String, Scalar>,
    pub verdicts: IndexMap<String, String>,
    pub paper_refs: Vec<String>,
    pub checks: Vec<RouteCheck>,
    pub discrepant: bool,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl ReportBundle {
    pub fn new(command: &[&str]) -> Self {
        ReportBundle {
            command: command.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn params(&mut self, params: impl IntoIterator<Item = (String, Option<String>)>) {
        for (k, v) in params {
            self.params
                .insert(k, v.unwrap_or_else(|| "true".to_string()));
        }
    }

    pub fn push(&mut self, name: &str, value: f64, route: Route, tolerance: Option<f64>) {
        let value = serde_json::Number::from_f64(value)
            .map(Value::Number)
            .unwrap_or_else(|| Value::String(value.to_string()));
        self.results.insert(
            name.to_string(),
            Scalar {
                value,
                route,
                tolerance,
            },
        );
    }

    pub fn push_exact(&mut self, name: &str, q: &Rational) {
        let value = Value::String(format_rational(q));
        self.results.insert(
            name.to_string(),
            Scalar {
                value,
                route: Route::Exact,
                tolerance: Some(0.0),
            },
        );
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        match &self.results.get(name)?.value {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => qclone::scalar::parse_rational(s)
                .and_then(|q| num_traits::ToPrimitive::to_f64(&q))
                .or_else(|| s.parse().ok()),
            _ => None,
        }
    }

    /// Records whether two reported routes agree; a disagreement marks the
    /// bundle discrepant. Missing entries are skipped.
    pub fn pair(&mut self, first: &str, second: &str, tolerance: f64) {
        let (Some(x), Some(y)) = (self.value(first), self.value(second)) else {
            return;
        };
        let difference = (x - y).abs();
        let agree = difference <= tolerance;
        self.discrepant |= !agree;
        self.checks.push(RouteCheck {
            first: first.to_string(),
            second: second.to_string(),
            difference,
            tolerance,
            agree,
        });
    }

    pub fn verdict(&mut self, name: &str, verdict: impl ToString) {
        self.verdicts.insert(name.to_string(), verdict.to_string());
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn reference(&mut self, label: &str) {
        self.paper_refs.push(label.to_string());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("bundle is plain data");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,value,route,tolerance\n");
        for (name, s) in &self.results {
            let value = match &s.value {
                Value::Number(n) => sig12(n.as_f64().unwrap_or(f64::NAN)),
                Value::String(v) => v.clone(),
                other => other.to_string(),
            };
            let tol = s.tolerance.map(|t| format!("{t:e}")).unwrap_or_default();
            writeln!(out, "{name},{value},{},{tol}", s.route.label()).unwrap();
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "qclone {}", self.command.join(" ")).unwrap();
        for (k, v) in &self.params {
            writeln!(out, "  {k} = {v}").unwrap();
        }
        let width = self
            .results
            .keys()
            .map(|k| k.len())
            .max()
            .unwrap_or(0)
            .max(6);
        if !self.results.is_empty() {
            writeln!(
                out,
                "\n{:width$}  {:>22}  {:<13}  tolerance",
                "result", "value", "route"
            )
            .unwrap();
            for (name, s) in &self.results {
                let value = match &s.value {
                    Value::Number(n) => format!("{:.12}", n.as_f64().unwrap_or(f64::NAN)),
                    Value::String(v) => v.clone(),
                    other => other.to_string(),
                };
                let tol = s.tolerance.map(|t| format!("{t:e}")).unwrap_or_default();
                writeln!(
                    out,
                    "{name:width$}  {value:>22}  {:<13}  {tol}",
                    s.route.label()
                )
                .unwrap();
            }
        }
        if !self.verdicts.is_empty() {
            writeln!(out).unwrap();
            for (k, v) in &self.verdicts {
                writeln!(out, "{k}: {v}").unwrap();
            }
        }
        if !self.checks.is_empty() {
            writeln!(out).unwrap();
            for c in &self.checks {
                let mark = if c.agree { "ok" } else { "MISMATCH" };
                writeln!(
                    out,
                    "{} vs {}: |diff| = {:.3e} (tol {:e}) {mark}",
                    c.first, c.second, c.difference, c.tolerance
                )
                .unwrap();
            }
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        if self.discrepant {
            writeln!(out, "DISCREPANT").unwrap();
        }
        out
    }
}

/// `x` with 12 significant digits, trailing zeros removed; `inf`/`-inf`
/// for infinities.
pub fn sig12(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
