use std::collections::BTreeMap;
use std::io::Write;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qformal::ExactReport;

/// A number as a full-precision decimal string plus an f64 for convenience.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Num {
    pub value: String,
    pub approx: f64,
}

impl Num {
    pub fn from_float(x: &Float) -> Self {
        Num {
            value: crate::numeric::format_real(x),
            approx: x.to_f64(),
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Num {
            value: format!("{x:e}"),
            approx: x,
        }
    }
}

/// One evaluated sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub identity: String,
    pub tau: String,
    /// Free and bound variables.
    pub env: BTreeMap<String, String>,
    pub lhs_abs: Num,
    pub rhs_abs: Num,
    pub abs_residual: Num,
    pub rel_residual: Num,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    Pole,
    Convergence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skip {
    pub sample: usize,
    pub reason: SkipReason,
    pub detail: String,
}

/// Result for one identity at one τ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub tau: String,
    pub passed: bool,
    /// None when no sample could be evaluated.
    pub max_rel_residual: Option<Num>,
    pub samples: usize,
    pub evaluated: usize,
    pub skipped: usize,
    pub skips: Vec<Skip>,
    pub worst: Option<ResidualRecord>,
    pub diagnosis: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub seed: u64,
    pub bits: u32,
    pub tol: Num,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub meta: Meta,
    pub numeric: Vec<IdentityReport>,
    pub exact: Vec<ExactReport>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.numeric.iter().all(|r| r.passed) && self.exact.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> usize {
        self.numeric.iter().filter(|r| !r.passed).count() + self.exact.iter().filter(|r| !r.passed).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

pub fn emit_report(r: &VerificationReport, format: ReportFormat, out: &mut impl Write) -> Result<()> {
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, r)?;
            writeln!(out)?;
        }
        ReportFormat::Text => out.write_all(render_text(r).as_bytes())?,
    }
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok { "PASS" } else { "FAIL" }
}

pub fn render_text(r: &VerificationReport) -> String {
    let mut s = format!(
        "qtheta {}  seed {}  bits {}  tol {}\n",
        r.meta.version, r.meta.seed, r.meta.bits, r.meta.tol.value
    );
    if !r.numeric.is_empty() {
        let w_name = r.numeric.iter().map(|x| x.name.len()).max().unwrap_or(4).max(8);
        let w_tau = r.numeric.iter().map(|x| x.tau.len()).max().unwrap_or(3).max(3);
        s += &format!(
            "\n{:<4}  {:<w_name$}  {:<w_tau$}  {:>10}  {:>7}  {:>7}\n",
            "", "identity", "tau", "max_rel", "samples", "skipped"
        );
        for x in &r.numeric {
            let res = x
                .max_rel_residual
                .as_ref()
                .map_or("-".to_string(), |n| format!("{:.3e}", n.approx));
            s += &format!(
                "{:<4}  {:<w_name$}  {:<w_tau$}  {:>10}  {:>7}  {:>7}",
                verdict(x.passed),
                x.name,
                x.tau,
                res,
                x.samples,
                x.skipped
            );
            if let Some(d) = &x.diagnosis {
                s += &format!("  {d}");
            }
            s.push('\n');
        }
    }
    if !r.exact.is_empty() {
        let w = r.exact.iter().map(|x| x.name.len()).max().unwrap_or(5).max(5);
        s += &format!("\n{:<4}  {:<w$}  {:>5}  {:>7}\n", "", "exact", "order", "support");
        for x in &r.exact {
            s += &format!(
                "{:<4}  {:<w$}  {:>5}  {:>7}",
                verdict(x.passed),
                x.name,
                x.order,
                x.support
            );
            if let Some(wit) = &x.witness {
                s += &format!("  first difference at Q^{} {}: {}", wit.q_exp, wit.monomial, wit.value);
            }
            s.push('\n');
        }
    }
    let total = r.numeric.len() + r.exact.len();
    s += &format!("\n{} of {} checks passed\n", total - r.failures(), total);
    s
}
