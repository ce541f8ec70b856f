use std::collections::BTreeMap;
use std::time::Instant;

use rug::Complex;

use super::report::{IdentityReport, Meta, Num, ResidualRecord, Skip, SkipReason, VerificationReport};
use super::sampling::SampleStrategy;
use crate::dsl::{EvalOptions, IdentityDecl, bind, eval_expr};
use crate::error::{Error, Result};
use crate::numeric;
use crate::params::{ModularParam, Precision};
use crate::qformal::{self, ExactReport};

/// Attempts per sample before it counts as skipped.
pub const MAX_ATTEMPTS: usize = 10;

/// Everything a numeric run depends on.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub strategy: SampleStrategy,
    pub prec: Precision,
    pub tol: f64,
    pub eval: EvalOptions,
    /// Adds wall-clock times to the report, which then differs between runs.
    pub timing: bool,
}

impl RunConfig {
    pub fn new(bits: u32) -> Result<Self> {
        let prec = Precision::new(bits)?;
        Ok(RunConfig {
            strategy: SampleStrategy::default(),
            tol: prec.eps(),
            prec,
            eval: EvalOptions::default(),
            timing: false,
        })
    }

    pub fn meta(&self) -> Meta {
        Meta {
            seed: self.strategy.seed,
            bits: self.prec.bits(),
            tol: Num::from_f64(self.tol),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

fn skip_reason(e: &Error) -> SkipReason {
    match e.root() {
        Error::Pole(_) => SkipReason::Pole,
        _ => SkipReason::Convergence,
    }
}

fn record(
    d: &IdentityDecl,
    tau: &str,
    point: &[Complex],
    p: &ModularParam,
    cfg: &RunConfig,
) -> Result<(ResidualRecord, f64)> {
    let env = bind(d, point, p, &cfg.prec, &cfg.eval)?;
    let lhs = eval_expr(&d.lhs, &env, p, &cfg.prec, &cfg.eval)?;
    let rhs = eval_expr(&d.rhs, &env, p, &cfg.prec, &cfg.eval)?;
    let diff = Complex::with_val(cfg.prec.work_bits(), &lhs - &rhs);
    let rel = numeric::relative_residual(&lhs, &rhs);
    let rel_f = rel.to_f64();
    let rec = ResidualRecord {
        identity: d.name.clone(),
        tau: tau.to_string(),
        env: env
            .iter()
            .map(|(k, v)| (k.clone(), numeric::format_complex_short(v, 20)))
            .collect(),
        lhs_abs: Num::from_float(&numeric::abs(&lhs)),
        rhs_abs: Num::from_float(&numeric::abs(&rhs)),
        abs_residual: Num::from_float(&numeric::abs(&diff)),
        rel_residual: Num::from_float(&rel),
    };
    Ok((rec, rel_f))
}

/// Samples one identity at one τ.
pub fn run_identity_at(d: &IdentityDecl, tau: &str, p: &ModularParam, cfg: &RunConfig) -> IdentityReport {
    let start = Instant::now();
    let s = &cfg.strategy;
    let mut rng = s.rng(&d.name, tau);
    let real_only = d.has_tag("limit-q1");
    let bits = cfg.prec.work_bits();
    let mut worst: Option<(ResidualRecord, f64)> = None;
    let mut skips = Vec::new();
    let mut evaluated = 0;
    let mut diagnosis = None;

    'samples: for i in 0..s.count {
        let mut last_err = None;
        for _ in 0..MAX_ATTEMPTS {
            let point = s.draw(&mut rng, d.vars.len(), real_only, bits);
            match record(d, tau, &point, p, cfg) {
                Ok((rec, rel)) => {
                    evaluated += 1;
                    // NaN counts as worst
                    if worst.as_ref().is_none_or(|(_, w)| rel.is_nan() || rel > *w) {
                        worst = Some((rec, rel));
                    }
                    continue 'samples;
                }
                Err(e) if e.is_resample() => last_err = Some(e),
                Err(e) => {
                    diagnosis = Some(format!("evaluation error: {e}"));
                    break 'samples;
                }
            }
        }
        let e = last_err.expect("loop ran");
        skips.push(Skip {
            sample: i,
            reason: skip_reason(&e),
            detail: e.to_string(),
        });
    }

    let max_rel = worst.as_ref().map(|(r, _)| r.rel_residual.clone());
    let within_tol = worst.as_ref().is_some_and(|(_, w)| *w <= cfg.tol);
    if diagnosis.is_none() {
        if skips.len() * 2 > s.count {
            diagnosis = Some(format!("{} of {} samples skipped", skips.len(), s.count));
        } else if !within_tol {
            diagnosis = Some("residual above tolerance".into());
        }
    }
    IdentityReport {
        name: d.name.clone(),
        tau: tau.to_string(),
        passed: diagnosis.is_none(),
        max_rel_residual: max_rel,
        samples: s.count,
        evaluated,
        skipped: skips.len(),
        skips,
        worst: worst.map(|(r, _)| r),
        diagnosis,
        elapsed_ms: cfg.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    }
}

/// One report per τ in the strategy.
pub fn run_identity(d: &IdentityDecl, cfg: &RunConfig) -> Result<Vec<IdentityReport>> {
    cfg.strategy.validate()?;
    let params = cfg.strategy.params(&cfg.prec)?;
    Ok(params.iter().map(|(tau, p)| run_identity_at(d, tau, p, cfg)).collect())
}

/// Runs every declaration at every τ, in parallel; output order is
/// declaration order, then τ order.
pub fn run_corpus(decls: &[IdentityDecl], cfg: &RunConfig) -> Result<VerificationReport> {
    cfg.strategy.validate()?;
    let params = cfg.strategy.params(&cfg.prec)?;
    let jobs: Vec<(&IdentityDecl, &(String, ModularParam))> =
        decls.iter().flat_map(|d| params.iter().map(move |p| (d, p))).collect();
    let threads = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(jobs.len().max(1));
    let mut results: Vec<Option<IdentityReport>> = vec![None; jobs.len()];
    std::thread::scope(|scope| {
        let chunks = results.chunks_mut(jobs.len().div_ceil(threads).max(1));
        for (k, chunk) in chunks.enumerate() {
            let offset = k * jobs.len().div_ceil(threads).max(1);
            let jobs = &jobs;
            scope.spawn(move || {
                for (i, slot) in chunk.iter_mut().enumerate() {
                    let (d, (tau, p)) = jobs[offset + i];
                    *slot = Some(run_identity_at(d, tau, p, cfg));
                }
            });
        }
    });
    Ok(VerificationReport {
        meta: cfg.meta(),
        numeric: results.into_iter().map(|r| r.expect("every job ran")).collect(),
        exact: Vec::new(),
    })
}

/// Names and default orders of the exact checks.
pub const EXACT_DEFAULTS: [(&str, i64); 7] = [
    ("riemann_L", 40),
    ("t3", 40),
    ("t2", 40),
    ("t4", 40),
    ("doubling", 60),
    ("quarter_pi_squared", 80),
    ("triple", 25),
];

/// Runs the exact checks; `orders` overrides defaults by name.
pub fn run_exact(orders: &BTreeMap<String, i64>) -> Result<Vec<ExactReport>> {
    for name in orders.keys() {
        if !EXACT_DEFAULTS.iter().any(|(n, _)| n == name) {
            return Err(Error::Domain(format!("unknown exact check `{name}`")));
        }
    }
    EXACT_DEFAULTS
        .iter()
        .map(|(name, default)| {
            let order = orders.get(*name).copied().unwrap_or(*default);
            let r = match *name {
                "riemann_L" => qformal::verify_riemann_l(order),
                "t3" => qformal::verify_prop_t3(order),
                "t2" => qformal::verify_prop_t2(order),
                "t4" => qformal::verify_prop_t4(order),
                "doubling" => qformal::verify_doubling(order),
                "quarter_pi_squared" => qformal::verify_quarter_pi_squared(order),
                _ => qformal::verify_triple_product(order),
            };
            r.map_err(|e| Error::Check {
                check: name.to_string(),
                source: Box::new(e),
            })
        })
        .collect()
}
