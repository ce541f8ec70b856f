use rug::Complex;
use serde::{Deserialize, Serialize};

use super::report::Num;
use crate::dsl::{EvalOptions, IdentityDecl, eval_sides};
use crate::error::{Error, Result};
use crate::numeric;
use crate::params::{Precision, from_real_nome};
use crate::qtrig::{EvalForm, QFunc, QTrigBase};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub q: String,
    pub deviation: Num,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub label: String,
    pub rows: Vec<SweepRow>,
    pub non_increasing: bool,
    pub strictly_decreasing: bool,
}

impl SweepTable {
    fn new(label: String, rows: Vec<(String, rug::Float)>) -> Self {
        let non_increasing = rows.windows(2).all(|w| w[1].1 <= w[0].1);
        let strictly_decreasing = rows.windows(2).all(|w| w[1].1 < w[0].1);
        SweepTable {
            label,
            rows: rows
                .into_iter()
                .map(|(q, d)| SweepRow {
                    q,
                    deviation: Num::from_float(&d),
                })
                .collect(),
            non_increasing,
            strictly_decreasing,
        }
    }
}

fn check_qs(qs: &[String], prec: &Precision) -> Result<Vec<rug::Float>> {
    let vals = qs
        .iter()
        .map(|q| numeric::real(prec.work_bits(), q))
        .collect::<Result<Vec<_>>>()?;
    if vals.iter().any(|q| !(*q > 0 && *q < 1)) || vals.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(format!("nomes must increase inside (0, 1): {qs:?}")));
    }
    Ok(vals)
}

/// The classical function a q-function tends to as q → 1.
fn classical(f: QFunc, w: &Complex, bits: u32) -> Complex {
    match f {
        QFunc::Sin => w.clone().sin(),
        QFunc::Cos => w.clone().cos(),
        QFunc::Ccs | QFunc::Ssn => numeric::one(bits),
    }
}

/// |f_q(w) − f(w)| for each real nome q.
pub fn limit_sweep(f: QFunc, qs: &[String], angle: &str, prec: &Precision, form: EvalForm) -> Result<SweepTable> {
    let bits = prec.work_bits();
    let w = Complex::with_val(bits, numeric::real(bits, angle)?);
    let mut rows = Vec::new();
    for (text, q) in qs.iter().zip(check_qs(qs, prec)?) {
        let base = QTrigBase::new(from_real_nome(&q, prec)?, 1)?;
        let v = f.eval(&w, &base, form, prec)?;
        let d = Complex::with_val(bits, &v - classical(f, &w, bits));
        rows.push((text.clone(), numeric::abs(&d)));
    }
    Ok(SweepTable::new(
        format!("{} vs its q -> 1 limit at w = {angle}", f.name()),
        rows,
    ))
}

/// Relative residual of an identity at a fixed point, for each real nome q.
pub fn identity_sweep(
    d: &IdentityDecl,
    qs: &[String],
    point: &[Complex],
    prec: &Precision,
    opts: &EvalOptions,
) -> Result<SweepTable> {
    let mut rows = Vec::new();
    for (text, q) in qs.iter().zip(check_qs(qs, prec)?) {
        let p = from_real_nome(&q, prec)?;
        let (l, r) = eval_sides(d, point, &p, prec, opts)?;
        rows.push((text.clone(), numeric::relative_residual(&l, &r)));
    }
    Ok(SweepTable::new(format!("{} residual", d.name), rows))
}
