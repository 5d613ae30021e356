//! The devil's staircase: every rational plateau with denominator up to
//! qmax, inversion of the ratio function at a given alpha by Stern-Brocot
//! descent, coverage diagnostics and plot data export.

use std::cmp::Ordering;
use std::fs::File;
use std::io::Write;
use std::path::Path;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::contfrac::cf_of_rational;
use crate::error::{Error, Result};
use crate::family::MatrixFamily;
use crate::float::{self, FloatCtx, Real};
use crate::rational_preimage::{
    preimage_interval, preimage_one, preimage_zero, Endpoint, IntervalKind, PreimageInterval,
};
use crate::Rational;

/// All plateaus with q <= qmax, plus the plateaus at 0 and 1 when nonempty,
/// in increasing order of both fraction and alpha.
#[derive(Clone, Debug)]
pub struct Staircase {
    pub family: String,
    pub qmax: u64,
    pub steps: Vec<PreimageInterval>,
    ctx: FloatCtx,
}

/// Reduced fractions p/q in (0,1) with q <= qmax, in increasing order.
pub fn farey_interior(qmax: u64) -> Vec<Rational> {
    let mut v: Vec<Rational> = (2..=qmax)
        .flat_map(|q| (1..q).filter(move |p| p.gcd(&q) == 1).map(move |p| Rational::new(p.into(), q.into())))
        .collect();
    v.sort();
    v
}

/// Compute every plateau independently (in parallel), sort by fraction and
/// verify that consecutive plateaus are strictly separated.
pub fn build_staircase(fam: &MatrixFamily, qmax: u64, ctx: &FloatCtx) -> Result<Staircase> {
    if qmax < 2 {
        return Err(Error::domain("need qmax >= 2"));
    }
    if !fam.asserted_sturmian() {
        return Err(Error::Hypothesis(format!("family {} is not asserted to be Sturmian", fam.label())));
    }
    let fractions = farey_interior(qmax);
    let interior: Vec<PreimageInterval> =
        fractions.par_iter().map(|pq| preimage_interval(fam, pq, ctx)).collect::<Result<_>>()?;
    let mut steps = Vec::with_capacity(interior.len() + 2);
    let zero = preimage_zero(fam, ctx)?;
    if !zero.is_empty() {
        steps.push(zero);
    }
    steps.extend(interior);
    let one = preimage_one(fam, ctx)?;
    if !one.is_empty() {
        steps.push(one);
    }
    verify_order(&steps)?;
    Ok(Staircase { family: fam.label().to_string(), qmax, steps, ctx: *ctx })
}

fn verify_order(steps: &[PreimageInterval]) -> Result<()> {
    for s in steps {
        if s.kind == IntervalKind::Bounded && s.lo.cmp_endpoint(&s.hi) == Some(Ordering::Greater) {
            return Err(Error::Certification(format!("plateau of {} has lo > hi", s.fraction)));
        }
    }
    for pair in steps.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.kind == IntervalKind::UnboundedAbove {
            return Err(Error::Certification(format!("unbounded plateau of {} is not last", a.fraction)));
        }
        match a.hi.cmp_endpoint(&b.lo) {
            Some(Ordering::Less) => {}
            Some(_) => {
                return Err(Error::Certification(format!(
                    "plateaus of {} and {} overlap or are out of order",
                    a.fraction, b.fraction
                )))
            }
            None => {
                return Err(Error::PrecisionExhausted(format!(
                    "cannot separate the plateaus of {} and {} at {} bits",
                    a.fraction, b.fraction, a.bits
                )))
            }
        }
    }
    Ok(())
}

impl Staircase {
    pub fn ctx(&self) -> &FloatCtx {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The plateau of a fraction, if it is part of the staircase.
    pub fn lookup(&self, pq: &Rational) -> Option<&PreimageInterval> {
        self.steps.binary_search_by(|s| s.fraction.cmp(pq)).ok().map(|i| &self.steps[i])
    }

    /// Steps whose plateau meets [a, b] (b = None means unbounded).
    pub fn restricted(&self, a: &Rational, b: Option<&Rational>) -> Vec<&PreimageInterval> {
        self.steps
            .iter()
            .filter(|s| {
                let ends_before = match s.kind {
                    IntervalKind::UnboundedAbove => false,
                    _ => s.hi.cmp_rational(a) == Some(Ordering::Less),
                };
                let starts_after = b.is_some_and(|b| s.lo.cmp_rational(b) == Some(Ordering::Greater));
                !ends_before && !starts_after
            })
            .collect()
    }

    /// The empty staircase of a family, which exports as a header-only file.
    pub fn empty(family: &str, ctx: &FloatCtx) -> Self {
        Staircase { family: family.to_string(), qmax: 0, steps: Vec::new(), ctx: *ctx }
    }
}

/// The ratio at alpha: a rational plateau, or a bracket of fractions known
/// to contain the (then possibly irrational) value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatioAnswer {
    Exact(Rational),
    Bracket { lo: Rational, hi: Rational, cf_prefix: Vec<u64> },
}

impl std::fmt::Display for RatioAnswer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RatioAnswer::Exact(r) => write!(f, "{r}"),
            RatioAnswer::Bracket { lo, hi, cf_prefix } => {
                let cf: Vec<String> = cf_prefix.iter().map(u64::to_string).collect();
                write!(f, "in ({lo}, {hi}), continued fraction [{}, ...]", cf.join(","))
            }
        }
    }
}

impl RatioAnswer {
    pub fn to_json(&self) -> Value {
        match self {
            RatioAnswer::Exact(r) => json!({"exact": r.to_string()}),
            RatioAnswer::Bracket { lo, hi, cf_prefix } => {
                json!({"bracket": [lo.to_string(), hi.to_string()], "cf_prefix": cf_prefix})
            }
        }
    }

    /// Position in fraction order, for monotonicity checks: the value or the bracket midpoint.
    pub fn representative(&self) -> Rational {
        match self {
            RatioAnswer::Exact(r) => r.clone(),
            RatioAnswer::Bracket { lo, hi, .. } => (lo + hi) / Rational::from_integer(2.into()),
        }
    }
}

/// Invert the ratio function at alpha > 0: test the plateaus at 0 and 1,
/// then descend the Stern-Brocot tree for at most `depth` mediants.
/// Plateaus found in `cache` are reused.
pub fn ratio_at(
    fam: &MatrixFamily,
    alpha: &Real,
    depth: usize,
    cache: Option<&Staircase>,
    ctx: &FloatCtx,
) -> Result<RatioAnswer> {
    if !alpha.center().is_some_and(|a| a.is_positive()) {
        return Err(Error::domain("alpha must be positive"));
    }
    let undecided = || Error::PrecisionExhausted(format!("alpha = {alpha} is too close to a plateau endpoint"));
    let fetch = |pq: &Rational, compute: &dyn Fn() -> Result<PreimageInterval>| -> Result<PreimageInterval> {
        match cache.and_then(|c| c.lookup(pq)) {
            Some(iv) => Ok(iv.clone()),
            None => compute(),
        }
    };
    let zero = fetch(&Rational::zero(), &|| preimage_zero(fam, ctx))?;
    if zero.contains(alpha).ok_or_else(undecided)? {
        return Ok(RatioAnswer::Exact(Rational::zero()));
    }
    let one = fetch(&Rational::one(), &|| preimage_one(fam, ctx))?;
    if one.contains(alpha).ok_or_else(undecided)? {
        return Ok(RatioAnswer::Exact(Rational::one()));
    }
    let (mut ln, mut ld, mut rn, mut rd) = (0u64, 1u64, 1u64, 1u64);
    for _ in 0..depth {
        let (mn, md) = (ln + rn, ld + rd);
        let m = Rational::new(mn.into(), md.into());
        let iv = fetch(&m, &|| preimage_interval(fam, &m, ctx))?;
        match iv.locate(alpha).ok_or_else(undecided)? {
            Ordering::Equal => return Ok(RatioAnswer::Exact(m)),
            Ordering::Less => (rn, rd) = (mn, md),
            Ordering::Greater => (ln, ld) = (mn, md),
        }
    }
    let lo = Rational::new(ln.into(), ld.into());
    let hi = Rational::new(rn.into(), rd.into());
    let cf_prefix = common_cf_prefix(&lo, &hi);
    Ok(RatioAnswer::Bracket { lo, hi, cf_prefix })
}

/// Coefficients shared by every number strictly between two fractions of (0,1].
fn common_cf_prefix(lo: &Rational, hi: &Rational) -> Vec<u64> {
    if lo.is_zero() || !lo.is_positive() || *hi > Rational::one() {
        return Vec::new();
    }
    let expand = |x: &Rational| -> Vec<u64> {
        if x.is_one() {
            return vec![1];
        }
        cf_of_rational(x).map(|c| c.prefix().to_vec()).unwrap_or_default()
    };
    let (a, b) = (expand(lo), expand(hi));
    // The last coefficient of each expansion is ambiguous ([.., k] = [.., k-1, 1]).
    let a = &a[..a.len().saturating_sub(1)];
    let b = &b[..b.len().saturating_sub(1)];
    a.iter().zip(b).take_while(|(x, y)| x == y).map(|(x, _)| *x).collect()
}

/// Uncovered length of a bracket of alpha values, per qmax.
#[derive(Clone, Debug)]
pub struct GapReport {
    pub bracket: (Rational, Rational),
    /// (qmax, covered length, residual length)
    pub rows: Vec<(u64, f64, f64)>,
    /// Least-squares slope of log(max plateau diameter at q) against q.
    pub diameter_slope: Option<f64>,
}

impl std::fmt::Display for GapReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "bracket [{}, {}]", self.bracket.0, self.bracket.1)?;
        writeln!(f, "{:>6} {:>14} {:>14}", "qmax", "covered", "residual")?;
        for (q, c, r) in &self.rows {
            writeln!(f, "{q:>6} {c:>14.6e} {r:>14.6e}")?;
        }
        if let Some(s) = self.diameter_slope {
            writeln!(f, "log diameter slope per unit q: {s:.4}")?;
        }
        Ok(())
    }
}

fn endpoint_rational(e: &Endpoint) -> Rational {
    float::to_rational(&e.value).unwrap_or_default()
}

/// Residual length of [a, b] not covered by plateaus with q <= qmax, for
/// each requested qmax (capped at the staircase's own qmax).
pub fn gap_diagnostics(st: &Staircase, a: &Rational, b: &Rational, qmaxes: &[u64]) -> Result<GapReport> {
    if !(a.is_positive() && a < b) {
        return Err(Error::domain("need 0 < a < b"));
    }
    let mut rows = Vec::new();
    for &qm in qmaxes {
        if qm > st.qmax {
            return Err(Error::domain(format!("qmax {qm} exceeds the staircase's {}", st.qmax)));
        }
        let mut covered = Rational::zero();
        for s in &st.steps {
            if s.fraction.denom() > &qm.into() {
                continue;
            }
            let lo = endpoint_rational(&s.lo).max(a.clone());
            let hi = match s.kind {
                IntervalKind::UnboundedAbove => b.clone(),
                _ => endpoint_rational(&s.hi).min(b.clone()),
            };
            if hi > lo {
                covered += hi - lo;
            }
        }
        let total = b - a;
        let residual = (&total - &covered).max(Rational::zero());
        rows.push((qm, covered.to_f64().unwrap_or(f64::NAN), residual.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(GapReport { bracket: (a.clone(), b.clone()), rows, diameter_slope: diameter_slope(st) })
}

/// Least-squares slope of log(max diameter among plateaus of denominator q) against q.
fn diameter_slope(st: &Staircase) -> Option<f64> {
    let mut best: std::collections::BTreeMap<u64, f64> = std::collections::BTreeMap::new();
    for s in &st.steps {
        if s.kind != IntervalKind::Bounded || s.fraction.is_zero() {
            continue;
        }
        let q = s.fraction.denom().to_u64()?;
        let d = crate::rational_preimage::diameter(s)?;
        if d > 0.0 {
            let e = best.entry(q).or_insert(0.0);
            *e = e.max(d);
        }
    }
    if best.len() < 2 {
        return None;
    }
    let pts: Vec<(f64, f64)> = best.iter().map(|(q, d)| (*q as f64, d.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

pub const CSV_HEADER: [&str; 7] = ["alpha_lo", "alpha_hi", "p", "q", "value_p_over_q", "exact_lo", "exact_hi"];

/// One export row per step, with the columns of [`CSV_HEADER`].
pub fn export_rows(steps: &[&PreimageInterval], digits: usize) -> Vec<[String; 7]> {
    let exact = |e: &Endpoint| e.exact.as_ref().map(|x| x.to_string()).unwrap_or_default();
    steps
        .iter()
        .map(|s| {
            let (hi, exact_hi) = match s.kind {
                IntervalKind::UnboundedAbove => ("inf".to_string(), "inf".to_string()),
                _ => (s.hi.decimal(digits), exact(&s.hi)),
            };
            [
                s.lo.decimal(digits),
                hi,
                s.fraction.numer().to_string(),
                s.fraction.denom().to_string(),
                float::format_rational_fixed(&s.fraction, digits),
                exact(&s.lo),
                exact_hi,
            ]
        })
        .collect()
}

/// Write the staircase (optionally restricted to alpha in [a, b]) to `out`.
pub fn export_to_writer<W: Write>(
    st: &Staircase,
    format: ExportFormat,
    range: Option<(&Rational, Option<&Rational>)>,
    digits: usize,
    out: W,
) -> Result<()> {
    let steps: Vec<&PreimageInterval> = match range {
        Some((a, b)) => st.restricted(a, b),
        None => st.steps.iter().collect(),
    };
    let rows = export_rows(&steps, digits);
    match format {
        ExportFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(CSV_HEADER).map_err(io)?;
            for r in &rows {
                w.write_record(r).map_err(io)?;
            }
            w.flush()?;
        }
        ExportFormat::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(CSV_HEADER.iter().zip(r).map(|(k, v)| (k.to_string(), json!(v))).collect()))
                .collect();
            let doc = json!({"family": st.family, "qmax": st.qmax, "steps": items});
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &doc).map_err(|e| Error::Io(e.to_string()))?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

/// Write the staircase to a file.
pub fn export(
    st: &Staircase,
    format: ExportFormat,
    path: &Path,
    range: Option<(&Rational, Option<&Rational>)>,
    digits: usize,
) -> Result<()> {
    let f = File::create(path)?;
    export_to_writer(st, format, range, digits, std::io::BufWriter::new(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{builtin_hmst, builtin_kozyakin};
    use crate::rat;

    #[test]
    fn farey_counts() {
        // Sum of Euler's phi for q = 2..=30 is 277; with the two ends, 278 entries.
        assert_eq!(farey_interior(30).len(), 277);
        assert_eq!(farey_interior(2), vec![rat(1, 2)]);
    }

    #[test]
    fn small_staircases() {
        let ctx = FloatCtx::default();
        let st = build_staircase(&builtin_hmst(), 2, &ctx).unwrap();
        let shown: Vec<String> = st.steps.iter().map(|s| s.display(10)).collect();
        assert_eq!(shown, vec!["{0}", "[4/5, 5/4]"]);
        let k = builtin_kozyakin(&rat(1, 2), &rat(1, 1), &rat(1, 1), &rat(1, 2)).unwrap();
        let st = build_staircase(&k, 2, &ctx).unwrap();
        assert_eq!(st.steps[0].display(10), "[0, 2/5]");
    }

    #[test]
    fn ratio_examples() {
        let ctx = FloatCtx::default();
        let fam = builtin_hmst();
        assert_eq!(ratio_at(&fam, &Real::from(rat(1, 1)), 20, None, &ctx).unwrap(), RatioAnswer::Exact(rat(1, 2)));
        assert_eq!(ratio_at(&fam, &Real::from(rat(5, 4)), 20, None, &ctx).unwrap(), RatioAnswer::Exact(rat(1, 2)));
        let a = Real::parse("0.74932654633").unwrap();
        match ratio_at(&fam, &a, 8, None, &ctx).unwrap() {
            RatioAnswer::Bracket { lo, hi, cf_prefix } => {
                let g = 0.3819660112501051;
                assert!(lo.to_f64().unwrap() < g && g < hi.to_f64().unwrap());
                assert!(cf_prefix.starts_with(&[2, 1, 1]), "{cf_prefix:?}");
            }
            // The truncated constant can land on a plateau of a Fibonacci convergent.
            RatioAnswer::Exact(r) => assert_eq!(r, rat(8, 21)),
        }
    }
}
