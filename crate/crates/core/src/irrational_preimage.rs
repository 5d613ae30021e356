//! The unique scale alpha_gamma whose extremal frequency is an irrational
//! gamma, computed from the spectral radii rho_n of the matrix products
//! along the standard words s_n of gamma.
//!
//! With p_n/q_n the convergents of gamma = [a1, a2, ...],
//!
//! ```text
//! log alpha_gamma = -log rho(A1) + sum_{n>=0} (-1)^n q_n (a_{n+1} log rho_n + log rho_{n-1} - log rho_{n+1})
//! ```
//!
//! and the partial sum up to N equals `(-1)^N (q_{N+1} log rho_N - q_N log rho_{N+1})`.
//! For the hmst family with bounded coefficients the tail is bounded by
//! `2 L C0 / rho_N`, which gives a certified radius.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::contfrac::CfExpansion;
use crate::error::{Error, Result};
use crate::family::{dual_family, MatrixFamily};
use crate::float::{self, BigFloat, FloatCtx};
use crate::linalg::{ExactMat2, FloatMat2};
use crate::words::{s_sequence, FiniteWord};
use crate::Rational;

/// Matrices B_n, traces and spectral radii along the standard words, for
/// n = -1, 0, ..., N. B_{-1} = A1, B_0 = A0, B_1 = A0^(a1-1) A1 and
/// B_{n+1} = B_n^(a_{n+1}) B_{n-1}.
#[derive(Clone, Debug)]
pub struct RhoTauSequence {
    coeffs: Vec<u64>,
    p: Vec<BigInt>,
    q: Vec<BigInt>,
    mats: Mats,
    rho: Vec<BigFloat>,
    log_rho: Vec<BigFloat>,
    /// Bound on the absolute error of `log_rho`, in units of 2^-bits.
    log_err: Vec<f64>,
    ctx: FloatCtx,
}

#[derive(Clone, Debug)]
enum Mats {
    Exact(Vec<ExactMat2>),
    Float(Vec<FloatMat2>),
}

impl RhoTauSequence {
    fn start(fam: &MatrixFamily, ctx: &FloatCtx) -> Self {
        let mats = match fam.exact_pair() {
            Some((a0, a1)) => Mats::Exact(vec![a1.clone(), a0.clone()]),
            None => {
                let (a0, a1) = fam.float_pair(ctx);
                Mats::Float(vec![a1, a0])
            }
        };
        let mut seq = RhoTauSequence {
            coeffs: Vec::new(),
            p: vec![BigInt::one(), BigInt::zero()],
            q: vec![BigInt::zero(), BigInt::one()],
            mats,
            rho: Vec::new(),
            log_rho: Vec::new(),
            log_err: Vec::new(),
            ctx: *ctx,
        };
        seq.push_rho(0);
        seq.push_rho(1);
        seq
    }

    /// Append index n+1 using the coefficient a = a_{n+1}.
    fn extend(&mut self, a: u64) -> Result<()> {
        if a == 0 {
            return Err(Error::domain("continued fraction coefficients must be positive"));
        }
        let k = self.p.len();
        let ab = BigInt::from(a);
        self.p.push(&ab * &self.p[k - 1] + &self.p[k - 2]);
        self.q.push(&ab * &self.q[k - 1] + &self.q[k - 2]);
        let first = self.coeffs.is_empty();
        let exponent = if first { a - 1 } else { a };
        match &mut self.mats {
            Mats::Exact(m) => {
                let j = m.len();
                let next = m[j - 1].pow(exponent).mul(&m[j - 2]);
                m.push(next);
            }
            Mats::Float(m) => {
                let j = m.len();
                let next = crate::linalg::matrix_power(&m[j - 1], exponent).mul(&m[j - 2]);
                m.push(next);
            }
        }
        self.coeffs.push(a);
        let idx = self.rho.len();
        self.push_rho(idx);
        Ok(())
    }

    fn push_rho(&mut self, idx: usize) {
        let c = &self.ctx;
        let (rho, rel) = match &self.mats {
            Mats::Exact(m) => exact_rho(&m[idx], c),
            Mats::Float(m) => {
                let b = &m[idx];
                let t = float::abs(&b.trace());
                let d = b.det();
                let disc = b.discriminant();
                let rel = disc_condition(c, &t, &d, &disc) + 64.0 * (self.coeffs.len() as f64 + 1.0);
                (b.spectral_radius(), rel)
            }
        };
        let lr = c.ln(&rho);
        let err = 1.01 * rel + 2.0 + 2.0 * float::to_f64(&lr).abs();
        self.rho.push(rho);
        self.log_rho.push(lr);
        self.log_err.push(err);
    }

    /// Largest index N available.
    pub fn last_index(&self) -> isize {
        self.rho.len() as isize - 2
    }

    pub fn ctx(&self) -> &FloatCtx {
        &self.ctx
    }

    /// a_k for k >= 1.
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs[k - 1]
    }

    pub fn p(&self, n: isize) -> &BigInt {
        &self.p[(n + 1) as usize]
    }

    /// q_n = |s_n|.
    pub fn q(&self, n: isize) -> &BigInt {
        &self.q[(n + 1) as usize]
    }

    pub fn rho(&self, n: isize) -> &BigFloat {
        &self.rho[(n + 1) as usize]
    }

    pub fn log_rho(&self, n: isize) -> &BigFloat {
        &self.log_rho[(n + 1) as usize]
    }

    /// Exact B_n for families with exact entries.
    pub fn matrix(&self, n: isize) -> Option<&ExactMat2> {
        match &self.mats {
            Mats::Exact(m) => Some(&m[(n + 1) as usize]),
            Mats::Float(_) => None,
        }
    }

    /// tau_n = tr B_n for families with exact entries.
    pub fn tau(&self, n: isize) -> Option<Rational> {
        self.matrix(n).map(|m| m.trace())
    }

    /// The standard word s_n (length q_n, so only practical for small n).
    pub fn word(&self, n: isize) -> Result<FiniteWord> {
        let cf = CfExpansion::finite(self.coeffs.clone())?;
        let words = s_sequence(&cf, n.max(0) as usize)?;
        Ok(words[(n + 1) as usize].clone())
    }
}

/// rho and a relative error bound (in units of 2^-bits) from exact trace and determinant.
fn exact_rho(m: &ExactMat2, c: &FloatCtx) -> (BigFloat, f64) {
    let t = m.trace().abs();
    let d = m.det();
    let disc = &t * &t - Rational::from_integer(4.into()) * &d;
    if disc.is_zero() {
        return (c.from_rational(&(t / Rational::from_integer(2.into()))), 1.0);
    }
    if disc.is_negative() {
        return (c.sqrt(&c.from_rational(&d.abs())), 2.0);
    }
    let tf = c.from_rational(&t);
    let df = c.from_rational(&d);
    let discf = c.from_rational(&disc);
    let rho = c.div(&c.add(&tf, &c.sqrt(&discf)), &c.from_u64(2));
    (rho, disc_condition(c, &tf, &df, &discf) + 4.0)
}

/// 2 (t^2 + 4|d|) / disc + 4: relative error of (t + sqrt(t^2 - 4d)) / 2 in ulps.
fn disc_condition(c: &FloatCtx, t: &BigFloat, d: &BigFloat, disc: &BigFloat) -> f64 {
    if float::is_negative(disc) || float::to_f64(disc) == 0.0 {
        return 1e30;
    }
    let num = c.add(&c.mul(t, t), &c.mul(&c.from_u64(4), &float::abs(d)));
    2.0 * float::to_f64(&c.div(&num, disc)) + 4.0
}

/// The sequence through index N, which needs a_1, ..., a_N.
pub fn rho_sequence(fam: &MatrixFamily, cf: &CfExpansion, n: usize, ctx: &FloatCtx) -> Result<RhoTauSequence> {
    if n == 0 {
        return Err(Error::domain("need N >= 1"));
    }
    let mut seq = RhoTauSequence::start(fam, ctx);
    for k in 1..=n {
        let a = cf
            .coeff(k)
            .ok_or_else(|| Error::PrecisionExhausted(format!("continued fraction has fewer than {n} coefficients")))?;
        seq.extend(a)?;
    }
    Ok(seq)
}

/// tau_{-2}, tau_{-1}, ..., tau_N from tau_{n+1} = tau_n tau_{n-1} - tau_{n-2}
/// with tau_{-2} = 1 and tau_{-1} = tau_0 = 2.
pub fn tau_recurrence_golden(n: usize) -> Vec<BigInt> {
    let mut t: Vec<BigInt> = vec![1.into(), 2.into(), 2.into()];
    for _ in 0..n {
        let k = t.len();
        let next = &t[k - 1] * &t[k - 2] - &t[k - 3];
        t.push(next);
    }
    t
}

/// Witnesses for the tail bound `2 L C0 / rho_N`, valid for every N >= n0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub l: BigInt,
    pub k: u64,
    pub n0: usize,
    pub c0: u64,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        json!({"L": self.l.to_string(), "K": self.k, "n0": self.n0, "C0": self.c0})
    }
}

/// Smallest n0 >= 3 with B_{n0-1} - K I >= 0, q_{n0+1} <= L rho_{n0} and
/// a_k <= K - 1 for all k >= n0 + 2. The coefficient bound comes from
/// `coefficient_bound` or, for eventually periodic expansions, from the
/// expansion itself. Only the hmst family with a1 >= 2 qualifies.
pub fn rigor_certificate(
    fam: &MatrixFamily,
    seq: &RhoTauSequence,
    cf: &CfExpansion,
    coefficient_bound: Option<u64>,
) -> Option<Certificate> {
    if !fam.is_hmst() {
        return None;
    }
    let a1 = cf.coeff(1)?;
    if a1 < 2 {
        return None;
    }
    let c0 = 16 * (a1 + 1) * (a1 + 2) + 1;
    let last = seq.last_index();
    let mut n0 = 3usize;
    while (n0 as isize) < last {
        let tail_sup = match coefficient_bound {
            Some(b) => Some(b),
            None if !cf.is_finite() => cf.sup_from(n0 + 2),
            None => None,
        }?;
        let k = (tail_sup + 1).max(2);
        let b = seq.matrix(n0 as isize - 1)?;
        let shifted = b.sub(&ExactMat2::identity().scale(&Rational::from_integer(k.into())));
        if shifted.is_nonnegative() {
            let l = ceil_ratio(seq.q(n0 as isize + 1), seq.rho(n0 as isize), seq.ctx());
            return Some(Certificate { l, k, n0, c0 });
        }
        n0 += 1;
    }
    None
}

/// An integer L >= q / rho, padded against rounding in rho.
fn ceil_ratio(q: &BigInt, rho: &BigFloat, c: &FloatCtx) -> BigInt {
    let x = float::to_rational(&c.div(&c.from_bigint(q), rho)).unwrap_or_default();
    let padded = x * Rational::new(BigInt::from(1u64 << 40) + 1, BigInt::from(1u64 << 40));
    padded.ceil().to_integer()
}

/// Controls for [`alpha_for_irrational`].
#[derive(Clone, Debug)]
pub struct AlphaOptions {
    /// Requested decimal digits; the radius target is 10^-digits.
    pub digits: usize,
    /// Use exactly this many terms instead of stopping at the target.
    pub terms: Option<usize>,
    /// Upper limit on the number of terms tried.
    pub max_terms: usize,
    /// Known bound on every coefficient of the expansion.
    pub coefficient_bound: Option<u64>,
}

impl Default for AlphaOptions {
    fn default() -> Self {
        AlphaOptions { digits: 30, terms: None, max_terms: 40, coefficient_bound: None }
    }
}

/// The computed alpha_gamma with its error radius.
#[derive(Clone, Debug)]
pub struct AlphaResult {
    pub value: BigFloat,
    /// Certified when `rigorous`, otherwise four times the last step.
    pub radius: BigFloat,
    pub rigorous: bool,
    pub terms: usize,
    pub certificate: Option<Certificate>,
    /// gamma > 1/2 was handled through 1 - gamma and inversion.
    pub via_complement: bool,
    pub bits: usize,
}

impl AlphaResult {
    pub fn decimal(&self, digits: usize) -> String {
        float::format_fixed(&self.value, digits)
    }

    pub fn radius_decimal(&self) -> String {
        float::format_sci(&self.radius, 3)
    }

    /// Lower and upper bounds value -+ radius as exact rationals.
    pub fn bounds(&self) -> (Rational, Rational) {
        let v = float::to_rational(&self.value).unwrap_or_default();
        let r = float::to_rational(&self.radius).unwrap_or_default();
        (&v - &r, &v + &r)
    }

    pub fn to_json(&self, gamma: Value, digits: usize) -> Value {
        let radius = if self.rigorous { Value::from(self.radius_decimal()) } else { Value::from("heuristic") };
        let mut v = json!({
            "gamma": gamma,
            "alpha": self.decimal(digits),
            "radius": radius,
            "N": self.terms,
            "rigorous": self.rigorous,
            "certificate": self.certificate.as_ref().map(Certificate::to_json),
        });
        if !self.rigorous {
            v["heuristic_radius"] = Value::from(self.radius_decimal());
        }
        v
    }
}

impl fmt::Display for AlphaResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = decimal_digits_for(&self.radius);
        let kind = if self.rigorous { "rigorous" } else { "heuristic" };
        write!(
            f,
            "{} +- {} ({kind}, N = {}, {} bits)",
            self.decimal(digits),
            self.radius_decimal(),
            self.terms,
            self.bits
        )
    }
}

/// Number of fractional digits justified by a radius.
fn decimal_digits_for(radius: &BigFloat) -> usize {
    let r = float::to_f64(radius);
    if r <= 0.0 || !r.is_finite() {
        return 30;
    }
    ((-r.log10()).floor().max(1.0) as usize).min(200)
}

/// alpha_gamma for irrational gamma given by its continued fraction. The
/// expansion may be a finite truncation of an irrational one.
pub fn alpha_for_irrational(
    fam: &MatrixFamily,
    cf: &CfExpansion,
    opts: &AlphaOptions,
    ctx: &FloatCtx,
) -> Result<AlphaResult> {
    if !fam.asserted_sturmian() {
        return Err(Error::Hypothesis(format!("family {} is not asserted to be Sturmian", fam.label())));
    }
    if cf.len().is_some_and(|n| n < 2) {
        return Err(Error::domain("gamma must be irrational; the expansion is too short"));
    }
    let a1 = cf.coeff(1).ok_or_else(|| Error::domain("empty continued fraction"))?;
    if a1 > 1 {
        return alpha_direct(fam, cf, opts, ctx);
    }
    // alpha_gamma(A0, A1) = 1 / alpha_{1-gamma}(A1, A0); the swapped hmst pair
    // is the transpose of hmst, which has the same staircase.
    let comp = cf.complement()?;
    let swapped = if fam.is_transpose_symmetric() { fam.clone() } else { dual_family(fam) };
    let r = alpha_direct(&swapped, &comp, opts, ctx)?;
    let c = FloatCtx::new(r.bits);
    let value = c.div(&c.one(), &r.value);
    // |1/x - 1/y| <= r / (x (x - r))
    let lower = c.sub(&r.value, &r.radius);
    if float::is_negative(&lower) || float::to_f64(&lower) == 0.0 {
        return Err(Error::PrecisionExhausted("radius too large to invert".into()));
    }
    let radius = c.div(&r.radius, &c.mul(&r.value, &lower));
    let radius = c.mul(&radius, &c.from_f64(1.0 + 1e-15));
    Ok(AlphaResult { value, radius, via_complement: true, ..r })
}

fn alpha_direct(fam: &MatrixFamily, cf: &CfExpansion, opts: &AlphaOptions, ctx: &FloatCtx) -> Result<AlphaResult> {
    let req_bits = (opts.digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 8;
    let mut bits = ctx.bits().max(256).max(req_bits + 64);
    loop {
        let c = FloatCtx::new(bits);
        match alpha_at_precision(fam, cf, opts, &c)? {
            Attempt::Done(r) => return Ok(r),
            Attempt::NeedBits if bits < (1 << 20) => bits *= 2,
            Attempt::NeedBits => return Err(Error::PrecisionExhausted("working precision limit reached".into())),
        }
    }
}

enum Attempt {
    Done(AlphaResult),
    NeedBits,
}

fn alpha_at_precision(fam: &MatrixFamily, cf: &CfExpansion, opts: &AlphaOptions, c: &FloatCtx) -> Result<Attempt> {
    let available = cf.len().unwrap_or(usize::MAX);
    let limit = opts.terms.unwrap_or(opts.max_terms).min(available.saturating_sub(1));
    if limit == 0 {
        return Err(Error::PrecisionExhausted("need at least two coefficients".into()));
    }
    let target = {
        let ten = Rational::from_integer(10.into());
        let t = Rational::one() / num_traits::pow(ten, opts.digits);
        c.from_rational(&t)
    };
    let mut seq = RhoTauSequence::start(fam, c);
    seq.extend(cf.coeff(1).expect("checked"))?;
    // log alpha_{-1} = -log rho(A1)
    let mut sum = c.sub(&c.zero(), seq.log_rho(-1));
    let mut err_ulps = seq.log_err[0];
    let mut cert: Option<Certificate> = None;
    for n in 0..=limit {
        let a_next = cf.coeff(n + 1).expect("within limit");
        if (seq.last_index() as usize) < n + 1 {
            seq.extend(a_next)?;
        }
        let ni = n as isize;
        let qn = c.from_bigint(seq.q(ni));
        let inner =
            c.sub(&c.add(&c.mul(&c.from_u64(a_next), seq.log_rho(ni)), seq.log_rho(ni - 1)), seq.log_rho(ni + 1));
        let mut term = c.mul(&qn, &inner);
        if n % 2 == 1 {
            term = c.sub(&c.zero(), &term);
        }
        sum = c.add(&sum, &term);
        let qf = float::to_f64(&qn);
        let mag = a_next as f64 * float::to_f64(seq.log_rho(ni)).abs()
            + float::to_f64(seq.log_rho(ni - 1)).abs()
            + float::to_f64(seq.log_rho(ni + 1)).abs();
        err_ulps += qf * (a_next as f64 * seq.log_err[n + 1] + seq.log_err[n] + seq.log_err[n + 2] + 4.0 * mag)
            + 2.0 * float::to_f64(&term).abs()
            + 2.0 * float::to_f64(&sum).abs();
        if n == 0 {
            continue;
        }
        if cert.is_none() && n >= 3 {
            cert = rigor_certificate(fam, &seq, cf, opts.coefficient_bound);
        }
        let value = c.exp(&sum);
        let rounding_log = c.mul(&c.from_f64(err_ulps + 8.0), &ulp_float(c));
        let tail = match &cert {
            Some(ct) if n >= ct.n0 => {
                let num = c.mul(&c.from_bigint(&(&ct.l * BigInt::from(2 * ct.c0))), &c.one());
                Some(c.div(&num, seq.rho(ni)))
            }
            _ => None,
        };
        let rigorous = tail.is_some();
        let log_radius = match tail {
            Some(t) => c.add(&t, &rounding_log),
            None => c.add(&c.mul(&c.from_u64(4), &float::abs(&term)), &rounding_log),
        };
        let radius = radius_from_log(c, &value, &log_radius);
        let done = match opts.terms {
            Some(t) => n == t,
            None => float::cmp(&radius, &target).is_lt(),
        };
        if done {
            let rounding_abs = radius_from_log(c, &value, &rounding_log);
            if float::cmp(&c.mul(&rounding_abs, &c.from_u64(8)), &target).is_gt() && opts.terms.is_none() {
                return Ok(Attempt::NeedBits);
            }
            return Ok(Attempt::Done(AlphaResult {
                value,
                radius,
                rigorous,
                terms: n,
                certificate: if rigorous { cert } else { None },
                via_complement: false,
                bits: c.bits(),
            }));
        }
    }
    Err(Error::PrecisionExhausted(format!("cannot reach 10^-{} with {limit} continued fraction terms", opts.digits)))
}

fn ulp_float(c: &FloatCtx) -> BigFloat {
    c.from_rational(&Rational::new(BigInt::one(), BigInt::one() << c.bits()))
}

/// Absolute radius on exp(x) from a radius r on x: value * (e^r - 1) <= value * r * (1 + r) for r <= 1.
fn radius_from_log(c: &FloatCtx, value: &BigFloat, r: &BigFloat) -> BigFloat {
    let one = c.one();
    let factor = if float::cmp(r, &one).is_le() { c.mul(r, &c.add(&one, r)) } else { c.sub(&c.exp(r), &one) };
    let rad = c.mul(value, &factor);
    c.add(&rad, &c.mul(value, &c.mul(&c.from_u64(4), &ulp_float(c))))
}

/// The partial value with traces in place of spectral radii,
/// `(tau_N^{q_{N+1}} / tau_{N+1}^{q_N})^{(-1)^N}`. Requires a certificate,
/// since the substitution is only justified when q_n = O(rho_{n-1}).
pub fn alpha_by_traces(
    fam: &MatrixFamily,
    cf: &CfExpansion,
    n: usize,
    coefficient_bound: Option<u64>,
    ctx: &FloatCtx,
) -> Result<BigFloat> {
    let seq = rho_sequence(fam, cf, (n + 1).max(5), ctx)?;
    if rigor_certificate(fam, &seq, cf, coefficient_bound).is_none() {
        return Err(Error::Certification("no bounded-coefficient certificate for the trace formula".into()));
    }
    let c = ctx;
    let ni = n as isize;
    let ln_tau = |k: isize| c.ln(&c.from_rational(&seq.tau(k).expect("hmst is exact")));
    let x =
        c.sub(&c.mul(&c.from_bigint(seq.q(ni + 1)), &ln_tau(ni)), &c.mul(&c.from_bigint(seq.q(ni)), &ln_tau(ni + 1)));
    let x = if n % 2 == 1 { c.sub(&c.zero(), &x) } else { x };
    Ok(c.exp(&x))
}

/// The product `prod_{n=0}^{N} (1 - tau_{n-2} / (tau_{n-1} tau_n))^{(-1)^{n+1} q_n}`
/// over the golden traces, with q_n the Fibonacci denominators of (3 - sqrt 5)/2
/// (q_0 = 1, q_1 = 2, q_2 = 3, ...).
pub fn alpha_star_product(n: usize, ctx: &FloatCtx) -> BigFloat {
    let c = ctx;
    let tau = tau_recurrence_golden(n + 1);
    let t = |k: isize| c.from_bigint(&tau[(k + 2) as usize]);
    let mut q: Vec<BigInt> = vec![BigInt::one(), BigInt::from(2)];
    while q.len() <= n {
        let k = q.len();
        q.push(&q[k - 1] + &q[k - 2]);
    }
    let mut log = c.zero();
    for k in 0..=n as isize {
        let base = c.sub(&c.one(), &c.div(&t(k - 2), &c.mul(&t(k - 1), &t(k))));
        let term = c.mul(&c.from_bigint(&q[k as usize]), &c.ln(&base));
        log = if k % 2 == 1 { c.add(&log, &term) } else { c.sub(&log, &term) };
    }
    c.exp(&log)
}

/// Convergents p_k/q_k (k >= 1) with q_k <= qmax, with their indices.
pub fn convergent_indices_up_to(cf: &CfExpansion, qmax: u64) -> Vec<(usize, Rational)> {
    let mut out = Vec::new();
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for (k, a) in cf.iter().enumerate() {
        let a = BigInt::from(a);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2.to_u64().is_none_or(|v| v > qmax) {
            break;
        }
        out.push((k + 1, Rational::new(p2.clone(), q2.clone())));
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::builtin_hmst;

    #[test]
    fn golden_traces_follow_recurrence() {
        let ctx = FloatCtx::new(256);
        let seq = rho_sequence(&builtin_hmst(), &CfExpansion::golden(), 12, &ctx).unwrap();
        let rec = tau_recurrence_golden(12);
        for n in -1..=12isize {
            assert_eq!(seq.tau(n).unwrap(), Rational::from_integer(rec[(n + 2) as usize].clone()), "n = {n}");
        }
        let expected = [1, 2, 2, 3, 4, 10, 37, 366, 13532, 4952675];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(rec[i], BigInt::from(*e));
        }
    }

    #[test]
    fn golden_alpha_star() {
        let ctx = FloatCtx::new(256);
        let opts = AlphaOptions { digits: 29, ..Default::default() };
        let r = alpha_for_irrational(&builtin_hmst(), &CfExpansion::golden(), &opts, &ctx).unwrap();
        assert!(r.rigorous);
        assert!(r.terms <= 14);
        assert!(r.decimal(29).starts_with("0.74932654633036755794396194809"), "{}", r.decimal(29));
        let cert = r.certificate.unwrap();
        assert_eq!((cert.k, cert.n0, cert.c0), (2, 3, 193));
    }

    #[test]
    fn trace_forms_agree() {
        let ctx = FloatCtx::new(512);
        let fam = builtin_hmst();
        let g = CfExpansion::golden();
        let by_traces = alpha_by_traces(&fam, &g, 10, None, &ctx).unwrap();
        let star = alpha_star_product(10, &ctx);
        let a = float::format_fixed(&by_traces, 25);
        let b = float::format_fixed(&star, 25);
        let r = alpha_for_irrational(&fam, &g, &AlphaOptions::default(), &ctx).unwrap();
        assert_eq!(a, r.decimal(25));
        assert_eq!(b, r.decimal(25));
    }

    #[test]
    fn sqrt5_minus_2_and_complement() {
        let ctx = FloatCtx::new(256);
        let fam = builtin_hmst();
        let cf = CfExpansion::periodic(vec![], vec![4]).unwrap();
        let opts = AlphaOptions { digits: 20, ..Default::default() };
        let r = alpha_for_irrational(&fam, &cf, &opts, &ctx).unwrap();
        assert!(r.decimal(10).starts_with("0.4596704785"), "{}", r.decimal(20));
        let cert = r.certificate.clone().unwrap();
        assert_eq!((cert.k, cert.n0), (5, 3));
        let seq = rho_sequence(&fam, &cf, 5, &ctx).unwrap();
        let five = ExactMat2::identity().scale(&Rational::from_integer(5.into()));
        assert!(seq.matrix(3).unwrap().sub(&five).is_nonnegative());
        let comp = cf.complement().unwrap();
        let s = alpha_for_irrational(&fam, &comp, &opts, &ctx).unwrap();
        assert!(s.via_complement && s.rigorous);
        let prod = ctx.mul(&r.value, &s.value);
        assert!(
            float::format_fixed(&prod, 18).starts_with("1.0000000000000000")
                || float::format_fixed(&prod, 18).starts_with("0.9999999999999999")
        );
    }
}
