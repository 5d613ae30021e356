//! Closed-form plateaus of the ratio function at rational values.
//!
//! For 0 < p/q < 1 with standard pair (u, v), B1 = A(u), B2 = A(v),
//! A = B1 B2 and P the Perron projection of A, the set of alpha with ratio
//! p/q is
//!
//! ```text
//! [ ρ(B1 P)^q / ρ(A)^|u| ,  ρ(A)^|v| / ρ(P B2)^q ].
//! ```
//!
//! Exact families get endpoints in a real quadratic field.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::family::{check_technical_hypotheses, MatrixFamily, Verdict};
use crate::float::{self, BigFloat, FloatCtx, Real};
use crate::linalg::{product_of_word, ExactMat2, QuadMat2};
use crate::quad::QuadExt;
use crate::words::{standard_pair_for, FiniteWord, StandardPair};
use crate::Rational;

/// An interval endpoint: a float value, the exact value when known, and a
/// rounding radius for float-only endpoints.
#[derive(Clone, Debug)]
pub struct Endpoint {
    pub value: BigFloat,
    pub exact: Option<QuadExt>,
    pub radius: Option<BigFloat>,
}

impl Endpoint {
    fn from_exact(x: QuadExt, ctx: &FloatCtx) -> Self {
        Endpoint { value: x.to_float(ctx), exact: Some(x), radius: None }
    }

    fn from_float(value: BigFloat, radius: BigFloat) -> Self {
        Endpoint { value, exact: None, radius: Some(radius) }
    }

    /// Rational enclosure of the endpoint.
    pub fn bounds(&self) -> (Rational, Rational) {
        let v = float::to_rational(&self.value).unwrap_or_default();
        let r = self.radius.as_ref().and_then(float::to_rational).unwrap_or_default();
        (&v - &r, v + r)
    }

    /// Exact comparison where possible, else through the enclosure. `None`
    /// when the enclosure straddles `x`.
    pub fn cmp_rational(&self, x: &Rational) -> Option<Ordering> {
        if let Some(e) = &self.exact {
            return Some(e.cmp(&QuadExt::from_rational(x.clone())));
        }
        let (lo, hi) = self.bounds();
        if hi < *x {
            Some(Ordering::Less)
        } else if lo > *x {
            Some(Ordering::Greater)
        } else if lo == hi {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Exact order when both sides are exact, else by float enclosures.
    pub fn cmp_endpoint(&self, other: &Endpoint) -> Option<Ordering> {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return Some(a.cmp(b));
        }
        let (alo, ahi) = self.bounds();
        let (blo, bhi) = other.bounds();
        if ahi < blo {
            Some(Ordering::Less)
        } else if alo > bhi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn decimal(&self, digits: usize) -> String {
        float::format_fixed(&self.value, digits)
    }

    /// Exact form if rational, else a decimal string.
    pub fn display(&self, digits: usize) -> String {
        match self.exact.as_ref().and_then(QuadExt::to_rational) {
            Some(r) => r.to_string(),
            None => self.decimal(digits),
        }
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let mut v = json!({ "dec": self.decimal(digits) });
        if let Some(e) = &self.exact {
            v["exact"] = json!({ "a": e.a().to_string(), "b": e.b().to_string(), "D": e.d().to_string() });
        }
        if let Some(r) = &self.radius {
            v["radius"] = json!(float::format_sci(r, 3));
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalKind {
    /// [lo, hi] with lo <= hi.
    Bounded,
    /// The single point {0}.
    Singleton,
    /// [lo, +inf).
    UnboundedAbove,
    Empty,
}

#[derive(Clone, Debug)]
pub struct PreimageInterval {
    pub fraction: Rational,
    pub kind: IntervalKind,
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub pair: Option<StandardPair>,
    /// Results for families without the Sturmian assertion are conditional on it.
    pub conditional: bool,
    pub bits: usize,
}

impl PreimageInterval {
    pub fn is_empty(&self) -> bool {
        self.kind == IntervalKind::Empty
    }

    pub fn is_exact(&self) -> bool {
        self.lo.exact.is_some() && (self.kind == IntervalKind::UnboundedAbove || self.hi.exact.is_some())
    }

    /// Closed-interval membership; `None` when float enclosures cannot decide.
    pub fn contains(&self, alpha: &Real) -> Option<bool> {
        if self.is_empty() {
            return Some(false);
        }
        let (alo, ahi) = alpha.bounds()?;
        let above_lo = |x: &Rational| self.lo.cmp_rational(x).map(|o| o != Ordering::Greater);
        let below_hi = |x: &Rational| match self.kind {
            IntervalKind::UnboundedAbove => Some(true),
            _ => self.hi.cmp_rational(x).map(|o| o != Ordering::Less),
        };
        let in_lo = (above_lo(&alo)?, below_hi(&alo)?);
        let in_hi = (above_lo(&ahi)?, below_hi(&ahi)?);
        let a = in_lo.0 && in_lo.1;
        let b = in_hi.0 && in_hi.1;
        if a == b {
            Some(a)
        } else {
            None
        }
    }

    /// Position of alpha relative to the interval: Less if below, Greater if above.
    pub fn locate(&self, alpha: &Real) -> Option<Ordering> {
        if self.contains(alpha)? {
            return Some(Ordering::Equal);
        }
        let (alo, _) = alpha.bounds()?;
        match self.lo.cmp_rational(&alo)? {
            Ordering::Greater => Some(Ordering::Less),
            _ => Some(Ordering::Greater),
        }
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let mut v = json!({
            "p": self.fraction.numer().to_string(),
            "q": self.fraction.denom().to_string(),
            "lo": self.lo.to_json(digits),
            "hi": self.hi.to_json(digits),
        });
        match self.kind {
            IntervalKind::Bounded => {}
            IntervalKind::Singleton => v["kind"] = json!("singleton"),
            IntervalKind::UnboundedAbove => v["hi"] = json!({ "dec": "inf" }),
            IntervalKind::Empty => v["kind"] = json!("empty"),
        }
        if let Some(p) = &self.pair {
            v["u"] = json!(p.u.to_string());
            v["v"] = json!(p.v.to_string());
        }
        if self.conditional {
            v["conditional"] = json!(true);
        }
        v
    }

    /// "[lo, hi]" with exact rationals where available, decimals otherwise.
    pub fn display(&self, digits: usize) -> String {
        match self.kind {
            IntervalKind::Empty => "{}".to_string(),
            IntervalKind::Singleton => format!("{{{}}}", self.lo.display(digits)),
            IntervalKind::UnboundedAbove => format!("[{}, inf)", self.lo.display(digits)),
            IntervalKind::Bounded => format!("[{}, {}]", self.lo.display(digits), self.hi.display(digits)),
        }
    }
}

impl fmt::Display for PreimageInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(20))
    }
}

fn zero_endpoint(ctx: &FloatCtx) -> Endpoint {
    Endpoint::from_exact(QuadExt::from_int(0), ctx)
}

/// Rounding radius for a float endpoint built from `ops` roundings.
fn float_radius(value: &BigFloat, ops: u64, ctx: &FloatCtx) -> BigFloat {
    let v = float::to_rational(value).unwrap_or_default().abs();
    let r = v * ctx.ulp() * Rational::from_integer((16 * ops.max(1)).into());
    ctx.from_rational(&r)
}

fn require_fraction(pq: &Rational) -> Result<()> {
    if !(pq.is_positive() && *pq < Rational::one()) {
        return Err(Error::domain(format!("{pq} is not in (0,1)")));
    }
    Ok(())
}

fn hypothesis_error(e: Error) -> Error {
    match e {
        Error::RepeatedEigenvalue(m) => Error::Hypothesis(format!("degenerate Perron projection: {m}")),
        other => other,
    }
}

/// The plateau of the ratio function at p/q, 0 < p/q < 1.
pub fn preimage_interval(fam: &MatrixFamily, pq: &Rational, ctx: &FloatCtx) -> Result<PreimageInterval> {
    require_fraction(pq)?;
    let pair = standard_pair_for(pq)?;
    let q = (pair.u.len() + pair.v.len()) as u64;
    let (q1, q2) = (pair.u.len() as u64, pair.v.len() as u64);
    let (lo, hi) = match fam.exact_pair() {
        Some((a0, a1)) => {
            let b1 = product_of_word(a0, a1, &pair.u);
            let b2 = product_of_word(a0, a1, &pair.v);
            let a = b1.mul(&b2);
            let p = a.perron_projection().map_err(hypothesis_error)?;
            let r_b1p = b1.to_quad().mul(&p).rank_one_spectral_radius()?;
            let r_pb2 = p.mul(&b2.to_quad()).rank_one_spectral_radius()?;
            let rho = a.spectral_radius();
            let lo = &r_b1p.pow(q) / &rho.pow(q1);
            let hi = &rho.pow(q2) / &r_pb2.pow(q);
            (Endpoint::from_exact(lo, ctx), Endpoint::from_exact(hi, ctx))
        }
        None => {
            let w = ctx.with_extra(32);
            let (a0, a1) = fam.float_pair(&w);
            let b1 = product_of_word(&a0, &a1, &pair.u);
            let b2 = product_of_word(&a0, &a1, &pair.v);
            let a = b1.mul(&b2);
            let p = a.perron_projection().map_err(hypothesis_error)?;
            let r_b1p = b1.mul(&p).rank_one_spectral_radius()?;
            let r_pb2 = p.mul(&b2).rank_one_spectral_radius()?;
            let rho = a.spectral_radius();
            let pow_ratio = |num: &BigFloat, e1: u64, den: &BigFloat, e2: u64| {
                let l = w.sub(&w.mul(&w.from_u64(e1), &w.ln(num)), &w.mul(&w.from_u64(e2), &w.ln(den)));
                w.exp(&l)
            };
            let lo = pow_ratio(&r_b1p, q, &rho, q1);
            let hi = pow_ratio(&rho, q2, &r_pb2, q);
            let ops = 8 * q;
            let round = |x: &BigFloat| ctx.add(x, &ctx.zero());
            (
                Endpoint::from_float(round(&lo), float_radius(&lo, ops, ctx)),
                Endpoint::from_float(round(&hi), float_radius(&hi, ops, ctx)),
            )
        }
    };
    Ok(PreimageInterval {
        fraction: pq.clone(),
        kind: IntervalKind::Bounded,
        lo,
        hi,
        pair: Some(pair),
        conditional: !fam.asserted_sturmian(),
        bits: ctx.bits(),
    })
}

/// Plateau at ratio 0: [0, ρ(A0)/ρ(P0 A1)] when A0 is diagonalisable, else {0}.
pub fn preimage_zero(fam: &MatrixFamily, ctx: &FloatCtx) -> Result<PreimageInterval> {
    let mut out = PreimageInterval {
        fraction: Rational::zero(),
        kind: IntervalKind::Singleton,
        lo: zero_endpoint(ctx),
        hi: zero_endpoint(ctx),
        pair: None,
        conditional: !fam.asserted_sturmian(),
        bits: ctx.bits(),
    };
    match fam.exact_pair() {
        Some((a0, a1)) => {
            if let Ok(p0) = a0.perron_projection() {
                let r = p0.mul(&a1.to_quad()).rank_one_spectral_radius()?;
                let hi = &a0.spectral_radius() / &r;
                out.hi = Endpoint::from_exact(hi, ctx);
                out.kind = IntervalKind::Bounded;
            }
        }
        None => {
            let w = ctx.with_extra(32);
            let (a0, a1) = fam.float_pair(&w);
            if let Ok(p0) = a0.perron_projection() {
                let r = p0.mul(&a1).rank_one_spectral_radius()?;
                let hi = w.div(&a0.spectral_radius(), &r);
                out.hi = Endpoint::from_float(ctx.add(&hi, &ctx.zero()), float_radius(&hi, 16, ctx));
                out.kind = IntervalKind::Bounded;
            }
        }
    }
    Ok(out)
}

/// Plateau at ratio 1: [ρ(P1 A0)/ρ(A1), +inf) when A1 is diagonalisable, else empty.
pub fn preimage_one(fam: &MatrixFamily, ctx: &FloatCtx) -> Result<PreimageInterval> {
    let mut out = PreimageInterval {
        fraction: Rational::one(),
        kind: IntervalKind::Empty,
        lo: zero_endpoint(ctx),
        hi: zero_endpoint(ctx),
        pair: None,
        conditional: !fam.asserted_sturmian(),
        bits: ctx.bits(),
    };
    match fam.exact_pair() {
        Some((a0, a1)) => {
            if let Ok(p1) = a1.perron_projection() {
                let r = p1.mul(&a0.to_quad()).rank_one_spectral_radius()?;
                out.lo = Endpoint::from_exact(&r / &a1.spectral_radius(), ctx);
                out.kind = IntervalKind::UnboundedAbove;
            }
        }
        None => {
            let w = ctx.with_extra(32);
            let (a0, a1) = fam.float_pair(&w);
            if let Ok(p1) = a1.perron_projection() {
                let r = p1.mul(&a0).rank_one_spectral_radius()?;
                let lo = w.div(&r, &a1.spectral_radius());
                out.lo = Endpoint::from_float(ctx.add(&lo, &ctx.zero()), float_radius(&lo, 16, ctx));
                out.kind = IntervalKind::UnboundedAbove;
            }
        }
    }
    Ok(out)
}

/// Preimage of any fraction in [0,1].
pub fn preimage_of(fam: &MatrixFamily, pq: &Rational, ctx: &FloatCtx) -> Result<PreimageInterval> {
    if pq.is_zero() {
        preimage_zero(fam, ctx)
    } else if pq.is_one() {
        preimage_one(fam, ctx)
    } else {
        preimage_interval(fam, pq, ctx)
    }
}

/// S(p/q) = log ρ(A(uv)) / q.
#[derive(Clone, Debug)]
pub struct SValue {
    pub fraction: Rational,
    pub value: BigFloat,
    pub exact_rho: Option<QuadExt>,
}

/// The word whose spectral radius defines S(p/q): 0, 1, or uv.
pub fn extremal_word(pq: &Rational) -> Result<FiniteWord> {
    if pq.is_zero() {
        return Ok(FiniteWord::zeros(1));
    }
    if pq.is_one() {
        return Ok(FiniteWord::ones(1));
    }
    if pq.is_negative() || *pq > Rational::one() {
        return Err(Error::domain(format!("{pq} is not in [0,1]")));
    }
    Ok(standard_pair_for(pq)?.word())
}

pub fn s_value(fam: &MatrixFamily, pq: &Rational, ctx: &FloatCtx) -> Result<SValue> {
    let word = extremal_word(pq)?;
    let report = check_technical_hypotheses(fam, 4);
    if report.overall == Verdict::Fail {
        return Err(Error::Hypothesis(format!("technical hypotheses fail for {}", fam.label())));
    }
    let q = word.len() as u64;
    let w = ctx.with_extra(32);
    let (rho_f, exact) = match fam.exact_pair() {
        Some((a0, a1)) => {
            let r = product_of_word(a0, a1, &word).spectral_radius();
            (r.to_float(&w), Some(r))
        }
        None => {
            let (a0, a1) = fam.float_pair(&w);
            (product_of_word(&a0, &a1, &word).spectral_radius(), None)
        }
    };
    let value = w.div(&w.ln(&rho_f), &w.from_u64(q));
    Ok(SValue { fraction: pq.clone(), value: ctx.add(&value, &ctx.zero()), exact_rho: exact })
}

/// ϱ(α) = ρ(A_α(uv))^(1/q) for α in the plateau of p/q (checked).
pub fn varrho_on_interval(fam: &MatrixFamily, pq: &Rational, alpha: &Real, ctx: &FloatCtx) -> Result<BigFloat> {
    let interval = preimage_of(fam, pq, ctx)?;
    match interval.contains(alpha) {
        Some(true) => {}
        Some(false) => {
            return Err(Error::domain(format!("alpha = {alpha} lies outside the plateau of {pq}")));
        }
        None => return Err(Error::PrecisionExhausted("cannot decide plateau membership".into())),
    }
    let word = extremal_word(pq)?;
    Ok(rho_root(fam, &word, alpha, ctx))
}

/// ρ(A_α(w))^(1/|w|), exact up to the final root when possible.
pub fn rho_root(fam: &MatrixFamily, word: &FiniteWord, alpha: &Real, ctx: &FloatCtx) -> BigFloat {
    let w = ctx.with_extra(32);
    let rho = match (alpha, fam.exact_pair()) {
        (Real::Exact(a), Some(_)) => {
            let (b0, b1) = fam.scaled_exact(a).expect("exact family");
            product_of_word(&b0, &b1, word).spectral_radius().to_float(&w)
        }
        _ => {
            let (b0, b1) = fam.scaled_float(alpha, &w);
            product_of_word(&b0, &b1, word).spectral_radius()
        }
    };
    let r = w.root(&rho, word.len() as u64);
    ctx.add(&r, &ctx.zero())
}

/// Closed form of the plateau at 1/(n+1) for hmst, in Q(sqrt(n^2+4n)),
/// checked against the general construction.
pub fn general_one_over_n_interval(fam: &MatrixFamily, n: u64, ctx: &FloatCtx) -> Result<PreimageInterval> {
    if !fam.is_hmst() {
        return Err(Error::domain("the closed form applies to the hmst family only"));
    }
    if n == 0 {
        return Err(Error::domain("need n >= 1"));
    }
    let (lo, hi) = one_over_n_closed_form(n);
    let iv = preimage_interval(fam, &Rational::new(BigInt::one(), (n + 1).into()), ctx)?;
    let same = iv.lo.exact.as_ref() == Some(&lo) && iv.hi.exact.as_ref() == Some(&hi);
    if !same {
        return Err(Error::Certification(format!("closed form for 1/{} disagrees with the construction", n + 1)));
    }
    Ok(iv)
}

/// Endpoints of the plateau at 1/(n+1) for hmst:
/// lo = (1 + 1/s)^(n+1) / (1 + n/2 + s/2),
/// hi = (1 + n/2 + s/2)^n / ((n+1)/2 + (n^2+3n-2)/(2n^2+8n) s)^(n+1), s = sqrt(n^2+4n).
pub fn one_over_n_closed_form(n: u64) -> (QuadExt, QuadExt) {
    let nn = BigInt::from(n);
    let d = &nn * &nn + BigInt::from(4) * &nn;
    let r = |a: BigInt, b: BigInt| Rational::new(a, b);
    let s = QuadExt::new(Rational::zero(), Rational::one(), d.clone());
    let inv_s = QuadExt::new(Rational::zero(), r(BigInt::one(), d.clone()), d.clone());
    let one = QuadExt::from_int(1);
    let half_s = &s * &QuadExt::from_rational(r(1.into(), 2.into()));
    let base = &QuadExt::from_rational(Rational::one() + r(nn.clone(), 2.into())) + &half_s;
    let lo = &(&one + &inv_s).pow(n + 1) / &base;
    let coef = r(&nn * &nn + BigInt::from(3) * &nn - 2, BigInt::from(2) * &nn * &nn + BigInt::from(8) * &nn);
    let den = &QuadExt::from_rational(r(&nn + 1, 2.into())) + &(&s * &QuadExt::from_rational(coef));
    let hi = &base.pow(n) / &den.pow(n + 1);
    (lo, hi)
}

/// B1, B2, A = B1 B2 and P for the standard pair of p/q (exact families).
pub fn construction(fam: &MatrixFamily, pq: &Rational) -> Result<(ExactMat2, ExactMat2, ExactMat2, QuadMat2)> {
    require_fraction(pq)?;
    let (a0, a1) = fam.exact_pair().ok_or_else(|| Error::domain("family is not exact"))?;
    let pair = standard_pair_for(pq)?;
    let b1 = product_of_word(a0, a1, &pair.u);
    let b2 = product_of_word(a0, a1, &pair.v);
    let a = b1.mul(&b2);
    let p = a.perron_projection().map_err(hypothesis_error)?;
    Ok((b1, b2, a, p))
}

/// Plateau width hi - lo as a float (infinite plateaus give `None`).
pub fn diameter(iv: &PreimageInterval) -> Option<f64> {
    match iv.kind {
        IntervalKind::Bounded | IntervalKind::Singleton => {
            let lo = float::to_rational(&iv.lo.value)?;
            let hi = float::to_rational(&iv.hi.value)?;
            (hi - lo).to_f64()
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{builtin_hmst, builtin_kozyakin};
    use crate::rat;

    fn qe(a: Rational, b: Rational, d: i64) -> QuadExt {
        QuadExt::new(a, b, d.into())
    }

    #[test]
    fn half_is_four_fifths_to_five_fourths() {
        let ctx = FloatCtx::default();
        let iv = preimage_interval(&builtin_hmst(), &rat(1, 2), &ctx).unwrap();
        assert_eq!(iv.lo.exact.clone().unwrap(), QuadExt::from_rational(rat(4, 5)));
        assert_eq!(iv.hi.exact.clone().unwrap(), QuadExt::from_rational(rat(5, 4)));
        assert_eq!(iv.display(10), "[4/5, 5/4]");
    }

    #[test]
    fn table_rows_one_third_and_one_fourth() {
        let ctx = FloatCtx::default();
        let f = builtin_hmst();
        let iv = preimage_interval(&f, &rat(1, 3), &ctx).unwrap();
        assert_eq!(iv.lo.exact.unwrap(), qe(rat(69, 72), rat(-16, 72), 3));
        assert_eq!(iv.hi.exact.unwrap(), qe(rat(1656, 1331), rat(-384, 1331), 3));
        let iv = preimage_interval(&f, &rat(1, 4), &ctx).unwrap();
        assert_eq!(iv.lo.exact.unwrap(), qe(rat(496, 441), rat(-64, 441), 21));
        assert_eq!(iv.hi.exact.unwrap(), qe(rat(13671, 10000), rat(-1764, 10000), 21));
    }

    #[test]
    fn zero_and_one_plateaus() {
        let ctx = FloatCtx::default();
        let f = builtin_hmst();
        assert_eq!(preimage_zero(&f, &ctx).unwrap().kind, IntervalKind::Singleton);
        assert_eq!(preimage_one(&f, &ctx).unwrap().kind, IntervalKind::Empty);
        let h = rat(1, 2);
        let k = builtin_kozyakin(&h, &rat(1, 1), &rat(1, 1), &h).unwrap();
        let z = preimage_zero(&k, &ctx).unwrap();
        assert_eq!(z.kind, IntervalKind::Bounded);
        assert_eq!(z.hi.exact.unwrap(), QuadExt::from_rational(rat(2, 5)));
    }

    #[test]
    fn s_values() {
        let ctx = FloatCtx::default();
        let f = builtin_hmst();
        let s = s_value(&f, &rat(1, 2), &ctx).unwrap();
        assert_eq!(s.exact_rho.unwrap(), qe(rat(3, 2), rat(1, 2), 5));
        assert!(float::format_fixed(&s.value, 15).starts_with("0.481211825059603"));
        assert!(s_value(&f, &rat(0, 1), &ctx).unwrap().value.is_zero());
        let a0 = f.exact_pair().unwrap().0;
        let a1 = f.exact_pair().unwrap().1;
        let r001 = product_of_word(a0, a1, &crate::words::w("001")).spectral_radius();
        let r010 = product_of_word(a0, a1, &crate::words::w("010")).spectral_radius();
        assert_eq!(r001, r010);
    }

    #[test]
    fn varrho_examples() {
        let ctx = FloatCtx::default();
        let f = builtin_hmst();
        let v = varrho_on_interval(&f, &rat(1, 2), &Real::Exact(rat(1, 1)), &ctx).unwrap();
        assert!(float::format_fixed(&v, 40).starts_with("1.6180339887498948482045868343656381177"));
        assert!(varrho_on_interval(&f, &rat(1, 2), &Real::Exact(rat(4, 5)), &ctx).is_ok());
        assert!(varrho_on_interval(&f, &rat(1, 2), &Real::Exact(rat(2, 1)), &ctx).is_err());
    }

    #[test]
    fn closed_form_rows() {
        let ctx = FloatCtx::default();
        let f = builtin_hmst();
        let one = general_one_over_n_interval(&f, 1, &ctx).unwrap();
        assert_eq!(one.display(5), "[4/5, 5/4]");
        for n in 2..=8 {
            general_one_over_n_interval(&f, n, &ctx).unwrap();
        }
    }
}
