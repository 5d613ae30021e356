//! One-parameter families {A0, alpha*A1}, the built-in examples, and checks
//! of the technical hypotheses the theory relies on.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::float::{self, BigFloat, FloatCtx, Real};
use crate::linalg::{product_of_word, ExactMat2, FloatMat2, Mat2};
use crate::words::FiniteWord;
use crate::Rational;

#[derive(Clone, Debug)]
pub enum FamilyMatrices {
    Exact { a0: ExactMat2, a1: ExactMat2 },
    Float { a0: FloatMat2, a1: FloatMat2 },
}

/// The pair A0, A1. The scaled family is A0^(alpha) = A0, A1^(alpha) = alpha*A1.
#[derive(Clone, Debug)]
pub struct MatrixFamily {
    label: String,
    mats: FamilyMatrices,
    asserted_sturmian: bool,
}

impl MatrixFamily {
    pub fn new_exact(label: impl Into<String>, a0: ExactMat2, a1: ExactMat2, asserted_sturmian: bool) -> Result<Self> {
        if a0 == a1 {
            return Err(Error::domain("A0 and A1 must differ"));
        }
        Ok(MatrixFamily { label: label.into(), mats: FamilyMatrices::Exact { a0, a1 }, asserted_sturmian })
    }

    pub fn new_float(label: impl Into<String>, a0: FloatMat2, a1: FloatMat2, asserted_sturmian: bool) -> Result<Self> {
        let same = (0..2).all(|i| (0..2).all(|j| float::cmp(a0.get(i, j), a1.get(i, j)).is_eq()));
        if same {
            return Err(Error::domain("A0 and A1 must differ"));
        }
        Ok(MatrixFamily { label: label.into(), mats: FamilyMatrices::Float { a0, a1 }, asserted_sturmian })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrices(&self) -> &FamilyMatrices {
        &self.mats
    }

    pub fn asserted_sturmian(&self) -> bool {
        self.asserted_sturmian
    }

    /// All entries are exact rationals.
    pub fn is_integral(&self) -> bool {
        matches!(self.mats, FamilyMatrices::Exact { .. })
    }

    pub fn exact_pair(&self) -> Option<(&ExactMat2, &ExactMat2)> {
        match &self.mats {
            FamilyMatrices::Exact { a0, a1 } => Some((a0, a1)),
            FamilyMatrices::Float { .. } => None,
        }
    }

    /// The unscaled pair as floats at `ctx`.
    pub fn float_pair(&self, ctx: &FloatCtx) -> (FloatMat2, FloatMat2) {
        match &self.mats {
            FamilyMatrices::Exact { a0, a1 } => (a0.to_float(ctx), a1.to_float(ctx)),
            FamilyMatrices::Float { a0, a1 } => (a0.with_ctx(ctx), a1.with_ctx(ctx)),
        }
    }

    /// (A0, alpha*A1) exactly, when both the family and alpha are exact.
    pub fn scaled_exact(&self, alpha: &Rational) -> Option<(ExactMat2, ExactMat2)> {
        self.exact_pair().map(|(a0, a1)| (a0.clone(), a1.scale(alpha)))
    }

    /// (A0, alpha*A1) as floats.
    pub fn scaled_float(&self, alpha: &Real, ctx: &FloatCtx) -> (FloatMat2, FloatMat2) {
        if let (Real::Exact(a), Some(_)) = (alpha, self.exact_pair()) {
            let (b0, b1) = self.scaled_exact(a).expect("exact family");
            return (b0.to_float(ctx), b1.to_float(ctx));
        }
        let (a0, a1) = self.float_pair(ctx);
        (a0, a1.scale(&alpha.to_float(ctx)))
    }

    /// The family from hmst: A0 = [[1,1],[0,1]], A1 = [[1,0],[1,1]].
    pub fn is_hmst(&self) -> bool {
        match self.exact_pair() {
            Some((a0, a1)) => *a0 == ExactMat2::from_ints(1, 1, 0, 1) && *a1 == ExactMat2::from_ints(1, 0, 1, 1),
            None => false,
        }
    }

    /// A0 = A1^T, which makes the family self-dual up to transposition.
    pub fn is_transpose_symmetric(&self) -> bool {
        match self.exact_pair() {
            Some((a0, a1)) => *a0 == a1.transpose(),
            None => false,
        }
    }

    /// A family literal:
    /// `{"label": "...", "A0": [["1","1"],["0","1"]], "A1": [...], "asserted_sturmian": true}`.
    /// Entries are rationals ("n/d", "0.5", 3) or floats written as
    /// `{"dec": "2.718281828", "prec": 256}`.
    pub fn from_json(text: &str, ctx: &FloatCtx) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let label = v.get("label").and_then(Value::as_str).unwrap_or("custom").to_string();
        let asserted = v.get("asserted_sturmian").and_then(Value::as_bool).unwrap_or(false);
        let m0 = parse_matrix(v.get("A0").ok_or_else(|| Error::Parse("missing A0".into()))?)?;
        let m1 = parse_matrix(v.get("A1").ok_or_else(|| Error::Parse("missing A1".into()))?)?;
        let all_exact = m0.iter().chain(&m1).all(|e| matches!(e, Entry::Exact(_)));
        if all_exact {
            let ex = |m: &[Entry; 4]| {
                let r = |k: usize| match &m[k] {
                    Entry::Exact(r) => r.clone(),
                    Entry::Float(..) => unreachable!(),
                };
                Mat2::new(r(0), r(1), r(2), r(3))
            };
            return MatrixFamily::new_exact(label, ex(&m0), ex(&m1), asserted);
        }
        let bits = m0
            .iter()
            .chain(&m1)
            .filter_map(|e| match e {
                Entry::Float(_, p) => Some(*p),
                Entry::Exact(_) => None,
            })
            .max()
            .unwrap_or(ctx.bits())
            .max(ctx.bits());
        let fctx = FloatCtx::new(bits);
        let fl = |m: &[Entry; 4]| {
            FloatMat2::from_fn(&fctx, |i, j| match &m[2 * i + j] {
                Entry::Exact(r) => fctx.from_rational(r),
                Entry::Float(r, _) => fctx.from_rational(r),
            })
        };
        MatrixFamily::new_float(label, fl(&m0), fl(&m1), asserted)
    }
}

enum Entry {
    Exact(Rational),
    Float(Rational, usize),
}

fn parse_entry(v: &Value) -> Result<Entry> {
    match v {
        Value::String(s) => Ok(Entry::Exact(float::parse_decimal_rational(s)?)),
        Value::Number(n) => Ok(Entry::Exact(float::parse_decimal_rational(&n.to_string())?)),
        Value::Object(o) => {
            let dec = o
                .get("dec")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("float entry needs a \"dec\" string".into()))?;
            let prec = o.get("prec").and_then(Value::as_u64).unwrap_or(FloatCtx::DEFAULT_BITS as u64);
            Ok(Entry::Float(float::parse_decimal_rational(dec)?, prec as usize))
        }
        _ => Err(Error::Parse(format!("bad matrix entry {v}"))),
    }
}

fn parse_matrix(v: &Value) -> Result<[Entry; 4]> {
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(|| Error::Parse("matrix must have 2 rows".into()))?;
    let mut out = Vec::with_capacity(4);
    for row in rows {
        let cols =
            row.as_array().filter(|c| c.len() == 2).ok_or_else(|| Error::Parse("row must have 2 entries".into()))?;
        for c in cols {
            out.push(parse_entry(c)?);
        }
    }
    let [a, b, c, d]: [Entry; 4] = out.try_into().map_err(|_| Error::Parse("bad matrix".into()))?;
    Ok([a, b, c, d])
}

impl fmt::Display for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mats {
            FamilyMatrices::Exact { a0, a1 } => write!(f, "{}: A0={a0}, A1={a1}", self.label),
            FamilyMatrices::Float { a0, a1 } => write!(f, "{}: A0={a0}, A1={a1}", self.label),
        }
    }
}

pub fn builtin_hmst() -> MatrixFamily {
    MatrixFamily::new_exact("hmst", ExactMat2::from_ints(1, 1, 0, 1), ExactMat2::from_ints(1, 0, 1, 1), true)
        .expect("distinct matrices")
}

/// A0 = [[e^(κh0)+1, 0], [e^κ, 1]], A1 = [[1, e^κ], [0, e^(κh1)+1]] for
/// κ, h0, h1 > 0 and h0 + h1 < 2.
pub fn builtin_bousch_mairesse(kappa: &Real, h0: &Real, h1: &Real, ctx: &FloatCtx) -> Result<MatrixFamily> {
    let c = |x: &Real| x.center().ok_or_else(|| Error::domain("parameter is not finite"));
    let (k, a, b) = (c(kappa)?, c(h0)?, c(h1)?);
    if !(k.is_positive() && a.is_positive() && b.is_positive()) {
        return Err(Error::domain("need kappa, h0, h1 > 0"));
    }
    if &a + &b >= Rational::from_integer(2.into()) {
        return Err(Error::domain("need h0 + h1 < 2"));
    }
    let w = ctx.with_extra(32);
    let kf = kappa.to_float(&w);
    let ek = w.exp(&kf);
    let e0 = w.add(&w.exp(&w.mul(&kf, &h0.to_float(&w))), &w.one());
    let e1 = w.add(&w.exp(&w.mul(&kf, &h1.to_float(&w))), &w.one());
    let r = |x: &BigFloat| ctx.add(x, &ctx.zero());
    let a0 = FloatMat2::new(ctx, [[r(&e0), ctx.zero()], [r(&ek), ctx.one()]]);
    let a1 = FloatMat2::new(ctx, [[ctx.one(), r(&ek)], [ctx.zero(), r(&e1)]]);
    MatrixFamily::new_float(format!("bm({kappa},{h0},{h1})"), a0, a1, true)
}

/// A0 = [[a,b],[0,1]], A1 = [[1,0],[c,d]] for 0 < a, d < 1 <= bc with b, c > 0.
pub fn builtin_kozyakin(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<MatrixFamily> {
    let one = Rational::one();
    if !(a.is_positive() && *a < one && d.is_positive() && *d < one) {
        return Err(Error::domain("need 0 < a, d < 1"));
    }
    if !(b.is_positive() && c.is_positive()) {
        return Err(Error::domain("need b, c > 0"));
    }
    if b * c < one {
        return Err(Error::domain("need bc >= 1"));
    }
    let z = Rational::zero();
    let a0 = Mat2::new(a.clone(), b.clone(), z.clone(), one.clone());
    let a1 = Mat2::new(one, z, c.clone(), d.clone());
    MatrixFamily::new_exact(format!("kozyakin({a},{b},{c},{d})"), a0, a1, true)
}

/// Swap the roles of A0 and A1.
pub fn dual_family(fam: &MatrixFamily) -> MatrixFamily {
    let mats = match &fam.mats {
        FamilyMatrices::Exact { a0, a1 } => FamilyMatrices::Exact { a0: a1.clone(), a1: a0.clone() },
        FamilyMatrices::Float { a0, a1 } => FamilyMatrices::Float { a0: a1.clone(), a1: a0.clone() },
    };
    let label = match fam.label.strip_prefix("dual(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("dual({})", fam.label),
    };
    MatrixFamily { label, mats, asserted_sturmian: fam.asserted_sturmian }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Indeterminate => "INDETERMINATE",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub family: String,
    pub checks: Vec<Check>,
    pub overall: Verdict,
}

impl HypothesisReport {
    fn new(family: &str) -> Self {
        HypothesisReport { family: family.to_string(), checks: Vec::new(), overall: Verdict::Pass }
    }

    pub fn push(&mut self, name: &str, verdict: Verdict, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), verdict, detail: detail.into() });
        self.overall = if self.checks.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if self.checks.iter().any(|c| c.verdict == Verdict::Indeterminate) {
            Verdict::Indeterminate
        } else {
            Verdict::Pass
        };
    }

    pub fn passed(&self) -> bool {
        self.overall == Verdict::Pass
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family {}", self.family)?;
        for c in &self.checks {
            writeln!(f, "  {:<34} {:<13} {}", c.name, c.verdict.to_string(), c.detail)?;
        }
        write!(f, "overall: {}", self.overall)
    }
}

/// Sign of a value known exactly or to a relative tolerance.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Sgn {
    Neg,
    Zero,
    Pos,
    Unknown,
}

fn sgn_exact(r: &Rational) -> Sgn {
    if r.is_positive() {
        Sgn::Pos
    } else if r.is_negative() {
        Sgn::Neg
    } else {
        Sgn::Zero
    }
}

fn sgn_float(x: &BigFloat, scale: &Rational, tol: &Rational) -> Sgn {
    let r = float::to_rational(x).unwrap_or_default();
    if r.is_zero() {
        Sgn::Zero
    } else if r.abs() <= scale * tol {
        Sgn::Unknown
    } else {
        sgn_exact(&r)
    }
}

/// Check nonnegativity, invertibility, positive traces, absence of a common
/// invariant subspace, and positivity of every mixed product.
pub fn check_technical_hypotheses(fam: &MatrixFamily, depth: usize) -> HypothesisReport {
    let depth = depth.max(2);
    let mut rep = HypothesisReport::new(&fam.label);
    match &fam.mats {
        FamilyMatrices::Exact { a0, a1 } => {
            let nonneg = a0.is_nonnegative() && a1.is_nonnegative();
            rep.push("nonnegative", pass_if(nonneg), "exact");
            let inv = !a0.det().is_zero() && !a1.det().is_zero();
            rep.push("invertible", pass_if(inv), format!("det A0 = {}, det A1 = {}", a0.det(), a1.det()));
            let tr = a0.trace().is_positive() && a1.trace().is_positive();
            rep.push("positive trace", pass_if(tr), format!("tr A0 = {}, tr A1 = {}", a0.trace(), a1.trace()));
            let comm = a0.mul(a1).sub(&a1.mul(a0)).det();
            let distinct = a0 != a1;
            rep.push(
                "no common invariant subspace",
                pass_if(!comm.is_zero() && distinct),
                format!("det[A0,A1] = {comm}"),
            );
            let (v, d) = mixed_positivity(
                a0.has_positive_diagonal() && a1.has_positive_diagonal() && nonneg,
                a0.mul(a1).is_positive() && a1.mul(a0).is_positive(),
                depth,
                |w| {
                    let m = product_of_word(a0, a1, w);
                    if m.is_positive() {
                        Sgn::Pos
                    } else {
                        Sgn::Neg
                    }
                },
            );
            rep.push("mixed products positive", v, d);
        }
        FamilyMatrices::Float { a0, a1 } => {
            let ctx = *a0.ctx();
            let tol = Rational::new(1.into(), num_bigint::BigInt::one() << (ctx.bits() - 16));
            let scale = |m: &FloatMat2| -> Rational {
                (0..4)
                    .map(|k| float::to_rational(m.get(k / 2, k % 2)).unwrap_or_default().abs())
                    .fold(Rational::zero(), |a, b| a.max(b))
            };
            let s = scale(a0).max(scale(a1));
            let s2 = &s * &s;
            let entries = |m: &FloatMat2| (0..4).map(|k| sgn_float(m.get(k / 2, k % 2), &s, &tol)).collect::<Vec<_>>();
            let all: Vec<Sgn> = entries(a0).into_iter().chain(entries(a1)).collect();
            let nonneg = if all.contains(&Sgn::Neg) {
                Verdict::Fail
            } else if all.contains(&Sgn::Unknown) {
                Verdict::Indeterminate
            } else {
                Verdict::Pass
            };
            rep.push("nonnegative", nonneg, format!("{}-bit floats", ctx.bits()));
            let dets = [sgn_float(&a0.det(), &s2, &tol), sgn_float(&a1.det(), &s2, &tol)];
            rep.push("invertible", sign_verdict(&dets, |g| g != Sgn::Zero), "relative tolerance");
            let trs = [sgn_float(&a0.trace(), &s, &tol), sgn_float(&a1.trace(), &s, &tol)];
            rep.push("positive trace", sign_verdict(&trs, |g| g == Sgn::Pos), "relative tolerance");
            let comm = a0.mul(a1).sub(&a1.mul(a0)).det();
            let s4 = &s2 * &s2;
            rep.push(
                "no common invariant subspace",
                sign_verdict(&[sgn_float(&comm, &s4, &tol)], |g| g != Sgn::Zero),
                format!("det[A0,A1] = {}", float::format_sci(&comm, 6)),
            );
            let pos = |m: &FloatMat2| {
                let sc = scale(m);
                (0..4).all(|k| sgn_float(m.get(k / 2, k % 2), &sc, &tol) == Sgn::Pos)
            };
            let diag = |m: &FloatMat2| {
                let sc = scale(m);
                sgn_float(m.get(0, 0), &sc, &tol) == Sgn::Pos && sgn_float(m.get(1, 1), &sc, &tol) == Sgn::Pos
            };
            let (v, d) = mixed_positivity(
                diag(a0) && diag(a1) && nonneg == Verdict::Pass,
                pos(&a0.mul(a1)) && pos(&a1.mul(a0)),
                depth,
                |w| {
                    let m = product_of_word(a0, a1, w);
                    if pos(&m) {
                        Sgn::Pos
                    } else {
                        Sgn::Unknown
                    }
                },
            );
            rep.push("mixed products positive", v, d);
        }
    }
    if !fam.asserted_sturmian {
        rep.push(
            "Sturmian assertion",
            Verdict::Indeterminate,
            "not asserted; results are conditional on the Sturmian hypothesis",
        );
    }
    rep
}

fn pass_if(b: bool) -> Verdict {
    if b {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn sign_verdict(signs: &[Sgn], ok: impl Fn(Sgn) -> bool) -> Verdict {
    if signs.contains(&Sgn::Unknown) {
        Verdict::Indeterminate
    } else {
        pass_if(signs.iter().all(|&g| ok(g)))
    }
}

/// Positive diagonals plus positive A0A1 and A1A0 force every mixed product
/// to be positive; otherwise fall back to enumerating mixed words.
fn mixed_positivity(
    diag_ok: bool,
    pairs_ok: bool,
    depth: usize,
    check: impl Fn(&FiniteWord) -> Sgn,
) -> (Verdict, String) {
    if diag_ok && pairs_ok {
        return (Verdict::Pass, "positive diagonals and positive A0A1, A1A0".into());
    }
    let mut unknown = false;
    for len in 2..=depth {
        for code in 1..(1u64 << len) - 1 {
            let bits: Vec<u8> = (0..len).map(|i| ((code >> (len - 1 - i)) & 1) as u8).collect();
            let w = FiniteWord::from_bits(bits).expect("binary");
            match check(&w) {
                Sgn::Pos => {}
                Sgn::Unknown => unknown = true,
                _ => return (Verdict::Fail, format!("product for word {w} is not positive")),
            }
        }
    }
    if unknown {
        (Verdict::Indeterminate, format!("some products within tolerance of zero up to length {depth}"))
    } else {
        (Verdict::Pass, format!("all mixed words up to length {depth} checked"))
    }
}
