//! Brute-force bounds on the joint spectral radius of {A0, alpha*A1} by
//! enumerating words, independent of any structure theory.
//!
//! The lower bound is the largest ρ(A(w))^(1/|w|) over Lyndon words of length
//! at most `max_len` (ρ is invariant under rotation and w -> w^k loses
//! nothing). Candidates are screened in f64 and the leaders recomputed at
//! full precision. The upper bound is the largest operator 2-norm over words
//! of length exactly `max_len`, minimised over a few diagonal similarity
//! scalings, evaluated in f64 and inflated for rounding.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::family::MatrixFamily;
use crate::float::{self, BigFloat, FloatCtx, Real};
use crate::rational_preimage::{extremal_word, rho_root, varrho_on_interval};
use crate::words::FiniteWord;
use crate::Rational;

/// Largest word length the oracle accepts.
pub const MAX_LEN_CAP: usize = 20;

/// Relative gap below the f64 maximum that still triggers a full-precision recheck.
const SCREEN: f64 = 1e-9;

type M2 = [[f64; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

const ID: M2 = [[1.0, 0.0], [0.0, 1.0]];

fn rho_f64(m: &M2) -> f64 {
    let t = m[0][0] + m[1][1];
    let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = t * t - 4.0 * d;
    if disc >= 0.0 {
        (t.abs() + disc.sqrt()) / 2.0
    } else {
        d.abs().sqrt()
    }
}

/// Spectral norm from ‖M‖² = (s + sqrt(s² - 4 det²)) / 2 with s the sum of squared entries.
fn norm2_f64(m: &M2) -> f64 {
    let s = m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1];
    let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (s * s - 4.0 * d * d).max(0.0);
    ((s + disc.sqrt()) / 2.0).sqrt()
}

/// Product A_wm ... A_w1 in f64.
fn word_product(g: &[M2; 2], w: &[u8]) -> M2 {
    w.iter().fold(ID, |acc, &x| mul(&g[x as usize], &acc))
}

/// All Lyndon words over {0,1} of length 1..=n, in lexicographic order (Duval).
pub fn lyndon_words(n: usize) -> Vec<FiniteWord> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut w: Vec<i8> = vec![-1];
    while !w.is_empty() {
        *w.last_mut().expect("nonempty") += 1;
        out.push(FiniteWord::from_bits(w.iter().map(|&x| x as u8).collect()).expect("binary"));
        let m = w.len();
        while w.len() < n {
            let x = w[w.len() - m];
            w.push(x);
        }
        while w.last() == Some(&1) {
            w.pop();
        }
    }
    out
}

fn check_len(max_len: usize) -> Result<()> {
    if max_len == 0 || max_len > MAX_LEN_CAP {
        return Err(Error::domain(format!("max_len must lie in 1..={MAX_LEN_CAP}")));
    }
    Ok(())
}

fn generators_f64(fam: &MatrixFamily, alpha: &Real, ctx: &FloatCtx) -> [M2; 2] {
    let (a0, a1) = fam.scaled_float(alpha, ctx);
    [a0.to_f64(), a1.to_f64()]
}

/// Two-sided bounds on ϱ(alpha) from words of bounded length.
#[derive(Clone, Debug)]
pub struct OracleBound {
    pub alpha: Real,
    pub max_len: usize,
    pub lower: BigFloat,
    pub witness: FiniteWord,
    pub upper: BigFloat,
    pub witness_is_cyclically_balanced: bool,
    /// Leading Lyndon words by ρ^(1/|w|), best first, as f64 screening values.
    pub leaders: Vec<(FiniteWord, f64)>,
}

impl OracleBound {
    pub fn witness_slope(&self) -> Rational {
        self.witness.slope().expect("nonempty witness")
    }

    pub fn gap(&self) -> f64 {
        float::to_f64(&self.upper) - float::to_f64(&self.lower)
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let lead = self.leaders[0].1;
        json!({
            "alpha": self.alpha.to_string(),
            "max_len": self.max_len,
            "lower": float::format_fixed(&self.lower, digits),
            "upper": float::format_fixed(&self.upper, digits),
            "witness": self.witness.to_string(),
            "witness_slope": self.witness_slope().to_string(),
            "witness_is_cyclically_balanced": self.witness_is_cyclically_balanced,
            "words": self.leaders.iter().map(|(w, v)| json!({
                "word": w.to_string(),
                "slope": w.slope().map(|s| s.to_string()).unwrap_or_default(),
                "rho_root": format!("{v:.15}"),
                "gap": format!("{:.3e}", lead - v),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for OracleBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha = {}, words up to length {}", self.alpha, self.max_len)?;
        writeln!(
            f,
            "lower = {}  (witness {}, slope {})",
            float::format_fixed(&self.lower, 15),
            self.witness,
            self.witness_slope()
        )?;
        writeln!(f, "upper = {}", float::format_fixed(&self.upper, 15))?;
        writeln!(f, "{:<22} {:>8} {:>20} {:>12}", "word", "slope", "rho^(1/|w|)", "gap")?;
        let lead = self.leaders[0].1;
        for (w, v) in &self.leaders {
            let slope = w.slope().map(|s| s.to_string()).unwrap_or_default();
            writeln!(f, "{:<22} {:>8} {:>20.15} {:>12.3e}", w.to_string(), slope, v, lead - v)?;
        }
        Ok(())
    }
}

/// Lower bound from Lyndon words of length at most `max_len`, upper bound
/// from the spectral norms of all words of length `max_len`.
pub fn jsr_bounds(fam: &MatrixFamily, alpha: &Real, max_len: usize, ctx: &FloatCtx) -> Result<OracleBound> {
    check_len(max_len)?;
    if alpha.center().is_some_and(|a| a < Rational::from_integer(0.into())) {
        return Err(Error::domain("alpha must be nonnegative"));
    }
    let g = generators_f64(fam, alpha, ctx);
    let words = lyndon_words(max_len);
    let mut scored: Vec<(FiniteWord, f64)> = words
        .par_iter()
        .map(|w| {
            let r = rho_f64(&word_product(&g, w.bits()));
            (w.clone(), r.powf(1.0 / w.len() as f64))
        })
        .collect();
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then_with(|| rank(&a.0, &b.0)));
    let best = scored[0].1;
    let candidates: Vec<&FiniteWord> =
        scored.iter().take_while(|(_, v)| *v >= best * (1.0 - SCREEN)).map(|(w, _)| w).collect();
    let exact: Vec<(FiniteWord, BigFloat)> =
        candidates.par_iter().map(|w| ((*w).clone(), rho_root(fam, w, alpha, ctx))).collect();
    let (witness, lower) = pick_leader(exact, ctx);
    let upper = norm_upper_bound(&g, max_len, ctx);
    let balanced = witness.is_cyclically_balanced().unwrap_or(false);
    scored.truncate(10);
    Ok(OracleBound {
        alpha: alpha.clone(),
        max_len,
        lower,
        witness,
        upper,
        witness_is_cyclically_balanced: balanced,
        leaders: scored,
    })
}

/// Shorter first, then lexicographically smaller.
fn rank(a: &FiniteWord, b: &FiniteWord) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.bits().cmp(b.bits()))
}

/// Maximum value; values within 2^(-p/2) relative of it count as ties and go
/// to the shortest, then lexicographically least, word.
fn pick_leader(values: Vec<(FiniteWord, BigFloat)>, ctx: &FloatCtx) -> (FiniteWord, BigFloat) {
    let max = values.iter().map(|(_, v)| v).max_by(|a, b| float::cmp(a, b)).expect("nonempty").clone();
    let threshold = ctx.mul(&max, &ctx.sub(&ctx.one(), &tie_tolerance(ctx)));
    values
        .into_iter()
        .filter(|(_, v)| float::cmp(v, &threshold).is_ge())
        .min_by(|a, b| rank(&a.0, &b.0))
        .map(|(w, _)| (w, max))
        .expect("the maximum is a tie with itself")
}

/// Relative tolerance 2^(-p/2) for calling two computed radii equal.
pub fn tie_tolerance(ctx: &FloatCtx) -> BigFloat {
    let e = ctx.bits() / 2;
    ctx.from_rational(&Rational::new(1.into(), num_bigint::BigInt::from(1u8) << e))
}

/// min over c = 2^(k/4), k = -4..4, of max_{|w| = n} ‖D A(w) D^-1‖^(1/n), D = diag(1, c).
fn norm_upper_bound(g: &[M2; 2], n: usize, ctx: &FloatCtx) -> BigFloat {
    let best = (-4..=4)
        .into_par_iter()
        .map(|k| {
            let c = 2f64.powf(k as f64 / 4.0);
            let conj = |m: &M2| [[m[0][0], m[0][1] / c], [m[1][0] * c, m[1][1]]];
            let h = [conj(&g[0]), conj(&g[1])];
            max_norm(&h, n)
        })
        .reduce(|| f64::INFINITY, f64::min);
    let inflated = best.powf(1.0 / n as f64) * (1.0 + 64.0 * n as f64 * f64::EPSILON);
    ctx.from_f64(inflated)
}

fn max_norm(h: &[M2; 2], n: usize) -> f64 {
    let split = n.min(6);
    (0..1u32 << split)
        .into_par_iter()
        .map(|prefix| {
            let mut m = ID;
            for i in 0..split {
                m = mul(&h[((prefix >> i) & 1) as usize], &m);
            }
            dfs_norm(h, &m, n - split)
        })
        .reduce(|| 0.0, f64::max)
}

fn dfs_norm(h: &[M2; 2], m: &M2, remaining: usize) -> f64 {
    if remaining == 0 {
        return norm2_f64(m);
    }
    let a = dfs_norm(h, &mul(&h[0], m), remaining - 1);
    let b = dfs_norm(h, &mul(&h[1], m), remaining - 1);
    a.max(b)
}

/// Slope of the lower-bound witness: a finite-length estimate of the
/// extremal frequency at alpha.
pub fn extremal_slope_estimate(fam: &MatrixFamily, alpha: &Real, max_len: usize, ctx: &FloatCtx) -> Result<Rational> {
    Ok(jsr_bounds(fam, alpha, max_len, ctx)?.witness_slope())
}

/// Outcome for one word in [`check_condition_v`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordVerdict {
    /// Cyclically balanced of the plateau slope and equal to ϱ(α) within tolerance.
    Equal,
    /// Strictly below ϱ(α).
    Strict,
    /// Not what the theory predicts.
    Violation,
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub word: FiniteWord,
    pub value: BigFloat,
    pub expected_equality: bool,
}

#[derive(Clone, Debug)]
pub struct ConditionVReport {
    pub fraction: Rational,
    pub alpha: Real,
    pub max_len: usize,
    pub varrho: BigFloat,
    pub checked: usize,
    pub equalities: usize,
    pub violations: Vec<Violation>,
}

impl ConditionVReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ConditionVReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{verdict}: {} words up to length {} at alpha = {} for slope {} ({} equalities)",
            self.checked, self.max_len, self.alpha, self.fraction, self.equalities
        )?;
        for v in &self.violations {
            let kind = if v.expected_equality { "expected equality" } else { "expected strict inequality" };
            writeln!(f, "  {}: {} ({kind})", v.word, float::format_sci(&v.value, 20))?;
        }
        Ok(())
    }
}

/// Classify a single word against ϱ(α) = `varrho` on the plateau of `pq`.
pub fn condition_v_word(
    fam: &MatrixFamily,
    alpha: &Real,
    pq: &Rational,
    varrho: &BigFloat,
    word: &FiniteWord,
    ctx: &FloatCtx,
) -> (WordVerdict, BigFloat) {
    let value = rho_root(fam, word, alpha, ctx);
    let expect_eq = word.is_cyclically_balanced().unwrap_or(false) && word.slope().ok().as_ref() == Some(pq);
    let tol = tie_tolerance(ctx);
    let rel = ctx.div(&ctx.sub(&value, varrho), varrho);
    let verdict = if expect_eq {
        if float::cmp(&float::abs(&rel), &tol).is_le() {
            WordVerdict::Equal
        } else {
            WordVerdict::Violation
        }
    } else if float::cmp(&rel, &ctx.sub(&ctx.zero(), &tol)).is_lt() {
        WordVerdict::Strict
    } else {
        WordVerdict::Violation
    };
    (verdict, value)
}

/// Every word of length at most `max_len` satisfies ρ(A_α(w)) < ϱ(α)^|w|
/// unless it is cyclically balanced of slope p/q, in which case equality
/// holds. Words are enumerated up to rotation and powers.
pub fn check_condition_v(
    fam: &MatrixFamily,
    alpha: &Real,
    pq: &Rational,
    max_len: usize,
    ctx: &FloatCtx,
) -> Result<ConditionVReport> {
    check_len(max_len)?;
    let varrho = varrho_on_interval(fam, pq, alpha, ctx)?;
    let vf = float::to_f64(&varrho);
    let g = generators_f64(fam, alpha, ctx);
    let words = lyndon_words(max_len);
    let target = extremal_word(pq)?;
    let results: Vec<(WordVerdict, FiniteWord, BigFloat)> = words
        .par_iter()
        .map(|w| {
            let screened = rho_f64(&word_product(&g, w.bits())).powf(1.0 / w.len() as f64);
            let may_be_balanced = w.len() % target.len() == 0 && w.slope().ok().as_ref() == Some(pq);
            if !may_be_balanced && screened < vf * (1.0 - SCREEN) {
                return (WordVerdict::Strict, w.clone(), ctx.from_f64(screened));
            }
            let (v, value) = condition_v_word(fam, alpha, pq, &varrho, w, ctx);
            (v, w.clone(), value)
        })
        .collect();
    let mut report = ConditionVReport {
        fraction: pq.clone(),
        alpha: alpha.clone(),
        max_len,
        varrho: varrho.clone(),
        checked: results.len(),
        equalities: 0,
        violations: Vec::new(),
    };
    for (v, w, value) in results {
        match v {
            WordVerdict::Equal => report.equalities += 1,
            WordVerdict::Strict => {}
            WordVerdict::Violation => {
                let expected_equality =
                    w.is_cyclically_balanced().unwrap_or(false) && w.slope().ok().as_ref() == Some(pq);
                report.violations.push(Violation { word: w, value, expected_equality });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::builtin_hmst;
    use crate::rat;
    use crate::words::w;

    #[test]
    fn lyndon_counts() {
        // Necklace-counting: number of binary Lyndon words of length n.
        let counts = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99];
        let all = lyndon_words(10);
        for (n, c) in counts.iter().enumerate() {
            assert_eq!(all.iter().filter(|x| x.len() == n + 1).count(), *c);
        }
        assert_eq!(all[0], w("0"));
        assert_eq!(all.last().unwrap(), &w("1"));
    }

    #[test]
    fn hmst_at_one() {
        let ctx = FloatCtx::new(256);
        let b = jsr_bounds(&builtin_hmst(), &Real::from(rat(1, 1)), 2, &ctx).unwrap();
        assert_eq!(b.witness, w("01"));
        assert!(float::format_fixed(&b.lower, 40).starts_with("1.6180339887498948482045868343656381"));
        assert!(float::cmp(&b.lower, &b.upper).is_le());
        let zero = jsr_bounds(&builtin_hmst(), &Real::from(rat(0, 1)), 8, &ctx).unwrap();
        assert_eq!(zero.witness, w("0"));
    }

    #[test]
    fn condition_v_at_one() {
        let ctx = FloatCtx::new(256);
        let fam = builtin_hmst();
        let alpha = Real::from(rat(1, 1));
        let r = check_condition_v(&fam, &alpha, &rat(1, 2), 10, &ctx).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.equalities, 1);
        let (v, _) = condition_v_word(&fam, &alpha, &rat(1, 2), &r.varrho, &w("0011"), &ctx);
        assert_eq!(v, WordVerdict::Strict);
        let (v, _) = condition_v_word(&fam, &alpha, &rat(1, 2), &r.varrho, &w("01").pow(4), &ctx);
        assert_eq!(v, WordVerdict::Equal);
    }
}
