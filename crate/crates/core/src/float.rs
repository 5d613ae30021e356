//! Arbitrary precision floats with an explicit precision context.
//!
//! `BigFloat` values come from astro-float. Its rounding modes are not
//! directed, so anything that needs a certified enclosure converts to exact
//! rationals (every finite binary float is a dyadic rational) and pads the
//! radius instead of relying on outward rounding.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub use astro_float::BigFloat;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Working precision in bits. Every float operation takes one of these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FloatCtx {
    bits: usize,
}

impl Default for FloatCtx {
    fn default() -> Self {
        FloatCtx { bits: Self::DEFAULT_BITS }
    }
}

impl FloatCtx {
    pub const DEFAULT_BITS: usize = 256;
    pub const MIN_BITS: usize = 64;

    /// Precision is clamped below at 64 bits.
    pub fn new(bits: usize) -> Self {
        FloatCtx { bits: bits.max(Self::MIN_BITS) }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn with_extra(&self, extra: usize) -> Self {
        FloatCtx::new(self.bits + extra)
    }

    /// Relative size of one unit in the last place, 2^(1-bits).
    pub fn ulp(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::one() << (self.bits - 1))
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_u64(0, self.bits)
    }

    pub fn one(&self) -> BigFloat {
        BigFloat::from_u64(1, self.bits)
    }

    pub fn from_u64(&self, v: u64) -> BigFloat {
        BigFloat::from_u64(v, self.bits)
    }

    pub fn from_i64(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.bits)
    }

    pub fn from_f64(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.bits)
    }

    pub fn from_bigint(&self, n: &BigInt) -> BigFloat {
        let mut x = bigint_to_float_exact(n);
        if !x.is_zero() {
            x.set_precision(self.bits, RM).expect("set precision");
        }
        x
    }

    pub fn from_rational(&self, r: &Rational) -> BigFloat {
        if r.numer().is_zero() {
            return self.zero();
        }
        // Truncated quotient with 64 guard bits, then rounded to the context.
        let num = r.numer().abs();
        let den = r.denom();
        let k = (self.bits as i64 + 64 + den.bits() as i64 - num.bits() as i64).max(0) as u64;
        let q: BigInt = (num << k) / den;
        let mut x = bigint_to_float_exact(&q);
        let e = x.exponent().expect("finite") as i64 - k as i64;
        x.set_exponent(e as i32);
        x.set_precision(self.bits, RM).expect("set precision");
        if r.is_negative() {
            x = x.neg();
        }
        x
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, RM)
    }

    pub fn cbrt(&self, a: &BigFloat) -> BigFloat {
        a.cbrt(self.bits, RM)
    }

    pub fn ln(&self, a: &BigFloat) -> BigFloat {
        with_consts(|cc| a.ln(self.bits, RM, cc))
    }

    pub fn exp(&self, a: &BigFloat) -> BigFloat {
        with_consts(|cc| a.exp(self.bits, RM, cc))
    }

    pub fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, self.bits, RM)
    }

    /// Positive real n-th root via exp(ln(a)/n).
    pub fn root(&self, a: &BigFloat, n: u64) -> BigFloat {
        if n == 1 || a.is_zero() {
            return a.clone();
        }
        let l = self.ln(a);
        self.exp(&self.div(&l, &self.from_u64(n)))
    }

    pub fn e(&self) -> BigFloat {
        self.exp(&self.one())
    }

    pub fn parse(&self, s: &str) -> Result<BigFloat> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        // Decimal strings go through exact rationals so the parse is correctly rounded.
        let r = parse_decimal_rational(t)?;
        Ok(self.from_rational(&r))
    }
}

fn biguint_from_words(words: &[u64]) -> BigUint {
    let mut digits = Vec::with_capacity(words.len() * 2);
    for w in words {
        digits.push(*w as u32);
        digits.push((*w >> 32) as u32);
    }
    BigUint::new(digits)
}

fn bigint_to_float_exact(n: &BigInt) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_u64(0, 64);
    }
    let mag = n.magnitude();
    let bits = mag.bits();
    let words_needed = bits.div_ceil(64);
    let shift = words_needed * 64 - bits;
    let m: BigUint = mag << shift;
    let mut words: Vec<u64> = m.to_u64_digits();
    words.resize(words_needed as usize, 0);
    let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
    BigFloat::from_words(&words, sign, bits as i32)
}

/// Exact value of a finite float as a dyadic rational. `None` for NaN or infinity.
pub fn to_rational(x: &BigFloat) -> Option<Rational> {
    if x.is_nan() || x.is_inf() {
        return None;
    }
    if x.is_zero() {
        return Some(Rational::zero());
    }
    let (words, _, sign, e, _) = x.as_raw_parts()?;
    let m = BigInt::from_biguint(BigSign::Plus, biguint_from_words(words));
    let shift = e as i64 - 64 * words.len() as i64;
    let mut r = if shift >= 0 {
        Rational::from_integer(m << shift as u64)
    } else {
        Rational::new(m, BigInt::one() << (-shift) as u64)
    };
    if sign == Sign::Neg {
        r = -r;
    }
    Some(r)
}

pub fn to_f64(x: &BigFloat) -> f64 {
    to_rational(x).and_then(|r| rational_to_f64(&r)).unwrap_or(f64::NAN)
}

pub fn rational_to_f64(r: &Rational) -> Option<f64> {
    if r.is_zero() {
        return Some(0.0);
    }
    // Scale to keep numerator and denominator inside f64 range.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db - 60;
    let q: BigInt =
        if shift >= 0 { r.numer() / (r.denom() << shift as u64) } else { (r.numer() << (-shift) as u64) / r.denom() };
    let f = q.to_f64()?;
    Some(f * 2f64.powi(shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32))
}

/// Exact comparison of two finite floats.
pub fn cmp(a: &BigFloat, b: &BigFloat) -> Ordering {
    match a.cmp(b) {
        Some(c) if c < 0 => Ordering::Less,
        Some(c) if c > 0 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

pub fn is_negative(a: &BigFloat) -> bool {
    !a.is_zero() && a.is_negative()
}

pub fn abs(a: &BigFloat) -> BigFloat {
    if is_negative(a) {
        a.neg()
    } else {
        a.clone()
    }
}

/// Parse "123", "-1.25e-3", "3/7" into an exact rational.
pub fn parse_decimal_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a number: {t:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        return Ok(Rational::new(n, d));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}0").parse::<BigInt>().map_err(|_| bad())? / 10;
    let scale = exp - fp.len() as i64;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Round a rational to `frac_digits` decimal places (half away from zero).
pub fn format_rational_fixed(r: &Rational, frac_digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), frac_digits);
    let scaled = r * Rational::from_integer(scale);
    let neg = scaled.is_negative();
    let a = scaled.abs();
    let (q, rem) = a.numer().div_rem(a.denom());
    let n = if rem * 2 >= *a.denom() { q + 1 } else { q };
    let mut s = n.to_string();
    if frac_digits > 0 {
        if s.len() <= frac_digits {
            s = format!("{}{}", "0".repeat(frac_digits + 1 - s.len()), s);
        }
        s.insert(s.len() - frac_digits, '.');
    }
    if neg && n_is_nonzero(&s) {
        s.insert(0, '-');
    }
    s
}

fn n_is_nonzero(s: &str) -> bool {
    s.chars().any(|c| c.is_ascii_digit() && c != '0')
}

/// Scientific notation with `sig` significant digits, e.g. "3.2e-40".
pub fn format_rational_sci(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let sig = sig.max(1);
    let a = r.abs();
    let ten = Rational::from_integer(BigInt::from(10));
    // Decimal exponent estimate from bit lengths, corrected below.
    let est = ((a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let mut e = est - 1;
    loop {
        let p = pow10(e + 1);
        if a < p {
            break;
        }
        e += 1;
    }
    while a < pow10(e) {
        e -= 1;
    }
    let mant = &a / pow10(e);
    let mut m = format_rational_fixed(&mant, sig - 1);
    if m.starts_with("10") {
        // Rounding carried into a new digit.
        e += 1;
        m = format_rational_fixed(&(&mant / &ten), sig - 1);
    }
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{m}e{e}")
}

fn pow10(e: i64) -> Rational {
    let ten = BigInt::from(10);
    if e >= 0 {
        Rational::from_integer(num_traits::pow(ten, e as usize))
    } else {
        Rational::new(BigInt::one(), num_traits::pow(ten, (-e) as usize))
    }
}

/// Decimal rendering of a float with `frac_digits` digits after the point.
pub fn format_fixed(x: &BigFloat, frac_digits: usize) -> String {
    match to_rational(x) {
        Some(r) => format_rational_fixed(&r, frac_digits),
        None => "nan".into(),
    }
}

pub fn format_sci(x: &BigFloat, sig: usize) -> String {
    match to_rational(x) {
        Some(r) => format_rational_sci(&r, sig),
        None => "nan".into(),
    }
}

/// A float midpoint with a nonnegative error radius; the true value lies in
/// [mid - rad, mid + rad].
#[derive(Clone, Debug)]
pub struct Ball {
    pub mid: BigFloat,
    pub rad: BigFloat,
}

impl Ball {
    pub fn new(mid: BigFloat, rad: BigFloat) -> Self {
        Ball { mid, rad: abs(&rad) }
    }

    /// A ball whose radius is `ulps` units in the last place of the context.
    pub fn with_ulps(mid: BigFloat, ctx: &FloatCtx, ulps: u64) -> Self {
        let r = to_rational(&mid).unwrap_or_default().abs() * ctx.ulp() * Rational::from_integer(ulps.into());
        let rad = ctx.with_extra(64).from_rational(&r);
        Ball { mid, rad }
    }

    pub fn exact(mid: BigFloat) -> Self {
        let rad = BigFloat::from_u64(0, 64);
        Ball { mid, rad }
    }

    /// Exact rational enclosure [lo, hi] of the ball.
    pub fn bounds(&self) -> Option<(Rational, Rational)> {
        let m = to_rational(&self.mid)?;
        let r = to_rational(&self.rad)?;
        Some((&m - &r, m + r))
    }
}

/// A real input that is either an exact rational or a float ball.
#[derive(Clone, Debug)]
pub enum Real {
    Exact(Rational),
    Approx(Ball),
}

impl Real {
    pub fn to_float(&self, ctx: &FloatCtx) -> BigFloat {
        match self {
            Real::Exact(r) => ctx.from_rational(r),
            Real::Approx(b) => {
                let mut m = b.mid.clone();
                let _ = m.set_precision(ctx.bits(), RM);
                m
            }
        }
    }

    /// Exact rational enclosure; degenerate for exact inputs.
    pub fn bounds(&self) -> Option<(Rational, Rational)> {
        match self {
            Real::Exact(r) => Some((r.clone(), r.clone())),
            Real::Approx(b) => b.bounds(),
        }
    }

    /// The midpoint as a rational (exact value for `Exact`).
    pub fn center(&self) -> Option<Rational> {
        match self {
            Real::Exact(r) => Some(r.clone()),
            Real::Approx(b) => to_rational(&b.mid),
        }
    }

    /// Decimals are kept exact, so "0.9" means 9/10 rather than its binary rounding.
    pub fn parse(s: &str) -> Result<Real> {
        Ok(Real::Exact(parse_decimal_rational(s)?))
    }
}

impl From<Rational> for Real {
    fn from(r: Rational) -> Self {
        Real::Exact(r)
    }
}

impl From<BigFloat> for Real {
    fn from(x: BigFloat) -> Self {
        Real::Approx(Ball::exact(x))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(r) => write!(f, "{r}"),
            Real::Approx(b) => write!(f, "{}", format_sci(&b.mid, 20)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_round_trip_is_exact_for_dyadics() {
        let ctx = FloatCtx::default();
        for r in [q(3, 8), q(-5, 1024), q(1 << 40, 1), q(7, 1)] {
            assert_eq!(to_rational(&ctx.from_rational(&r)).unwrap(), r);
        }
    }

    #[test]
    fn rational_to_float_is_close() {
        let ctx = FloatCtx::new(128);
        let r = q(1, 3);
        let x = to_rational(&ctx.from_rational(&r)).unwrap();
        let err = (x - &r).abs() / r;
        assert!(err < ctx.ulp());
    }

    #[test]
    fn large_integers_convert() {
        let ctx = FloatCtx::default();
        let n: BigInt = "123456789012345678901234567890123".parse().unwrap();
        assert_eq!(to_rational(&ctx.from_bigint(&n)).unwrap(), Rational::from_integer(n));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational_fixed(&q(4, 5), 3), "0.800");
        assert_eq!(format_rational_fixed(&q(-1, 8), 2), "-0.13");
        assert_eq!(format_rational_fixed(&q(2, 3), 0), "1");
        assert_eq!(format_rational_sci(&q(1, 3000), 3), "3.33e-4");
        assert_eq!(format_rational_sci(&q(9999, 1), 2), "1.0e4");
    }

    #[test]
    fn decimal_parse() {
        assert_eq!(parse_decimal_rational("0.9").unwrap(), q(9, 10));
        assert_eq!(parse_decimal_rational("-1.5e2").unwrap(), q(-150, 1));
        assert_eq!(parse_decimal_rational("3/7").unwrap(), q(3, 7));
        assert!(parse_decimal_rational("abc").is_err());
    }

    #[test]
    fn transcendental_sanity() {
        let ctx = FloatCtx::new(128);
        let e = ctx.e();
        assert!(format_fixed(&e, 20).starts_with("2.71828182845904523536"));
        let r = ctx.root(&ctx.from_u64(8), 3);
        assert_eq!(format_fixed(&r, 30), format_rational_fixed(&q(2, 1), 30));
    }
}
