//! Continued fractions of numbers in (0,1): `x = 1/(a1 + 1/(a2 + ...))`.
//!
//! Expansions are either finite or eventually periodic (quadratic
//! irrationals, or a user-declared repeating tail). Expansions of arbitrary
//! reals come from a certified interval algorithm and are always finite.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::float::Ball;
use crate::Rational;

/// Coefficients a1, a2, ... of a continued fraction. When `period` is
/// nonempty the expansion is `prefix` followed by `period` repeated forever.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CfExpansion {
    prefix: Vec<u64>,
    period: Vec<u64>,
}

impl CfExpansion {
    pub fn finite(coeffs: Vec<u64>) -> Result<Self> {
        Self::periodic(coeffs, Vec::new())
    }

    pub fn periodic(prefix: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if prefix.iter().chain(&period).any(|&a| a == 0) {
            return Err(Error::domain("continued fraction coefficients must be positive"));
        }
        if prefix.is_empty() && period.is_empty() {
            return Err(Error::domain("empty continued fraction"));
        }
        Ok(CfExpansion { prefix, period })
    }

    /// The golden expansion [2,1,1,1,...] of (3-sqrt 5)/2.
    pub fn golden() -> Self {
        CfExpansion { prefix: vec![2], period: vec![1] }
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Number of coefficients, or `None` for an infinite expansion.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.prefix.len())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Finite expansions are canonical when the last coefficient exceeds 1, or
    /// the expansion is exactly [1].
    pub fn is_canonical(&self) -> bool {
        match (self.is_finite(), self.prefix.last()) {
            (true, Some(&last)) => last > 1 || self.prefix.len() == 1,
            _ => true,
        }
    }

    /// Coefficient a_k, 1-based.
    pub fn coeff(&self, k: usize) -> Option<u64> {
        if k == 0 {
            return None;
        }
        let i = k - 1;
        if i < self.prefix.len() {
            Some(self.prefix[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.prefix.len()) % self.period.len()])
        }
    }

    /// First `n` coefficients, or `None` if the expansion is shorter.
    pub fn take(&self, n: usize) -> Option<Vec<u64>> {
        (1..=n).map(|k| self.coeff(k)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (1..).map_while(move |k| self.coeff(k))
    }

    /// Supremum of a_j over j >= k; `None` if nothing is known past a finite end.
    pub fn sup_from(&self, k: usize) -> Option<u64> {
        let k = k.max(1);
        let tail_prefix = self.prefix.iter().skip(k - 1).copied().max();
        let per = self.period.iter().copied().max();
        match (tail_prefix, per) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(0).max(b.unwrap_or(0))),
        }
    }

    /// Exact value of a finite expansion.
    pub fn value(&self) -> Option<Rational> {
        if !self.is_finite() {
            return None;
        }
        let mut x = Rational::zero();
        for &a in self.prefix.iter().rev() {
            x = (Rational::from_integer(a.into()) + x).recip();
        }
        Some(x)
    }

    /// Expansion of 1 - x.
    pub fn complement(&self) -> Result<Self> {
        let e = self.unrolled(3);
        let pre = &e.prefix;
        let mut p = if pre[0] == 1 {
            // [1, a2, a3, ...] -> [a2 + 1, a3, ...]
            if pre.len() < 2 {
                return Err(Error::domain("complement of 1 is out of range"));
            }
            let mut p = vec![pre[1] + 1];
            p.extend(&pre[2..]);
            p
        } else {
            // [a1, a2, ...] -> [1, a1 - 1, a2, ...]
            let mut p = vec![1, pre[0] - 1];
            p.extend(&pre[1..]);
            p
        };
        if e.period.is_empty() {
            if p.len() > 1 && p.last() == Some(&1) {
                p.pop();
                *p.last_mut().expect("nonempty") += 1;
            }
            return CfExpansion::finite(p);
        }
        CfExpansion::periodic(p, e.period)
    }

    /// Same expansion with at least `n` explicit prefix coefficients.
    fn unrolled(&self, n: usize) -> Self {
        let mut e = self.clone();
        while e.prefix.len() < n && !e.period.is_empty() {
            let first = e.period.remove(0);
            e.prefix.push(first);
            e.period.push(first);
        }
        e
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all: Vec<String> = self.prefix.iter().chain(&self.period).map(|a| a.to_string()).collect();
        write!(f, "{}", all.join(","))?;
        if !self.period.is_empty() {
            write!(f, ";period={}", self.period.len())?;
        }
        Ok(())
    }
}

impl FromStr for CfExpansion {
    type Err = Error;

    /// Accepts "3,1,5", "2,1;period=1", and "4,4,..." (last coefficient repeats).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, period_len) = match s.split_once(';') {
            Some((b, p)) => {
                let k = p
                    .trim()
                    .strip_prefix("period=")
                    .and_then(|k| k.trim().parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad period suffix in {s:?}")))?;
                (b, Some(k))
            }
            None => (s, None),
        };
        let mut parts: Vec<&str> = body.split(',').map(str::trim).collect();
        let ellipsis = parts.last() == Some(&"...");
        if ellipsis {
            parts.pop();
        }
        let coeffs = parts
            .iter()
            .map(|p| p.parse::<u64>().map_err(|_| Error::Parse(format!("bad coefficient {p:?}"))))
            .collect::<Result<Vec<u64>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty continued fraction".into()));
        }
        let k = match (period_len, ellipsis) {
            (Some(_), true) => return Err(Error::Parse("use either ';period=' or '...', not both".into())),
            (Some(k), false) => k,
            (None, true) => 1,
            (None, false) => 0,
        };
        if k > coeffs.len() {
            return Err(Error::Parse("period longer than expansion".into()));
        }
        let split = coeffs.len() - k;
        CfExpansion::periodic(coeffs[..split].to_vec(), coeffs[split..].to_vec())
    }
}

/// Convergents p_k/q_k for k = -1, 0, 1, ..., n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentSeq {
    p: Vec<BigInt>,
    q: Vec<BigInt>,
}

impl ConvergentSeq {
    /// Largest index available.
    pub fn last_index(&self) -> usize {
        self.p.len() - 2
    }

    pub fn p(&self, k: isize) -> &BigInt {
        &self.p[(k + 1) as usize]
    }

    pub fn q(&self, k: isize) -> &BigInt {
        &self.q[(k + 1) as usize]
    }

    pub fn fraction(&self, k: usize) -> Rational {
        Rational::new(self.p(k as isize).clone(), self.q(k as isize).clone())
    }
}

/// Convergents through index `n` (seeds p_-1 = 1, q_-1 = 0, p_0 = 0, q_0 = 1).
pub fn convergents(cf: &CfExpansion, n: usize) -> Result<ConvergentSeq> {
    let coeffs = cf
        .take(n)
        .ok_or_else(|| Error::PrecisionExhausted(format!("continued fraction has fewer than {n} coefficients")))?;
    let mut p = vec![BigInt::one(), BigInt::zero()];
    let mut q = vec![BigInt::zero(), BigInt::one()];
    for a in coeffs {
        let a = BigInt::from(a);
        let k = p.len();
        p.push(&a * &p[k - 1] + &p[k - 2]);
        q.push(&a * &q[k - 1] + &q[k - 2]);
    }
    Ok(ConvergentSeq { p, q })
}

/// Canonical finite expansion of a rational in (0,1).
pub fn cf_of_rational(x: &Rational) -> Result<CfExpansion> {
    if !(x.is_positive() && *x < Rational::one()) {
        return Err(Error::domain(format!("{x} is not in (0,1)")));
    }
    let mut n = x.numer().clone();
    let mut d = x.denom().clone();
    let mut out = Vec::new();
    // x = n/d; a = floor(d/n), then continue with (d mod n)/n.
    while !n.is_zero() {
        let (a, r) = d.div_rem(&n);
        out.push(a.to_u64().ok_or_else(|| Error::domain("coefficient overflow"))?);
        d = n;
        n = r;
    }
    CfExpansion::finite(out)
}

/// Exact expansion of `a + b*sqrt(D)` in (0,1) with an eventually periodic tail.
pub fn cf_of_quadratic(a: &Rational, b: &Rational, d: &BigInt) -> Result<CfExpansion> {
    if !d.is_positive() {
        return Err(Error::domain("D must be positive"));
    }
    let s = d.sqrt();
    if b.is_zero() || &s * &s == *d {
        return Err(Error::domain("quadratic input is rational"));
    }
    // x = (P0 + sqrt(M)) / Q0 with sign(b) folded into Q0.
    let l = a.denom().lcm(b.denom());
    let sign = if b.is_negative() { -BigInt::one() } else { BigInt::one() };
    let q0 = &sign * &l;
    let p0 = &sign * (a * Rational::from_integer(l.clone())).to_integer();
    let bl = (b.abs() * Rational::from_integer(l.clone())).to_integer();
    let m0 = &bl * &bl * d;
    // Scale so that Q divides M - P^2.
    let aq = q0.abs();
    let mut p = &p0 * &aq;
    let mut q = &q0 * &aq;
    let m = &m0 * &aq * &aq;
    let sm = m.sqrt();

    let floor_state = |p: &BigInt, q: &BigInt| -> BigInt {
        if q.is_positive() {
            (p + &sm).div_floor(q)
        } else {
            (p + &sm + BigInt::one()).div_floor(q)
        }
    };
    if !floor_state(&p, &q).is_zero() {
        return Err(Error::domain("quadratic value is not in (0,1)"));
    }
    // Positive because floor is 0 and the value is irrational.
    // Invert: 1/x = (-P + sqrt M) / ((M - P^2)/Q).
    p = -p;
    q = (&m - &p * &p) / &q;

    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut coeffs: Vec<u64> = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = coeffs[start..].to_vec();
            coeffs.truncate(start);
            return CfExpansion::periodic(coeffs, period);
        }
        seen.insert((p.clone(), q.clone()), coeffs.len());
        let a_k = floor_state(&p, &q);
        coeffs.push(a_k.to_u64().ok_or_else(|| Error::domain("coefficient overflow"))?);
        // x - a = (P - aQ + sqrt M)/Q, then invert.
        let p_new = &a_k * &q - &p;
        let q_new = (&m - &p_new * &p_new) / &q;
        p = p_new;
        q = q_new;
    }
}

/// First `n` coefficients of a real known only to lie in a ball. Fails with
/// the 1-based index of the first coefficient the enclosure cannot decide.
pub fn cf_of_real(x: &Ball, n: usize) -> Result<CfExpansion> {
    let (mut lo, mut hi) = x.bounds().ok_or_else(|| Error::domain("input is not a finite number"))?;
    if !(lo.is_positive() && hi < Rational::one()) {
        return Err(Error::domain("input ball is not inside (0,1)"));
    }
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        if !lo.is_positive() {
            return Err(Error::InsufficientPrecision { index: k });
        }
        let (ilo, ihi) = (hi.recip(), lo.recip());
        let a = ilo.floor();
        if ihi.floor() != a {
            return Err(Error::InsufficientPrecision { index: k });
        }
        out.push(a.to_integer().to_u64().ok_or_else(|| Error::domain("coefficient overflow"))?);
        lo = ilo - &a;
        hi = ihi - a;
    }
    CfExpansion::finite(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::FloatCtx;
    use crate::rat;

    #[test]
    fn rational_examples() {
        assert_eq!(cf_of_rational(&rat(3, 7)).unwrap().prefix(), &[2, 3]);
        assert_eq!(cf_of_rational(&rat(1, 2)).unwrap().prefix(), &[2]);
        assert_eq!(cf_of_rational(&rat(2, 5)).unwrap().prefix(), &[2, 2]);
        assert!(cf_of_rational(&rat(1, 1)).is_err());
        assert!(cf_of_rational(&rat(0, 1)).is_err());
    }

    #[test]
    fn convergent_examples() {
        let c = convergents(&CfExpansion::finite(vec![2, 3]).unwrap(), 2).unwrap();
        assert_eq!((c.p(2).clone(), c.q(2).clone()), (3.into(), 7.into()));
        assert_eq!((c.p(0).clone(), c.q(0).clone()), (0.into(), 1.into()));
        let g = convergents(&CfExpansion::golden(), 8).unwrap();
        let qs: Vec<i64> = (1..=8).map(|k| g.q(k).to_i64().unwrap()).collect();
        assert_eq!(qs, vec![2, 3, 5, 8, 13, 21, 34, 55]);
        assert!(convergents(&CfExpansion::finite(vec![2]).unwrap(), 3).is_err());
    }

    #[test]
    fn quadratic_examples() {
        let g = cf_of_quadratic(&rat(3, 2), &rat(-1, 2), &5.into()).unwrap();
        assert_eq!(g.take(6).unwrap(), vec![2, 1, 1, 1, 1, 1]);
        let s = cf_of_quadratic(&rat(-2, 1), &rat(1, 1), &5.into()).unwrap();
        assert_eq!(s.prefix(), &[] as &[u64]);
        assert_eq!(s.period(), &[4]);
        let r2 = cf_of_quadratic(&rat(-1, 1), &rat(1, 1), &2.into()).unwrap();
        assert_eq!(r2.take(5).unwrap(), vec![2, 2, 2, 2, 2]);
        assert!(cf_of_quadratic(&rat(1, 2), &rat(0, 1), &5.into()).is_err());
        assert!(cf_of_quadratic(&rat(0, 1), &rat(1, 2), &4.into()).is_err());
        assert!(cf_of_quadratic(&rat(1, 1), &rat(1, 1), &5.into()).is_err());
    }

    #[test]
    fn real_examples() {
        let ctx = FloatCtx::new(700);
        let c = ctx.sub(&ctx.cbrt(&ctx.from_u64(2)), &ctx.one());
        let ball = Ball::with_ulps(c, &ctx, 16);
        assert_eq!(cf_of_real(&ball, 10).unwrap().prefix(), &[3, 1, 5, 1, 1, 4, 1, 1, 8, 1]);

        let e = ctx.e();
        let x = ctx.div(&ctx.sub(&e, &ctx.from_u64(2)), &ctx.sub(&e, &ctx.one()));
        let ball = Ball::with_ulps(x, &ctx, 16);
        assert_eq!(cf_of_real(&ball, 11).unwrap().prefix(), &[2, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8]);

        let half = Ball::new(ctx.from_rational(&rat(1, 2)), ctx.from_rational(&rat(1, 1 << 40)));
        assert_eq!(cf_of_real(&half, 3), Err(Error::InsufficientPrecision { index: 1 }));
    }

    #[test]
    fn text_format() {
        let g: CfExpansion = "2,1;period=1".parse().unwrap();
        assert_eq!(g, CfExpansion::golden());
        assert_eq!(g.to_string(), "2,1;period=1");
        let s: CfExpansion = "4,4,4,...".parse().unwrap();
        assert_eq!(s.take(5).unwrap(), vec![4; 5]);
        assert!("2,0".parse::<CfExpansion>().is_err());
        assert!("".parse::<CfExpansion>().is_err());
    }

    #[test]
    fn complement_examples() {
        let third = CfExpansion::finite(vec![3]).unwrap();
        assert_eq!(third.complement().unwrap().value().unwrap(), rat(2, 3));
        let g = CfExpansion::golden().complement().unwrap();
        assert_eq!(g.take(5).unwrap(), vec![1, 1, 1, 1, 1]);
        let t = CfExpansion::finite(vec![1, 2, 3]).unwrap();
        assert_eq!(t.complement().unwrap().value().unwrap(), rat(1, 1) - t.value().unwrap());
        let p = CfExpansion::periodic(vec![1], vec![2, 3]).unwrap();
        assert_eq!(p.complement().unwrap().take(5).unwrap(), vec![3, 3, 2, 3, 2]);
    }
}
