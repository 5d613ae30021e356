//! Exact real quadratic numbers `a + b*sqrt(D)`.
//!
//! Arithmetic between two irrational values requires the same `D`. Rational
//! values (b = 0) mix freely with any field. Comparison is exact even across
//! different fields.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;

use num_traits::{One, Signed, Zero};

use crate::float::{BigFloat, FloatCtx};
use crate::Rational;

#[derive(Clone, Debug)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: BigInt,
}

/// Split n > 0 into s^2 * r with r free of small square factors. Factors
/// beyond the trial bound may stay in r; values stay exact either way.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut r = n.clone();
    let mut s = BigInt::one();
    let root = r.sqrt();
    if &root * &root == r {
        return (root, BigInt::one());
    }
    let mut p = BigInt::from(2u32);
    let bound = BigInt::from(1u32 << 16);
    while p <= bound && &p * &p <= r {
        let pp = &p * &p;
        while (&r % &pp).is_zero() {
            r /= &pp;
            s *= &p;
        }
        p += if p == BigInt::from(2u32) { 1 } else { 2 };
    }
    let root = r.sqrt();
    if &root * &root == r {
        s *= root;
        r = BigInt::one();
    }
    (s, r)
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl QuadExt {
    /// `a + b*sqrt(d)` for d > 0, normalized so that `d` has no small square
    /// factors and `d = 1` exactly when the value is rational.
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Self {
        assert!(d.is_positive(), "QuadExt needs a positive radicand");
        if b.is_zero() || d.is_one() {
            return QuadExt { a: a + b, b: Rational::zero(), d: BigInt::one() };
        }
        let (s, r) = square_part(&d);
        let b = b * Rational::from_integer(s);
        if r.is_one() {
            QuadExt { a: a + b, b: Rational::zero(), d: r }
        } else {
            QuadExt { a, b, d: r }
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: BigInt::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// sqrt(r) for r >= 0.
    pub fn sqrt_of(r: &Rational) -> Self {
        assert!(!r.is_negative(), "square root of a negative rational");
        // sqrt(n/d) = sqrt(n*d)/d
        let nd = r.numer() * r.denom();
        if nd.is_zero() {
            return Self::from_int(0);
        }
        QuadExt::new(Rational::zero(), Rational::new(BigInt::one(), r.denom().clone()), nd)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    /// Field norm a^2 - b^2 D.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone())
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(QuadExt { a: c.a / &n, b: c.b / n, d: c.d })
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut result = QuadExt::from_int(1);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: the larger square wins. Equality would make sqrt(D) rational.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(self.d.clone());
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_float(&self, ctx: &FloatCtx) -> BigFloat {
        let w = ctx.with_extra(32);
        let a = w.from_rational(&self.a);
        let v = if self.b.is_zero() {
            a
        } else {
            let s = w.sqrt(&w.from_bigint(&self.d));
            w.add(&a, &w.mul(&w.from_rational(&self.b), &s))
        };
        ctx.add(&v, &ctx.zero())
    }

    fn field_for(&self, other: &Self) -> BigInt {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert!(self.d == other.d, "incompatible quadratic fields sqrt({}) and sqrt({})", self.d, other.d);
                self.d.clone()
            }
        }
    }

    /// Sign of r + s*sqrt(D) + t*sqrt(E), exactly.
    fn sign3(r: &Rational, s: &Rational, d: &BigInt, t: &Rational, e: &BigInt) -> i8 {
        // X = s sqrt D + t sqrt E
        let sx = {
            let ss = sign_of(s);
            let st = sign_of(t);
            if ss == 0 || st == 0 || ss == st {
                if ss != 0 {
                    ss
                } else {
                    st
                }
            } else {
                let lhs = s * s * Rational::from_integer(d.clone());
                let rhs = t * t * Rational::from_integer(e.clone());
                match lhs.cmp(&rhs) {
                    Ordering::Greater => ss,
                    Ordering::Less => st,
                    Ordering::Equal => 0,
                }
            }
        };
        let sr = sign_of(r);
        if sx == 0 {
            return sr;
        }
        if sr == 0 || sr == sx {
            return sx;
        }
        // |X| vs |r|: X^2 - r^2 = (s^2 D + t^2 E - r^2) + 2 s t sqrt(DE)
        let c0 = s * s * Rational::from_integer(d.clone()) + t * t * Rational::from_integer(e.clone()) - r * r;
        let c1 = Rational::from_integer(BigInt::from(2)) * s * t;
        let diff = QuadExt::new(c0, c1, d * e).signum();
        match diff {
            1 => sx,
            -1 => sr,
            _ => 0,
        }
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadExt {}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = if self.is_rational() || other.is_rational() || self.d == other.d {
            (self - other).signum()
        } else {
            let r = &self.a - &other.a;
            let t = -other.b.clone();
            QuadExt::sign3(&r, &self.b, &self.d, &t, &other.d)
        };
        s.cmp(&0)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({}) + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::from_int(0)
    }

    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::from_int(1)
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::from_rational(r)
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        let d = self.field_for(o);
        let b = &self.b + &o.b;
        if b.is_zero() {
            return QuadExt::from_rational(&self.a + &o.a);
        }
        QuadExt { a: &self.a + &o.a, b, d }
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        self + &(-o)
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        let d = self.field_for(o);
        let dr = Rational::from_integer(d.clone());
        let a = &self.a * &o.a + &self.b * &o.b * dr;
        let b = &self.a * &o.b + &self.b * &o.a;
        if b.is_zero() {
            return QuadExt::from_rational(a);
        }
        QuadExt { a, b, d }
    }
}

impl<'a> Div<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    // Division is multiplication by the inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QuadExt) -> QuadExt {
        self * &o.recip().expect("division by zero in QuadExt")
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt {
                (&self).$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn qe(a: Rational, b: Rational, d: i64) -> QuadExt {
        QuadExt::new(a, b, d.into())
    }

    #[test]
    fn normalizes_square_factors() {
        let x = qe(rat(0, 1), rat(1, 1), 12);
        assert_eq!(x.d(), &BigInt::from(3));
        assert_eq!(x.b(), &rat(2, 1));
        let y = qe(rat(1, 1), rat(1, 1), 9);
        assert!(y.is_rational());
        assert_eq!(y, QuadExt::from_int(4));
    }

    #[test]
    fn field_arithmetic() {
        let phi = qe(rat(1, 2), rat(1, 2), 5);
        let sq = &phi * &phi;
        assert_eq!(sq, &phi + &QuadExt::from_int(1));
        assert_eq!(&phi * &phi.recip().unwrap(), QuadExt::from_int(1));
        assert_eq!(phi.pow(3), &(&phi + &phi) + &QuadExt::from_int(1));
    }

    #[test]
    fn exact_sign_and_order() {
        // 69 - 16 sqrt 3 > 0 and 16 sqrt 3 is about 27.7
        assert_eq!(qe(rat(69, 1), rat(-16, 1), 3).signum(), 1);
        assert_eq!(qe(rat(-28, 1), rat(16, 1), 3).signum(), -1);
        assert!(qe(rat(0, 1), rat(1, 1), 2) < qe(rat(0, 1), rat(1, 1), 3));
        // 1 + sqrt 2 = 2.4142..., sqrt 6 = 2.4494..., sqrt 11 - 1 = 2.3166...
        let x = qe(rat(1, 1), rat(1, 1), 2);
        assert!(x < qe(rat(0, 1), rat(1, 1), 6));
        assert!(x > qe(rat(-1, 1), rat(1, 1), 11));
        assert_eq!(x, qe(rat(1, 1), rat(1, 2), 8));
        assert!(QuadExt::sqrt_of(&rat(2, 1)) > QuadExt::from_rational(rat(1414, 1000)));
    }

    #[test]
    fn display() {
        assert_eq!(qe(rat(3, 2), rat(1, 2), 5).to_string(), "(3/2) + (1/2)*sqrt(5)");
        assert_eq!(QuadExt::from_rational(rat(4, 5)).to_string(), "4/5");
    }

    #[test]
    #[should_panic(expected = "incompatible quadratic fields")]
    fn mixing_fields_panics() {
        let _ = &QuadExt::sqrt_of(&rat(2, 1)) + &QuadExt::sqrt_of(&rat(3, 1));
    }
}
