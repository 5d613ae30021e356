//! 2x2 matrices over exact rationals, quadratic fields and big floats.
//!
//! Word products follow the convention that the last letter of a word is the
//! leftmost factor: the word w1 w2 ... wm maps to A_wm ... A_w2 A_w1. This is
//! implemented only in [`product_of_word`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::float::{self, BigFloat, FloatCtx};
use crate::quad::QuadExt;
use crate::words::FiniteWord;
use crate::Rational;

/// Anything that can be multiplied as a 2x2 matrix.
pub trait MatrixAlgebra: Clone {
    fn mat_mul(&self, rhs: &Self) -> Self;
    fn identity_like(&self) -> Self;
}

/// M^k by repeated squaring.
pub fn matrix_power<M: MatrixAlgebra>(m: &M, k: u64) -> M {
    let mut result = m.identity_like();
    let mut base = m.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = result.mat_mul(&base);
        }
        k >>= 1;
        if k > 0 {
            base = base.mat_mul(&base);
        }
    }
    result
}

/// The product A_wm ... A_w1 for w = w1 ... wm. Runs of equal letters are
/// raised by repeated squaring. The empty word gives the identity.
pub fn product_of_word<M: MatrixAlgebra>(a0: &M, a1: &M, w: &FiniteWord) -> M {
    let bits = w.bits();
    let mut result = a0.identity_like();
    let mut i = 0;
    while i < bits.len() {
        let sym = bits[i];
        let mut j = i;
        while j < bits.len() && bits[j] == sym {
            j += 1;
        }
        let base = if sym == 0 { a0 } else { a1 };
        let run = matrix_power(base, (j - i) as u64);
        result = run.mat_mul(&result);
        i = j;
    }
    result
}

/// Row-major 2x2 matrix over a commutative ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    m: [[T; 2]; 2],
}

pub type ExactMat2 = Mat2<Rational>;
pub type QuadMat2 = Mat2<QuadExt>;

pub trait Ring:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T> {}

impl<T: Ring> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn from_rows(m: [[T; 2]; 2]) -> Self {
        Mat2 { m }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.m[i][j]
    }

    pub fn rows(&self) -> &[[T; 2]; 2] {
        &self.m
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e =
            |i: usize, j: usize| self.m[i][0].clone() * o.m[0][j].clone() + self.m[i][1].clone() * o.m[1][j].clone();
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x.clone())
    }

    pub fn trace(&self) -> T {
        self.m[0][0].clone() + self.m[1][1].clone()
    }

    pub fn det(&self) -> T {
        self.m[0][0].clone() * self.m[1][1].clone() - self.m[0][1].clone() * self.m[1][0].clone()
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m[0][0].clone(), self.m[1][0].clone(), self.m[0][1].clone(), self.m[1][1].clone())
    }

    pub fn pow(&self, k: u64) -> Self {
        matrix_power(self, k)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat2<U> {
        Mat2::new(f(&self.m[0][0]), f(&self.m[0][1]), f(&self.m[1][0]), f(&self.m[1][1]))
    }

    fn zip(&self, o: &Self, f: impl Fn(T, T) -> T) -> Self {
        let g = |i: usize, j: usize| f(self.m[i][j].clone(), o.m[i][j].clone());
        Self::new(g(0, 0), g(0, 1), g(1, 0), g(1, 1))
    }
}

impl<T: Ring> MatrixAlgebra for Mat2<T> {
    fn mat_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn identity_like(&self) -> Self {
        Self::identity()
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(f, "[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl ExactMat2 {
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |x: i64| Rational::from_integer(x.into());
        Mat2::new(r(a), r(b), r(c), r(d))
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.m.iter().flatten()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries().all(|x| !x.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.entries().all(|x| x.is_positive())
    }

    pub fn has_positive_diagonal(&self) -> bool {
        self.m[0][0].is_positive() && self.m[1][1].is_positive()
    }

    pub fn is_integral(&self) -> bool {
        self.entries().all(|x| x.is_integer())
    }

    /// tr^2 - 4 det.
    pub fn discriminant(&self) -> Rational {
        let t = self.trace();
        &t * &t - Rational::from_integer(4.into()) * self.det()
    }

    /// Two distinct real eigenvalues, or a scalar matrix.
    pub fn is_diagonalisable(&self) -> bool {
        let d = self.discriminant();
        d.is_positive() || (d.is_zero() && self.m[0][1].is_zero() && self.m[1][0].is_zero())
    }

    pub fn to_quad(&self) -> QuadMat2 {
        self.map(|x| QuadExt::from_rational(x.clone()))
    }

    /// Exact spectral radius: (|tr| + sqrt(disc))/2 for real eigenvalues,
    /// sqrt(det) otherwise.
    pub fn spectral_radius(&self) -> QuadExt {
        let disc = self.discriminant();
        if disc.is_negative() {
            return QuadExt::sqrt_of(&self.det());
        }
        let half = Rational::new(BigInt::one(), 2.into());
        let t = QuadExt::from_rational(self.trace().abs() * &half);
        let s = QuadExt::sqrt_of(&(disc * &half * &half));
        &t + &s
    }

    /// Eigenvalues (larger, smaller) when they are real and distinct.
    pub fn eigenvalues(&self) -> Result<(QuadExt, QuadExt)> {
        let disc = self.discriminant();
        if !disc.is_positive() {
            return Err(Error::RepeatedEigenvalue(format!("{self} has no pair of distinct real eigenvalues")));
        }
        let half = Rational::new(BigInt::one(), 2.into());
        let t = QuadExt::from_rational(self.trace() * &half);
        let s = QuadExt::sqrt_of(&(disc * &half * &half));
        Ok((&t + &s, &t - &s))
    }

    /// P = (A - λ2 I)/(λ1 - λ2), the projection onto the eigenline of the
    /// larger eigenvalue along the other one.
    pub fn perron_projection(&self) -> Result<QuadMat2> {
        self.to_quad().perron_projection()
    }

    /// Maximum absolute row sum.
    pub fn operator_norm_rowsum(&self) -> Rational {
        let r0 = self.m[0][0].abs() + self.m[0][1].abs();
        let r1 = self.m[1][0].abs() + self.m[1][1].abs();
        r0.max(r1)
    }

    pub fn to_float(&self, ctx: &FloatCtx) -> FloatMat2 {
        FloatMat2::from_fn(ctx, |i, j| ctx.from_rational(&self.m[i][j]))
    }
}

impl QuadMat2 {
    /// Discriminant tr^2 - 4 det, in the field.
    pub fn discriminant(&self) -> QuadExt {
        let t = self.trace();
        &(&t * &t) - &(&QuadExt::from_int(4) * &self.det())
    }

    /// Projection onto the dominant eigenline. Entries must be rational so
    /// that the eigenvalues live in a single quadratic field.
    pub fn perron_projection(&self) -> Result<QuadMat2> {
        let exact =
            self.to_exact().ok_or_else(|| Error::domain("Perron projection needs a matrix with rational entries"))?;
        let (l1, l2) = exact.eigenvalues()?;
        let gap = &l1 - &l2;
        let shifted = self.sub(&QuadMat2::identity().scale(&l2));
        let inv = gap.recip().expect("distinct eigenvalues");
        Ok(shifted.scale(&inv))
    }

    pub fn to_exact(&self) -> Option<ExactMat2> {
        let e = |i: usize, j: usize| self.m[i][j].to_rational();
        Some(Mat2::new(e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?))
    }

    /// ρ(M) = |tr M| for a matrix of exact determinant zero.
    pub fn rank_one_spectral_radius(&self) -> Result<QuadExt> {
        let d = self.det();
        if !d.is_zero() {
            return Err(Error::domain(format!("determinant {d} is not zero")));
        }
        Ok(self.trace().abs())
    }

    pub fn to_float(&self, ctx: &FloatCtx) -> FloatMat2 {
        FloatMat2::from_fn(ctx, |i, j| self.m[i][j].to_float(ctx))
    }
}

impl ExactMat2 {
    /// ρ(M) = |tr M| for a matrix of exact determinant zero.
    pub fn rank_one_spectral_radius(&self) -> Result<Rational> {
        let d = self.det();
        if !d.is_zero() {
            return Err(Error::domain(format!("determinant {d} is not zero")));
        }
        Ok(self.trace().abs())
    }
}

/// 2x2 matrix of big floats carrying its precision context.
#[derive(Clone, Debug)]
pub struct FloatMat2 {
    m: [[BigFloat; 2]; 2],
    ctx: FloatCtx,
}

impl FloatMat2 {
    pub fn from_fn(ctx: &FloatCtx, f: impl Fn(usize, usize) -> BigFloat) -> Self {
        FloatMat2 { m: [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]], ctx: *ctx }
    }

    pub fn new(ctx: &FloatCtx, m: [[BigFloat; 2]; 2]) -> Self {
        FloatMat2 { m, ctx: *ctx }
    }

    pub fn identity(ctx: &FloatCtx) -> Self {
        Self::from_fn(ctx, |i, j| if i == j { ctx.one() } else { ctx.zero() })
    }

    pub fn ctx(&self) -> &FloatCtx {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &BigFloat {
        &self.m[i][j]
    }

    /// Same entries rounded to another context.
    pub fn with_ctx(&self, ctx: &FloatCtx) -> Self {
        Self::from_fn(ctx, |i, j| ctx.add(&self.m[i][j], &ctx.zero()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = &self.ctx;
        Self::from_fn(c, |i, j| c.add(&c.mul(&self.m[i][0], &o.m[0][j]), &c.mul(&self.m[i][1], &o.m[1][j])))
    }

    pub fn scale(&self, s: &BigFloat) -> Self {
        let c = &self.ctx;
        Self::from_fn(c, |i, j| c.mul(s, &self.m[i][j]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let c = &self.ctx;
        Self::from_fn(c, |i, j| c.sub(&self.m[i][j], &o.m[i][j]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, |i, j| self.m[j][i].clone())
    }

    pub fn trace(&self) -> BigFloat {
        self.ctx.add(&self.m[0][0], &self.m[1][1])
    }

    pub fn det(&self) -> BigFloat {
        let c = &self.ctx;
        c.sub(&c.mul(&self.m[0][0], &self.m[1][1]), &c.mul(&self.m[0][1], &self.m[1][0]))
    }

    pub fn discriminant(&self) -> BigFloat {
        let c = &self.ctx;
        let t = self.trace();
        c.sub(&c.mul(&t, &t), &c.mul(&c.from_u64(4), &self.det()))
    }

    /// Relative tolerance 2^(16-p) used to call a discriminant zero.
    pub fn tolerance(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::one() << (self.ctx.bits() - 16))
    }

    fn disc_is_negligible(&self, disc: &BigFloat) -> bool {
        let t = float::to_rational(&self.trace()).unwrap_or_default();
        let d = float::to_rational(disc).unwrap_or_default();
        d.abs() <= &t * &t * self.tolerance()
    }

    pub fn spectral_radius(&self) -> BigFloat {
        let c = &self.ctx;
        let disc = self.discriminant();
        if float::is_negative(&disc) {
            return c.sqrt(&float::abs(&self.det()));
        }
        let t = float::abs(&self.trace());
        c.div(&c.add(&t, &c.sqrt(&disc)), &c.from_u64(2))
    }

    pub fn perron_projection(&self) -> Result<FloatMat2> {
        let c = &self.ctx;
        let disc = self.discriminant();
        if float::is_negative(&disc) || self.disc_is_negligible(&disc) {
            return Err(Error::RepeatedEigenvalue(format!(
                "discriminant within relative tolerance 2^-{} of zero",
                c.bits() - 16
            )));
        }
        let s = c.sqrt(&disc);
        let t = self.trace();
        let two = c.from_u64(2);
        let l2 = c.div(&c.sub(&t, &s), &two);
        let shifted = self.sub(&FloatMat2::identity(c).scale(&l2));
        Ok(shifted.scale(&c.div(&c.one(), &s)))
    }

    /// ρ(M) = |tr M| when det M vanishes to within the context tolerance.
    pub fn rank_one_spectral_radius(&self) -> Result<BigFloat> {
        let scale: Rational = self
            .m
            .iter()
            .flatten()
            .map(|x| float::to_rational(x).unwrap_or_default().abs())
            .fold(Rational::zero(), |a, b| a.max(b));
        let det = float::to_rational(&self.det()).unwrap_or_default();
        if det.abs() > &scale * &scale * self.tolerance() {
            return Err(Error::domain("determinant is not negligible"));
        }
        Ok(float::abs(&self.trace()))
    }

    pub fn operator_norm_rowsum(&self) -> BigFloat {
        let c = &self.ctx;
        let r0 = c.add(&float::abs(&self.m[0][0]), &float::abs(&self.m[0][1]));
        let r1 = c.add(&float::abs(&self.m[1][0]), &float::abs(&self.m[1][1]));
        if float::cmp(&r0, &r1).is_ge() {
            r0
        } else {
            r1
        }
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        let f = |i: usize, j: usize| float::to_f64(&self.m[i][j]);
        [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
    }
}

impl MatrixAlgebra for FloatMat2 {
    fn mat_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn identity_like(&self) -> Self {
        FloatMat2::identity(&self.ctx)
    }
}

impl fmt::Display for FloatMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |i: usize, j: usize| float::format_sci(&self.m[i][j], 12);
        write!(f, "[[{},{}],[{},{}]]", s(0, 0), s(0, 1), s(1, 0), s(1, 1))
    }
}
