//! Finite binary words, balance, standard pairs and mechanical words.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::contfrac::{cf_of_rational, CfExpansion};
use crate::error::{Error, Result};
use crate::float::Real;
use crate::Rational;

/// A word over {0,1}, stored one symbol per byte.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord {
    bits: Vec<u8>,
}

impl FiniteWord {
    pub fn empty() -> Self {
        FiniteWord { bits: Vec::new() }
    }

    /// Builds a word from symbols, rejecting anything other than 0 and 1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Parse("words are over {0,1}".into()));
        }
        Ok(FiniteWord { bits })
    }

    pub fn zeros(n: usize) -> Self {
        FiniteWord { bits: vec![0; n] }
    }

    pub fn ones(n: usize) -> Self {
        FiniteWord { bits: vec![1; n] }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn ones_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        FiniteWord { bits }
    }

    pub fn pow(&self, k: usize) -> FiniteWord {
        FiniteWord { bits: self.bits.repeat(k) }
    }

    /// Cyclic rotation moving the first `k` symbols to the end.
    pub fn rotate(&self, k: usize) -> FiniteWord {
        if self.is_empty() {
            return self.clone();
        }
        let mut bits = self.bits.clone();
        bits.rotate_left(k % self.len());
        FiniteWord { bits }
    }

    pub fn starts_with(&self, other: &FiniteWord) -> bool {
        self.bits.starts_with(&other.bits)
    }

    pub fn ends_with(&self, other: &FiniteWord) -> bool {
        self.bits.ends_with(&other.bits)
    }

    /// |w|_1 / |w| in lowest terms.
    pub fn slope(&self) -> Result<Rational> {
        if self.is_empty() {
            return Err(Error::domain("slope of the empty word"));
        }
        Ok(Rational::new(self.ones_count().into(), self.len().into()))
    }

    /// Every two factors of equal length differ by at most one in their
    /// number of ones.
    pub fn is_balanced(&self) -> bool {
        windows_balanced(&self.bits, self.len(), self.len())
    }

    /// Balanced together with every cyclic rotation.
    pub fn is_cyclically_balanced(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::domain("cyclic balance of the empty word"));
        }
        // Windows of ww of length <= |w| starting in the first copy are exactly
        // the factors of all rotations.
        let ww = self.bits.repeat(2);
        Ok(windows_balanced(&ww, self.len(), self.len()))
    }

    /// Lexicographically least rotation.
    pub fn min_rotation(&self) -> FiniteWord {
        (0..self.len().max(1)).map(|k| self.rotate(k)).min().unwrap_or_default()
    }
}

/// Sliding-window check over windows of length 1..=max_len whose start is
/// below `starts` (windows must fit in `s`).
fn windows_balanced(s: &[u8], starts: usize, max_len: usize) -> bool {
    let mut prefix = Vec::with_capacity(s.len() + 1);
    prefix.push(0usize);
    for &b in s {
        prefix.push(prefix.last().unwrap() + b as usize);
    }
    for len in 1..=max_len {
        let mut lo = usize::MAX;
        let mut hi = 0;
        let last_start = (s.len() - len).min(starts.saturating_sub(1));
        for i in 0..=last_start {
            let c = prefix[i + len] - prefix[i];
            lo = lo.min(c);
            hi = hi.max(c);
        }
        if hi - lo > 1 {
            return false;
        }
    }
    true
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for FiniteWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.bytes()
            .map(|c| match c {
                b'0' => Ok(0),
                b'1' => Ok(1),
                _ => Err(Error::Parse(format!("invalid symbol {:?} in word", c as char))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(|bits| FiniteWord { bits })
    }
}

/// Parse a word literal; panics on invalid input. Handy in tests.
pub fn w(s: &str) -> FiniteWord {
    s.parse().expect("valid word literal")
}

/// A standard pair (u, v). Construction checks reachability from (0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardPair {
    pub u: FiniteWord,
    pub v: FiniteWord,
}

impl StandardPair {
    pub fn base() -> Self {
        StandardPair { u: w("0"), v: w("1") }
    }

    pub fn new(u: FiniteWord, v: FiniteWord) -> Result<Self> {
        if !is_standard_pair(&u, &v) {
            return Err(Error::domain(format!("({u},{v}) is not a standard pair")));
        }
        Ok(StandardPair { u, v })
    }

    /// The word uv.
    pub fn word(&self) -> FiniteWord {
        self.u.concat(&self.v)
    }

    /// |u| |v|_1 - |u|_1 |v|, equal to 1 for every standard pair.
    pub fn determinant(&self) -> i64 {
        self.u.len() as i64 * self.v.ones_count() as i64 - self.u.ones_count() as i64 * self.v.len() as i64
    }

    pub fn slope(&self) -> Rational {
        self.word().slope().expect("nonempty")
    }
}

impl fmt::Display for StandardPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// (u, v) -> (u, uv)
pub fn gamma_step(p: &StandardPair) -> StandardPair {
    StandardPair { u: p.u.clone(), v: p.u.concat(&p.v) }
}

/// (u, v) -> (vu, v)
pub fn delta_step(p: &StandardPair) -> StandardPair {
    StandardPair { u: p.v.concat(&p.u), v: p.v.clone() }
}

/// (u, v) -> (uv, v), the mirror image of `delta_step`. Building pairs with
/// this move yields the Christoffel factorisation of the lower word of slope
/// p/q, e.g. 3/7 -> (00101, 01).
pub fn delta_mirror_step(p: &StandardPair) -> StandardPair {
    StandardPair { u: p.u.concat(&p.v), v: p.v.clone() }
}

/// Reachability from (0,1) by undoing Γ, Δ or the mirrored Δ.
pub fn is_standard_pair(u: &FiniteWord, v: &FiniteWord) -> bool {
    let (mut u, mut v) = (u.clone(), v.clone());
    loop {
        if u.is_empty() || v.is_empty() {
            return false;
        }
        if u.len() == 1 && v.len() == 1 {
            return u.get(0) == 0 && v.get(0) == 1;
        }
        if v.len() > u.len() {
            if !v.starts_with(&u) {
                return false;
            }
            v = FiniteWord { bits: v.bits[u.len()..].to_vec() };
        } else if u.len() > v.len() {
            if u.starts_with(&v) {
                u = FiniteWord { bits: u.bits[v.len()..].to_vec() };
            } else if u.ends_with(&v) {
                u = FiniteWord { bits: u.bits[..u.len() - v.len()].to_vec() };
            } else {
                return false;
            }
        } else {
            return false;
        }
    }
}

/// The standard pair (u, v) with slope(uv) = p/q.
///
/// With p/q = [a1, ..., an] (an > 1): apply Γ^(a1-1), then alternately the
/// mirrored Δ^(a2), Γ^(a3), ..., with the last exponent reduced by one.
pub fn standard_pair_for(pq: &Rational) -> Result<StandardPair> {
    let cf = cf_of_rational(pq)?;
    let a = cf.prefix();
    let n = a.len();
    let mut pair = StandardPair::base();
    for (k, &ak) in a.iter().enumerate() {
        let mut e = if k == 0 { ak - 1 } else { ak };
        if k == n - 1 {
            e -= 1;
        }
        for _ in 0..e {
            pair = if k % 2 == 0 { gamma_step(&pair) } else { delta_mirror_step(&pair) };
        }
    }
    Ok(pair)
}

/// First `n` symbols x_1..x_n of the lower mechanical word,
/// x_k = floor(γ(k+1)+δ) - floor(γk+δ).
///
/// Approximate inputs are evaluated on exact rational enclosures; a floor
/// that the enclosure cannot decide is an error rather than a guess.
pub fn mechanical_prefix(gamma: &Real, delta: &Real, n: usize) -> Result<FiniteWord> {
    let (glo, ghi) = gamma.bounds().ok_or_else(|| Error::domain("gamma is not finite"))?;
    let (dlo, dhi) = delta.bounds().ok_or_else(|| Error::domain("delta is not finite"))?;
    if glo.is_negative() || ghi > Rational::from_integer(1.into()) {
        return Err(Error::domain("mechanical words need 0 <= gamma <= 1"));
    }
    let floor_at = |k: usize| -> Result<Rational> {
        let kk = Rational::from_integer(k.into());
        let lo = (&glo * &kk + &dlo).floor();
        let hi = (&ghi * &kk + &dhi).floor();
        if lo != hi {
            return Err(Error::PrecisionExhausted(format!(
                "cannot certify floor at position {k} of the mechanical word"
            )));
        }
        Ok(lo)
    };
    let mut bits = Vec::with_capacity(n);
    let mut prev = floor_at(1)?;
    for k in 1..=n {
        let next = floor_at(k + 1)?;
        let d = &next - &prev;
        bits.push(if d.is_zero() { 0 } else { 1 });
        prev = next;
    }
    Ok(FiniteWord { bits })
}

/// s_{-1}, s_0, ..., s_n with s_{-1} = 1, s_0 = 0, s_1 = 0^(a1-1) 1 and
/// s_{k+1} = s_k^(a_{k+1}) s_{k-1}.
pub fn s_sequence(cf: &CfExpansion, n: usize) -> Result<Vec<FiniteWord>> {
    let a = cf
        .take(n)
        .ok_or_else(|| Error::PrecisionExhausted(format!("continued fraction has fewer than {n} coefficients")))?;
    let mut out = vec![w("1"), w("0")];
    if n == 0 {
        return Ok(out);
    }
    out.push(FiniteWord::zeros(a[0] as usize - 1).concat(&w("1")));
    for k in 1..n {
        let next = out[k + 1].pow(a[k] as usize).concat(&out[k]);
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::{Ball, FloatCtx};
    use crate::rat;

    #[test]
    fn counting_and_slope() {
        assert_eq!(w("").ones_count(), 0);
        assert_eq!(w("00101").ones_count(), 2);
        assert_eq!(w("01").pow(5).ones_count(), 5);
        assert_eq!(w("00101").slope().unwrap(), rat(2, 5));
        assert_eq!(w("0").slope().unwrap(), rat(0, 1));
        assert_eq!(w("00101").concat(&w("01")).slope().unwrap(), rat(3, 7));
        assert!(w("").slope().is_err());
    }

    #[test]
    fn balance_examples() {
        assert!(!w("00101001010101").is_balanced());
        assert!(!w("0011").is_balanced());
        assert!(w("01001010").is_balanced());
        assert!(w("01").is_cyclically_balanced().unwrap());
        let (u, v) = (w("00101"), w("01"));
        assert!(!u.pow(2).concat(&v.pow(2)).is_cyclically_balanced().unwrap());
        let uv = w("0").concat(&w("1"));
        assert!(uv.pow(3).concat(&w("0")).is_cyclically_balanced().unwrap());
        assert!(w("").is_cyclically_balanced().is_err());
    }

    #[test]
    fn gamma_delta_examples() {
        let b = StandardPair::base();
        assert_eq!(gamma_step(&b), StandardPair { u: w("0"), v: w("01") });
        assert_eq!(delta_step(&b), StandardPair { u: w("10"), v: w("1") });
        for p in [gamma_step(&b), delta_step(&b), delta_mirror_step(&b)] {
            assert_eq!(p.determinant(), 1);
            assert!(is_standard_pair(&p.u, &p.v));
        }
        assert!(!is_standard_pair(&w("1"), &w("0")));
        assert!(!is_standard_pair(&w("00"), &w("1")));
    }

    #[test]
    fn standard_pairs_match_table() {
        let cases = [
            ((3, 7), "00101", "01"),
            ((1, 2), "0", "1"),
            ((1, 3), "0", "01"),
            ((2, 5), "001", "01"),
            ((2, 7), "0001", "001"),
            ((1, 4), "0", "001"),
            ((1, 5), "0", "0001"),
        ];
        for ((p, q), u, v) in cases {
            let pair = standard_pair_for(&rat(p, q)).unwrap();
            assert_eq!((pair.u.to_string(), pair.v.to_string()), (u.to_string(), v.to_string()), "{p}/{q}");
        }
        assert!(standard_pair_for(&rat(1, 1)).is_err());
    }

    #[test]
    fn mechanical_examples() {
        let z = Real::Exact(rat(0, 1));
        assert_eq!(mechanical_prefix(&Real::Exact(rat(1, 3)), &z, 6).unwrap(), w("010010"));
        assert_eq!(mechanical_prefix(&z, &Real::Exact(rat(1, 3)), 4).unwrap(), w("0000"));
        assert_eq!(mechanical_prefix(&Real::Exact(rat(1, 1)), &z, 4).unwrap(), w("1111"));
        // A ball straddling 1/2 cannot decide floor(2 gamma).
        let ctx = FloatCtx::default();
        let g = Real::Approx(Ball::new(ctx.from_rational(&rat(1, 2)), ctx.from_rational(&rat(1, 1000))));
        assert!(mechanical_prefix(&g, &z, 4).is_err());
    }

    #[test]
    fn s_sequence_examples() {
        let cf = CfExpansion::finite(vec![2, 1, 1, 1]).unwrap();
        let s = s_sequence(&cf, 4).unwrap();
        let got: Vec<String> = s[2..].iter().map(|x| x.to_string()).collect();
        assert_eq!(got, vec!["01", "010", "01001", "01001010"]);
        let s = s_sequence(&CfExpansion::finite(vec![2]).unwrap(), 1).unwrap();
        assert_eq!(s[2].slope().unwrap(), rat(1, 2));
        let s = s_sequence(&CfExpansion::finite(vec![3, 2]).unwrap(), 2).unwrap();
        assert_eq!(s[3], w("0010010"));
        assert_eq!(s[3].slope().unwrap(), rat(2, 7));
    }
}
