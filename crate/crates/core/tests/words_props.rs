//! Property tests for words, standard pairs, continued fractions and exact arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use sturmian_jsr::contfrac::{cf_of_quadratic, cf_of_rational, convergents};
use sturmian_jsr::linalg::product_of_word;
use sturmian_jsr::words::{delta_step, gamma_step, is_standard_pair, standard_pair_for};
use sturmian_jsr::{float, CfExpansion, ExactMat2, FiniteWord, FloatCtx, QuadExt, Rational};

fn reduced_fraction() -> impl Strategy<Value = Rational> {
    (2i64..60).prop_flat_map(|q| (1..q, Just(q))).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn word(max: usize) -> impl Strategy<Value = FiniteWord> {
    prop::collection::vec(0u8..2, 1..max).prop_map(|b| FiniteWord::from_bits(b).unwrap())
}

fn small_mat() -> impl Strategy<Value = ExactMat2> {
    (0i64..4, 0i64..4, 0i64..4, 0i64..4).prop_map(|(a, b, c, d)| ExactMat2::from_ints(a, b, c, d))
}

/// Cyclic balance by brute force: all cyclic factors of equal length differ by at most one 1.
fn brute_cyclically_balanced(w: &FiniteWord) -> bool {
    let n = w.len();
    let doubled = w.concat(w);
    (1..=n).all(|k| {
        let counts: Vec<usize> = (0..n).map(|i| (i..i + k).filter(|&j| doubled.get(j) == 1).count()).collect();
        counts.iter().max().unwrap() - counts.iter().min().unwrap() <= 1
    })
}

proptest! {
    #[test]
    fn standard_pair_slope_and_balance(pq in reduced_fraction()) {
        let sp = standard_pair_for(&pq).unwrap();
        prop_assert_eq!(sp.slope(), pq.clone());
        prop_assert_eq!(sp.determinant(), 1);
        prop_assert!(is_standard_pair(&sp.u, &sp.v));
        let uv = sp.word();
        prop_assert_eq!(uv.len() as i64, pq.denom().try_into().unwrap_or(0i64));
        prop_assert!(brute_cyclically_balanced(&uv));
        prop_assert!(uv.is_cyclically_balanced().unwrap());
    }

    #[test]
    fn moves_preserve_standardness(moves in prop::collection::vec(any::<bool>(), 0..12)) {
        let mut p = sturmian_jsr::StandardPair::base();
        for m in moves {
            p = if m { gamma_step(&p) } else { delta_step(&p) };
            prop_assert!(is_standard_pair(&p.u, &p.v));
            prop_assert_eq!(p.determinant(), 1);
        }
    }

    #[test]
    fn cyclic_balance_matches_brute_force(w in word(14)) {
        prop_assert_eq!(w.is_cyclically_balanced().unwrap(), brute_cyclically_balanced(&w));
    }

    #[test]
    fn rational_cf_roundtrip((p, q) in (2i64..5000).prop_flat_map(|q| (1..q, Just(q)))) {
        let x = Rational::new(p.into(), q.into());
        let cf = cf_of_rational(&x).unwrap();
        prop_assert!(cf.is_canonical());
        prop_assert_eq!(cf.value().unwrap(), x.clone());
        let n = cf.len().unwrap();
        let conv = convergents(&cf, n).unwrap();
        prop_assert_eq!(conv.fraction(n), x);
    }

    #[test]
    fn convergent_determinants(coeffs in prop::collection::vec(1u64..20, 2..15)) {
        let cf = CfExpansion::finite(coeffs).unwrap();
        let n = cf.len().unwrap();
        let conv = convergents(&cf, n).unwrap();
        for k in 0..=n as isize {
            let det = conv.p(k) * conv.q(k - 1) - conv.p(k - 1) * conv.q(k);
            let sign = if k % 2 == 0 { -1 } else { 1 };
            prop_assert_eq!(det, BigInt::from(sign));
        }
    }

    #[test]
    fn quadratic_cf_is_eventually_periodic(d in 2i64..60) {
        let root = (d as f64).sqrt().floor() as i64;
        prop_assume!(root * root != d);
        // Fractional part of sqrt(d).
        let a = Rational::from_integer((-root).into());
        let cf = cf_of_quadratic(&a, &Rational::one(), &d.into()).unwrap();
        prop_assert!(!cf.is_finite());
        let ctx = FloatCtx::new(200);
        let x = QuadExt::new(a, Rational::one(), d.into()).to_float(&ctx);
        let conv = convergents(&cf, 40).unwrap();
        let approx = float::rational_to_f64(&conv.fraction(40)).unwrap();
        prop_assert!((approx - float::to_f64(&x)).abs() < 1e-12);
    }

    #[test]
    fn quad_arithmetic_matches_float(a in -50i64..50, b in -50i64..50, c in -50i64..50, e in -50i64..50, d in 2i64..30) {
        prop_assume!(((d as f64).sqrt().round() as i64).pow(2) != d);
        let ctx = FloatCtx::new(200);
        let x = QuadExt::new(Rational::new(a.into(), 7.into()), Rational::new(b.into(), 3.into()), d.into());
        let y = QuadExt::new(Rational::new(c.into(), 5.into()), Rational::new(e.into(), 2.into()), d.into());
        let (xf, yf) = (float::to_f64(&x.to_float(&ctx)), float::to_f64(&y.to_float(&ctx)));
        let close = |u: &QuadExt, v: f64| (float::to_f64(&u.to_float(&ctx)) - v).abs() <= 1e-9 * (1.0 + v.abs());
        prop_assert!(close(&(&x + &y), xf + yf));
        prop_assert!(close(&(&x * &y), xf * yf));
        prop_assert_eq!(x.cmp(&y), xf.partial_cmp(&yf).unwrap());
        if !y.is_zero() {
            prop_assert!(close(&(&x / &y), xf / yf));
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
        prop_assert_eq!(x.signum() as i32, if xf > 0.0 { 1 } else if xf < 0.0 { -1 } else { 0 });
    }

    #[test]
    fn product_of_concatenation(a0 in small_mat(), a1 in small_mat(), u in word(8), v in word(8)) {
        // The later symbol multiplies on the left.
        let uv = product_of_word(&a0, &a1, &u.concat(&v));
        let split = product_of_word(&a0, &a1, &v).mul(&product_of_word(&a0, &a1, &u));
        prop_assert_eq!(uv, split);
    }

    #[test]
    fn trace_is_rotation_invariant(a0 in small_mat(), a1 in small_mat(), u in word(10), k in 0usize..10) {
        let t = product_of_word(&a0, &a1, &u).trace();
        prop_assert_eq!(product_of_word(&a0, &a1, &u.rotate(k % u.len())).trace(), t);
    }
}

#[test]
fn empty_word_gives_identity() {
    let a0 = ExactMat2::from_ints(1, 1, 0, 1);
    let a1 = ExactMat2::from_ints(1, 0, 1, 1);
    assert_eq!(product_of_word(&a0, &a1, &FiniteWord::empty()), ExactMat2::identity());
    assert!(FiniteWord::empty().slope().is_err());
    assert!(Rational::zero() < Rational::one());
}
