//! Brute-force oracle checks and the inverse ratio function.

use std::sync::OnceLock;

use proptest::prelude::*;

use sturmian_jsr::family::builtin_hmst;
use sturmian_jsr::oracle::{condition_v_word, jsr_bounds, lyndon_words, WordVerdict};
use sturmian_jsr::rational_preimage::{preimage_interval, varrho_on_interval};
use sturmian_jsr::staircase::{build_staircase, ratio_at, RatioAnswer, Staircase};
use sturmian_jsr::{float, rat, FiniteWord, FloatCtx, Rational, Real};

fn staircase() -> &'static Staircase {
    static ST: OnceLock<Staircase> = OnceLock::new();
    ST.get_or_init(|| build_staircase(&builtin_hmst(), 30, &FloatCtx::default()).unwrap())
}

fn alpha_strategy() -> impl Strategy<Value = Rational> {
    (1i64..400).prop_map(|k| rat(k, 200))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_brackets_the_radius(alpha in alpha_strategy()) {
        let ctx = FloatCtx::default();
        let fam = builtin_hmst();
        let a = Real::from(alpha.clone());
        let b = jsr_bounds(&fam, &a, 10, &ctx).unwrap();
        prop_assert!(float::cmp(&b.lower, &b.upper).is_le());
        // On an exact plateau the closed form lies between the two bounds.
        if let RatioAnswer::Exact(pq) = ratio_at(&fam, &a, 40, Some(staircase()), &ctx).unwrap() {
            if pq > rat(0, 1) && pq < rat(1, 1) {
                let v = varrho_on_interval(&fam, &pq, &a, &ctx).unwrap();
                let slack = ctx.mul(&v, &ctx.from_f64(1e-12));
                prop_assert!(float::cmp(&b.lower, &ctx.add(&v, &slack)).is_le());
                prop_assert!(float::cmp(&ctx.sub(&v, &slack), &b.upper).is_le());
            }
        }
    }

    #[test]
    fn upper_bound_does_not_grow_with_length(alpha in alpha_strategy()) {
        let ctx = FloatCtx::default();
        let fam = builtin_hmst();
        let a = Real::from(alpha);
        let short = jsr_bounds(&fam, &a, 6, &ctx).unwrap();
        let long = jsr_bounds(&fam, &a, 12, &ctx).unwrap();
        // Equal within the rounding inflation applied to each bound.
        let tol = 1e-12 * float::to_f64(&short.upper);
        prop_assert!(float::to_f64(&long.upper) <= float::to_f64(&short.upper) + tol);
        prop_assert!(float::cmp(&short.lower, &long.lower).is_le());
    }

    #[test]
    fn ratio_lands_in_its_plateau(alpha in alpha_strategy()) {
        let ctx = FloatCtx::default();
        let fam = builtin_hmst();
        let a = Real::from(alpha);
        match ratio_at(&fam, &a, 40, Some(staircase()), &ctx).unwrap() {
            RatioAnswer::Exact(pq) => {
                let iv = staircase().lookup(&pq).cloned().unwrap_or_else(|| preimage_interval(&fam, &pq, &ctx).unwrap());
                prop_assert_eq!(iv.contains(&a), Some(true));
            }
            RatioAnswer::Bracket { lo, hi, .. } => prop_assert!(lo < hi),
        }
    }
}

#[test]
fn ratio_is_monotone_in_alpha() {
    let ctx = FloatCtx::default();
    let fam = builtin_hmst();
    let mut prev = rat(-1, 1);
    for k in 1..=200 {
        let a = Real::from(rat(k, 100));
        let r = ratio_at(&fam, &a, 40, Some(staircase()), &ctx).unwrap().representative();
        assert!(r >= prev, "ratio decreased at alpha = {k}/100");
        prev = r;
    }
}

#[test]
fn witness_slope_tracks_plateau_boundaries() {
    // Just inside [lo, hi] of 1/3 the brute-force leader has slope 1/3; just
    // outside it does not.
    let ctx = FloatCtx::default();
    let fam = builtin_hmst();
    let iv = preimage_interval(&fam, &rat(1, 3), &ctx).unwrap();
    let (lo, hi) = (float::to_f64(&iv.lo.value), float::to_f64(&iv.hi.value));
    let at = |x: f64| {
        let a = Real::from(Rational::from_float(x).unwrap());
        jsr_bounds(&fam, &a, 12, &ctx).unwrap().witness_slope()
    };
    let eps = 1e-4 * (hi - lo);
    assert_eq!(at(lo + eps), rat(1, 3));
    assert_eq!(at(hi - eps), rat(1, 3));
    assert_ne!(at(lo - 0.02), rat(1, 3));
    assert_ne!(at(hi + 0.02), rat(1, 3));
}

#[test]
fn lyndon_enumeration_is_complete() {
    // Every primitive word of length n has exactly one Lyndon rotation.
    for n in 1..=12usize {
        let lyn: Vec<FiniteWord> = lyndon_words(n).into_iter().filter(|w| w.len() == n).collect();
        let primitive = (0u32..1 << n)
            .map(|m| FiniteWord::from_bits((0..n).map(|i| ((m >> i) & 1) as u8).collect()).unwrap())
            .filter(|w| (1..n).all(|k| w.rotate(k) != *w))
            .count();
        assert_eq!(lyn.len() * n, primitive, "length {n}");
        assert!(lyn.iter().all(|w| w.min_rotation() == *w));
    }
}

#[test]
fn condition_v_on_unbalanced_words() {
    let ctx = FloatCtx::default();
    let fam = builtin_hmst();
    let alpha = Real::from(rat(1, 1));
    let varrho = varrho_on_interval(&fam, &rat(1, 2), &alpha, &ctx).unwrap();
    for s in ["0011", "000111", "001101", "0111"] {
        let w: FiniteWord = sturmian_jsr::words::w(s);
        let (verdict, _) = condition_v_word(&fam, &alpha, &rat(1, 2), &varrho, &w, &ctx);
        assert_eq!(verdict, WordVerdict::Strict, "{s}");
    }
}
