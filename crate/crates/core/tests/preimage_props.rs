//! Properties of the exact plateaus, the staircase, and irrational preimages.

use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use sturmian_jsr::contfrac::convergents;
use sturmian_jsr::family::{builtin_bousch_mairesse, builtin_hmst, builtin_kozyakin};
use sturmian_jsr::irrational_preimage::{alpha_for_irrational, convergent_indices_up_to, rho_sequence, AlphaOptions};
use sturmian_jsr::linalg::product_of_word;
use sturmian_jsr::rational_preimage::{one_over_n_closed_form, preimage_interval, rho_root, IntervalKind};
use sturmian_jsr::staircase::farey_interior;
use sturmian_jsr::{float, rat, CfExpansion, FloatCtx, MatrixFamily, QuadExt, Rational, Real};

fn reduced_fraction(qmax: i64) -> impl Strategy<Value = Rational> {
    (2..=qmax).prop_flat_map(|q| (1..q, Just(q))).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn families() -> Vec<MatrixFamily> {
    let ctx = FloatCtx::default();
    vec![
        builtin_hmst(),
        builtin_kozyakin(&rat(1, 2), &rat(1, 1), &rat(1, 1), &rat(1, 2)).unwrap(),
        builtin_bousch_mairesse(&Real::from(rat(1, 1)), &Real::from(rat(1, 2)), &Real::from(rat(1, 2)), &ctx).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interval_is_nondegenerate(pq in reduced_fraction(40), which in 0usize..3) {
        let ctx = FloatCtx::default();
        let fam = &families()[which];
        let iv = preimage_interval(fam, &pq, &ctx).unwrap();
        prop_assert_eq!(iv.kind, IntervalKind::Bounded);
        prop_assert_eq!(iv.lo.cmp_endpoint(&iv.hi), Some(std::cmp::Ordering::Less));
        prop_assert!(!float::is_negative(&iv.lo.value));
    }

    #[test]
    fn neighbouring_plateaus_are_ordered(pq in reduced_fraction(30)) {
        // Compare p/q with its right Farey neighbour among denominators <= q.
        let ctx = FloatCtx::default();
        let fam = builtin_hmst();
        let q = pq.denom().to_u64().unwrap();
        let farey = farey_interior(q);
        let i = farey.iter().position(|x| *x == pq).unwrap();
        prop_assume!(i + 1 < farey.len());
        let a = preimage_interval(&fam, &pq, &ctx).unwrap();
        let b = preimage_interval(&fam, &farey[i + 1], &ctx).unwrap();
        prop_assert!(a.hi.exact.as_ref().unwrap() < b.lo.exact.as_ref().unwrap());
    }

    #[test]
    fn duality_swaps_plateaus(pq in reduced_fraction(30)) {
        let ctx = FloatCtx::default();
        let fam = builtin_hmst();
        let one = QuadExt::from_int(1);
        let a = preimage_interval(&fam, &pq, &ctx).unwrap();
        let b = preimage_interval(&fam, &(Rational::one() - &pq), &ctx).unwrap();
        prop_assert_eq!(b.lo.exact.unwrap(), &one / a.hi.exact.as_ref().unwrap());
        prop_assert_eq!(b.hi.exact.unwrap(), &one / a.lo.exact.as_ref().unwrap());
    }

    #[test]
    fn extremal_word_wins_inside_plateau(pq in reduced_fraction(12), t in 0.05f64..0.95) {
        // Inside the plateau, the balanced word of slope p/q beats every other
        // word of length <= 12 in normalised spectral radius.
        let ctx = FloatCtx::default();
        let fam = builtin_hmst();
        let iv = preimage_interval(&fam, &pq, &ctx).unwrap();
        let (lo, hi) = (float::to_f64(&iv.lo.value), float::to_f64(&iv.hi.value));
        let alpha = Real::from(Rational::from_float(lo + t * (hi - lo)).unwrap());
        let b = sturmian_jsr::oracle::jsr_bounds(&fam, &alpha, 12, &ctx).unwrap();
        prop_assert_eq!(b.witness_slope(), pq);
    }
}

#[test]
fn one_over_n_formula_matches_general_construction() {
    let ctx = FloatCtx::default();
    let fam = builtin_hmst();
    for n in 1..=12u64 {
        let iv = preimage_interval(&fam, &rat(1, n as i64 + 1), &ctx).unwrap();
        let (lo, hi) = one_over_n_closed_form(n);
        assert_eq!(iv.lo.exact.as_ref(), Some(&lo), "n = {n}");
        assert_eq!(iv.hi.exact.as_ref(), Some(&hi), "n = {n}");
    }
}

#[test]
fn irrational_preimage_sits_between_convergent_plateaus() {
    let ctx = FloatCtx::default();
    let fam = builtin_hmst();
    // Plateaus with q near 50 end closer to alpha than 25 digits resolve.
    let opts = AlphaOptions { digits: 80, ..AlphaOptions::default() };
    let gammas = [
        CfExpansion::golden(),
        CfExpansion::periodic(vec![], vec![4]).unwrap(),
        CfExpansion::periodic(vec![], vec![2]).unwrap(),
        CfExpansion::periodic(vec![3], vec![1, 2]).unwrap(),
    ];
    for cf in &gammas {
        let r = alpha_for_irrational(&fam, cf, &opts, &ctx).unwrap();
        let (lo, hi) = r.bounds();
        for (k, pq) in convergent_indices_up_to(cf, 50) {
            let iv = preimage_interval(&fam, &pq, &ctx).unwrap();
            // Even convergents lie below gamma, odd ones above; the staircase is increasing.
            if k % 2 == 0 {
                assert_eq!(iv.hi.cmp_rational(&lo), Some(std::cmp::Ordering::Less), "{cf} at {pq}");
            } else {
                assert_eq!(iv.lo.cmp_rational(&hi), Some(std::cmp::Ordering::Greater), "{cf} at {pq}");
            }
        }
    }
}

#[test]
fn golden_rho_growth_and_term_bound() {
    let ctx = FloatCtx::default();
    let fam = builtin_hmst();
    let seq = rho_sequence(&fam, &CfExpansion::golden(), 12, &ctx).unwrap();
    let two = ctx.from_u64(2);
    for n in 3..12isize {
        let next = seq.rho(n + 1);
        assert!(float::cmp(next, &ctx.mul(&two, seq.rho(n))).is_ge(), "rho growth at {n}");
    }
    // |log rho_{n+1} - a log rho_n - log rho_{n-1}| is at most C0 / rho_{n-1}^2 with C0 = 193.
    let c0 = ctx.from_u64(193);
    for n in 2..12isize {
        let t = ctx.sub(&ctx.sub(seq.log_rho(n + 1), seq.log_rho(n)), seq.log_rho(n - 1));
        let bound = ctx.div(&c0, &ctx.mul(seq.rho(n - 1), seq.rho(n - 1)));
        assert!(float::cmp(&float::abs(&t), &bound).is_le(), "term bound at {n}");
    }
}

#[test]
fn rho_sequence_matches_word_products() {
    let ctx = FloatCtx::default();
    let fam = builtin_hmst();
    let cf = CfExpansion::periodic(vec![2], vec![1, 3]).unwrap();
    let seq = rho_sequence(&fam, &cf, 6, &ctx).unwrap();
    let (a0, a1) = fam.exact_pair().unwrap();
    let conv = convergents(&cf, 6).unwrap();
    for n in 1..=6isize {
        let w = seq.word(n).unwrap();
        // s_n is a rotation of the word behind B_n, so traces agree.
        let m = product_of_word(a0, a1, &w);
        assert_eq!(seq.tau(n).unwrap(), m.trace());
        assert_eq!(seq.matrix(n).unwrap().det(), m.det());
        assert_eq!(w.len(), conv.q(n).to_usize().unwrap());
        assert_eq!(w.ones_count(), conv.p(n).to_usize().unwrap());
        let rho = rho_root(&fam, &w, &Real::from(rat(1, 1)), &ctx);
        let direct = float::to_f64(&ctx.root(seq.rho(n), w.len() as u64));
        assert!((float::to_f64(&rho) - direct).abs() < 1e-12);
    }
}

#[test]
fn results_are_bit_for_bit_reproducible() {
    let ctx = FloatCtx::default();
    let fam = builtin_hmst();
    let opts = AlphaOptions::default();
    let a = alpha_for_irrational(&fam, &CfExpansion::golden(), &opts, &ctx).unwrap();
    let b = alpha_for_irrational(&fam, &CfExpansion::golden(), &opts, &ctx).unwrap();
    assert_eq!(a.value, b.value);
    assert_eq!(a.radius, b.radius);
    let s1 = sturmian_jsr::staircase::build_staircase(&fam, 15, &ctx).unwrap();
    let s2 = sturmian_jsr::staircase::build_staircase(&fam, 15, &ctx).unwrap();
    let d = |s: &sturmian_jsr::staircase::Staircase| s.steps.iter().map(|x| x.display(30)).collect::<Vec<_>>();
    assert_eq!(d(&s1), d(&s2));
}
