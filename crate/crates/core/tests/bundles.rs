mod common;

use common::{config, gen, int, rng, sn};
use proptest::prelude::*;
use sgk_core::bundles::{contract_with_differential, h0_dim};
use sgk_core::poly::Poly;
use sgk_core::sample;
use sgk_core::scalar::q;
use sgk_core::superspace::Chart;
use sgk_core::{ProjPoint, Section, Sl2, SpinorSection, SuperCurve};

fn spinor(n: usize) -> SpinorSection {
    SpinorSection::new(gen(n, 1), gen(n, 2))
}

#[test]
fn dimensions() {
    assert_eq!(h0_dim(1), 2);
    assert_eq!(h0_dim(-1), 0);
    assert_eq!(h0_dim(0), 1);
    for d in 0..5 {
        assert_eq!(h0_dim(2 * d - 1), 2 * d as usize);
    }
}

#[test]
fn spinor_values_at_zero_and_infinity() {
    let s = spinor(2).to_section();
    let at0 = s.eval_at(&ProjPoint::origin(2));
    assert_eq!((at0.frame, at0.value), (Chart::One, gen(2, 1)));
    let at_inf = s.eval_at(&ProjPoint::infinity(2));
    assert_eq!((at_inf.frame, at_inf.value), (Chart::Two, -gen(2, 2)));
    assert_eq!(s.chart2(), Poly::from_coeffs(2, vec![-gen(2, 2), -gen(2, 1)]));
    assert!(Section::zero(2, 1).eval_at(&ProjPoint::unit(2)).value.is_zero());
}

#[test]
fn spinor_action_examples() {
    let s = spinor(2);
    assert_eq!(s.act(&Sl2::identity(2)), s);
    let m1 = int(2, -1);
    let minus = Sl2::new(m1.clone(), int(2, 0), int(2, 0), m1).unwrap();
    assert_eq!(s.act(&minus), SpinorSection::new(-gen(2, 1), -gen(2, 2)));
    let g = Sl2::from_scalars(2, q(2, 1), q(3, 1), q(1, 1), q(2, 1)).unwrap();
    // [[a, c], [b, d]] = [[2, 1], [3, 2]]
    assert_eq!(s.act(&g), SpinorSection::new(sn("2*g1 + 3*g2", 2), sn("g1 + 2*g2", 2)));
    assert_eq!(s.to_section().sl2_pushforward(&g), s.act(&g).to_section());
}

#[test]
fn contraction_examples() {
    let s = spinor(2);
    let c = contract_with_differential(&s, &SuperCurve::identity(2));
    assert_eq!(c.k(), 1);
    assert_eq!(c.chart1(), &Poly::from_coeffs(2, vec![gen(2, 1), -gen(2, 2)]));
    assert!(contract_with_differential(&SpinorSection::new(int(2, 0), int(2, 0)), &SuperCurve::identity(2))
        .chart1()
        .is_zero());
    let constant = SuperCurve::constant(int(2, 3), int(2, 1)).unwrap();
    assert!(contract_with_differential(&s, &constant).chart1().is_zero());
}

#[test]
fn degree_bound() {
    assert!(Section::new(1, Poly::from_scalars(0, &[q(1, 1), q(0, 1), q(1, 1)])).is_err());
    assert!(Section::new(-1, Poly::from_scalars(0, &[q(1, 1)])).is_err());
    assert!(SpinorSection::from_section(&Section::zero(0, 2)).is_err());
}

fn random_section(seed: u64, n: usize, k: i32) -> Section {
    let mut r = rng(seed);
    let coeffs = (0..h0_dim(k)).map(|_| sample::even(&mut r, n)).collect::<Vec<_>>();
    if coeffs.is_empty() {
        Section::zero(n, k)
    } else {
        Section::from_coeffs(k, coeffs).unwrap()
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn frames_glue(seed in any::<u64>(), k in 0i32..=5, n in 0usize..=2) {
        let s = random_section(seed, n, k);
        let p = sample::point(&mut rng(seed ^ 1), n);
        if p.in_chart(Chart::One) && p.in_chart(Chart::Two) {
            let v1 = s.eval_in_chart(&p, Chart::One).unwrap();
            let v2 = s.eval_in_chart(&p, Chart::Two).unwrap();
            // s1^k = (-z2)^k s2^k
            let z2 = p.to_chart(Chart::Two).unwrap().p;
            prop_assert_eq!(v2, &(-&z2).pow(k as u32) * &v1);
        }
    }

    #[test]
    fn pushforward_is_a_right_action(seed in any::<u64>(), k in 0i32..=5) {
        let mut r = rng(seed);
        let (g, h) = (sample::sl2(&mut r, 2), sample::sl2(&mut r, 2));
        let s = random_section(seed, 2, k);
        prop_assert_eq!(s.sl2_pushforward(&g).sl2_pushforward(&h), s.sl2_pushforward(&g.mul(&h)));
        prop_assert_eq!(s.sl2_pushforward(&Sl2::identity(2)), s.clone());
    }

    #[test]
    fn pushforward_matches_spinor_action(seed in any::<u64>(), n in 0usize..=3) {
        let mut r = rng(seed);
        let g = sample::sl2(&mut r, n);
        let s = SpinorSection::new(sample::odd(&mut r, n), sample::odd(&mut r, n));
        prop_assert_eq!(s.to_section().sl2_pushforward(&g), s.act(&g).to_section());
        prop_assert_eq!(SpinorSection::from_section(&s.to_section()).unwrap(), s);
    }

    #[test]
    fn contraction_is_linear(seed in any::<u64>(), d in 1usize..=3) {
        let mut r = rng(seed);
        let curve = sample::reduced_curve(&mut r, 2, d);
        let s = SpinorSection::new(sample::odd(&mut r, 2), sample::odd(&mut r, 2));
        let u = SpinorSection::new(sample::odd(&mut r, 2), sample::odd(&mut r, 2));
        let sum = SpinorSection::new(&s.alpha + &u.alpha, &s.beta + &u.beta);
        let lhs = contract_with_differential(&sum, &curve);
        let rhs = contract_with_differential(&s, &curve).add(&contract_with_differential(&u, &curve)).unwrap();
        prop_assert_eq!(lhs.chart1().clone(), rhs.chart1().clone());
        prop_assert_eq!(lhs.k(), 2 * d as i32 - 1);
        prop_assert!(lhs.chart1().degree().map_or(true, |k| k + 1 <= 2 * d));
    }
}
