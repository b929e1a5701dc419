mod common;

use common::{config, gen, int, rng, sn};
use proptest::prelude::*;
use sgk_core::sample;
use sgk_core::scalar::q;
use sgk_core::superspace::{Chart, ChartPoint, PointSigma};
use sgk_core::{Error, ProjPoint, SuperNumber};

fn point(text: [&str; 3], n: usize) -> ProjPoint {
    ProjPoint::new(sn(text[0], n), sn(text[1], n), sn(text[2], n)).unwrap()
}

#[test]
fn normalization_examples() {
    let p = point(["2", "2", "2*g1"], 1);
    assert_eq!(p.normalize(), point(["1", "1", "g1"], 1));
    assert_eq!(ProjPoint::origin(2).normalize(), point(["0", "1", "0"], 2));
    let p = point(["1 + g1*g2", "1", "g1"], 2);
    assert_eq!(p.normalize(), p);
    assert!(p.normalize().equivalent(&p.scale(&sn("3 - g1*g2", 2))));
}

#[test]
fn chart_examples() {
    let unit_eps = point(["1", "1", "g1"], 1);
    let cp = unit_eps.to_chart(Chart::One).unwrap();
    assert_eq!((cp.p, cp.pi), (int(1, 1), gen(1, 1)));

    let cp = ProjPoint::infinity(1).to_chart(Chart::Two).unwrap();
    assert!(cp.p.is_zero() && cp.pi.is_zero());
    assert!(matches!(ProjPoint::infinity(1).to_chart(Chart::One), Err(Error::NotInChart(1))));

    let cp = ChartPoint::new(Chart::One, int(1, 2), sn("3*g1", 1)).unwrap();
    let other = cp.to_chart(Chart::Two).unwrap();
    assert_eq!((other.p, other.pi), (sn("-1/2", 1), sn("3/2*g1", 1)));
}

#[test]
fn construction_errors() {
    assert!(matches!(
        ProjPoint::new(int(1, 0), int(1, 0), gen(1, 1)),
        Err(Error::DegeneratePoint)
    ));
    assert!(matches!(ProjPoint::new(gen(1, 1), int(1, 1), int(1, 0)), Err(Error::Parity(_))));
    assert!(ChartPoint::new(Chart::One, int(1, 0), int(1, 1)).is_err());
}

#[test]
fn sigma_examples() {
    let cp = ChartPoint::new(Chart::One, int(1, 1), gen(1, 1)).unwrap();
    let ps = PointSigma::from_chart_point(&cp);
    assert_eq!((ps.chart, ps.p.body(), ps.sigma.clone()), (Chart::One, q(1, 1), gen(1, 1)));
    let zero = PointSigma::from_chart_point(&ChartPoint::new(Chart::One, int(1, 4), int(1, 0)).unwrap());
    assert!(zero.sigma.is_zero() && zero.in_chart(Chart::Two).unwrap().sigma.is_zero());
}

#[test]
fn normal_part_examples() {
    let p = point(["1", "1", "g1"], 1);
    assert_eq!(p.reduce(), point(["1", "1", "0"], 1));
    let p = ChartPoint::new(Chart::One, int(1, 3), sn("2*g1", 1)).unwrap().to_proj();
    let np = p.odd_normal_part().unwrap();
    assert_eq!((np.chart, np.base, np.value), (Chart::One, q(3, 1), q(2, 1)));
    let np = ProjPoint::reduced(1, q(3, 1), q(1, 1)).unwrap().odd_normal_part().unwrap();
    assert_eq!(np.value, q(0, 1));
    assert!(ProjPoint::origin(2).odd_normal_part().is_err());
}

#[test]
fn torus_scales_theta() {
    let p = point(["1", "1", "g1"], 1).torus(&int(1, 5));
    assert_eq!(p, point(["1", "1", "5*g1"], 1));
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn chart_round_trip(seed in any::<u64>(), n in 1usize..=4) {
        let p = sample::point(&mut rng(seed), n);
        for chart in [Chart::One, Chart::Two] {
            if let Ok(cp) = p.to_chart(chart) {
                prop_assert!(cp.to_proj().equivalent(&p));
            }
        }
        prop_assert!(p.normalize().equivalent(&p));
    }

    #[test]
    fn transition_formulas(seed in any::<u64>(), n in 1usize..=4) {
        // z1 = -1/z2, θ1 = -θ2/z2 and θ2 = θ1/z1
        let mut r = rng(seed);
        let p = sample::point(&mut r, n);
        if p.in_chart(Chart::One) && p.in_chart(Chart::Two) {
            let c1 = p.to_chart(Chart::One).unwrap();
            let c2 = p.to_chart(Chart::Two).unwrap();
            let inv2 = c2.p.invert().unwrap();
            prop_assert_eq!(c1.p.clone(), -inv2.clone());
            prop_assert_eq!(c1.pi.clone(), -(&c2.pi * &inv2));
            prop_assert_eq!(c2.pi.clone(), &c1.pi * &c1.p.invert().unwrap());
            prop_assert_eq!(c1.to_chart(Chart::Two).unwrap(), c2);
        }
    }

    #[test]
    fn frames_agree_with_charts(seed in any::<u64>(), n in 1usize..=4) {
        let p = sample::point(&mut rng(seed), n);
        if p.in_chart(Chart::One) && p.in_chart(Chart::Two) {
            for from in [Chart::One, Chart::Two] {
                let ps = PointSigma::from_chart_point(&p.to_chart(from).unwrap());
                let moved = ps.in_chart(from.other()).unwrap();
                prop_assert_eq!(moved.to_chart_point(), p.to_chart(from.other()).unwrap());
                prop_assert_eq!(moved.in_chart(from).unwrap(), ps);
            }
        }
    }

    #[test]
    fn scaling_is_invisible(seed in any::<u64>(), n in 0usize..=4) {
        let mut r = rng(seed);
        let p = sample::point(&mut r, n);
        let lambda = sample::even_invertible(&mut r, n);
        let scaled = p.scale(&lambda);
        prop_assert!(scaled.equivalent(&p));
        prop_assert_eq!(scaled.normalize(), p.normalize());
        prop_assert!(!p.reduced_distinct(&scaled));
        let t = SuperNumber::scalar(n, q(-3, 5));
        prop_assert!(p.torus(&t).scale(&lambda).equivalent(&scaled.torus(&t)));
    }
}
