mod common;

use std::collections::BTreeMap;

use common::{config, int, rng, sn};
use proptest::prelude::*;
use rand::Rng;
use sgk_core::sample;
use sgk_core::scalar::{gauss, q};
use sgk_core::trees::{eval_curve_at_superpoint, forget_last_mark, glue, StableTree};
use sgk_core::{Error, ProjPoint, SuperCurve, SuperNumber, TreeConfig};

fn single(points: Vec<ProjPoint>, curve: SuperCurve) -> TreeConfig {
    let k = points.len();
    let tree = StableTree::new(vec![curve.degree()], vec![], vec![0; k]).unwrap();
    TreeConfig::new(tree, BTreeMap::new(), points, vec![curve]).unwrap()
}

fn reduced(n: usize, x: i64) -> ProjPoint {
    ProjPoint::reduced(n, q(x, 1), q(1, 1)).unwrap()
}

fn test_values(n: usize) -> Vec<SuperNumber> {
    [q(2, 1), gauss(0, 1), q(-3, 5)].into_iter().map(|t| SuperNumber::scalar(n, t)).collect()
}

#[test]
fn tree_shape_errors() {
    assert!(StableTree::new(vec![1, 1], vec![(0, 1)], vec![]).is_ok());
    assert!(matches!(StableTree::new(vec![1, 1, 1], vec![(0, 1)], vec![]), Err(Error::InvalidTree(_))));
    assert!(StableTree::new(vec![1, 1, 1], vec![(0, 1), (1, 0)], vec![]).is_err());
    assert!(StableTree::new(vec![1, 1], vec![(0, 0)], vec![]).is_err());
    assert!(StableTree::new(vec![1], vec![], vec![3]).is_err());
    assert!(matches!(StableTree::new(vec![0], vec![], vec![0, 0]), Err(Error::Unstable(_))));
    assert!(StableTree::new(vec![0, 1], vec![(0, 1)], vec![0, 0]).is_ok());
    let t = StableTree::new(vec![0, 2, 0], vec![(0, 1), (1, 2)], vec![0, 0, 2, 2]).unwrap();
    assert_eq!(t.special_count(1), 2);
    assert_eq!(t.neighbours(1).collect::<Vec<_>>(), vec![0, 2]);
}

#[test]
fn evaluation_at_superpoints() {
    let n = 1;
    let c = SuperCurve::reduced_map(1, sgk_core::poly::Poly::z(n), sgk_core::poly::Poly::one(n)).unwrap();
    let image = eval_curve_at_superpoint(&c, &reduced(n, 3));
    assert!(image.equivalent(&sample_target(n, 3)));
    assert!(eval_curve_at_superpoint(&c, &ProjPoint::origin(n)).x.is_zero());
}

fn sample_target(n: usize, x: i64) -> sgk_core::curves::TargetPoint<sgk_core::Scalar> {
    SuperCurve::constant(int(n, x), int(n, 1)).unwrap().eval(&ProjPoint::origin(n))
}

#[test]
fn validation_examples() {
    let n = 1;
    let mut r = rng(1);
    let cfg = sample::config(&mut r, n, 3, 2);
    assert!(single(cfg.points, cfg.curve).validate().is_valid());

    // two constant components meeting at the same target point
    let tree = StableTree::new(vec![0, 0], vec![(0, 1)], vec![0, 0, 1, 1]).unwrap();
    let constant = SuperCurve::constant(int(n, 4), int(n, 1)).unwrap();
    let mut nodal = BTreeMap::new();
    nodal.insert((0, 1), reduced(n, 0));
    nodal.insert((1, 0), reduced(n, 5));
    let marks = vec![reduced(n, 1), reduced(n, 2), reduced(n, 1), reduced(n, 2)];
    let cfg = TreeConfig::new(tree.clone(), nodal.clone(), marks.clone(), vec![constant.clone(), constant.clone()]).unwrap();
    assert!(cfg.validate().is_valid());

    let other = SuperCurve::constant(int(n, 3), int(n, 1)).unwrap();
    let bad = TreeConfig::new(tree.clone(), nodal.clone(), marks, vec![constant.clone(), other]).unwrap();
    let diag = bad.validate();
    assert!(!diag.is_valid());
    assert_eq!(diag.edges[0].residual, sn("1", n));

    let crowded = vec![reduced(n, 1), reduced(n, 0), reduced(n, 1), reduced(n, 2)];
    let cfg = TreeConfig::new(tree, nodal, crowded, vec![constant.clone(), constant]).unwrap();
    assert_eq!(cfg.validate().coincident.len(), 1);
}

#[test]
fn construction_errors() {
    let n = 1;
    let tree = StableTree::new(vec![1], vec![], vec![0]).unwrap();
    let c = SuperCurve::identity(n);
    assert!(TreeConfig::new(tree.clone(), BTreeMap::new(), vec![], vec![c.clone()]).is_err());
    assert!(TreeConfig::new(tree.clone(), BTreeMap::new(), vec![reduced(n, 0)], vec![]).is_err());
    let quad = SuperCurve::reduced_map(2, sgk_core::poly::Poly::z(n).pow(2), sgk_core::poly::Poly::one(n)).unwrap();
    assert!(TreeConfig::new(tree, BTreeMap::new(), vec![reduced(n, 0)], vec![quad]).is_err());
}

#[test]
fn torus_examples() {
    let mut r = rng(2);
    let cfg = sample::tree_config(&mut r, 1, 3);
    assert!(cfg.torus(&int(1, 1)).equivalent(&cfg));
    let flat = cfg.torus(&int(1, 0));
    for t in test_values(1) {
        assert!(flat.torus(&t).equivalent(&flat));
        assert!(cfg.torus(&t).validate().is_valid());
    }
}

#[test]
fn glue_two_reduced_components() {
    let n = 1;
    let c1 = single(vec![reduced(n, 0), reduced(n, 1), reduced(n, 2)], SuperCurve::identity(n));
    let c2 = single(vec![reduced(n, 5), reduced(n, 6), reduced(n, 2)], SuperCurve::identity(n));
    let glued = glue(&c1, &c2).unwrap();
    assert!(glued.validate().is_valid());
    assert_eq!(glued.tree().edges(), &[(0, 1)]);
    assert_eq!(glued.marked().len(), 4);
    let c3 = single(vec![reduced(n, 5), reduced(n, 6), reduced(n, 7)], SuperCurve::identity(n));
    assert!(glue(&c1, &c3).is_err());
}

#[test]
fn forgetting_marks() {
    let n = 1;
    let constant = SuperCurve::constant(int(n, 0), int(n, 1)).unwrap();
    let pts: Vec<ProjPoint> = (0..4).map(|i| reduced(n, i)).collect();
    let cfg = single(pts, constant);
    let three = forget_last_mark(&cfg).unwrap();
    assert_eq!(three.marked().len(), 3);
    assert!(three.validate().is_valid());
    assert!(matches!(forget_last_mark(&three), Err(Error::Unstable(_))));
}

/// Shift the second configuration's maps so the two last marks meet.
fn matched_pair<R: Rng>(r: &mut R, n: usize) -> (TreeConfig, TreeConfig) {
    loop {
        let c1 = sample::tree_config(r, n, 3);
        let c2 = sample::tree_config(r, n, 3);
        let at = |c: &TreeConfig| {
            let v = *c.tree().marking().last().unwrap();
            let t = c.curves()[v].eval(c.marked().last().unwrap());
            t.y.invert().ok().map(|inv| &t.x * &inv)
        };
        let (Some(x1), Some(x2)) = (at(&c1), at(&c2)) else { continue };
        return (c1, c2.translate_target(&(&x1 - &x2)));
    }
}

fn odd_parts_vanish(cfg: &TreeConfig) -> bool {
    cfg.nodal().values().chain(cfg.marked()).all(|p| p.odd_normal_part().unwrap().value == q(0, 1))
        && cfg.curves().iter().all(|c| c.psi().is_zero())
}

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn gluing_is_torus_equivariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (c1, c2) = matched_pair(&mut r, 1);
        let glued = glue(&c1, &c2).unwrap();
        prop_assert!(glued.validate().is_valid());
        for t in test_values(1) {
            let lhs = glue(&c1.torus(&t), &c2.torus(&t)).unwrap();
            prop_assert!(lhs.equivalent(&glued.torus(&t)));
        }
    }

    #[test]
    fn forgetting_is_torus_equivariant(seed in any::<u64>()) {
        let cfg = sample::tree_config(&mut rng(seed), 1, 3);
        if let Ok(f) = forget_last_mark(&cfg) {
            prop_assert!(f.validate().is_valid());
            for t in test_values(1) {
                prop_assert!(forget_last_mark(&cfg.torus(&t)).unwrap().equivalent(&f.torus(&t)));
            }
        }
    }

    #[test]
    fn vertexwise_reparametrization_keeps_validity(seed in any::<u64>(), n in 1usize..=2) {
        let mut r = rng(seed);
        let cfg = sample::tree_config(&mut r, n, 3);
        let ms: Vec<_> = (0..cfg.tree().vertex_count()).map(|_| sample::sc_matrix(&mut r, n)).collect();
        let moved = cfg.act_vertexwise(&ms).unwrap();
        prop_assert!(moved.validate().is_valid());
        let back: Vec<_> = ms.iter().map(|m| m.inverse()).collect();
        prop_assert!(moved.act_vertexwise(&back).unwrap().equivalent(&cfg));
    }

    #[test]
    fn fixed_points_are_the_reduced_configs(seed in any::<u64>(), flatten in any::<bool>()) {
        let mut r = rng(seed);
        let mut cfg = sample::tree_config(&mut r, 1, 3);
        if flatten {
            cfg = cfg.torus(&int(1, 0));
        }
        let fixed = test_values(1).iter().all(|t| cfg.torus(t).equivalent(&cfg));
        prop_assert_eq!(fixed, odd_parts_vanish(&cfg));

        let p = sample::point(&mut r, 1);
        let p_fixed = test_values(1).iter().all(|t| p.torus(t).equivalent(&p));
        prop_assert_eq!(p_fixed, p.odd_normal_part().unwrap().value == q(0, 1));

        let d = r.gen_range(0..=3);
        let c = sample::curve(&mut r, 1, d);
        let c_fixed = test_values(1).iter().all(|t| c.torus(t).same_map(&c));
        prop_assert_eq!(c_fixed, c.psi().is_zero());
    }
}
