//! Random objects over the Gaussian rationals for property tests and the
//! verification suite. Coefficients are kept small and elements sparse so
//! exact arithmetic stays cheap.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::curves::{MarkedConfig, SuperCurve};
use crate::grassmann::{Monomial, Parity, SuperNumber};
use crate::poly::{Poly, ThetaPoly};
use crate::scalar::Scalar;
use crate::scgroup::{ScMatrix, Sl2};
use crate::superspace::ProjPoint;
use crate::trees::{StableTree, TreeConfig};

type S = SuperNumber<Scalar>;

fn rational<R: Rng>(rng: &mut R, max: i64) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-max..=max)), BigInt::from(rng.gen_range(1..=3)))
}

/// A small Gaussian rational, real three times out of four.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    let im = if rng.gen_bool(0.25) {
        rational(rng, 3)
    } else {
        BigRational::zero()
    };
    Complex::new(rational(rng, 4), im)
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let s = scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A sparse element with at most `max_terms` terms of the given parity
/// (any parity when `None`).
pub fn super_number<R: Rng>(rng: &mut R, n: usize, parity: Option<Parity>, max_terms: usize) -> S {
    let monos: Vec<Monomial> = Monomial::all(n)
        .filter(|m| match parity {
            Some(Parity::Even) => !m.is_odd(),
            Some(Parity::Odd) => m.is_odd(),
            None => true,
        })
        .collect();
    if monos.is_empty() {
        return S::zero(n);
    }
    let count = rng.gen_range(0..=max_terms);
    let terms: Vec<(Monomial, Scalar)> = (0..count)
        .map(|_| (*monos.choose(rng).unwrap(), scalar(rng)))
        .collect();
    S::from_terms(n, terms).unwrap()
}

/// Even element with a random body and a couple of nilpotent terms.
pub fn even<R: Rng>(rng: &mut R, n: usize) -> S {
    let body = S::scalar(n, scalar(rng));
    body + nilpotent_even(rng, n)
}

fn nilpotent_even<R: Rng>(rng: &mut R, n: usize) -> S {
    super_number(rng, n, Some(Parity::Even), 2).soul()
}

pub fn even_invertible<R: Rng>(rng: &mut R, n: usize) -> S {
    S::scalar(n, nonzero_scalar(rng)) + nilpotent_even(rng, n)
}

pub fn odd<R: Rng>(rng: &mut R, n: usize) -> S {
    super_number(rng, n, Some(Parity::Odd), 2)
}

/// `[[a, c], [b, d]]` with `d = (1 + bc)/a`.
pub fn sl2<R: Rng>(rng: &mut R, n: usize) -> Sl2<Scalar> {
    let a = even_invertible(rng, n);
    let b = even(rng, n);
    let c = even(rng, n);
    let d = &(&S::one(n) + &(&b * &c)) * &a.invert().unwrap();
    Sl2 { a, b, c, d }
}

/// `lift(g) · susy(α, β)` with random factors.
pub fn sc_matrix<R: Rng>(rng: &mut R, n: usize) -> ScMatrix<Scalar> {
    let g = sl2(rng, n);
    ScMatrix::recompose(&g, &odd(rng, n), &odd(rng, n))
}

/// A point with random body (occasionally at infinity) and odd part.
pub fn point<R: Rng>(rng: &mut R, n: usize) -> ProjPoint<Scalar> {
    let theta = odd(rng, n);
    if rng.gen_ratio(1, 8) {
        ProjPoint::new(S::one(n), nilpotent_even(rng, n), theta).unwrap()
    } else {
        ProjPoint::new(even(rng, n), S::one(n), theta).unwrap()
    }
}

/// `k` points with pairwise distinct reductions, also distinct from `avoid`.
pub fn distinct_points<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
    avoid: &[ProjPoint<Scalar>],
) -> Vec<ProjPoint<Scalar>> {
    let mut out: Vec<ProjPoint<Scalar>> = Vec::with_capacity(k);
    while out.len() < k {
        let p = point(rng, n);
        if out.iter().chain(avoid).all(|q| q.reduced_distinct(&p)) {
            out.push(p);
        }
    }
    out
}

fn random_poly<R: Rng>(rng: &mut R, n: usize, deg: usize, parity: Parity) -> Poly<Scalar> {
    let coeffs = (0..=deg)
        .map(|_| match parity {
            Parity::Even => even(rng, n),
            Parity::Odd => odd(rng, n),
        })
        .collect();
    Poly::from_coeffs(n, coeffs)
}

/// A degree-`d` map with nonzero odd field when `n > 0`.
pub fn curve<R: Rng>(rng: &mut R, n: usize, d: usize) -> SuperCurve<Scalar> {
    loop {
        let p = random_poly(rng, n, d, Parity::Even);
        let q = random_poly(rng, n, d, Parity::Even);
        let (rt, st) = if d == 0 {
            (Poly::zero(n), Poly::zero(n))
        } else {
            (
                random_poly(rng, n, d - 1, Parity::Odd),
                random_poly(rng, n, d - 1, Parity::Odd),
            )
        };
        if let Ok(c) = SuperCurve::from_homogeneous(d, ThetaPoly::new(p, rt), ThetaPoly::new(q, st)) {
            return c;
        }
    }
}

/// A degree-`d` map with scalar coefficients and `ψ = 0`.
pub fn reduced_curve<R: Rng>(rng: &mut R, n: usize, d: usize) -> SuperCurve<Scalar> {
    loop {
        let p = Poly::from_scalars(n, &(0..=d).map(|_| scalar(rng)).collect::<Vec<_>>());
        let q = Poly::from_scalars(n, &(0..=d).map(|_| scalar(rng)).collect::<Vec<_>>());
        if let Ok(c) = SuperCurve::reduced_map(d, p, q) {
            return c;
        }
    }
}

pub fn config<R: Rng>(rng: &mut R, n: usize, k: usize, d: usize) -> MarkedConfig<Scalar> {
    MarkedConfig::new(distinct_points(rng, n, k, &[]), curve(rng, n, d)).unwrap()
}

/// A reduced configuration: scalar points and a reduced map.
pub fn reduced_config<R: Rng>(rng: &mut R, n: usize, k: usize, d: usize) -> MarkedConfig<Scalar> {
    let pts = distinct_points(rng, 0, k, &[])
        .into_iter()
        .map(|p| ProjPoint::reduced(n, p.z1().body(), p.z2().body()).unwrap())
        .collect();
    MarkedConfig::new(pts, reduced_curve(rng, n, d)).unwrap()
}

/// A valid tree configuration with at most `max_vertices` components and at
/// least one mark. Maps on neighbouring components are matched at the nodes
/// by target translations.
pub fn tree_config<R: Rng>(rng: &mut R, n: usize, max_vertices: usize) -> TreeConfig<Scalar> {
    'retry: loop {
        let v = rng.gen_range(1..=max_vertices);
        let degrees: Vec<usize> = (0..v).map(|_| rng.gen_range(0..=2)).collect();
        let edges: Vec<(usize, usize)> = (1..v).map(|c| (rng.gen_range(0..c), c)).collect();
        let mut marking: Vec<usize> = Vec::new();
        for x in 0..v {
            let nodes = edges.iter().filter(|&&(a, b)| a == x || b == x).count();
            let need = if degrees[x] == 0 { 3usize.saturating_sub(nodes) } else { 0 };
            let extra = rng.gen_range(0..=1);
            marking.extend(std::iter::repeat(x).take(need + extra));
        }
        if marking.is_empty() {
            marking.push(rng.gen_range(0..v));
        }
        marking.shuffle(rng);
        let tree = StableTree::new(degrees.clone(), edges.clone(), marking.clone()).unwrap();

        // special points per vertex
        let mut nodal = BTreeMap::new();
        let mut marked = vec![None; marking.len()];
        for x in 0..v {
            let nodes: Vec<usize> = tree.neighbours(x).collect();
            let marks: Vec<usize> = (0..marking.len()).filter(|&i| marking[i] == x).collect();
            let pts = distinct_points(rng, n, nodes.len() + marks.len(), &[]);
            for (w, p) in nodes.iter().zip(&pts) {
                nodal.insert((x, *w), p.clone());
            }
            for (i, p) in marks.iter().zip(&pts[nodes.len()..]) {
                marked[*i] = Some(p.clone());
            }
        }

        // maps, matched outward from vertex 0 (edges point from parent to child)
        let mut curves: Vec<Option<SuperCurve<Scalar>>> = vec![None; v];
        curves[0] = Some(curve(rng, n, degrees[0]));
        for &(parent, child) in &edges {
            let target = curves[parent].as_ref().unwrap().eval(&nodal[&(parent, child)]);
            let Ok(tinv) = target.y.invert() else { continue 'retry };
            let aim = &target.x * &tinv;
            let c = curve(rng, n, degrees[child]);
            let here = c.eval(&nodal[&(child, parent)]);
            let Ok(hinv) = here.y.invert() else { continue 'retry };
            let shift = &aim - &(&here.x * &hinv);
            curves[child] = Some(c.translate_target(&shift));
        }
        let cfg = TreeConfig::new(
            tree,
            nodal,
            marked.into_iter().map(Option::unwrap).collect(),
            curves.into_iter().map(Option::unwrap).collect(),
        )
        .unwrap();
        if cfg.validate().is_valid() {
            return cfg;
        }
    }
}
