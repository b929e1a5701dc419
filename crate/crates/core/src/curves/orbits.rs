//! Orbit normal forms for marked points, and a solver deciding whether a
//! torus-twisted SUSY move can be undone by another SUSY move.

use super::SuperCurve;
use crate::error::{Error, Result};
use crate::grassmann::{Monomial, SuperNumber};
use crate::linalg;
use crate::poly::ThetaPoly;
use crate::scalar::Coefficient;
use crate::scgroup::{three_point_normalize, ScMatrix};
use crate::superspace::ProjPoint;

/// `(0, 1_ε, ∞, rest...)`: the normal form of a configuration of at least
/// three points, unique up to the reflection `ε ↦ -ε`.
#[derive(Clone, PartialEq, Debug)]
pub struct OrbitNormalForm<T: Coefficient> {
    pub epsilon: SuperNumber<T>,
    pub rest: Vec<ProjPoint<T>>,
}

impl<T: Coefficient> OrbitNormalForm<T> {
    pub fn equivalent(&self, o: &Self) -> bool {
        self.epsilon == o.epsilon
            && self.rest.len() == o.rest.len()
            && self.rest.iter().zip(&o.rest).all(|(a, b)| a.equivalent(b))
    }

    /// The same orbit seen through the reflection `Θ ↦ -Θ`.
    pub fn reflected(&self) -> Self {
        let r = ScMatrix::reflection(self.epsilon.n());
        OrbitNormalForm {
            epsilon: -&self.epsilon,
            rest: self.rest.iter().map(|p| r.act_point(p).normalize()).collect(),
        }
    }
}

pub fn orbit_normalize_points<T: Coefficient>(
    points: &[ProjPoint<T>],
) -> Result<(ScMatrix<T>, OrbitNormalForm<T>)> {
    if points.len() < 3 {
        return Err(Error::InvalidArgument(
            "orbit normal forms need at least three points".into(),
        ));
    }
    for (i, p) in points.iter().enumerate() {
        if points[..i].iter().any(|q| !q.reduced_distinct(p)) {
            return Err(Error::CoincidentPoints);
        }
    }
    let (m, epsilon) = three_point_normalize(&points[0], &points[1], &points[2])?;
    let rest = points[3..]
        .iter()
        .map(|p| m.act_point(p).normalize())
        .collect();
    Ok((m, OrbitNormalForm { epsilon, rest }))
}

/// Whether two configurations of marked points differ by a superconformal
/// automorphism.
pub fn same_orbit<T: Coefficient>(a: &[ProjPoint<T>], b: &[ProjPoint<T>]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let (_, na) = orbit_normalize_points(a)?;
    let (_, nb) = orbit_normalize_points(b)?;
    Ok(na.equivalent(&nb) || na.equivalent(&nb.reflected()))
}

fn flatten<T: Coefficient>(f: &ThetaPoly<T>, len: usize) -> Vec<T> {
    let n = f.n();
    let mut out = Vec::with_capacity(2 * len << n);
    for part in [&f.even, &f.theta] {
        for k in 0..len {
            let c = part.coeff(k);
            out.extend(Monomial::all(n).map(|m| c.coefficient(m)));
        }
    }
    out
}

/// Look for an odd `β̃` with
/// `t · (Φ ∘ susy(0, β)^{-1}) = (t · Φ) ∘ susy(0, β̃)^{-1}`.
///
/// Both sides are affine in `β̃`, so this is a linear system over the
/// coefficient field; `None` means no such `β̃` exists and the torus action
/// does not descend along this orbit.
pub fn find_descending_susy<T: Coefficient>(
    t: &SuperNumber<T>,
    beta: &SuperNumber<T>,
    curve: &SuperCurve<T>,
) -> Option<SuperNumber<T>> {
    let n = curve.n();
    let zero = SuperNumber::zero(n);
    let lhs = curve.act_susy(&zero, beta).torus(t);
    let twisted = curve.torus(t);
    let len = 2 * curve.degree() + 2;
    let defect = |b: &SuperNumber<T>| {
        let rhs = twisted.act_susy(&zero, b);
        let e = &(lhs.numerator() * rhs.denominator()) - &(rhs.numerator() * lhs.denominator());
        flatten(&e, len)
    };
    let odd: Vec<Monomial> = Monomial::all(n).filter(|m| m.is_odd()).collect();
    let base = defect(&zero);
    let columns: Vec<Vec<T>> = odd
        .iter()
        .map(|m| {
            let e = SuperNumber::from_terms(n, [(*m, T::one())]).unwrap();
            defect(&e)
                .into_iter()
                .zip(&base)
                .map(|(x, y)| x - y.clone())
                .collect()
        })
        .collect();
    let rows: Vec<Vec<T>> = (0..base.len())
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let rhs: Vec<T> = base.iter().map(|x| -x.clone()).collect();
    let b = linalg::solve(&rows, &rhs, odd.len())?;
    let beta_tilde = SuperNumber::from_terms(n, odd.into_iter().zip(b)).unwrap();
    debug_assert!(twisted.act_susy(&zero, &beta_tilde).same_map(&lhs));
    Some(beta_tilde)
}
