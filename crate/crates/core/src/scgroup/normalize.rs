use super::{ScMatrix, Sl2};
use crate::error::{Error, Result};
use crate::grassmann::SuperNumber;
use crate::scalar::Coefficient;
use crate::superspace::ProjPoint;

fn same_n<T: Coefficient>(points: &[&ProjPoint<T>]) -> Result<usize> {
    let n = points[0].n();
    match points.iter().find(|p| p.n() != n) {
        Some(p) => Err(Error::MismatchedGenerators { left: n, right: p.n() }),
        None => Ok(n),
    }
}

/// The `SL(2)` element sending `p` to `0` and `q` to `∞`, both taken in their
/// normalized representatives so the result does not depend on scaling.
fn sl2_to_zero_infinity<T: Coefficient>(p: &ProjPoint<T>, q: &ProjPoint<T>) -> Result<Sl2<T>> {
    if !p.reduced_distinct(q) {
        return Err(Error::CoincidentPoints);
    }
    let (p, q) = (p.normalize(), q.normalize());
    let det = &(p.z1() * q.z2()) - &(q.z1() * p.z2());
    let mu = det.invert()?;
    Ok(Sl2 {
        a: p.z2().clone(),
        b: -p.z1(),
        c: q.z2() * &mu,
        d: -(q.z1() * &mu),
    })
}

/// Steps shared by the normalizations: an `SL(2)` move of the reduced points
/// to `0, ∞`, then a SUSY move killing both odd coordinates.
fn to_zero_infinity<T: Coefficient>(p: &ProjPoint<T>, q: &ProjPoint<T>) -> Result<ScMatrix<T>> {
    let m = ScMatrix::lift(&sl2_to_zero_infinity(p, q)?);
    let pi0 = m.act_point(p).to_chart(crate::superspace::Chart::One)?.pi;
    let pi_inf = m.act_point(q).to_chart(crate::superspace::Chart::Two)?.pi;
    Ok(m.mul(&ScMatrix::susy(&-pi0, &pi_inf)))
}

/// The element sending `(p1, p2, p3)` to `(0, 1_ε, ∞)` with
/// `1_ε = [1 : 1 : ε]`, together with `ε`.
///
/// The answer is unique up to composing with the reflection, which flips the
/// sign of `ε`; the representative returned has `ε = 0` or the first
/// coefficient of `ε` positive. Needs a square root of an even element, so
/// over exact fields it can fail with [`Error::NoSquareRoot`].
pub fn three_point_normalize<T: Coefficient>(
    p1: &ProjPoint<T>,
    p2: &ProjPoint<T>,
    p3: &ProjPoint<T>,
) -> Result<(ScMatrix<T>, SuperNumber<T>)> {
    same_n(&[p1, p2, p3])?;
    if !p1.reduced_distinct(p2) || !p2.reduced_distinct(p3) || !p1.reduced_distinct(p3) {
        return Err(Error::CoincidentPoints);
    }
    let m = to_zero_infinity(p1, p3)?;
    let mid = m.act_point(p2);
    let (x, y) = (mid.z1(), mid.z2());
    let mut a = (y * &x.invert()?).sqrt()?;
    let mut eps = mid.theta() * &(x * &a).invert()?;
    if !eps.is_zero() && !eps.is_canonically_positive() {
        a = -a;
        eps = -eps;
    }
    Ok((m.mul(&ScMatrix::lift(&Sl2::diag(&a)?)), eps))
}

/// Normalize a configuration's first two points to `0` and `∞`. The result
/// is determined up to the stabilizer [`g_prime`].
pub fn slice_normalize_two_points<T: Coefficient>(p1: &ProjPoint<T>, p2: &ProjPoint<T>) -> Result<ScMatrix<T>> {
    same_n(&[p1, p2])?;
    to_zero_infinity(p1, p2)
}

/// Normalize a single point to `0`. The result is determined up to the
/// stabilizer [`g_double_prime`].
pub fn slice_normalize_one_point<T: Coefficient>(p: &ProjPoint<T>) -> Result<ScMatrix<T>> {
    let n = p.n();
    let p = p.normalize();
    let (zero, one) = (SuperNumber::zero(n), SuperNumber::one(n));
    let g = if p.z2() == &one {
        // z ↦ z - p
        Sl2 {
            a: one.clone(),
            b: -p.z1(),
            c: zero,
            d: one,
        }
    } else {
        // [1 : w] ↦ [0 : 1]
        Sl2 {
            a: p.z2().clone(),
            b: -one.clone(),
            c: one,
            d: zero,
        }
    };
    let m = ScMatrix::lift(&g);
    let pi = m.act_point(&p).to_chart(crate::superspace::Chart::One)?.pi;
    Ok(m.mul(&ScMatrix::susy(&-pi, &SuperNumber::zero(n))))
}

/// `diag(a, 1/a, 1)`, the stabilizer of `(0, ∞)`.
pub fn g_prime<T: Coefficient>(a: &SuperNumber<T>) -> Result<ScMatrix<T>> {
    Ok(ScMatrix::lift(&Sl2::diag(a)?))
}

/// The stabilizer of `0`:
///
/// ```text
/// ⎡ a   c   -aβ ⎤
/// ⎢ 0  1/a   0  ⎥
/// ⎣ 0   β    1  ⎦
/// ```
///
/// which factors as `lift([[a, c], [0, 1/a]]) · susy(0, β)`.
pub fn g_double_prime<T: Coefficient>(
    a: &SuperNumber<T>,
    c: &SuperNumber<T>,
    beta: &SuperNumber<T>,
) -> Result<ScMatrix<T>> {
    let n = a.n();
    let zero = SuperNumber::zero(n);
    Ok(ScMatrix::from_rows([
        [a.clone(), c.clone(), -(a * beta)],
        [zero.clone(), a.invert()?, zero.clone()],
        [zero, beta.clone(), SuperNumber::one(n)],
    ]))
}
