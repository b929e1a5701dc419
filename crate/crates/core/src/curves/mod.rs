//! Degree-`d` super maps `P^{1|1} → P^1` over a Grassmann algebra.
//!
//! A map is stored homogeneously as `[A : B]` with
//! `A = f_A(Z1, Z2) + Θ g_A(Z1, Z2)` and likewise `B`, where `f` has degree
//! `d` and `g` degree `d - 1`. In chart 1 this reads
//! `A = P(z) + θ R̃(z)`, `B = Q(z) + θ S̃(z)`, and the component fields are
//!
//! * `φ = P / Q`, a degree-`d` rational map,
//! * `ψ = (R̃ Q - P S̃) / Q²`, whose numerator has degree at most `2d - 1`.
//!
//! Acting by the superconformal group is homogeneous substitution, so every
//! map stays global by construction.

mod orbits;
mod susy1;

pub use orbits::{find_descending_susy, orbit_normalize_points, same_orbit, OrbitNormalForm};
pub use susy1::{h0s_matrix, susy1_map, target_matrix, MarkedConfig, Susy1Map, TargetRow};

use std::fmt;

use crate::bundles::Section;
use crate::error::{Error, Result};
use crate::grassmann::SuperNumber;
use crate::linalg;
use crate::poly::{Poly, RatFn, ThetaPoly};
use crate::scalar::Coefficient;
use crate::scgroup::{ScMatrix, Sl2};
use crate::superspace::ProjPoint;

/// A point `[X : Y]` of the target `P^1` over `B`.
#[derive(Clone, PartialEq, Debug)]
pub struct TargetPoint<T: Coefficient> {
    pub x: SuperNumber<T>,
    pub y: SuperNumber<T>,
}

impl<T: Coefficient> TargetPoint<T> {
    /// Cross-multiplication residual `X Y' - X' Y`.
    pub fn residual(&self, o: &Self) -> SuperNumber<T> {
        &(&self.x * &o.y) - &(&o.x * &self.y)
    }

    pub fn equivalent(&self, o: &Self) -> bool {
        self.residual(o).is_zero()
    }
}

impl<T: Coefficient> fmt::Display for TargetPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {}]", self.x, self.y)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SuperCurve<T: Coefficient> {
    degree: usize,
    num: ThetaPoly<T>,
    den: ThetaPoly<T>,
}

/// Sylvester matrix of `(R̃, S̃) ↦ R̃ Q - P S̃` on polynomials of degree below
/// `d`, sized `2d × 2d`.
fn sylvester<T: Coefficient>(d: usize, p: &Poly<T>, q: &Poly<T>) -> Vec<Vec<SuperNumber<T>>> {
    let n = p.n();
    (0..2 * d)
        .map(|k| {
            let mut row = vec![SuperNumber::zero(n); 2 * d];
            for i in 0..d {
                if k >= i {
                    row[i] = q.coeff(k - i);
                    row[d + i] = -p.coeff(k - i);
                }
            }
            row
        })
        .collect()
}

fn substitute<T: Coefficient>(
    f: &ThetaPoly<T>,
    d: usize,
    w1: &[ThetaPoly<T>],
    w2: &[ThetaPoly<T>],
    theta: &ThetaPoly<T>,
) -> ThetaPoly<T> {
    let n = f.n();
    let mut even = ThetaPoly::zero(n);
    for (i, c) in f.even.coeffs().iter().enumerate() {
        even = &even + &(&w1[i] * &w2[d - i]).scale_left(c);
    }
    if d == 0 {
        return even;
    }
    let mut odd = ThetaPoly::zero(n);
    for (j, c) in f.theta.coeffs().iter().enumerate() {
        odd = &odd + &(&w1[j] * &w2[d - 1 - j]).scale_left(c);
    }
    &even + &(theta * &odd)
}

impl<T: Coefficient> SuperCurve<T> {
    /// From `[A : B]` in chart-1 form; checks degrees, parities and that the
    /// underlying map really has degree `d`.
    pub fn from_homogeneous(degree: usize, num: ThetaPoly<T>, den: ThetaPoly<T>) -> Result<Self> {
        let n = num.n();
        if den.n() != n {
            return Err(Error::MismatchedGenerators { left: n, right: den.n() });
        }
        for part in [&num, &den] {
            if part.even.degree().is_some_and(|k| k > degree) {
                return Err(Error::DegreeBound(format!("even part exceeds degree {degree}")));
            }
            if part.theta.degree().is_some_and(|k| k + 1 > degree) {
                return Err(Error::DegreeBound(format!(
                    "odd part of a degree-{degree} form must have degree below {degree}"
                )));
            }
            if !part.even.is_even() || !part.theta.is_odd() {
                return Err(Error::Parity("A and B must be even functions".into()));
            }
        }
        let curve = SuperCurve { degree, num, den };
        curve.check_nondegenerate()?;
        Ok(curve)
    }

    fn check_nondegenerate(&self) -> Result<()> {
        let (p, q) = (&self.num.even, &self.den.even);
        let ok = if self.degree == 0 {
            !p.coeff(0).body().is_zero() || !q.coeff(0).body().is_zero()
        } else {
            // The body Sylvester matrix is invertible exactly when P and Q
            // have no common zero on P^1, infinity included.
            let body: Vec<Vec<T>> = sylvester(self.degree, p, q)
                .iter()
                .map(|r| r.iter().map(|x| x.body()).collect())
                .collect();
            linalg::rank(&body) == 2 * self.degree
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotGlobal(format!(
                "numerator and denominator share a root, so the map does not have degree {}",
                self.degree
            )))
        }
    }

    /// A map with vanishing odd field.
    pub fn reduced_map(degree: usize, p: Poly<T>, q: Poly<T>) -> Result<Self> {
        let n = p.n();
        Self::from_homogeneous(
            degree,
            ThetaPoly::new(p, Poly::zero(n)),
            ThetaPoly::new(q, Poly::zero(n)),
        )
    }

    /// The constant map to `[x : y]`.
    pub fn constant(x: SuperNumber<T>, y: SuperNumber<T>) -> Result<Self> {
        Self::reduced_map(0, Poly::constant(x), Poly::constant(y))
    }

    /// `φ(z) = z`, `ψ = 0`.
    pub fn identity(n: usize) -> Self {
        Self::reduced_map(1, Poly::z(n), Poly::one(n)).expect("identity map")
    }

    /// From `φ = P/Q` and the numerator `R` of `ψ = R/Q²`, solving
    /// `R̃ Q - P S̃ = R` for the homogeneous odd parts.
    pub fn from_components(degree: usize, p: Poly<T>, q: Poly<T>, r: Poly<T>) -> Result<Self> {
        let n = p.n();
        if r.degree().is_some_and(|k| k + 1 > 2 * degree) {
            return Err(Error::NotGlobal(format!(
                "ψ numerator must have degree at most {} to be regular in chart 2",
                2 * degree as i64 - 1
            )));
        }
        if !r.is_odd() {
            return Err(Error::Parity("ψ must be odd".into()));
        }
        if degree == 0 {
            return Self::reduced_map(0, p, q);
        }
        let rhs: Vec<SuperNumber<T>> = (0..2 * degree).map(|k| r.coeff(k)).collect();
        let x = linalg::solve_even(&sylvester(degree, &p, &q), &rhs).map_err(|_| {
            Error::NotGlobal(format!(
                "numerator and denominator share a root, so the map does not have degree {degree}"
            ))
        })?;
        let rt = Poly::from_coeffs(n, x[..degree].to_vec());
        let st = Poly::from_coeffs(n, x[degree..].to_vec());
        Self::from_homogeneous(degree, ThetaPoly::new(p, rt), ThetaPoly::new(q, st))
    }

    /// From chart-1 rational expressions for `φ` and `ψ`, verifying that they
    /// glue to a global degree-`d` map.
    pub fn from_fields(degree: usize, phi: &RatFn<T>, psi: &RatFn<T>) -> Result<Self> {
        let (p, q) = (phi.num.clone(), phi.den.clone());
        if p.degree().max(q.degree()).is_some_and(|k| k > degree) {
            return Err(Error::NotGlobal(format!(
                "φ numerator and denominator must have degree at most {degree}"
            )));
        }
        let r = (&psi.num * &(&q * &q)).div_exact(&psi.den).map_err(|_| {
            Error::NotGlobal("ψ has poles that φ does not".into())
        })?;
        Self::from_components(degree, p, q, r)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n(&self) -> usize {
        self.num.n()
    }

    pub fn numerator(&self) -> &ThetaPoly<T> {
        &self.num
    }

    pub fn denominator(&self) -> &ThetaPoly<T> {
        &self.den
    }

    pub fn phi_numerator(&self) -> &Poly<T> {
        &self.num.even
    }

    pub fn phi_denominator(&self) -> &Poly<T> {
        &self.den.even
    }

    pub fn phi(&self) -> RatFn<T> {
        RatFn {
            num: self.num.even.clone(),
            den: self.den.even.clone(),
        }
    }

    /// `R = R̃ Q - P S̃`.
    pub fn psi_numerator(&self) -> Poly<T> {
        &(&self.num.theta * &self.den.even) - &(&self.num.even * &self.den.theta)
    }

    pub fn psi(&self) -> RatFn<T> {
        RatFn {
            num: self.psi_numerator(),
            den: &self.den.even * &self.den.even,
        }
    }

    /// `ψ` as a section of `O(2d - 1)`.
    pub fn psi_section(&self) -> Section<T> {
        Section::new(2 * self.degree as i32 - 1, self.psi_numerator()).expect("degree bound holds")
    }

    pub fn is_reduced(&self) -> bool {
        self.psi_numerator().is_zero()
            && self.num.even.coeffs().iter().chain(self.den.even.coeffs()).all(|c| c.is_scalar())
    }

    /// The underlying map of the reduced space.
    pub fn reduce(&self) -> Self {
        SuperCurve {
            degree: self.degree,
            num: ThetaPoly::new(self.num.even.reduce(), Poly::zero(self.n())),
            den: ThetaPoly::new(self.den.even.reduce(), Poly::zero(self.n())),
        }
    }

    /// Equality as maps: `A B' = A' B`.
    pub fn same_map(&self, o: &Self) -> bool {
        self.n() == o.n() && self.degree == o.degree && &self.num * &o.den == &o.num * &self.den
    }

    /// `[A(Z) : B(Z)]` at a `B`-point.
    pub fn eval(&self, p: &ProjPoint<T>) -> TargetPoint<T> {
        let d = self.degree;
        let at = |f: &ThetaPoly<T>| {
            let even = f.even.eval_homogeneous(d, p.z1(), p.z2());
            if d == 0 {
                return even;
            }
            &even + &(p.theta() * &f.theta.eval_homogeneous(d - 1, p.z1(), p.z2()))
        };
        TargetPoint {
            x: at(&self.num),
            y: at(&self.den),
        }
    }

    /// `Φ ∘ Ξ^{-1}` for the automorphism `Ξ` of `m`. This is a right action:
    /// acting by `m1` and then `m2` equals acting by `m1 · m2`.
    pub fn act(&self, m: &ScMatrix<T>) -> Self {
        let inv = m.inverse();
        let d = self.degree;
        let w1 = ThetaPoly::linear(&inv.a, &inv.b, &inv.alpha);
        let w2 = ThetaPoly::linear(&inv.c, &inv.d, &inv.beta);
        let theta = ThetaPoly::linear(&inv.gamma, &inv.delta, &inv.e);
        let p1: Vec<ThetaPoly<T>> = (0..=d).map(|k| w1.pow(k)).collect();
        let p2: Vec<ThetaPoly<T>> = (0..=d).map(|k| w2.pow(k)).collect();
        SuperCurve {
            degree: d,
            num: substitute(&self.num, d, &p1, &p2, &theta),
            den: substitute(&self.den, d, &p1, &p2, &theta),
        }
    }

    pub fn act_sl2(&self, g: &Sl2<T>) -> Self {
        self.act(&ScMatrix::lift(g))
    }

    pub fn act_susy(&self, alpha: &SuperNumber<T>, beta: &SuperNumber<T>) -> Self {
        self.act(&ScMatrix::susy(alpha, beta))
    }

    /// The torus action `(φ, ψ) ↦ (φ, tψ)`.
    pub fn torus(&self, t: &SuperNumber<T>) -> Self {
        SuperCurve {
            degree: self.degree,
            num: ThetaPoly::new(self.num.even.clone(), self.num.theta.scale_left(t)),
            den: ThetaPoly::new(self.den.even.clone(), self.den.theta.scale_left(t)),
        }
    }

    /// Post-compose with the target translation `X ↦ X + c`.
    pub fn translate_target(&self, c: &SuperNumber<T>) -> Self {
        SuperCurve {
            degree: self.degree,
            num: &self.num + &self.den.scale_left(c),
            den: self.den.clone(),
        }
    }

    pub fn map_coefficients<U: Coefficient>(&self, f: impl Fn(&T) -> U + Copy) -> SuperCurve<U> {
        let m = |tp: &ThetaPoly<T>| ThetaPoly::new(tp.even.map_coefficients(f), tp.theta.map_coefficients(f));
        SuperCurve {
            degree: self.degree,
            num: m(&self.num),
            den: m(&self.den),
        }
    }
}

impl<T: Coefficient> fmt::Display for SuperCurve<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "curve({}; phi = {}; psi = {})", self.degree, self.phi(), self.psi())
    }
}

/// The `SL(2)` action written on component fields:
/// `φ ↦ P̂/Q̂` and `ψ ↦ R̂/Q̂²` with `X̂(z) = Σ x_i (dz - b)^i (a - cz)^(k - i)`.
pub fn sl2_component_fields<T: Coefficient>(g: &Sl2<T>, curve: &SuperCurve<T>) -> (RatFn<T>, RatFn<T>) {
    let d = curve.degree();
    let num = Poly::from_coeffs(curve.n(), vec![-&g.b, g.d.clone()]);
    let den = Poly::from_coeffs(curve.n(), vec![g.a.clone(), -&g.c]);
    let p = curve.phi_numerator().substitute_homogeneous(d, &num, &den);
    let q = curve.phi_denominator().substitute_homogeneous(d, &num, &den);
    let r = if d == 0 {
        Poly::zero(curve.n())
    } else {
        curve.psi_numerator().substitute_homogeneous(2 * d - 1, &num, &den)
    };
    let q2 = &q * &q;
    (RatFn { num: p, den: q }, RatFn { num: r, den: q2 })
}

/// The SUSY action written on component fields:
/// `φ ↦ φ + (βz - α)ψ` and `ψ ↦ (1 - αβ/2)ψ + (βz - α)φ'`.
pub fn susy_component_fields<T: Coefficient>(
    alpha: &SuperNumber<T>,
    beta: &SuperNumber<T>,
    curve: &SuperCurve<T>,
) -> (RatFn<T>, RatFn<T>) {
    let n = curve.n();
    let u = RatFn::poly(Poly::from_coeffs(n, vec![-alpha, beta.clone()]));
    let (phi, psi) = (curve.phi(), curve.psi());
    let k = &SuperNumber::one(n) - &(alpha * beta).scale(&T::from_ratio(1, 2));
    let new_phi = &phi + &(&u * &psi);
    let new_psi = &psi.scale_left(&k) + &(&u * &phi.derivative());
    (new_phi, new_psi)
}

/// Deformation-theoretic dimensions at a reduced map of degree `d`:
/// `(dim of admissible ψ, dim of first-order deformations of φ)`, computed
/// as ranks of the linear maps `(R̃, S̃) ↦ R̃Q - PS̃` and
/// `(δP, δQ) ↦ δP Q - P δQ`.
pub fn deformation_dimensions<T: Coefficient>(curve: &SuperCurve<T>) -> (usize, usize) {
    let d = curve.degree();
    let p = curve.phi_numerator().body();
    let q = curve.phi_denominator().body();
    let at = |v: &[T], i: usize| v.get(i).cloned().unwrap_or_else(T::zero);
    let psi_rows: Vec<Vec<T>> = (0..2 * d)
        .map(|k| {
            (0..2 * d)
                .map(|j| {
                    if j < d {
                        if k >= j { at(&q, k - j) } else { T::zero() }
                    } else if k >= j - d {
                        -at(&p, k - (j - d))
                    } else {
                        T::zero()
                    }
                })
                .collect()
        })
        .collect();
    let phi_rows: Vec<Vec<T>> = (0..=2 * d)
        .map(|k| {
            (0..2 * d + 2)
                .map(|j| {
                    if j <= d {
                        if k >= j { at(&q, k - j) } else { T::zero() }
                    } else if k >= j - d - 1 {
                        -at(&p, k - (j - d - 1))
                    } else {
                        T::zero()
                    }
                })
                .collect()
        })
        .collect();
    (linalg::rank(&psi_rows), linalg::rank(&phi_rows))
}
