//! The superconformal group of `P^{1|1}` as the even-`e` component of
//! `SpGL(2|1)`, acting on points from the right.
//!
//! A matrix is laid out as
//!
//! ```text
//! ⎡ a  c  γ ⎤
//! ⎢ b  d  δ ⎥
//! ⎣ α  β  e ⎦
//! ```
//!
//! and a point transforms as the row vector `[Z1 Z2 Θ] · M`.

mod normalize;

use std::fmt;

pub use normalize::{g_double_prime, g_prime, slice_normalize_one_point, slice_normalize_two_points, three_point_normalize};

use crate::error::{Error, Result};
use crate::grassmann::SuperNumber;
use crate::poly::Poly;
use crate::scalar::Coefficient;
use crate::superspace::{Chart, ChartPoint, ProjPoint};

/// An element of `SL(2)` over `B_0`, laid out as `[[a, c], [b, d]]` so that
/// `[Z1 Z2] · g = [a Z1 + b Z2, c Z1 + d Z2]`.
#[derive(Clone, PartialEq, Debug)]
pub struct Sl2<T: Coefficient> {
    pub a: SuperNumber<T>,
    pub b: SuperNumber<T>,
    pub c: SuperNumber<T>,
    pub d: SuperNumber<T>,
}

impl<T: Coefficient> Sl2<T> {
    /// Checked constructor: even entries with determinant exactly one.
    pub fn new(a: SuperNumber<T>, b: SuperNumber<T>, c: SuperNumber<T>, d: SuperNumber<T>) -> Result<Self> {
        let g = Sl2 { a, b, c, d };
        let n = g.a.n();
        if [&g.b, &g.c, &g.d].iter().any(|x| x.n() != n) {
            return Err(Error::MismatchedGenerators {
                left: n,
                right: [&g.b, &g.c, &g.d].iter().map(|x| x.n()).find(|&m| m != n).unwrap(),
            });
        }
        if ![&g.a, &g.b, &g.c, &g.d].iter().all(|x| x.is_even()) {
            return Err(Error::Parity("SL(2) entries must be even".into()));
        }
        if g.det() != SuperNumber::one(n) {
            return Err(Error::ConstraintViolation(format!(
                "determinant is {} instead of 1",
                g.det()
            )));
        }
        Ok(g)
    }

    pub fn from_scalars(n: usize, a: T, b: T, c: T, d: T) -> Result<Self> {
        Self::new(
            SuperNumber::scalar(n, a),
            SuperNumber::scalar(n, b),
            SuperNumber::scalar(n, c),
            SuperNumber::scalar(n, d),
        )
    }

    pub fn identity(n: usize) -> Self {
        Sl2 {
            a: SuperNumber::one(n),
            b: SuperNumber::zero(n),
            c: SuperNumber::zero(n),
            d: SuperNumber::one(n),
        }
    }

    /// `diag(λ, 1/λ)`.
    pub fn diag(lambda: &SuperNumber<T>) -> Result<Self> {
        let n = lambda.n();
        Ok(Sl2 {
            a: lambda.clone(),
            b: SuperNumber::zero(n),
            c: SuperNumber::zero(n),
            d: lambda.invert()?,
        })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn det(&self) -> SuperNumber<T> {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Sl2 {
            a: &(&self.a * &o.a) + &(&self.c * &o.b),
            c: &(&self.a * &o.c) + &(&self.c * &o.d),
            b: &(&self.b * &o.a) + &(&self.d * &o.b),
            d: &(&self.b * &o.c) + &(&self.d * &o.d),
        }
    }

    pub fn inverse(&self) -> Self {
        Sl2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// `(α, β) ↦ (aα + bβ, cα + dβ)`, the row-vector action on `C^2`.
    pub fn act_pair(&self, alpha: &SuperNumber<T>, beta: &SuperNumber<T>) -> (SuperNumber<T>, SuperNumber<T>) {
        (
            &(&self.a * alpha) + &(&self.b * beta),
            &(&self.c * alpha) + &(&self.d * beta),
        )
    }
}

impl<T: Coefficient> fmt::Display for Sl2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sl2[[{}, {}], [{}, {}]]", self.a, self.c, self.b, self.d)
    }
}

/// Residuals of the defining equations of the superconformal group.
#[derive(Clone, PartialEq, Debug)]
pub struct ConstraintReport<T: Coefficient> {
    /// `(equation, residual)`; the first four define the group, the last
    /// three are consequences.
    pub residuals: Vec<(&'static str, SuperNumber<T>)>,
    /// Entries have the right parity.
    pub parity_ok: bool,
    /// `body(e) = 1`, i.e. the identity component.
    pub identity_component: bool,
}

impl<T: Coefficient> ConstraintReport<T> {
    pub fn ok(&self) -> bool {
        self.parity_ok && self.identity_component && self.residuals.iter().all(|(_, r)| r.is_zero())
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.residuals
            .iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(name, _)| *name)
            .collect()
    }
}

/// A `3×3` supermatrix with the superconformal layout. It need not satisfy
/// the constraints until checked.
#[derive(Clone, PartialEq, Debug)]
pub struct ScMatrix<T: Coefficient> {
    pub a: SuperNumber<T>,
    pub b: SuperNumber<T>,
    pub c: SuperNumber<T>,
    pub d: SuperNumber<T>,
    pub e: SuperNumber<T>,
    pub alpha: SuperNumber<T>,
    pub beta: SuperNumber<T>,
    pub gamma: SuperNumber<T>,
    pub delta: SuperNumber<T>,
}

fn half<T: Coefficient>() -> T {
    T::from_ratio(1, 2)
}

impl<T: Coefficient> ScMatrix<T> {
    /// From rows `[[a, c, γ], [b, d, δ], [α, β, e]]`, unchecked.
    pub fn from_rows(rows: [[SuperNumber<T>; 3]; 3]) -> Self {
        let [[a, c, gamma], [b, d, delta], [alpha, beta, e]] = rows;
        ScMatrix {
            a,
            b,
            c,
            d,
            e,
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    pub fn rows(&self) -> [[SuperNumber<T>; 3]; 3] {
        [
            [self.a.clone(), self.c.clone(), self.gamma.clone()],
            [self.b.clone(), self.d.clone(), self.delta.clone()],
            [self.alpha.clone(), self.beta.clone(), self.e.clone()],
        ]
    }

    /// From rows, rejecting anything outside the group.
    pub fn new(rows: [[SuperNumber<T>; 3]; 3]) -> Result<Self> {
        let n = rows[0][0].n();
        for x in rows.iter().flatten() {
            if x.n() != n {
                return Err(Error::MismatchedGenerators { left: n, right: x.n() });
            }
        }
        let m = Self::from_rows(rows);
        let report = m.check();
        if report.ok() {
            Ok(m)
        } else if !report.parity_ok {
            Err(Error::Parity("superconformal matrix entries have the wrong parity".into()))
        } else if !report.identity_component {
            Err(Error::ConstraintViolation("body(e) must be 1".into()))
        } else {
            Err(Error::ConstraintViolation(report.failures().join(", ")))
        }
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn identity(n: usize) -> Self {
        Self::lift(&Sl2::identity(n))
    }

    /// `SL(2)` embedded block-diagonally with `e = 1`.
    pub fn lift(g: &Sl2<T>) -> Self {
        let n = g.n();
        let z = SuperNumber::zero(n);
        ScMatrix {
            a: g.a.clone(),
            b: g.b.clone(),
            c: g.c.clone(),
            d: g.d.clone(),
            e: SuperNumber::one(n),
            alpha: z.clone(),
            beta: z.clone(),
            gamma: z.clone(),
            delta: z,
        }
    }

    /// The SUSY transformation
    ///
    /// ```text
    /// ⎡ 1 + αβ/2      0       -β   ⎤
    /// ⎢    0      1 + αβ/2     α   ⎥
    /// ⎣    α          β     1 - αβ ⎦
    /// ```
    pub fn susy(alpha: &SuperNumber<T>, beta: &SuperNumber<T>) -> Self {
        let n = alpha.n();
        let ab = alpha * beta;
        let diag = &SuperNumber::one(n) + &ab.scale(&half());
        ScMatrix {
            a: diag.clone(),
            b: SuperNumber::zero(n),
            c: SuperNumber::zero(n),
            d: diag,
            e: &SuperNumber::one(n) - &ab,
            alpha: alpha.clone(),
            beta: beta.clone(),
            gamma: -beta,
            delta: alpha.clone(),
        }
    }

    /// The lift of `-I`, acting as `Θ ↦ -Θ`.
    pub fn reflection(n: usize) -> Self {
        let m1 = SuperNumber::from_int(n, -1);
        Self::lift(&Sl2 {
            a: m1.clone(),
            b: SuperNumber::zero(n),
            c: SuperNumber::zero(n),
            d: m1,
        })
    }

    pub fn check(&self) -> ConstraintReport<T> {
        let n = self.n();
        let one = SuperNumber::one(n);
        let (a, b, c, d, e) = (&self.a, &self.b, &self.c, &self.d, &self.e);
        let (al, be, ga, de) = (&self.alpha, &self.beta, &self.gamma, &self.delta);
        let residuals = vec![
            ("ad - bc - γδ = 1", &(&(&(a * d) - &(b * c)) - &(ga * de)) - &one),
            ("e² + 2αβ = 1", &(&(e * e) + &(al * be).scale(&T::from_int(2))) - &one),
            ("cα - aβ = eγ", &(&(c * al) - &(a * be)) - &(e * ga)),
            ("dα - bβ = eδ", &(&(d * al) - &(b * be)) - &(e * de)),
            ("αβ = γδ", &(al * be) - &(ga * de)),
            ("eα = aδ - bγ", &(e * al) - &(&(a * de) - &(b * ga))),
            ("eβ = cδ - dγ", &(e * be) - &(&(c * de) - &(d * ga))),
        ];
        let parity_ok = [a, b, c, d, e].iter().all(|x| x.is_even())
            && [al, be, ga, de].iter().all(|x| x.is_odd());
        ConstraintReport {
            residuals,
            parity_ok,
            identity_component: e.body() == T::one(),
        }
    }

    /// Matrix product of the row arrays.
    pub fn mul(&self, o: &Self) -> Self {
        let (x, y) = (self.rows(), o.rows());
        let entry = |i: usize, j: usize| {
            (0..3).fold(SuperNumber::zero(self.n()), |acc, k| &acc + &(&x[i][k] * &y[k][j]))
        };
        let rows = [
            [entry(0, 0), entry(0, 1), entry(0, 2)],
            [entry(1, 0), entry(1, 1), entry(1, 2)],
            [entry(2, 0), entry(2, 1), entry(2, 2)],
        ];
        Self::from_rows(rows)
    }

    /// Closed-form inverse, valid on the group:
    ///
    /// ```text
    /// ⎡  d  -c    β   ⎤
    /// ⎢ -b   a   -α   ⎥
    /// ⎣ -δ   γ  1 - αβ⎦
    /// ```
    pub fn inverse(&self) -> Self {
        let n = self.n();
        Self::from_rows([
            [self.d.clone(), -&self.c, self.beta.clone()],
            [-&self.b, self.a.clone(), -&self.alpha],
            [-&self.delta, self.gamma.clone(), &SuperNumber::one(n) - &(&self.alpha * &self.beta)],
        ])
    }

    /// The unique factorization `m = lift(g) · susy(α, β)`.
    pub fn decompose(&self) -> (Sl2<T>, SuperNumber<T>, SuperNumber<T>) {
        let n = self.n();
        let f = &SuperNumber::one(n) - &(&self.alpha * &self.beta).scale(&half());
        let g = Sl2 {
            a: &self.a * &f,
            b: &self.b * &f,
            c: &self.c * &f,
            d: &self.d * &f,
        };
        (g, self.alpha.clone(), self.beta.clone())
    }

    pub fn recompose(g: &Sl2<T>, alpha: &SuperNumber<T>, beta: &SuperNumber<T>) -> Self {
        Self::lift(g).mul(&Self::susy(alpha, beta))
    }

    pub fn neg(&self) -> Self {
        let r = self.rows();
        Self::from_rows(r.map(|row| row.map(|x| -x)))
    }

    /// Two group elements give the same automorphism exactly when they agree
    /// up to the sign `±1`, the only even square roots of one.
    pub fn same_automorphism(&self, o: &Self) -> bool {
        self == o || *self == o.neg()
    }

    /// Right action on homogeneous coordinates.
    pub fn act_point(&self, p: &ProjPoint<T>) -> ProjPoint<T> {
        let (z1, z2, th) = (p.z1(), p.z2(), p.theta());
        ProjPoint::new(
            &(&(z1 * &self.a) + &(z2 * &self.b)) + &(th * &self.alpha),
            &(&(z1 * &self.c) + &(z2 * &self.d)) + &(th * &self.beta),
            &(&(z1 * &self.gamma) + &(z2 * &self.delta)) + &(th * &self.e),
        )
        .expect("superconformal matrices map points to points")
    }

    /// Action in chart coordinates via the explicit chart formulas
    ///
    /// `z1 ↦ (a z1 + b + θ1 α)/(c z1 + d + θ1 β)`,
    /// `θ1 ↦ (γ z1 + δ + θ1 e)/(c z1 + d + θ1 β)`,
    ///
    /// and their chart-2 analogues, staying in the chart of the input.
    pub fn act_chart(&self, cp: &ChartPoint<T>) -> Result<ChartPoint<T>> {
        let (z, th) = (&cp.p, &cp.pi);
        match cp.chart {
            Chart::One => {
                let den = &(&(&self.c * z) + &self.d) + &(th * &self.beta);
                let inv = den.invert().map_err(|_| Error::NotInChart(1))?;
                let num = &(&(&self.a * z) + &self.b) + &(th * &self.alpha);
                let odd = &(&(&self.gamma * z) + &self.delta) + &(th * &self.e);
                ChartPoint::new(Chart::One, &num * &inv, &odd * &inv)
            }
            Chart::Two => {
                let den = &(&self.a - &(&self.b * z)) + &(th * &self.alpha);
                let inv = den.invert().map_err(|_| Error::NotInChart(2))?;
                let num = &(&self.c - &(&self.d * z)) + &(th * &self.beta);
                let odd = &(&self.gamma - &(&self.delta * z)) + &(th * &self.e);
                ChartPoint::new(Chart::Two, -(&num * &inv), &odd * &inv)
            }
        }
    }

    /// For an `SL(2)` lift the spinor bundle pulls back with multipliers
    /// `(c z1 + d)^{-1}` in chart 1 and `(a - b z2)^{-1}` in chart 2.
    pub fn spinor_pushforward(&self) -> Result<SpinorMultiplier<T>> {
        let n = self.n();
        let is_lift = [&self.alpha, &self.beta, &self.gamma, &self.delta]
            .iter()
            .all(|x| x.is_zero())
            && self.e == SuperNumber::one(n);
        if !is_lift {
            return Err(Error::InvalidArgument(
                "spinor multipliers are defined for SL(2) lifts only".into(),
            ));
        }
        Ok(SpinorMultiplier {
            chart1_denominator: Poly::from_coeffs(n, vec![self.d.clone(), self.c.clone()]),
            chart2_denominator: Poly::from_coeffs(n, vec![self.a.clone(), -&self.b]),
        })
    }
}

impl<T: Coefficient> fmt::Display for ScMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.rows();
        write!(
            f,
            "sc[[{}, {}, {}], [{}, {}, {}], [{}, {}, {}]]",
            r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1], r[2][2]
        )
    }
}

/// Transition multipliers `1 / den_i(z_i)` for the spinor bundle under an
/// `SL(2)` lift.
#[derive(Clone, PartialEq, Debug)]
pub struct SpinorMultiplier<T: Coefficient> {
    pub chart1_denominator: Poly<T>,
    pub chart2_denominator: Poly<T>,
}

impl<T: Coefficient> SpinorMultiplier<T> {
    pub fn eval(&self, chart: Chart, z: &SuperNumber<T>) -> Result<SuperNumber<T>> {
        match chart {
            Chart::One => self.chart1_denominator.eval(z).invert(),
            Chart::Two => self.chart2_denominator.eval(z).invert(),
        }
    }
}
