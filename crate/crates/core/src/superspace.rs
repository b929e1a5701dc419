//! Points of the projective superline `P^{1|1}` over a Grassmann algebra.
//!
//! A point is a homogeneous triple `[Z1 : Z2 : Θ]` of an even, even and odd
//! element, up to an invertible even scalar. Chart 1 is `body(Z2) ≠ 0` with
//! coordinates `z1 = Z1/Z2, θ1 = Θ/Z2`; chart 2 is `body(Z1) ≠ 0` with
//! `z2 = -Z2/Z1, θ2 = Θ/Z1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::SuperNumber;
use crate::scalar::Coefficient;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Chart {
    One,
    Two,
}

impl Chart {
    pub fn index(self) -> u8 {
        match self {
            Chart::One => 1,
            Chart::Two => 2,
        }
    }

    pub fn other(self) -> Chart {
        match self {
            Chart::One => Chart::Two,
            Chart::Two => Chart::One,
        }
    }
}

fn require_same_n<T: Coefficient>(xs: &[&SuperNumber<T>]) -> Result<usize> {
    let n = xs[0].n();
    for x in xs {
        if x.n() != n {
            return Err(Error::MismatchedGenerators {
                left: n,
                right: x.n(),
            });
        }
    }
    Ok(n)
}

fn require_parity<T: Coefficient>(even: &[&SuperNumber<T>], odd: &[&SuperNumber<T>]) -> Result<()> {
    if let Some(x) = even.iter().find(|x| !x.is_even()) {
        return Err(Error::Parity(format!("{x} should be even")));
    }
    if let Some(x) = odd.iter().find(|x| !x.is_odd()) {
        return Err(Error::Parity(format!("{x} should be odd")));
    }
    Ok(())
}

/// A `B`-point `[Z1 : Z2 : Θ]` of `P^{1|1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct ProjPoint<T: Coefficient> {
    z1: SuperNumber<T>,
    z2: SuperNumber<T>,
    theta: SuperNumber<T>,
}

impl<T: Coefficient> ProjPoint<T> {
    pub fn new(z1: SuperNumber<T>, z2: SuperNumber<T>, theta: SuperNumber<T>) -> Result<Self> {
        require_same_n(&[&z1, &z2, &theta])?;
        require_parity(&[&z1, &z2], &[&theta])?;
        if !z1.is_invertible() && !z2.is_invertible() {
            return Err(Error::DegeneratePoint);
        }
        Ok(ProjPoint { z1, z2, theta })
    }

    /// `[x : y : 0]` for scalars.
    pub fn reduced(n: usize, x: T, y: T) -> Result<Self> {
        Self::new(
            SuperNumber::scalar(n, x),
            SuperNumber::scalar(n, y),
            SuperNumber::zero(n),
        )
    }

    /// The point `z1 = 0`, i.e. `[0 : 1 : 0]`.
    pub fn origin(n: usize) -> Self {
        Self::reduced(n, T::zero(), T::one()).unwrap()
    }

    /// `[1 : 1 : 0]`.
    pub fn unit(n: usize) -> Self {
        Self::reduced(n, T::one(), T::one()).unwrap()
    }

    /// `[1 : 0 : 0]`.
    pub fn infinity(n: usize) -> Self {
        Self::reduced(n, T::one(), T::zero()).unwrap()
    }

    pub fn n(&self) -> usize {
        self.z1.n()
    }

    pub fn z1(&self) -> &SuperNumber<T> {
        &self.z1
    }

    pub fn z2(&self) -> &SuperNumber<T> {
        &self.z2
    }

    pub fn theta(&self) -> &SuperNumber<T> {
        &self.theta
    }

    /// Chart 1 whenever it applies, chart 2 otherwise.
    pub fn canonical_chart(&self) -> Chart {
        if self.z2.is_invertible() {
            Chart::One
        } else {
            Chart::Two
        }
    }

    pub fn in_chart(&self, chart: Chart) -> bool {
        match chart {
            Chart::One => self.z2.is_invertible(),
            Chart::Two => self.z1.is_invertible(),
        }
    }

    /// The representative whose canonical-chart divisor equals one.
    pub fn normalize(&self) -> Self {
        let div = match self.canonical_chart() {
            Chart::One => &self.z2,
            Chart::Two => &self.z1,
        };
        let inv = div.invert().expect("chart divisor is invertible");
        self.scale(&inv)
    }

    /// Multiply all homogeneous coordinates by an even scalar.
    pub fn scale(&self, lambda: &SuperNumber<T>) -> Self {
        ProjPoint {
            z1: &self.z1 * lambda,
            z2: &self.z2 * lambda,
            theta: &self.theta * lambda,
        }
    }

    pub fn to_chart(&self, chart: Chart) -> Result<ChartPoint<T>> {
        if !self.in_chart(chart) {
            return Err(Error::NotInChart(chart.index()));
        }
        Ok(match chart {
            Chart::One => {
                let inv = self.z2.invert()?;
                ChartPoint {
                    chart,
                    p: &self.z1 * &inv,
                    pi: &self.theta * &inv,
                }
            }
            Chart::Two => {
                let inv = self.z1.invert()?;
                ChartPoint {
                    chart,
                    p: -(&self.z2 * &inv),
                    pi: &self.theta * &inv,
                }
            }
        })
    }

    pub fn to_canonical_chart(&self) -> ChartPoint<T> {
        self.to_chart(self.canonical_chart())
            .expect("canonical chart contains the point")
    }

    /// Projective equality, tested by cross-multiplication.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.n() == other.n()
            && &self.z1 * &other.z2 == &self.z2 * &other.z1
            && &self.z1 * &other.theta == &other.z1 * &self.theta
            && &self.z2 * &other.theta == &other.z2 * &self.theta
    }

    /// Drop every nilpotent contribution.
    pub fn reduce(&self) -> Self {
        ProjPoint {
            z1: self.z1.reduce(),
            z2: self.z2.reduce(),
            theta: SuperNumber::zero(self.n()),
        }
    }

    /// `true` when the reduced points differ.
    pub fn reduced_distinct(&self, other: &Self) -> bool {
        !(self.z1.body() * other.z2.body() - self.z2.body() * other.z1.body()).is_zero()
    }

    /// The torus action `[Z1 : Z2 : Θ] ↦ [Z1 : Z2 : tΘ]`.
    pub fn torus(&self, t: &SuperNumber<T>) -> Self {
        ProjPoint {
            z1: self.z1.clone(),
            z2: self.z2.clone(),
            theta: t * &self.theta,
        }
    }

    pub fn map_coefficients<U: Coefficient>(&self, f: impl Fn(&T) -> U + Copy) -> ProjPoint<U> {
        ProjPoint {
            z1: self.z1.map_coefficients(f),
            z2: self.z2.map_coefficients(f),
            theta: self.theta.map_coefficients(f),
        }
    }

    /// Over `B = R^{0|1}`, the odd coordinate of a point is a multiple of the
    /// single generator; its coefficient is a vector in the fibre of the
    /// spinor bundle over the reduced point.
    pub fn odd_normal_part(&self) -> Result<NormalPart<T>> {
        if self.n() != 1 {
            return Err(Error::InvalidArgument(format!(
                "normal part needs exactly one generator, got {}",
                self.n()
            )));
        }
        let cp = self.to_canonical_chart();
        Ok(NormalPart {
            chart: cp.chart,
            base: cp.p.body(),
            value: cp.pi.coefficient(crate::grassmann::Monomial::generator(1)),
        })
    }
}

impl<T: Coefficient> fmt::Display for ProjPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.z1, self.z2, self.theta)
    }
}

/// Affine coordinates `(z, θ) = (p, π)` in one chart.
#[derive(Clone, PartialEq, Debug)]
pub struct ChartPoint<T: Coefficient> {
    pub chart: Chart,
    pub p: SuperNumber<T>,
    pub pi: SuperNumber<T>,
}

impl<T: Coefficient> ChartPoint<T> {
    pub fn new(chart: Chart, p: SuperNumber<T>, pi: SuperNumber<T>) -> Result<Self> {
        require_same_n(&[&p, &pi])?;
        require_parity(&[&p], &[&pi])?;
        Ok(ChartPoint { chart, p, pi })
    }

    pub fn to_proj(&self) -> ProjPoint<T> {
        let n = self.p.n();
        match self.chart {
            Chart::One => ProjPoint {
                z1: self.p.clone(),
                z2: SuperNumber::one(n),
                theta: self.pi.clone(),
            },
            Chart::Two => ProjPoint {
                z1: SuperNumber::one(n),
                z2: -&self.p,
                theta: self.pi.clone(),
            },
        }
    }

    /// Change of coordinates: `z1 = -1/z2, θ1 = -θ2/z2` and
    /// `z2 = -1/z1, θ2 = θ1/z1`.
    pub fn to_chart(&self, target: Chart) -> Result<Self> {
        if target == self.chart {
            return Ok(self.clone());
        }
        let inv = self
            .p
            .invert()
            .map_err(|_| Error::NotInChart(target.index()))?;
        let pi = match target {
            Chart::One => -(&self.pi * &inv),
            Chart::Two => &self.pi * &inv,
        };
        Ok(ChartPoint {
            chart: target,
            p: -inv,
            pi,
        })
    }
}

impl<T: Coefficient> fmt::Display for ChartPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chart{}({}; {})", self.chart.index(), self.p, self.pi)
    }
}

/// A `B`-point written as a reduced-style base coordinate plus an odd fibre
/// value `σ` of the spinor bundle `S`, expressed in the frame `s_chart`.
///
/// With `σ = s1 π1 = s2 π2` the fibre value in a chart frame is exactly the
/// odd chart coordinate; the frames are related by `s1 = -z2 s2`.
#[derive(Clone, PartialEq, Debug)]
pub struct PointSigma<T: Coefficient> {
    pub chart: Chart,
    pub p: SuperNumber<T>,
    pub sigma: SuperNumber<T>,
}

impl<T: Coefficient> PointSigma<T> {
    pub fn from_chart_point(cp: &ChartPoint<T>) -> Self {
        PointSigma {
            chart: cp.chart,
            p: cp.p.clone(),
            sigma: cp.pi.clone(),
        }
    }

    pub fn to_chart_point(&self) -> ChartPoint<T> {
        ChartPoint {
            chart: self.chart,
            p: self.p.clone(),
            pi: self.sigma.clone(),
        }
    }

    /// Re-express in the other chart using only the frame relation
    /// `s1 = -z2 s2`.
    pub fn in_chart(&self, target: Chart) -> Result<Self> {
        if target == self.chart {
            return Ok(self.clone());
        }
        let inv = self
            .p
            .invert()
            .map_err(|_| Error::NotInChart(target.index()))?;
        let new_p = -inv;
        // σ = s1 σ1 = -z2 s2 σ1 gives σ2 = -z2 σ1; inverting, s2 = z1 s1 gives
        // σ1 = z1 σ2.
        let sigma = match target {
            Chart::Two => -(&new_p * &self.sigma),
            Chart::One => &new_p * &self.sigma,
        };
        Ok(PointSigma {
            chart: target,
            p: new_p,
            sigma,
        })
    }
}

/// The spinor-fibre vector attached to a point over `R^{0|1}`: the point is
/// `(base, value·η)` in the chart frame `s_chart`.
#[derive(Clone, PartialEq, Debug)]
pub struct NormalPart<T: Coefficient> {
    pub chart: Chart,
    pub base: T,
    pub value: T,
}
