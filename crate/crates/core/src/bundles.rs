//! Sections of the line bundles `O(k)` on `P^1` over `B_0`, with `O(1)`
//! doubling as the spinor bundle `S`.
//!
//! A section is stored by its chart-1 polynomial `g1` of degree at most `k`
//! in the frame `s1^k`. The chart-2 polynomial follows from `s1 = -z2 s2`:
//! `g2(z2) = (-z2)^k g1(-1/z2)`.

use crate::curves::SuperCurve;
use crate::error::{Error, Result};
use crate::grassmann::SuperNumber;
use crate::poly::Poly;
use crate::scalar::Coefficient;
use crate::scgroup::Sl2;
use crate::superspace::{Chart, ProjPoint};

/// `dim H^0(P^1, O(k))`.
pub fn h0_dim(k: i32) -> usize {
    (k + 1).max(0) as usize
}

#[derive(Clone, PartialEq, Debug)]
pub struct Section<T: Coefficient> {
    k: i32,
    chart1: Poly<T>,
}

/// A section value in the frame of a particular chart.
#[derive(Clone, PartialEq, Debug)]
pub struct FrameValue<T: Coefficient> {
    pub frame: Chart,
    pub value: SuperNumber<T>,
}

impl<T: Coefficient> Section<T> {
    pub fn new(k: i32, chart1: Poly<T>) -> Result<Self> {
        let too_big = match chart1.degree() {
            None => false,
            Some(d) => k < 0 || d as i32 > k,
        };
        if too_big {
            return Err(Error::DegreeBound(format!(
                "a section of O({k}) has chart-1 degree at most {k}"
            )));
        }
        Ok(Section { k, chart1 })
    }

    pub fn from_coeffs(k: i32, coeffs: Vec<SuperNumber<T>>) -> Result<Self> {
        let n = coeffs.first().map_or(0, |c| c.n());
        Self::new(k, Poly::from_coeffs(n, coeffs))
    }

    pub fn zero(n: usize, k: i32) -> Self {
        Section {
            k,
            chart1: Poly::zero(n),
        }
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.chart1.n()
    }

    pub fn chart1(&self) -> &Poly<T> {
        &self.chart1
    }

    /// Coefficients `c_0..c_k`, zero-padded.
    pub fn coefficients(&self) -> Vec<SuperNumber<T>> {
        (0..h0_dim(self.k)).map(|i| self.chart1.coeff(i)).collect()
    }

    /// `g2(z2) = Σ (-1)^(k+i) c_i z2^(k-i)`.
    pub fn chart2(&self) -> Poly<T> {
        let k = self.k.max(0) as usize;
        let mut out = vec![SuperNumber::zero(self.n()); k + 1];
        for (i, c) in self.chart1.coeffs().iter().enumerate() {
            out[k - i] = if (k + i) % 2 == 0 { c.clone() } else { -c };
        }
        Poly::from_coeffs(self.n(), out)
    }

    pub fn in_chart(&self, chart: Chart) -> Poly<T> {
        match chart {
            Chart::One => self.chart1.clone(),
            Chart::Two => self.chart2(),
        }
    }

    /// Value at the base point of `p` in the frame of its canonical chart.
    pub fn eval_at(&self, p: &ProjPoint<T>) -> FrameValue<T> {
        let frame = p.canonical_chart();
        FrameValue {
            frame,
            value: self.eval_in_chart(p, frame).expect("canonical chart"),
        }
    }

    pub fn eval_in_chart(&self, p: &ProjPoint<T>, chart: Chart) -> Result<SuperNumber<T>> {
        let z = p.to_chart(chart)?.p;
        Ok(self.in_chart(chart).eval(&z))
    }

    /// Push forward along the Möbius map of `g`:
    /// `(g·s)(z) = Σ c_i (dz - b)^i (a - cz)^(k-i)`.
    pub fn sl2_pushforward(&self, g: &Sl2<T>) -> Self {
        if self.k < 0 {
            return self.clone();
        }
        let n = self.n();
        let num = Poly::from_coeffs(n, vec![-&g.b, g.d.clone()]);
        let den = Poly::from_coeffs(n, vec![g.a.clone(), -&g.c]);
        Section {
            k: self.k,
            chart1: self.chart1.substitute_homogeneous(self.k as usize, &num, &den),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.k != o.k {
            return Err(Error::InvalidArgument("sections of different bundles".into()));
        }
        Ok(Section {
            k: self.k,
            chart1: &self.chart1 + &o.chart1,
        })
    }

    pub fn scale(&self, c: &SuperNumber<T>) -> Self {
        Section {
            k: self.k,
            chart1: self.chart1.scale_left(c),
        }
    }
}

/// The global spinor section `s(α, β) = s1(α - β z1) = -s2(α z2 + β)`.
#[derive(Clone, PartialEq, Debug)]
pub struct SpinorSection<T: Coefficient> {
    pub alpha: SuperNumber<T>,
    pub beta: SuperNumber<T>,
}

impl<T: Coefficient> SpinorSection<T> {
    pub fn new(alpha: SuperNumber<T>, beta: SuperNumber<T>) -> Self {
        SpinorSection { alpha, beta }
    }

    pub fn to_section(&self) -> Section<T> {
        Section {
            k: 1,
            chart1: Poly::from_coeffs(self.alpha.n(), vec![self.alpha.clone(), -&self.beta]),
        }
    }

    pub fn from_section(s: &Section<T>) -> Result<Self> {
        if s.k != 1 {
            return Err(Error::InvalidArgument(format!(
                "spinor sections live in O(1), not O({})",
                s.k
            )));
        }
        Ok(SpinorSection {
            alpha: s.chart1.coeff(0),
            beta: -s.chart1.coeff(1),
        })
    }

    /// `(α, β) ↦ (aα + bβ, cα + dβ)`.
    pub fn act(&self, g: &Sl2<T>) -> Self {
        let (alpha, beta) = g.act_pair(&self.alpha, &self.beta);
        SpinorSection { alpha, beta }
    }
}

/// `⟨s, dφ⟩` as a section of the twist `O(2d-1)` in which `ψ` lives:
/// `(α - βz)(P'Q - PQ')`, read against the denominator `Q²`.
pub fn contract_with_differential<T: Coefficient>(s: &SpinorSection<T>, curve: &SuperCurve<T>) -> Section<T> {
    let d = curve.degree() as i32;
    let n = curve.n();
    if d == 0 {
        return Section::zero(n, -1);
    }
    let (p, q) = (curve.phi_numerator(), curve.phi_denominator());
    let wronskian = &(&p.derivative() * q) - &(p * &q.derivative());
    let s1 = s.to_section().chart1;
    Section {
        k: 2 * d - 1,
        chart1: &s1 * &wronskian,
    }
}
