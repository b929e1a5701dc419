//! Polynomials in the even chart coordinate `z` with Grassmann coefficients.
//!
//! [`Poly`] is `Λ[z]`, [`ThetaPoly`] is `Λ[z] ⊕ θ·Λ[z]` (a function on the
//! chart that is at most linear in the odd coordinate), and [`RatFn`] is a
//! formal quotient of two polynomials compared by cross-multiplication.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::grassmann::SuperNumber;
use crate::scalar::Coefficient;

#[derive(Clone, PartialEq)]
pub struct Poly<T: Coefficient> {
    n: usize,
    coeffs: Vec<SuperNumber<T>>,
}

impl<T: Coefficient> Poly<T> {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: SuperNumber<T>) -> Self {
        Self::from_coeffs(c.n(), vec![c])
    }

    pub fn one(n: usize) -> Self {
        Self::constant(SuperNumber::one(n))
    }

    /// The coordinate `z` itself.
    pub fn z(n: usize) -> Self {
        Self::from_coeffs(n, vec![SuperNumber::zero(n), SuperNumber::one(n)])
    }

    /// `Σ c_i z^i`; panics if a coefficient lives in another algebra.
    pub fn from_coeffs(n: usize, coeffs: Vec<SuperNumber<T>>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.n() == n),
            "polynomial coefficients with different generator counts"
        );
        let mut p = Poly { n, coeffs };
        p.trim();
        p
    }

    pub fn from_scalars(n: usize, coeffs: &[T]) -> Self {
        Self::from_coeffs(
            n,
            coeffs
                .iter()
                .map(|c| SuperNumber::scalar(n, c.clone()))
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[SuperNumber<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> SuperNumber<T> {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| SuperNumber::zero(self.n))
    }

    /// Degree of the highest nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of the highest coefficient with nonzero body.
    pub fn body_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.body().is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_even())
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_odd())
    }

    /// Left multiplication by a constant.
    pub fn scale_left(&self, c: &SuperNumber<T>) -> Self {
        Self::from_coeffs(self.n, self.coeffs.iter().map(|x| c * x).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_coeffs(self.n, self.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    pub fn involution(&self) -> Self {
        Self::from_coeffs(self.n, self.coeffs.iter().map(|x| x.involution()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.n,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&T::from_int(i as i64)))
                .collect(),
        )
    }

    /// Body of every coefficient.
    pub fn body(&self) -> Vec<T> {
        self.coeffs.iter().map(|c| c.body()).collect()
    }

    pub fn reduce(&self) -> Self {
        Self::from_coeffs(self.n, self.coeffs.iter().map(|c| c.reduce()).collect())
    }

    /// `Σ c_i x^i`, coefficients kept on the left.
    pub fn eval(&self, x: &SuperNumber<T>) -> SuperNumber<T> {
        let mut acc = SuperNumber::zero(self.n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// The binary form of degree `deg` with these coefficients, evaluated at
    /// `(z1, z2)`: `Σ c_i z1^i z2^(deg-i)`.
    pub fn eval_homogeneous(&self, deg: usize, z1: &SuperNumber<T>, z2: &SuperNumber<T>) -> SuperNumber<T> {
        let mut acc = SuperNumber::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &(c * &(z1.pow(i as u32) * z2.pow((deg - i) as u32)));
        }
        acc
    }

    /// `Σ c_i num^i den^(deg-i)` for polynomials `num`, `den` with even
    /// coefficients.
    pub fn substitute_homogeneous(&self, deg: usize, num: &Poly<T>, den: &Poly<T>) -> Poly<T> {
        let num_pows = powers(num, deg);
        let den_pows = powers(den, deg);
        let mut acc = Poly::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &(&num_pows[i] * &den_pows[deg - i]).scale_left(c);
        }
        acc
    }

    /// Exact division by a polynomial whose leading coefficient is
    /// invertible.
    pub fn div_exact(&self, d: &Poly<T>) -> Result<Poly<T>> {
        let Some(top) = self.degree() else {
            return Ok(Poly::zero(self.n));
        };
        let bd = d.body_degree().ok_or(Error::NotInvertible)?;
        let dd = d.degree().unwrap_or(bd);
        if top < bd {
            return Err(Error::NotGlobal("polynomial division leaves a remainder".into()));
        }
        // Nilpotent leading coefficients of `d` can push the quotient above
        // `top - bd`; each extra degree costs at least one pair of generators.
        let len = top - bd + 1 + (dd - bd) * (self.n / 2);
        let rows = len + dd;
        let matrix: Vec<Vec<SuperNumber<T>>> = (0..rows)
            .map(|k| (0..len).map(|j| if k >= j { d.coeff(k - j) } else { SuperNumber::zero(self.n) }).collect())
            .collect();
        let rhs: Vec<SuperNumber<T>> = (0..rows).map(|k| self.coeff(k)).collect();
        let quot = crate::linalg::solve_even(&matrix, &rhs)
            .map_err(|_| Error::NotGlobal("polynomial division leaves a remainder".into()))?;
        Ok(Poly::from_coeffs(self.n, quot))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Poly::one(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn map_coefficients<U: Coefficient>(&self, f: impl Fn(&T) -> U + Copy) -> Poly<U> {
        Poly::from_coeffs(self.n, self.coeffs.iter().map(|c| c.map_coefficients(f)).collect())
    }
}

fn powers<T: Coefficient>(p: &Poly<T>, k: usize) -> Vec<Poly<T>> {
    let mut out = vec![Poly::one(p.n)];
    for i in 0..k {
        out.push(&out[i] * p);
    }
    out
}

impl<T: Coefficient> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs(self.n, (0..len).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }
}

impl<T: Coefficient> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs(self.n, (0..len).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }
}

impl<T: Coefficient> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::from_coeffs(self.n, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<T: Coefficient> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.n);
        }
        let mut out = vec![SuperNumber::zero(self.n); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(self.n, out)
    }
}

macro_rules! owned_ops {
    ($ty:ident) => {
        impl<T: Coefficient> Add for $ty<T> {
            type Output = $ty<T>;
            fn add(self, o: $ty<T>) -> $ty<T> {
                &self + &o
            }
        }
        impl<T: Coefficient> Sub for $ty<T> {
            type Output = $ty<T>;
            fn sub(self, o: $ty<T>) -> $ty<T> {
                &self - &o
            }
        }
        impl<T: Coefficient> Mul for $ty<T> {
            type Output = $ty<T>;
            fn mul(self, o: $ty<T>) -> $ty<T> {
                &self * &o
            }
        }
        impl<T: Coefficient> Neg for $ty<T> {
            type Output = $ty<T>;
            fn neg(self) -> $ty<T> {
                -&self
            }
        }
    };
}

owned_ops!(Poly);
owned_ops!(ThetaPoly);

/// Write `Σ c_i var^i` in descending powers, parenthesizing compound
/// coefficients.
pub(crate) fn write_poly<T: Coefficient>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[SuperNumber<T>],
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let (negative, text) = match c.terms() {
            [(m, x)] => {
                let ct = x.text();
                if m.degree() == 0 {
                    let omit = ct.unit && !mono.is_empty();
                    (ct.negative, if omit { String::new() } else { ct.magnitude })
                } else if ct.negative {
                    (true, (-c).to_string())
                } else {
                    (false, c.to_string())
                }
            }
            _ => (false, format!("({c})")),
        };
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        match (text.is_empty(), mono.is_empty()) {
            (true, _) => f.write_str(&mono)?,
            (false, true) => f.write_str(&text)?,
            (false, false) => write!(f, "{text}*{mono}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<T: Coefficient> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "z")
    }
}

impl<T: Coefficient> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}

/// `even(z) + θ·theta(z)`.
#[derive(Clone, PartialEq, Debug)]
pub struct ThetaPoly<T: Coefficient> {
    pub even: Poly<T>,
    pub theta: Poly<T>,
}

impl<T: Coefficient> ThetaPoly<T> {
    pub fn new(even: Poly<T>, theta: Poly<T>) -> Self {
        assert_eq!(even.n(), theta.n(), "mismatched generator counts");
        ThetaPoly { even, theta }
    }

    pub fn n(&self) -> usize {
        self.even.n()
    }

    pub fn zero(n: usize) -> Self {
        Self::new(Poly::zero(n), Poly::zero(n))
    }

    pub fn one(n: usize) -> Self {
        Self::new(Poly::one(n), Poly::zero(n))
    }

    /// The linear function `c1 z + c0 + θ ct`.
    pub fn linear(c1: &SuperNumber<T>, c0: &SuperNumber<T>, ct: &SuperNumber<T>) -> Self {
        let n = c0.n();
        Self::new(
            Poly::from_coeffs(n, vec![c0.clone(), c1.clone()]),
            Poly::constant(ct.clone()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.theta.is_zero()
    }

    /// `c·(f + θg) = c f + θ c* g`.
    pub fn scale_left(&self, c: &SuperNumber<T>) -> Self {
        Self::new(
            self.even.scale_left(c),
            self.theta.scale_left(&c.involution()),
        )
    }

    /// Value at the point `(z, θ) = (p, π)`: `f(p) + π g(p)`.
    pub fn eval(&self, p: &SuperNumber<T>, pi: &SuperNumber<T>) -> SuperNumber<T> {
        &self.even.eval(p) + &(pi * &self.theta.eval(p))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(self.n());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl<T: Coefficient> Add for &ThetaPoly<T> {
    type Output = ThetaPoly<T>;
    fn add(self, o: &ThetaPoly<T>) -> ThetaPoly<T> {
        ThetaPoly::new(&self.even + &o.even, &self.theta + &o.theta)
    }
}

impl<T: Coefficient> Sub for &ThetaPoly<T> {
    type Output = ThetaPoly<T>;
    fn sub(self, o: &ThetaPoly<T>) -> ThetaPoly<T> {
        ThetaPoly::new(&self.even - &o.even, &self.theta - &o.theta)
    }
}

impl<T: Coefficient> Neg for &ThetaPoly<T> {
    type Output = ThetaPoly<T>;
    fn neg(self) -> ThetaPoly<T> {
        ThetaPoly::new(-&self.even, -&self.theta)
    }
}

impl<T: Coefficient> Mul for &ThetaPoly<T> {
    type Output = ThetaPoly<T>;
    /// `(f1 + θg1)(f2 + θg2) = f1 f2 + θ(f1* g2 + g1 f2)`.
    fn mul(self, o: &ThetaPoly<T>) -> ThetaPoly<T> {
        ThetaPoly::new(
            &self.even * &o.even,
            &(&self.even.involution() * &o.theta) + &(&self.theta * &o.even),
        )
    }
}

/// A chart-level rational function `num / den`.
#[derive(Clone)]
pub struct RatFn<T: Coefficient> {
    pub num: Poly<T>,
    pub den: Poly<T>,
}

impl<T: Coefficient> RatFn<T> {
    /// Fails when the denominator vanishes identically at body level.
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.body_degree().is_none() {
            return Err(Error::NotInvertible);
        }
        Ok(RatFn { num, den })
    }

    pub fn poly(p: Poly<T>) -> Self {
        let n = p.n();
        RatFn {
            num: p,
            den: Poly::one(n),
        }
    }

    pub fn n(&self) -> usize {
        self.num.n()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn derivative(&self) -> Self {
        RatFn {
            num: &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative()),
            den: &self.den * &self.den,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFn<T>) -> Result<Self> {
        Ok(self * &o.inverse()?)
    }

    pub fn scale_left(&self, c: &SuperNumber<T>) -> Self {
        RatFn {
            num: self.num.scale_left(c),
            den: self.den.clone(),
        }
    }

    /// `self ∘ inner`, homogenized so the result is again a quotient of
    /// polynomials.
    pub fn compose(&self, inner: &RatFn<T>) -> Self {
        let m = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        RatFn {
            num: self.num.substitute_homogeneous(m, &inner.num, &inner.den),
            den: self.den.substitute_homogeneous(m, &inner.num, &inner.den),
        }
    }

    pub fn eval(&self, x: &SuperNumber<T>) -> Result<SuperNumber<T>> {
        Ok(&self.num.eval(x) * &self.den.eval(x).invert()?)
    }

    /// Equality as functions: `num·den' = num'·den`.
    pub fn same_as(&self, o: &RatFn<T>) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    /// As a polynomial, if the denominator divides the numerator.
    pub fn as_poly(&self) -> Option<Poly<T>> {
        self.num.div_exact(&self.den).ok()
    }
}

impl<T: Coefficient> Add for &RatFn<T> {
    type Output = RatFn<T>;
    fn add(self, o: &RatFn<T>) -> RatFn<T> {
        if self.den == o.den {
            return RatFn {
                num: &self.num + &o.num,
                den: self.den.clone(),
            };
        }
        RatFn {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }
}

impl<T: Coefficient> Neg for &RatFn<T> {
    type Output = RatFn<T>;
    fn neg(self) -> RatFn<T> {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<T: Coefficient> Sub for &RatFn<T> {
    type Output = RatFn<T>;
    fn sub(self, o: &RatFn<T>) -> RatFn<T> {
        self + &(-o)
    }
}

impl<T: Coefficient> Mul for &RatFn<T> {
    type Output = RatFn<T>;
    fn mul(self, o: &RatFn<T>) -> RatFn<T> {
        RatFn {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }
}

impl<T: Coefficient> fmt::Display for RatFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one(self.n()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<T: Coefficient> fmt::Debug for RatFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Scalar};

    type P = Poly<Scalar>;

    fn g(i: usize) -> SuperNumber<Scalar> {
        SuperNumber::generator(2, i).unwrap()
    }

    #[test]
    fn exact_division() {
        let z = P::z(2);
        let one = P::one(2);
        let a = &(&z + &one) * &(&z - &one);
        assert_eq!(a.div_exact(&(&z - &one)).unwrap(), &z + &one);
        assert!(a.div_exact(&(&z + &P::constant(SuperNumber::from_int(2, 2)))).is_err());
        // 1 / (1 + g1 g2 z) = 1 - g1 g2 z
        let eps = &g(1) * &g(2);
        let d = P::from_coeffs(2, vec![SuperNumber::one(2), eps.clone()]);
        let inv = P::from_coeffs(2, vec![SuperNumber::one(2), -eps]);
        assert_eq!(one.div_exact(&d).unwrap(), inv);
    }

    #[test]
    fn theta_products_anticommute() {
        // θ·θ = 0 and (θ a)(θ b) = 0 for odd a, b
        let zero = SuperNumber::<Scalar>::zero(2);
        let th = ThetaPoly::linear(&zero, &zero, &SuperNumber::one(2));
        assert!((&th * &th).is_zero());
        // (g1 + θ)(g2 + θ) = g1 g2 + θ(-g1 + g2)
        let a = ThetaPoly::new(P::constant(g(1)), P::one(2));
        let b = ThetaPoly::new(P::constant(g(2)), P::one(2));
        let ab = &a * &b;
        assert_eq!(ab.even, P::constant(&g(1) * &g(2)));
        assert_eq!(ab.theta, P::constant(&g(2) - &g(1)));
    }

    #[test]
    fn polynomial_text() {
        let p = P::from_coeffs(
            2,
            vec![
                SuperNumber::from_ratio(2, -1, 2),
                &SuperNumber::one(2) + &(&g(1) * &g(2)),
                SuperNumber::zero(2),
                -g(2),
            ],
        );
        assert_eq!(p.to_string(), "-g2*z^3 + (1 + g1*g2)*z - 1/2");
        assert_eq!(P::z(2).to_string(), "z");
        assert_eq!(P::from_scalars(2, &[q(0, 1), q(-1, 1)]).to_string(), "-z");
    }
}
