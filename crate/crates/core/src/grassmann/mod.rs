//! The Grassmann algebra `Λ_n` over a coefficient field, `n ≤ 8`.
//!
//! Elements are stored sparsely as sorted `(monomial, coefficient)` pairs.
//! Monomials are generator subsets encoded as bitmasks, always read as the
//! ordered product of their generators in increasing index.

mod text;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

pub use text::parse;

/// Largest supported number of odd generators.
pub const MAX_GENERATORS: usize = 8;

/// A product of distinct generators `η_{i1} η_{i2} ...` with `i1 < i2 < ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(u8);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// The generator `η_i`, 1-based.
    pub fn generator(i: usize) -> Monomial {
        assert!((1..=MAX_GENERATORS).contains(&i), "generator index {i}");
        Monomial(1 << (i - 1))
    }

    pub fn from_indices(indices: &[usize]) -> Option<Monomial> {
        let mut bits = 0u8;
        for &i in indices {
            if !(1..=MAX_GENERATORS).contains(&i) || bits & (1 << (i - 1)) != 0 {
                return None;
            }
            bits |= 1 << (i - 1);
        }
        Some(Monomial(bits))
    }

    pub fn from_bits(bits: u8) -> Monomial {
        Monomial(bits)
    }

    /// All `2^n` monomials in the first `n` generators.
    pub fn all(n: usize) -> impl Iterator<Item = Monomial> {
        (0u16..(1 << n)).map(|b| Monomial(b as u8))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_odd(self) -> bool {
        self.degree() % 2 == 1
    }

    /// Generator indices in increasing order, 1-based.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..8).filter(move |b| self.0 & (1 << b) != 0).map(|b| b + 1)
    }

    /// Highest generator index used, 0 for the unit.
    pub fn max_index(self) -> usize {
        8 - self.0.leading_zeros() as usize
    }

    /// Canonical ordering: by degree, then lexicographically on index lists.
    /// Reversing the bits makes the lowest generator the most significant,
    /// and larger reversed masks must come first, hence the complement.
    fn order_key(self) -> (u32, u8) {
        (self.degree(), !self.0.reverse_bits())
    }

    /// `self * other` as `(monomial, negative)`, or `None` when the product
    /// vanishes because a generator repeats.
    pub fn times(self, other: Monomial) -> Option<(Monomial, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Moving each generator of `other` left past the larger generators of
        // `self` costs one sign per transposition.
        let mut swaps = 0;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            swaps += (self.0 >> (j + 1)).count_ones();
        }
        Some((Monomial(self.0 | other.0), swaps % 2 == 1))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// An element of `Λ_n` with coefficients in `T`.
#[derive(Clone, PartialEq)]
pub struct SuperNumber<T: Coefficient> {
    n: u8,
    terms: Vec<(Monomial, T)>,
}

fn check_n(n: usize) -> Result<u8> {
    if n > MAX_GENERATORS {
        Err(Error::TooManyGenerators(n))
    } else {
        Ok(n as u8)
    }
}

impl<T: Coefficient> SuperNumber<T> {
    pub fn zero(n: usize) -> Self {
        SuperNumber {
            n: check_n(n).expect("generator count"),
            terms: Vec::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    pub fn scalar(n: usize, c: T) -> Self {
        Self::from_terms(n, [(Monomial::ONE, c)]).expect("generator count")
    }

    pub fn from_int(n: usize, k: i64) -> Self {
        Self::scalar(n, T::from_int(k))
    }

    pub fn from_ratio(n: usize, num: i64, den: i64) -> Self {
        Self::scalar(n, T::from_ratio(num, den))
    }

    /// The generator `η_i`, 1-based.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::GeneratorOutOfRange { index: i, n });
        }
        Self::from_terms(n, [(Monomial::generator(i), T::one())])
    }

    /// Sum of terms; repeated monomials are combined and zeros dropped.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, T)>) -> Result<Self> {
        let n8 = check_n(n)?;
        let mut acc: Vec<Option<T>> = vec![None; 1 << n];
        for (m, c) in terms {
            if m.max_index() > n {
                return Err(Error::GeneratorOutOfRange {
                    index: m.max_index(),
                    n,
                });
            }
            let slot = &mut acc[m.bits() as usize];
            *slot = Some(match slot.take() {
                Some(prev) => prev + c,
                None => c,
            });
        }
        Ok(Self::collect(n8, acc))
    }

    fn collect(n: u8, acc: Vec<Option<T>>) -> Self {
        let mut terms: Vec<(Monomial, T)> = acc
            .into_iter()
            .enumerate()
            .filter_map(|(b, c)| c.filter(|c| !c.is_zero()).map(|c| (Monomial(b as u8), c)))
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        SuperNumber { n, terms }
    }

    /// Number of generators of the ambient algebra.
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> &[(Monomial, T)] {
        &self.terms
    }

    pub fn coefficient(&self, m: Monomial) -> T {
        self.terms
            .iter()
            .find(|(k, _)| *k == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(T::zero)
    }

    /// The coefficient of the unit monomial.
    pub fn body(&self) -> T {
        self.coefficient(Monomial::ONE)
    }

    /// The body as an element of the same algebra.
    pub fn reduce(&self) -> Self {
        Self::scalar(self.n(), self.body())
    }

    /// The nilpotent part.
    pub fn soul(&self) -> Self {
        self.filtered(|m| m != Monomial::ONE)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `true` when the element is a pure number (no generators appear).
    pub fn is_scalar(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == Monomial::ONE)
    }

    pub fn is_invertible(&self) -> bool {
        !self.body().is_zero()
    }

    fn filtered(&self, keep: impl Fn(Monomial) -> bool) -> Self {
        SuperNumber {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| keep(*m)).cloned().collect(),
        }
    }

    pub fn even_part(&self) -> Self {
        self.filtered(|m| !m.is_odd())
    }

    pub fn odd_part(&self) -> Self {
        self.filtered(|m| m.is_odd())
    }

    /// `(even, odd)` with `self = even + odd`.
    pub fn parity_split(&self) -> (Self, Self) {
        (self.even_part(), self.odd_part())
    }

    /// The parity of a homogeneous element. Zero counts as even; mixed
    /// elements have no parity.
    pub fn parity(&self) -> Option<Parity> {
        let odd = self.terms.iter().filter(|(m, _)| m.is_odd()).count();
        if odd == 0 {
            Some(Parity::Even)
        } else if odd == self.terms.len() {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|(m, _)| !m.is_odd())
    }

    pub fn is_odd(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_odd())
    }

    /// The parity automorphism `even - odd`.
    pub fn involution(&self) -> Self {
        SuperNumber {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.is_odd() { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::MismatchedGenerators {
                left: self.n(),
                right: other.n(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let mut acc: Vec<Option<T>> = vec![None; 1 << self.n];
        for (m, c) in &self.terms {
            acc[m.bits() as usize] = Some(c.clone());
        }
        for (m, c) in &other.terms {
            let c = if negate { -c.clone() } else { c.clone() };
            let slot = &mut acc[m.bits() as usize];
            *slot = Some(match slot.take() {
                Some(prev) => prev + c,
                None => c,
            });
        }
        Self::collect(self.n, acc)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut acc: Vec<Option<T>> = vec![None; 1 << self.n];
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some((m, negative)) = ma.times(*mb) else {
                    continue;
                };
                let mut c = ca.clone() * cb.clone();
                if negative {
                    c = -c;
                }
                let slot = &mut acc[m.bits() as usize];
                *slot = Some(match slot.take() {
                    Some(prev) => prev + c,
                    None => c,
                });
            }
        }
        Self::collect(self.n, acc)
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.n());
        }
        SuperNumber {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (*m, x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `x^{-1} = b^{-1} Σ_k (-s/b)^k` for `x = b + s`; the series stops
    /// because the soul is nilpotent.
    pub fn invert(&self) -> Result<Self> {
        let b = self.body();
        if b.is_zero() {
            return Err(Error::NotInvertible);
        }
        let binv = T::one() / b;
        let u = self.soul().scale(&-binv.clone());
        let mut sum = Self::one(self.n());
        let mut power = Self::one(self.n());
        loop {
            power = &power * &u;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(&binv))
    }

    /// Square root via the binomial series over the soul, using the
    /// principal square root of the body.
    pub fn sqrt(&self) -> Result<Self> {
        let b = self.body();
        if b.is_zero() {
            return if self.is_zero() {
                Ok(self.clone())
            } else {
                Err(Error::NoSquareRoot)
            };
        }
        let root = b.sqrt().ok_or(Error::NoSquareRoot)?;
        let u = self.soul().scale(&(T::one() / b));
        let mut coeff = T::one();
        let mut sum = Self::one(self.n());
        let mut power = Self::one(self.n());
        let mut k: i64 = 0;
        loop {
            // binom(1/2, k+1) = binom(1/2, k) * (1/2 - k) / (k + 1)
            coeff = coeff * T::from_ratio(1 - 2 * k, 2 * (k + 1));
            k += 1;
            power = &power * &u;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power.scale(&coeff);
        }
        Ok(sum.scale(&root))
    }

    /// Embed into an algebra with at least as many generators.
    pub fn extend(&self, n: usize) -> Result<Self> {
        if n < self.n() {
            return Err(Error::InvalidArgument(format!(
                "cannot embed Λ_{} into Λ_{n}",
                self.n
            )));
        }
        Ok(SuperNumber {
            n: check_n(n)?,
            terms: self.terms.clone(),
        })
    }

    /// Apply a field homomorphism coefficientwise.
    pub fn map_coefficients<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> SuperNumber<U> {
        SuperNumber::from_terms(self.n(), self.terms.iter().map(|(m, c)| (*m, f(c))))
            .expect("same generator count")
    }

    /// Sign convention for canonical representatives: the first nonzero
    /// coefficient in canonical order is positive.
    pub fn is_canonically_positive(&self) -> bool {
        self.terms.first().is_some_and(|(_, c)| c.is_positive())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, T: Coefficient> $tr<&'a SuperNumber<T>> for &'a SuperNumber<T> {
            type Output = SuperNumber<T>;
            fn $method(self, rhs: &'a SuperNumber<T>) -> SuperNumber<T> {
                assert_eq!(
                    self.n, rhs.n,
                    "Grassmann operands with different generator counts"
                );
                let f: fn(&SuperNumber<T>, &SuperNumber<T>) -> SuperNumber<T> = $body;
                f(self, rhs)
            }
        }

        impl<T: Coefficient> $tr for SuperNumber<T> {
            type Output = SuperNumber<T>;
            fn $method(self, rhs: SuperNumber<T>) -> SuperNumber<T> {
                (&self).$method(&rhs)
            }
        }

        impl<'a, T: Coefficient> $tr<&'a SuperNumber<T>> for SuperNumber<T> {
            type Output = SuperNumber<T>;
            fn $method(self, rhs: &'a SuperNumber<T>) -> SuperNumber<T> {
                (&self).$method(rhs)
            }
        }

        impl<'a, T: Coefficient> $tr<SuperNumber<T>> for &'a SuperNumber<T> {
            type Output = SuperNumber<T>;
            fn $method(self, rhs: SuperNumber<T>) -> SuperNumber<T> {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_unchecked(b, false));
binop!(Sub, sub, |a, b| a.add_unchecked(b, true));
binop!(Mul, mul, |a, b| a.mul_unchecked(b));

impl<T: Coefficient> Neg for &SuperNumber<T> {
    type Output = SuperNumber<T>;
    fn neg(self) -> SuperNumber<T> {
        SuperNumber {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<T: Coefficient> Neg for SuperNumber<T> {
    type Output = SuperNumber<T>;
    fn neg(self) -> SuperNumber<T> {
        -&self
    }
}

impl<T: Coefficient> fmt::Display for SuperNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let ct = c.text();
            if k == 0 {
                if ct.negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if ct.negative { " - " } else { " + " })?;
            }
            let mono = m
                .indices()
                .map(|i| format!("g{i}"))
                .collect::<Vec<_>>()
                .join("*");
            match (mono.is_empty(), ct.unit) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&ct.magnitude)?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{}*{}", ct.magnitude, mono)?,
            }
        }
        Ok(())
    }
}

impl<T: Coefficient> fmt::Debug for SuperNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ{}[{}]", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Scalar};

    type S = SuperNumber<Scalar>;

    fn g(n: usize, i: usize) -> S {
        S::generator(n, i).unwrap()
    }

    #[test]
    fn monomial_order_is_degree_then_lex() {
        let mut ms: Vec<Monomial> = [vec![2, 3], vec![1, 4], vec![1], vec![], vec![1, 2]]
            .iter()
            .map(|v| Monomial::from_indices(v).unwrap())
            .collect();
        ms.sort();
        let idx: Vec<Vec<usize>> = ms.iter().map(|m| m.indices().collect()).collect();
        assert_eq!(idx, vec![vec![], vec![1], vec![1, 2], vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn anticommuting_generators() {
        let (a, b) = (g(2, 1), g(2, 2));
        assert_eq!(&a * &b, -(&b * &a));
        assert!((&a * &a).is_zero());
        assert_eq!((&b * &a).to_string(), "-g1*g2");
    }

    #[test]
    fn inverse_of_one_plus_nilpotent() {
        // (1 + η1η2)^{-1} = 1 - η1η2
        let x = S::one(2) + g(2, 1) * g(2, 2);
        let expected = S::one(2) - g(2, 1) * g(2, 2);
        assert_eq!(x.invert().unwrap(), expected);
        assert_eq!(g(2, 1).invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn parity_of_inhomogeneous_element() {
        let x = S::one(1) + g(1, 1);
        assert_eq!(x.parity(), None);
        let (e, o) = x.parity_split();
        assert_eq!(e, S::one(1));
        assert_eq!(o, g(1, 1));
    }

    #[test]
    fn square_root_of_even_element() {
        let x = S::from_int(4, 4) + g(4, 1) * g(4, 2) + g(4, 3) * g(4, 4);
        let r = x.sqrt().unwrap();
        assert_eq!(&r * &r, x);
        assert_eq!(r.body(), q(2, 1));
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        assert_eq!(
            g(2, 1).checked_mul(&g(3, 1)),
            Err(Error::MismatchedGenerators { left: 2, right: 3 })
        );
    }
}
