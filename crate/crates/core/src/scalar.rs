//! Coefficient fields for the Grassmann algebra.
//!
//! Everything in the crate is generic over [`Coefficient`]. The exact default
//! is the field of Gaussian rationals [`Scalar`]; [`Complex64`] gives a fast
//! approximate variant and [`crate::ratfunc::RatFunc`] adjoins a transcendental
//! parameter.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Gaussian rationals `Q(i)`, the exact coefficient field.
pub type Scalar = Complex<BigRational>;

pub use num_complex::Complex64;

/// How a coefficient should be rendered in front of a monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientText {
    /// Printed as a leading minus sign (or ` - ` between terms).
    pub negative: bool,
    /// Absolute value text, already parenthesized when compound.
    pub magnitude: String,
    /// `true` when the magnitude is exactly one and may be omitted.
    pub unit: bool,
}

/// A field usable as coefficient ring of the Grassmann algebra.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// The rational number `num / den`.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// A square root of `-1`.
    fn imaginary_unit() -> Self;

    /// A square root inside the field, if one exists. The choice is the
    /// principal one (positive real part, or positive imaginary part when the
    /// real part vanishes).
    fn sqrt(&self) -> Option<Self>;

    /// Sign convention used to pick canonical representatives: positive real
    /// part, or zero real part and positive imaginary part.
    fn is_positive(&self) -> bool;

    fn text(&self) -> CoefficientText;
}

fn rational_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = exact_isqrt(r.numer())?;
    let d = exact_isqrt(r.denom())?;
    Some(BigRational::new(n, d))
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

impl Coefficient for Scalar {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    fn imaginary_unit() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }

    fn sqrt(&self) -> Option<Self> {
        let (a, b) = (&self.re, &self.im);
        if b.is_zero() {
            return if a.is_negative() {
                Some(Complex::new(BigRational::zero(), rational_sqrt(&-a)?))
            } else {
                Some(Complex::new(rational_sqrt(a)?, BigRational::zero()))
            };
        }
        // (x + iy)^2 = a + ib  =>  x^2 = (a + |z|)/2, y = b / 2x.
        let modulus = rational_sqrt(&(a * a + b * b))?;
        let two = BigRational::from_integer(BigInt::from(2));
        let x = rational_sqrt(&((a + &modulus) / &two))?;
        let y = b / (&two * &x);
        Some(Complex::new(x, y))
    }

    fn is_positive(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_positive()
        } else {
            self.re.is_positive()
        }
    }

    fn text(&self) -> CoefficientText {
        if self.im.is_zero() {
            let mag = self.re.abs();
            CoefficientText {
                negative: self.re.is_negative(),
                unit: mag.is_one(),
                magnitude: rational_text(&mag),
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            CoefficientText {
                negative: false,
                unit: false,
                magnitude: format!(
                    "({}{}{}i)",
                    rational_text(&self.re),
                    sign,
                    rational_text(&self.im.abs())
                ),
            }
        }
    }
}

impl Coefficient for Complex64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(num as f64 / den as f64, 0.0)
    }

    fn imaginary_unit() -> Self {
        Complex::new(0.0, 1.0)
    }

    fn sqrt(&self) -> Option<Self> {
        Some(Complex::sqrt(*self))
    }

    fn is_positive(&self) -> bool {
        if self.re == 0.0 {
            self.im > 0.0
        } else {
            self.re > 0.0
        }
    }

    fn text(&self) -> CoefficientText {
        if self.im == 0.0 {
            CoefficientText {
                negative: self.re < 0.0,
                unit: self.re.abs() == 1.0,
                magnitude: format!("{}", self.re.abs()),
            }
        } else {
            let sign = if self.im < 0.0 { '-' } else { '+' };
            CoefficientText {
                negative: false,
                unit: false,
                magnitude: format!("({}{}{}i)", self.re, sign, self.im.abs()),
            }
        }
    }
}

/// Shorthand for the Gaussian rational `num/den`.
pub fn q(num: i64, den: i64) -> Scalar {
    Scalar::from_ratio(num, den)
}

/// Shorthand for the Gaussian rational `re + im*i` with integer parts.
pub fn gauss(re: i64, im: i64) -> Scalar {
    Complex::new(
        BigRational::from_integer(re.into()),
        BigRational::from_integer(im.into()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_square_roots() {
        assert_eq!(q(9, 4).sqrt(), Some(q(3, 2)));
        assert_eq!(q(-4, 1).sqrt(), Some(gauss(0, 2)));
        // (1 + 2i)^2 = -3 + 4i
        assert_eq!(gauss(-3, 4).sqrt(), Some(gauss(1, 2)));
        assert_eq!(q(2, 1).sqrt(), None);
        assert_eq!(gauss(0, 1).sqrt(), None);
    }

    #[test]
    fn coefficient_text() {
        assert_eq!(q(-3, 2).text().magnitude, "3/2");
        assert!(q(-3, 2).text().negative);
        let c = Complex::new(
            BigRational::new((-1).into(), 2.into()),
            BigRational::new(3.into(), 4.into()),
        );
        assert_eq!(c.text().magnitude, "(-1/2+3/4i)");
    }
}
