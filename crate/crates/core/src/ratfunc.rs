//! Rational functions `K(t)` in one transcendental parameter `t`.
//!
//! Used as a coefficient field when a torus parameter has to stay symbolic,
//! so that an identity holding "for generic t" is checked once and exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Coefficient, CoefficientText};

/// Reduced quotient `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq)]
pub struct RatFunc<K> {
    num: Vec<K>,
    den: Vec<K>,
}

fn trim<K: Coefficient>(mut p: Vec<K>) -> Vec<K> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn padd<K: Coefficient>(a: &[K], b: &[K]) -> Vec<K> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.clone() + y.clone(),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(out)
}

fn pneg<K: Coefficient>(a: &[K]) -> Vec<K> {
    a.iter().map(|c| -c.clone()).collect()
}

fn pmul<K: Coefficient>(a: &[K], b: &[K]) -> Vec<K> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![K::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(out)
}

fn pscale<K: Coefficient>(a: &[K], c: &K) -> Vec<K> {
    trim(a.iter().map(|x| x.clone() * c.clone()).collect())
}

fn pdivrem<K: Coefficient>(a: &[K], b: &[K]) -> (Vec<K>, Vec<K>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    let lead = b.last().unwrap().clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![K::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let f = rem.last().unwrap().clone() / lead.clone();
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] = rem[shift + i].clone() - f.clone() * c.clone();
        }
        quot[shift] = f;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn pgcd<K: Coefficient>(a: &[K], b: &[K]) -> Vec<K> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let (_, r) = pdivrem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn psqrt<K: Coefficient>(p: &[K]) -> Option<Vec<K>> {
    if p.is_empty() {
        return Some(Vec::new());
    }
    let deg = p.len() - 1;
    if deg % 2 == 1 {
        return None;
    }
    let m = deg / 2;
    let mut r = vec![K::zero(); m + 1];
    r[m] = p[deg].sqrt()?;
    let two = K::from_int(2);
    for k in (0..m).rev() {
        // coefficient of t^(m+k) in r^2, excluding the unknown r_k terms
        let mut acc = p[m + k].clone();
        for i in (k + 1)..=m {
            let j = m + k - i;
            if j > k && j <= m {
                acc = acc - r[i].clone() * r[j].clone();
            }
        }
        r[k] = acc / (two.clone() * r[m].clone());
    }
    (pmul(&r, &r) == trim(p.to_vec())).then_some(r)
}

impl<K: Coefficient> RatFunc<K> {
    /// The transcendental parameter `t`.
    pub fn t() -> Self {
        RatFunc {
            num: vec![K::zero(), K::one()],
            den: vec![K::one()],
        }
    }

    pub fn constant(c: K) -> Self {
        RatFunc {
            num: trim(vec![c]),
            den: vec![K::one()],
        }
    }

    /// Build `num / den`, reducing to lowest terms.
    pub fn new(num: Vec<K>, den: Vec<K>) -> Self {
        let num = trim(num);
        let den = trim(den);
        assert!(!den.is_empty(), "rational function with zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let g = pgcd(&num, &den);
        let (num, _) = pdivrem(&num, &g);
        let (den, _) = pdivrem(&den, &g);
        let lead = den.last().unwrap().clone();
        let inv = K::one() / lead;
        RatFunc {
            num: pscale(&num, &inv),
            den: pscale(&den, &inv),
        }
    }

    pub fn numerator(&self) -> &[K] {
        &self.num
    }

    pub fn denominator(&self) -> &[K] {
        &self.den
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<K> {
        match (self.num.len(), self.den.len()) {
            (0, _) => Some(K::zero()),
            (1, 1) => Some(self.num[0].clone()),
            _ => None,
        }
    }

    /// Specialize `t` to a value; `None` at a pole.
    pub fn eval(&self, t: &K) -> Option<K> {
        let ev = |p: &[K]| {
            p.iter()
                .rev()
                .fold(K::zero(), |acc, c| acc * t.clone() + c.clone())
        };
        let d = ev(&self.den);
        (!d.is_zero()).then(|| ev(&self.num) / d)
    }
}

fn poly_text<K: Coefficient>(p: &[K]) -> String {
    let mut out = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let ct = c.text();
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        let body = match (ct.unit, mono.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => mono,
            (false, true) => ct.magnitude,
            (false, false) => format!("{}*{}", ct.magnitude, mono),
        };
        if out.is_empty() {
            if ct.negative {
                out.push('-');
            }
        } else {
            out.push_str(if ct.negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<K: Coefficient> fmt::Debug for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.len() == 1 {
            write!(f, "{}", poly_text(&self.num))
        } else {
            write!(f, "({})/({})", poly_text(&self.num), poly_text(&self.den))
        }
    }
}

impl<K: Coefficient> Zero for RatFunc<K> {
    fn zero() -> Self {
        RatFunc {
            num: Vec::new(),
            den: vec![K::one()],
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl<K: Coefficient> One for RatFunc<K> {
    fn one() -> Self {
        Self::constant(K::one())
    }
}

impl<K: Coefficient> Add for RatFunc<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(padd(&self.num, &o.num), self.den);
        }
        let num = padd(&pmul(&self.num, &o.den), &pmul(&o.num, &self.den));
        RatFunc::new(num, pmul(&self.den, &o.den))
    }
}

impl<K: Coefficient> Neg for RatFunc<K> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc {
            num: pneg(&self.num),
            den: self.den,
        }
    }
}

impl<K: Coefficient> Sub for RatFunc<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<K: Coefficient> Mul for RatFunc<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        RatFunc::new(pmul(&self.num, &o.num), pmul(&self.den, &o.den))
    }
}

impl<K: Coefficient> Div for RatFunc<K> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(!o.is_zero(), "division by the zero rational function");
        RatFunc::new(pmul(&self.num, &o.den), pmul(&self.den, &o.num))
    }
}

impl<K: Coefficient> Coefficient for RatFunc<K> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(K::from_ratio(num, den))
    }

    fn imaginary_unit() -> Self {
        Self::constant(K::imaginary_unit())
    }

    fn sqrt(&self) -> Option<Self> {
        let n = psqrt(&self.num)?;
        let d = psqrt(&self.den)?;
        Some(RatFunc::new(n, d))
    }

    fn is_positive(&self) -> bool {
        self.num.last().is_some_and(|c| c.is_positive())
    }

    fn text(&self) -> CoefficientText {
        if let Some(c) = self.as_constant() {
            return c.text();
        }
        CoefficientText {
            negative: false,
            unit: false,
            magnitude: format!("({self:?})"),
        }
    }
}
