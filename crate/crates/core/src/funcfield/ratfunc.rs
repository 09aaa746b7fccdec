use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Q};
use crate::{Error, Result};

/// Element of `Q(t)` kept as a reduced quotient with monic denominator.
///
/// Zero is `0/1`. Every constructor and arithmetic operation re-reduces, so two
/// equal functions always have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Reduced `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd"), den.exact_div(&g).expect("gcd"))
        };
        let lc = den.leading().cloned().expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// The parameter `t` itself.
    pub fn t() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Q::from_integer(c.into()))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    /// `c * t^k` for any integer `k`.
    pub fn monomial(c: Q, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(Poly::monomial(c, k as usize))
        } else {
            Self::reduce(Poly::constant(c), Poly::monomial(Q::one(), k.unsigned_abs() as usize))
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<Q> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RationalFunction { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// `max(deg num, deg den)`, the height of the function.
    pub fn degree(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(self.num.deg().max(self.den.deg()))
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// `self(inner)`, the substitution `t -> inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let eval = |p: &Poly| -> Self {
            p.coeffs()
                .iter()
                .rev()
                .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
        };
        eval(&self.num).checked_div(&eval(&self.den))
    }

    /// Formats in the expression grammar with variable `var`.
    pub fn display_with(&self, var: &str) -> String {
        let n = self.num.display_with(var);
        if self.den.is_one() {
            return n;
        }
        let wrap = |p: &Poly, s: String| if p.term_count() > 1 { format!("({s})") } else { s };
        // A lone negative or fractional numerator still needs parentheses so
        // that `-1/2/t` is not misread.
        let n = if self.num.term_count() > 1 || !self.num.coeff(self.num.deg()).denom().is_one() {
            format!("({n})")
        } else {
            wrap(&self.num, n)
        };
        format!("{n}/{}", wrap(&self.den, self.den.display_with(var)))
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::reduce(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // Cross-cancel first to keep the final gcd small.
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd");
        let d2 = rhs.den.exact_div(&g1).expect("gcd");
        let n2 = rhs.num.exact_div(&g2).expect("gcd");
        let d1 = self.den.exact_div(&g2).expect("gcd");
        RationalFunction::reduce(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
