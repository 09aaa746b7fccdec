use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::{Error, RationalFunction, Result, Q};

/// Polynomial in `z` with coefficients in `Q(t)`, ascending degree, trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldPoly {
    coeffs: Vec<RationalFunction>,
}

impl FieldPoly {
    pub fn new(mut coeffs: Vec<RationalFunction>) -> Self {
        while coeffs.last().is_some_and(RationalFunction::is_zero) {
            coeffs.pop();
        }
        FieldPoly { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: RationalFunction) -> Self {
        Self::new(vec![c])
    }

    /// `a*z + b`.
    pub fn linear(a: RationalFunction, b: RationalFunction) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RationalFunction {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&RationalFunction> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip().expect("nonzero leading coefficient");
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: &RationalFunction) -> RationalFunction {
        self.coeffs
            .iter()
            .rev()
            .fold(RationalFunction::zero(), |acc, c| &(&acc * z) + c)
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &FieldPoly) -> FieldPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldPoly::zero(), |acc, c| &(&acc * inner) + &FieldPoly::constant(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Q::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    /// Coefficientwise substitution `t -> pi`.
    pub fn map_coeffs<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&RationalFunction) -> Result<RationalFunction>,
    {
        Ok(Self::new(self.coeffs.iter().map(&mut f).collect::<Result<_>>()?))
    }

    pub fn div_rem(&self, divisor: &FieldPoly) -> Result<(FieldPoly, FieldPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv_lc = divisor.coeffs[dd].recip()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RationalFunction::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn exact_div(&self, divisor: &FieldPoly) -> Result<Option<FieldPoly>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic gcd over `Q(t)`.
    pub fn gcd(a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1.monic();
            a = b;
            b = r;
        }
        a
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> FieldPoly {
        let f = self.monic();
        let g = FieldPoly::gcd(&f, &f.derivative());
        f.exact_div(&g).expect("nonzero").expect("gcd divides")
    }

    pub fn display_with(&self, zvar: &str, tvar: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let z = match i {
                0 => String::new(),
                1 => zvar.to_string(),
                _ => format!("{zvar}^{i}"),
            };
            let cs = c.display_with(tvar);
            terms.push(match (z.is_empty(), c.is_one()) {
                (true, _) => format!("({cs})"),
                (false, true) => z,
                (false, false) => format!("({cs})*{z}"),
            });
        }
        terms.join(" + ")
    }
}

impl fmt::Debug for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldPoly({})", self.display_with("z", "t"))
    }
}

impl Add for &FieldPoly {
    type Output = FieldPoly;
    fn add(self, rhs: &FieldPoly) -> FieldPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FieldPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &FieldPoly {
    type Output = FieldPoly;
    fn sub(self, rhs: &FieldPoly) -> FieldPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FieldPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &FieldPoly {
    type Output = FieldPoly;
    fn mul(self, rhs: &FieldPoly) -> FieldPoly {
        if self.is_zero() || rhs.is_zero() {
            return FieldPoly::zero();
        }
        let mut out = vec![RationalFunction::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        FieldPoly::new(out)
    }
}

impl Neg for &FieldPoly {
    type Output = FieldPoly;
    fn neg(self) -> FieldPoly {
        FieldPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl FieldPoly {
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient of a nonzero polynomial, or zero.
    pub fn lc(&self) -> RationalFunction {
        self.leading().cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &RationalFunction)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn max_coeff_degree(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.degree().unwrap_or(0)).max().unwrap_or(0)
    }

    pub fn scalar(c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self::constant(RationalFunction::constant(c))
        }
    }
}
