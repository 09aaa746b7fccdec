//! Polynomials over the function field: the critical normal form, iteration,
//! conjugation, periodic points and multipliers.

mod fieldpoly;
mod roots;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use fieldpoly::FieldPoly;
pub use roots::roots_with_multiplicity;

use crate::funcfield::height_tuple;
use crate::{Error, Poly, RationalFunction, Result, Q};

/// Default cap on the number of exact iterations of [`PolynomialMap::iterate`].
pub const DEFAULT_ITERATE_CAP: usize = 8;

/// Critical points `(c_1, ..., c_{d-1})` defining the normal form `f_c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CritTuple {
    d: usize,
    entries: Vec<RationalFunction>,
}

impl CritTuple {
    pub fn new(d: usize, entries: Vec<RationalFunction>) -> Result<Self> {
        if d < 2 {
            return Err(Error::DegreeTooSmall { min: 2, got: d });
        }
        if entries.len() != d - 1 {
            return Err(Error::TupleLength { d, expected: d - 1, got: entries.len() });
        }
        Ok(CritTuple { d, entries })
    }

    /// Tuple of degree `entries.len() + 1`.
    pub fn from_entries(entries: Vec<RationalFunction>) -> Result<Self> {
        Self::new(entries.len() + 1, entries)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    /// Multiplier of the fixed point 0 of `f_c`: `f_c'(0) = prod(-c_i)`.
    pub fn multiplier_at_zero(&self) -> RationalFunction {
        self.entries.iter().fold(RationalFunction::one(), |acc, c| &acc * &(-c))
    }

    /// Coefficientwise pullback along `t -> pi`.
    pub fn pullback(&self, pi: &RationalFunction) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|c| crate::funcfield::pullback(c, pi))
            .collect::<Result<_>>()?;
        Self::new(self.d, entries)
    }
}

/// A polynomial map of degree `d >= 2` with coefficients in `Q(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolynomialMap {
    poly: FieldPoly,
}

impl PolynomialMap {
    /// From coefficients `a_0, ..., a_d`; trailing zeros are dropped first.
    pub fn new(coeffs: Vec<RationalFunction>) -> Result<Self> {
        Self::from_field_poly(FieldPoly::new(coeffs))
    }

    pub fn from_field_poly(poly: FieldPoly) -> Result<Self> {
        let d = poly.degree().unwrap_or(0);
        if d < 2 {
            return Err(Error::DegreeTooSmall { min: 2, got: d });
        }
        Ok(PolynomialMap { poly })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("degree >= 2")
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        self.poly.coeffs()
    }

    pub fn leading(&self) -> &RationalFunction {
        self.poly.leading().expect("nonzero")
    }

    pub fn as_field_poly(&self) -> &FieldPoly {
        &self.poly
    }

    pub fn eval(&self, z: &RationalFunction) -> RationalFunction {
        self.poly.eval(z)
    }

    pub fn derivative(&self) -> FieldPoly {
        self.poly.derivative()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolynomialMap) -> PolynomialMap {
        PolynomialMap { poly: self.poly.compose(&inner.poly) }
    }

    /// The `n`-fold composition `f^n` as a polynomial map; `n >= 1`.
    pub fn power(&self, n: usize) -> PolynomialMap {
        assert!(n >= 1);
        (1..n).fold(self.clone(), |acc, _| self.compose(&acc))
    }

    /// `f^n(z0)` computed exactly; `n` may not exceed `cap`.
    pub fn iterate(&self, z0: &RationalFunction, n: usize, cap: usize) -> Result<RationalFunction> {
        if n > cap {
            return Err(Error::IterationCap { n, cap });
        }
        Ok(self.orbit(z0, n).pop().expect("orbit has n + 1 points"))
    }

    /// `[z0, f(z0), ..., f^n(z0)]`.
    pub fn orbit(&self, z0: &RationalFunction, n: usize) -> Vec<RationalFunction> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(z0.clone());
        for _ in 0..n {
            let next = self.eval(out.last().expect("nonempty"));
            out.push(next);
        }
        out
    }

    /// Multiplier `prod_{i<n} f'(f^i(P))` of a point of exact period `n`.
    pub fn multiplier(&self, p: &MarkedPeriodicPoint) -> Result<RationalFunction> {
        let orbit = self.verified_cycle(&p.point, p.period)?;
        let df = self.derivative();
        Ok(orbit[..p.period]
            .iter()
            .fold(RationalFunction::one(), |acc, z| &acc * &df.eval(z)))
    }

    fn verified_cycle(&self, point: &RationalFunction, period: usize) -> Result<Vec<RationalFunction>> {
        if period == 0 {
            return Err(Error::NotPeriodic { period });
        }
        let orbit = self.orbit(point, period);
        let closes = |m: usize| orbit[m] == *point;
        if !closes(period) || (1..period).any(|m| period % m == 0 && closes(m)) {
            return Err(Error::NotPeriodic { period });
        }
        Ok(orbit)
    }

    /// `phi^{-1} ∘ f ∘ phi` for `phi(z) = a z + b`.
    pub fn conjugate(&self, a: &RationalFunction, b: &RationalFunction) -> Result<PolynomialMap> {
        if a.is_zero() {
            return Err(Error::DegenerateConjugacy);
        }
        let phi = FieldPoly::linear(a.clone(), b.clone());
        let inner = self.poly.compose(&phi);
        let shifted = &inner - &FieldPoly::constant(b.clone());
        Self::from_field_poly(shifted.scale(&a.recip()?))
    }

    /// Coefficientwise pullback along `t -> pi`.
    pub fn pullback(&self, pi: &RationalFunction) -> Result<PolynomialMap> {
        Self::from_field_poly(self.poly.map_coeffs(|c| crate::funcfield::pullback(c, pi))?)
    }

    /// Roots of `f'` in `Q(t)` listed with multiplicity.
    pub fn critical_points(&self) -> Result<Vec<RationalFunction>> {
        let df = self.derivative();
        let degree = df.degree().expect("d >= 2");
        let roots = roots_with_multiplicity(&df);
        let found: usize = roots.iter().map(|(_, m)| m).sum();
        if found != degree {
            return Err(Error::NotSplit { found, degree });
        }
        Ok(roots.into_iter().flat_map(|(r, m)| std::iter::repeat(r).take(m)).collect())
    }

    /// Conjugates `f` into the normal form when that is possible over `Q(t)`.
    pub fn to_normal_form(&self) -> Result<NormalizedMap> {
        let d = self.degree();
        let target = self.leading().scale(&Q::from_integer(BigInt::from(d)));
        let a = nth_root(&target.recip()?, d as u32 - 1)
            .ok_or_else(|| Error::NotNormalizable(format!("a ({})-th root of 1/(d*a_d)", d - 1)))?;
        let fixed = FieldPoly::new(
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if i == 1 { c - &RationalFunction::one() } else { c.clone() })
                .collect(),
        );
        let b = roots_with_multiplicity(&fixed)
            .into_iter()
            .next()
            .map(|(r, _)| r)
            .ok_or_else(|| Error::NotNormalizable("a fixed point in Q(t)".into()))?;
        let ainv = a.recip()?;
        let entries = self
            .critical_points()?
            .iter()
            .map(|c| &(c - &b) * &ainv)
            .collect();
        let tuple = CritTuple::new(d, entries)?;
        debug_assert_eq!(build_normal_form(&tuple), self.conjugate(&a, &b)?);
        Ok(NormalizedMap { tuple, a, b })
    }
}

/// Result of [`PolynomialMap::to_normal_form`]: `phi^{-1} f phi = f_c` for
/// `phi(z) = a z + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedMap {
    pub tuple: CritTuple,
    pub a: RationalFunction,
    pub b: RationalFunction,
}

/// A point with a claimed exact period. The period is checked against a map
/// when the point is constructed and again by [`PolynomialMap::multiplier`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPeriodicPoint {
    point: RationalFunction,
    period: usize,
}

impl MarkedPeriodicPoint {
    pub fn new(f: &PolynomialMap, point: RationalFunction, period: usize) -> Result<Self> {
        f.verified_cycle(&point, period)?;
        Ok(MarkedPeriodicPoint { point, period })
    }

    /// Skips the check; [`PolynomialMap::multiplier`] still verifies.
    pub fn unchecked(point: RationalFunction, period: usize) -> Self {
        MarkedPeriodicPoint { point, period }
    }

    pub fn point(&self) -> &RationalFunction {
        &self.point
    }

    pub fn period(&self) -> usize {
        self.period
    }
}

/// `f_c(z) = sum_{i=1}^{d} ((-1)^{d-i} / i) e_{d-i}(c) z^i`, the antiderivative
/// of `prod (z - c_i)` vanishing at 0.
pub fn build_normal_form(c: &CritTuple) -> PolynomialMap {
    let derivative = c.entries.iter().fold(FieldPoly::constant(RationalFunction::one()), |acc, ci| {
        &acc * &FieldPoly::linear(RationalFunction::one(), -ci)
    });
    let mut coeffs = vec![RationalFunction::zero()];
    coeffs.extend(
        derivative
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, b)| b.scale(&Q::new(BigInt::one(), BigInt::from(k + 1)))),
    );
    PolynomialMap::new(coeffs).expect("leading coefficient 1/d")
}

/// The tuple is isotrivial when every entry is constant, i.e. `h(c) = 0`.
pub fn is_isotrivial(c: &CritTuple) -> bool {
    height_tuple(c.entries()).is_zero()
}

/// Exact `k`-th root in `Q(t)`, if one exists.
pub fn nth_root(a: &RationalFunction, k: u32) -> Option<RationalFunction> {
    if k == 1 || a.is_zero() {
        return Some(a.clone());
    }
    let root_poly = |p: &Poly| -> Option<Poly> {
        let lc = p.leading()?.clone();
        let c = rational_root(&lc, k)?;
        let mut acc = Poly::constant(c);
        for (i, part) in p.squarefree_decomposition().iter().enumerate() {
            let m = i as u32 + 1;
            if part.is_one() {
                continue;
            }
            if m % k != 0 {
                return None;
            }
            acc = &acc * &part.pow(m / k);
        }
        Some(acc)
    };
    RationalFunction::new(root_poly(a.numer())?, root_poly(a.denom())?).ok()
}

fn rational_root(x: &Q, k: u32) -> Option<Q> {
    let int_root = |n: &BigInt| -> Option<BigInt> {
        if n.is_negative() && k % 2 == 0 {
            return None;
        }
        let r = n.nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
    };
    Some(Q::new(int_root(x.numer())?, int_root(x.denom())?))
}
