use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{ord, support_places, Place, RationalFunction, Q};
use crate::Result;

/// Finite formal sum of places with rational coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Divisor {
    coeffs: BTreeMap<Place, Q>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Divisor of zeros and poles of a nonzero function.
    pub fn principal(a: &RationalFunction) -> Result<Self> {
        let mut d = Divisor::new();
        for v in support_places([a]) {
            let o = ord(a, &v)?;
            d.add_term(v, Q::from_integer(o.into()));
        }
        Ok(d)
    }

    pub fn add_term(&mut self, v: Place, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(v.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    pub fn coeff(&self, v: &Place) -> Q {
        self.coeffs.get(v).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &Q)> {
        self.coeffs.iter()
    }

    /// `sum_v c_v * deg v`.
    pub fn degree(&self) -> Q {
        self.coeffs
            .iter()
            .map(|(v, c)| c * Q::from_integer(v.degree().into()))
            .fold(Q::zero(), |a, b| a + b)
    }

    pub fn scale(&self, alpha: &Q) -> Self {
        if alpha.is_zero() {
            return Divisor::new();
        }
        Divisor { coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c * alpha)).collect() }
    }

    /// `alpha` with `self = alpha * other`, if any.
    ///
    /// Conventions for empty divisors: two empty divisors give 1; an empty
    /// `self` against a nonempty `other` gives 0; a nonempty `self` against an
    /// empty `other` has no solution.
    pub fn proportional_to(&self, other: &Divisor) -> Option<Q> {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => return Some(Q::one()),
            (true, false) => return Some(Q::zero()),
            (false, true) => return None,
            _ => {}
        }
        if self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        let (v0, c0) = other.coeffs.iter().next()?;
        let alpha = self.coeff(v0) / c0;
        (*self == other.scale(&alpha)).then_some(alpha)
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter().map(|(v, c)| (v.to_string(), c.to_string()))).finish()
    }
}
