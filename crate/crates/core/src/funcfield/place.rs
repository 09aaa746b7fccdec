use std::collections::BTreeSet;
use std::fmt;

use super::{Poly, RationalFunction, Q};
use crate::{Error, Result};

/// A closed point of the projective line over `Q`.
///
/// A finite place of degree `k` stands for the `k` conjugate complex points
/// where its polynomial vanishes; they share every valuation, so global sums
/// over complex points become sums over places weighted by [`Place::degree`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Finite(Poly),
}

impl Place {
    /// Checks that `p` is monic and irreducible.
    pub fn finite(p: Poly) -> Result<Self> {
        if !p.is_monic() || !p.is_irreducible() {
            return Err(Error::NotIrreducible(p.to_string()));
        }
        Ok(Place::Finite(p))
    }

    /// Builds a place from an arbitrary nonzero multiple of an irreducible.
    pub fn from_irreducible(p: &Poly) -> Result<Self> {
        Self::finite(p.monic())
    }

    /// The place `t = a`.
    pub fn at(a: Q) -> Self {
        Place::Finite(Poly::new(vec![-a, Q::from_integer(1.into())]))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(p) => p.deg(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn display_with(&self, var: &str) -> String {
        match self {
            Place::Infinity => "inf".into(),
            Place::Finite(p) => p.display_with(var),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({self})")
    }
}

/// Order of vanishing of `a` at `v`; `log|a|_v = -ord(a, v)`.
pub fn ord(a: &RationalFunction, v: &Place) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::ZeroFunction);
    }
    Ok(match v {
        Place::Infinity => a.denom().deg() as i64 - a.numer().deg() as i64,
        Place::Finite(p) => {
            // Reduced form: at most one side is divisible by p.
            let (n, _) = a.numer().split_power(p);
            if n > 0 {
                n as i64
            } else {
                -(a.denom().split_power(p).0 as i64)
            }
        }
    })
}

/// `log|a|_v` in integer log-units, `None` for `a = 0`.
pub fn log_abs(a: &RationalFunction, v: &Place) -> Option<i64> {
    ord(a, v).ok().map(|o| -o)
}

/// `log+|a|_v = max(0, -ord_v(a))`; zero for `a = 0`.
pub fn log_plus(a: &RationalFunction, v: &Place) -> i64 {
    log_abs(a, v).map_or(0, |l| l.max(0))
}

/// Finite places dividing a polynomial.
pub fn places_of_poly(p: &Poly) -> Vec<Place> {
    if p.is_constant() {
        return Vec::new();
    }
    p.factor().factors.into_iter().map(|(f, _)| Place::Finite(f)).collect()
}

/// Infinity together with every finite place dividing a numerator or a
/// denominator of the items. Zero items are skipped.
pub fn support_places<'a, I>(items: I) -> BTreeSet<Place>
where
    I: IntoIterator<Item = &'a RationalFunction>,
{
    let mut out = BTreeSet::from([Place::Infinity]);
    for a in items {
        if a.is_zero() {
            continue;
        }
        out.extend(places_of_poly(a.numer()));
        out.extend(places_of_poly(a.denom()));
    }
    out
}

/// `sum_v log|a|_v * deg v`; always 0 for nonzero `a`.
pub fn product_formula_sum(a: &RationalFunction) -> Result<Q> {
    if a.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut total = 0i64;
    for v in support_places([a]) {
        total += -ord(a, &v)? * v.degree() as i64;
    }
    Ok(Q::from_integer(total.into()))
}

/// `sum_v log+|a|_v * deg v` computed place by place; equals `a.degree()`.
pub fn degree_by_places(a: &RationalFunction) -> Result<usize> {
    if a.is_zero() {
        return Err(Error::ZeroFunction);
    }
    Ok(support_places([a]).iter().map(|v| log_plus(a, v) as usize * v.degree()).sum())
}

/// `log+ ||a||_v = max_i log+|a_i|_v`.
pub fn log_plus_norm(items: &[RationalFunction], v: &Place) -> i64 {
    items.iter().map(|a| log_plus(a, v)).max().unwrap_or(0)
}

/// Height of a tuple: `sum_v log+ ||a||_v * deg v`. Zero entries contribute
/// nothing, and the height vanishes exactly when all entries are constant.
pub fn height_tuple(items: &[RationalFunction]) -> Q {
    let total: i64 = support_places(items)
        .iter()
        .map(|v| log_plus_norm(items, v) * v.degree() as i64)
        .sum();
    Q::from_integer(total.into())
}

/// `a(pi)`: the pullback of `a` along the cover given by `pi`.
pub fn pullback(a: &RationalFunction, pi: &RationalFunction) -> Result<RationalFunction> {
    if pi.is_constant() {
        return Err(Error::ConstantPullback);
    }
    a.compose(pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    fn place(c: &[i64]) -> Place {
        Place::finite(Poly::from_ints(c)).unwrap()
    }

    #[test]
    fn ord_examples() {
        assert_eq!(ord(&rf(&[0, 0, 1], &[-1, 1]), &place(&[0, 1])).unwrap(), 2);
        assert_eq!(ord(&rf(&[1, 0, 1], &[0, 1]), &Place::Infinity).unwrap(), -1);
        assert_eq!(ord(&rf(&[1, 0, 1], &[-3, 1]), &place(&[1, 0, 1])).unwrap(), 1);
        assert_eq!(ord(&RationalFunction::zero(), &Place::Infinity), Err(Error::ZeroFunction));
    }

    #[test]
    fn place_must_be_irreducible() {
        assert!(Place::finite(Poly::from_ints(&[-1, 0, 1])).is_err());
        assert!(Place::finite(Poly::from_ints(&[2, 2])).is_err());
        assert_eq!(Place::from_irreducible(&Poly::from_ints(&[2, 2])).unwrap(), place(&[1, 1]));
    }

    #[test]
    fn support_examples() {
        let s = support_places(&[RationalFunction::t()]);
        assert_eq!(s, BTreeSet::from([Place::Infinity, place(&[0, 1])]));
        let s = support_places(&[rf(&[1, 0, 1], &[-3, 1])]);
        assert_eq!(s, BTreeSet::from([Place::Infinity, place(&[1, 0, 1]), place(&[-3, 1])]));
        let s = support_places(&[rf(&[5], &[7])]);
        assert_eq!(s, BTreeSet::from([Place::Infinity]));
    }

    #[test]
    fn product_formula_examples() {
        for a in [rf(&[1, 0, 1], &[-3, 1]), RationalFunction::from_int(5), rf(&[0, 0, 0, 1], &[1])] {
            assert!(product_formula_sum(&a).unwrap().is_zero());
        }
    }

    #[test]
    fn height_examples() {
        let t = RationalFunction::t();
        let tm2 = RationalFunction::monomial(Q::from_integer(1.into()), -2);
        assert_eq!(height_tuple(&[t.clone(), t.clone(), tm2]), Q::from_integer(3.into()));
        assert!(height_tuple(&[RationalFunction::from_int(3), RationalFunction::zero()]).is_zero());
        let t2 = RationalFunction::monomial(Q::from_integer(1.into()), 2);
        assert_eq!(height_tuple(&[t2, t]), Q::from_integer(2.into()));
    }

    #[test]
    fn pullback_examples() {
        let s2 = RationalFunction::monomial(Q::from_integer(1.into()), 2);
        let p = pullback(&RationalFunction::t(), &s2).unwrap();
        assert_eq!(p, s2);
        assert_eq!(height_tuple(&[p]), Q::from_integer(2.into()));
        let c = RationalFunction::from_int(7);
        assert_eq!(pullback(&c, &s2).unwrap(), c);
        assert_eq!(pullback(&c, &c), Err(Error::ConstantPullback));
    }
}
